use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{check_category_laws, CatCaps, FiniteCategory, ObjId};
use crate::error::{Error, Result};

/// An arrow of a [`GeneralFinCat`], indexing its arrow list.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism(pub usize);

/// On-disk description of a finite category.
///
/// Composition entries `[g, f, h]` state `g ∘ f = h`. Compositions with
/// identities may be omitted; all other composable pairs must be listed.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
    #[serde(default)]
    pub products: Vec<ProductDecl>,
    #[serde(default)]
    pub coproducts: Vec<CoproductDecl>,
    #[serde(default)]
    pub terminal: Option<String>,
    #[serde(default)]
    pub initial: Option<String>,
    #[serde(default)]
    pub exponentials: Vec<ExponentialDecl>,
    #[serde(default)]
    pub points: BTreeMap<String, String>,
    #[serde(default)]
    pub capabilities: CatCaps,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDecl {
    pub left: String,
    pub right: String,
    pub object: String,
    pub pr1: String,
    pub pr2: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoproductDecl {
    pub left: String,
    pub right: String,
    pub object: String,
    pub inj1: String,
    pub inj2: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentialDecl {
    pub base: String,
    pub exponent: String,
    pub object: String,
    pub eval: String,
}

#[derive(Clone, Debug)]
struct Cone {
    object: ObjId,
    first: Morphism,
    second: Morphism,
}

/// A finite category given by explicit hom-sets and a composition table,
/// with optional chosen structure. Construction via [`GeneralFinCat::from_file`]
/// re-verifies every category law and every declared universal property.
#[derive(Clone, Debug)]
pub struct GeneralFinCat {
    objects: Vec<String>,
    arrow_names: Vec<String>,
    doms: Vec<ObjId>,
    cods: Vec<ObjId>,
    ids: Vec<Morphism>,
    comp: HashMap<(Morphism, Morphism), Morphism>,
    homs: HashMap<(ObjId, ObjId), Vec<Morphism>>,
    products: HashMap<(ObjId, ObjId), Cone>,
    coproducts: HashMap<(ObjId, ObjId), Cone>,
    terminal: Option<ObjId>,
    initial: Option<ObjId>,
    exponentials: HashMap<(ObjId, ObjId), (ObjId, Morphism)>,
    points: HashMap<ObjId, Morphism>,
    caps: CatCaps,
    budget: u64,
}

impl GeneralFinCat {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CategoryFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let file: CategoryFile = serde_json::from_value(v.clone())?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &CategoryFile) -> Result<Self> {
        let cat = Self::build(file)?;
        cat.verify()?;
        Ok(cat)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn arrow_name(&self, f: Morphism) -> &str {
        &self.arrow_names[f.0]
    }

    pub fn lookup_arrow(&self, name: &str) -> Result<Morphism> {
        self.arrow_names
            .iter()
            .position(|n| n == name)
            .map(Morphism)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn objects(&self) -> Vec<ObjId> {
        (0..self.objects.len()).map(ObjId).collect()
    }

    pub fn arrows(&self) -> impl Iterator<Item = Morphism> + '_ {
        (0..self.arrow_names.len()).map(Morphism)
    }

    fn build(file: &CategoryFile) -> Result<Self> {
        let obj_index: HashMap<&str, ObjId> = file
            .objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), ObjId(i)))
            .collect();
        if obj_index.len() != file.objects.len() {
            return Err(Error::Parse("duplicate object name".into()));
        }
        let obj = |n: &str| {
            obj_index
                .get(n)
                .copied()
                .ok_or_else(|| Error::UnknownObject(n.to_string()))
        };

        let mut arrow_index: HashMap<&str, Morphism> = HashMap::new();
        let mut doms = Vec::new();
        let mut cods = Vec::new();
        let mut homs: HashMap<(ObjId, ObjId), Vec<Morphism>> = HashMap::new();
        for (i, a) in file.arrows.iter().enumerate() {
            if arrow_index.insert(a.name.as_str(), Morphism(i)).is_some() {
                return Err(Error::Parse(format!("duplicate arrow name `{}`", a.name)));
            }
            let (d, c) = (obj(&a.dom)?, obj(&a.cod)?);
            doms.push(d);
            cods.push(c);
            homs.entry((d, c)).or_default().push(Morphism(i));
        }
        let arr = |n: &str| {
            arrow_index
                .get(n)
                .copied()
                .ok_or_else(|| Error::UnknownArrow(n.to_string()))
        };

        let mut ids = vec![Morphism(usize::MAX); file.objects.len()];
        for (o, a) in &file.identities {
            let (o, a) = (obj(o)?, arr(a)?);
            if doms[a.0] != o || cods[a.0] != o {
                return Err(Error::law("identity", format!("identity of {} is not an endomorphism", file.objects[o.0])));
            }
            ids[o.0] = a;
        }
        if let Some(i) = ids.iter().position(|m| m.0 == usize::MAX) {
            return Err(Error::law("identity", format!("object {} has no identity", file.objects[i])));
        }

        let mut comp = HashMap::new();
        for [g, f, h] in &file.composition {
            let (g, f, h) = (arr(g)?, arr(f)?, arr(h)?);
            if cods[f.0] != doms[g.0] {
                return Err(Error::NotComposable(format!(
                    "{} ∘ {}",
                    file.arrows[g.0].name, file.arrows[f.0].name
                )));
            }
            if doms[h.0] != doms[f.0] || cods[h.0] != cods[g.0] {
                return Err(Error::law(
                    "composition typing",
                    format!(
                        "{} ∘ {} = {} has the wrong type",
                        file.arrows[g.0].name, file.arrows[f.0].name, file.arrows[h.0].name
                    ),
                ));
            }
            if comp.insert((g, f), h).is_some() {
                return Err(Error::Parse(format!(
                    "composition {} ∘ {} listed twice",
                    file.arrows[g.0].name, file.arrows[f.0].name
                )));
            }
        }
        for (i, (&d, &c)) in doms.iter().zip(&cods).enumerate() {
            let f = Morphism(i);
            comp.entry((ids[c.0], f)).or_insert(f);
            comp.entry((f, ids[d.0])).or_insert(f);
        }
        for f in 0..doms.len() {
            for g in 0..doms.len() {
                if cods[f] == doms[g] && !comp.contains_key(&(Morphism(g), Morphism(f))) {
                    return Err(Error::law(
                        "composition table",
                        format!("missing composite {} ∘ {}", file.arrows[g].name, file.arrows[f].name),
                    ));
                }
            }
        }

        let mut products = HashMap::new();
        for p in &file.products {
            products.insert(
                (obj(&p.left)?, obj(&p.right)?),
                Cone {
                    object: obj(&p.object)?,
                    first: arr(&p.pr1)?,
                    second: arr(&p.pr2)?,
                },
            );
        }
        let mut coproducts = HashMap::new();
        for p in &file.coproducts {
            coproducts.insert(
                (obj(&p.left)?, obj(&p.right)?),
                Cone {
                    object: obj(&p.object)?,
                    first: arr(&p.inj1)?,
                    second: arr(&p.inj2)?,
                },
            );
        }
        let mut exponentials = HashMap::new();
        for e in &file.exponentials {
            exponentials.insert((obj(&e.base)?, obj(&e.exponent)?), (obj(&e.object)?, arr(&e.eval)?));
        }
        let mut points = HashMap::new();
        for (o, a) in &file.points {
            points.insert(obj(o)?, arr(a)?);
        }

        Ok(GeneralFinCat {
            objects: file.objects.clone(),
            arrow_names: file.arrows.iter().map(|a| a.name.clone()).collect(),
            doms,
            cods,
            ids,
            comp,
            homs,
            products,
            coproducts,
            terminal: file.terminal.as_deref().map(obj).transpose()?,
            initial: file.initial.as_deref().map(obj).transpose()?,
            exponentials,
            points,
            caps: file.capabilities,
            budget: super::DEFAULT_BUDGET,
        })
    }

    fn hom_slice(&self, a: ObjId, b: ObjId) -> &[Morphism] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    fn name_of(&self, f: Morphism) -> &str {
        &self.arrow_names[f.0]
    }

    fn verify(&self) -> Result<()> {
        let objs = self.objects();
        check_category_laws(self, &objs)?;

        let n = objs.len();

        if self.caps.products && self.products.len() != n * n {
            return Err(Error::law("capabilities", "products declared but not chosen for every pair"));
        }
        if self.caps.coproducts && self.coproducts.len() != n * n {
            return Err(Error::law("capabilities", "coproducts declared but not chosen for every pair"));
        }
        if self.caps.terminal && self.terminal.is_none() {
            return Err(Error::law("capabilities", "terminal object declared but not chosen"));
        }
        if self.caps.initial && self.initial.is_none() {
            return Err(Error::law("capabilities", "initial object declared but not chosen"));
        }
        if self.caps.exponentials && self.exponentials.len() != n * n {
            return Err(Error::law("capabilities", "exponentials declared but not chosen for every pair"));
        }

        for (&(a, b), cone) in &self.products {
            if self.doms[cone.first.0] != cone.object
                || self.doms[cone.second.0] != cone.object
                || self.cods[cone.first.0] != a
                || self.cods[cone.second.0] != b
            {
                return Err(Error::law("product", format!("projections of {} are mistyped", self.object_name(cone.object))));
            }
            for &x in &objs {
                let mut seen = HashMap::new();
                for &h in self.hom_slice(x, cone.object) {
                    let key = (self.comp[&(cone.first, h)], self.comp[&(cone.second, h)]);
                    if seen.insert(key, h).is_some() {
                        return Err(Error::NonUniqueMediatingArrow(format!(
                            "product {}×{} from {}",
                            self.objects[a.0], self.objects[b.0], self.objects[x.0]
                        )));
                    }
                }
                if seen.len() != self.hom_slice(x, a).len() * self.hom_slice(x, b).len() {
                    return Err(Error::NoMediatingArrow(format!(
                        "product {}×{} from {}",
                        self.objects[a.0], self.objects[b.0], self.objects[x.0]
                    )));
                }
            }
        }

        for (&(a, b), cone) in &self.coproducts {
            if self.cods[cone.first.0] != cone.object
                || self.cods[cone.second.0] != cone.object
                || self.doms[cone.first.0] != a
                || self.doms[cone.second.0] != b
            {
                return Err(Error::law("coproduct", format!("injections of {} are mistyped", self.object_name(cone.object))));
            }
            for &x in &objs {
                let mut seen = HashMap::new();
                for &h in self.hom_slice(cone.object, x) {
                    let key = (self.comp[&(h, cone.first)], self.comp[&(h, cone.second)]);
                    if seen.insert(key, h).is_some() {
                        return Err(Error::NonUniqueMediatingArrow(format!(
                            "coproduct {}+{} into {}",
                            self.objects[a.0], self.objects[b.0], self.objects[x.0]
                        )));
                    }
                }
                if seen.len() != self.hom_slice(a, x).len() * self.hom_slice(b, x).len() {
                    return Err(Error::NoMediatingArrow(format!(
                        "coproduct {}+{} into {}",
                        self.objects[a.0], self.objects[b.0], self.objects[x.0]
                    )));
                }
            }
        }

        if let Some(t) = self.terminal {
            for &x in &objs {
                if self.hom_slice(x, t).len() != 1 {
                    return Err(Error::law(
                        "terminal",
                        format!("Hom({}, {}) has {} arrows", self.objects[x.0], self.objects[t.0], self.hom_slice(x, t).len()),
                    ));
                }
            }
        }
        if let Some(i) = self.initial {
            for &x in &objs {
                if self.hom_slice(i, x).len() != 1 {
                    return Err(Error::law(
                        "initial",
                        format!("Hom({}, {}) has {} arrows", self.objects[i.0], self.objects[x.0], self.hom_slice(i, x).len()),
                    ));
                }
            }
        }

        for (&(b, a), &(exp, ev)) in &self.exponentials {
            let a_exp = self.product(a, exp)?;
            if self.doms[ev.0] != a_exp || self.cods[ev.0] != b {
                return Err(Error::law("exponential", format!("evaluation {} is mistyped", self.name_of(ev))));
            }
            for &x in &objs {
                let xa = self.product(x, a)?;
                let mut seen = HashMap::new();
                for &h in self.hom_slice(x, exp) {
                    let f = self.untranspose(x, a, b, &h)?;
                    if seen.insert(f, h).is_some() {
                        return Err(Error::NonUniqueMediatingArrow(format!(
                            "exponential {}^{} at {}",
                            self.objects[b.0], self.objects[a.0], self.objects[x.0]
                        )));
                    }
                }
                if seen.len() != self.hom_slice(xa, b).len() {
                    return Err(Error::NoMediatingArrow(format!(
                        "exponential {}^{} at {}",
                        self.objects[b.0], self.objects[a.0], self.objects[x.0]
                    )));
                }
            }
        }

        let terminal = self.terminal;
        for (&o, &p) in &self.points {
            if Some(self.doms[p.0]) != terminal || self.cods[p.0] != o {
                return Err(Error::law("points", format!("point {} is not an arrow 1 -> {}", self.name_of(p), self.objects[o.0])));
            }
        }
        if self.caps.points {
            for &o in &objs {
                let initial_like = objs.iter().all(|&y| self.hom_slice(o, y).len() == 1);
                if !initial_like && !self.points.contains_key(&o) {
                    return Err(Error::MissingPoint(o));
                }
            }
        }
        Ok(())
    }

    fn cone<'a>(&'a self, table: &'a HashMap<(ObjId, ObjId), Cone>, a: ObjId, b: ObjId, what: &str) -> Result<&'a Cone> {
        table.get(&(a, b)).ok_or_else(|| {
            Error::missing(format!(
                "{what} of {} and {}",
                self.object_name(a),
                self.object_name(b)
            ))
        })
    }

    fn mediate<F>(&self, candidates: &[Morphism], what: impl Fn() -> String, pred: F) -> Result<Morphism>
    where
        F: Fn(Morphism) -> bool,
    {
        let mut found = None;
        for &h in candidates {
            if pred(h) {
                if found.is_some() {
                    return Err(Error::NonUniqueMediatingArrow(what()));
                }
                found = Some(h);
            }
        }
        found.ok_or_else(|| Error::NoMediatingArrow(what()))
    }
}

impl FiniteCategory for GeneralFinCat {
    type Arrow = Morphism;

    fn has_object(&self, a: ObjId) -> bool {
        a.0 < self.objects.len()
    }

    fn objects_up_to(&self, _bound: usize) -> Vec<ObjId> {
        self.objects()
    }

    fn object_name(&self, a: ObjId) -> String {
        self.objects
            .get(a.0)
            .cloned()
            .unwrap_or_else(|| format!("#{}", a.0))
    }

    fn lookup_object(&self, name: &str) -> Result<ObjId> {
        self.objects
            .iter()
            .position(|n| n == name)
            .map(ObjId)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    fn arrow_to_json(&self, f: &Morphism) -> Value {
        Value::String(self.arrow_names[f.0].clone())
    }

    fn arrow_from_json(&self, v: &Value) -> Result<Morphism> {
        match v {
            Value::String(s) => self.lookup_arrow(s),
            other => Err(Error::Parse(format!("expected an arrow name, found {other}"))),
        }
    }

    fn budget(&self) -> u64 {
        self.budget
    }

    fn dom(&self, f: &Morphism) -> ObjId {
        self.doms[f.0]
    }

    fn cod(&self, f: &Morphism) -> ObjId {
        self.cods[f.0]
    }

    fn identity(&self, a: ObjId) -> Morphism {
        self.ids[a.0]
    }

    fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        self.comp.get(&(*g, *f)).copied().ok_or_else(|| {
            Error::NotComposable(format!("{} ∘ {}", self.name_of(*g), self.name_of(*f)))
        })
    }

    fn hom_size(&self, a: ObjId, b: ObjId) -> Option<u128> {
        Some(self.hom_slice(a, b).len() as u128)
    }

    fn hom_iter(&self, a: ObjId, b: ObjId) -> Result<Box<dyn Iterator<Item = Morphism> + '_>> {
        let hom = self.hom_slice(a, b);
        if hom.len() as u64 > self.budget {
            return Err(Error::budget(
                format!("Hom({}, {})", self.object_name(a), self.object_name(b)),
                hom.len(),
                self.budget,
            ));
        }
        Ok(Box::new(hom.iter().copied()))
    }

    fn caps(&self) -> CatCaps {
        self.caps
    }

    fn product(&self, a: ObjId, b: ObjId) -> Result<ObjId> {
        Ok(self.cone(&self.products, a, b, "product")?.object)
    }

    fn pr1(&self, a: ObjId, b: ObjId) -> Result<Morphism> {
        Ok(self.cone(&self.products, a, b, "product")?.first)
    }

    fn pr2(&self, a: ObjId, b: ObjId) -> Result<Morphism> {
        Ok(self.cone(&self.products, a, b, "product")?.second)
    }

    fn pair(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let x = self.dom(f);
        if self.dom(g) != x {
            return Err(Error::ObjectMismatch {
                expected: format!("pairing domain {}", self.object_name(x)),
                found: self.object_name(self.dom(g)),
            });
        }
        let (a, b) = (self.cod(f), self.cod(g));
        let cone = self.cone(&self.products, a, b, "product")?;
        self.mediate(
            self.hom_slice(x, cone.object),
            || format!("pairing ⟨{}, {}⟩", self.name_of(*f), self.name_of(*g)),
            |h| self.comp[&(cone.first, h)] == *f && self.comp[&(cone.second, h)] == *g,
        )
    }

    fn terminal(&self) -> Result<ObjId> {
        self.terminal.ok_or_else(|| Error::missing("terminal object"))
    }

    fn bang(&self, a: ObjId) -> Result<Morphism> {
        let t = self.terminal()?;
        self.hom_slice(a, t)
            .first()
            .copied()
            .ok_or_else(|| Error::NoMediatingArrow(format!("{} -> terminal", self.object_name(a))))
    }

    fn initial(&self) -> Result<ObjId> {
        self.initial.ok_or_else(|| Error::missing("initial object"))
    }

    fn from_initial(&self, a: ObjId) -> Result<Morphism> {
        let i = self.initial()?;
        self.hom_slice(i, a)
            .first()
            .copied()
            .ok_or_else(|| Error::NoMediatingArrow(format!("initial -> {}", self.object_name(a))))
    }

    fn coproduct(&self, a: ObjId, b: ObjId) -> Result<ObjId> {
        Ok(self.cone(&self.coproducts, a, b, "coproduct")?.object)
    }

    fn inj1(&self, a: ObjId, b: ObjId) -> Result<Morphism> {
        Ok(self.cone(&self.coproducts, a, b, "coproduct")?.first)
    }

    fn inj2(&self, a: ObjId, b: ObjId) -> Result<Morphism> {
        Ok(self.cone(&self.coproducts, a, b, "coproduct")?.second)
    }

    fn copair(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let y = self.cod(f);
        if self.cod(g) != y {
            return Err(Error::ObjectMismatch {
                expected: format!("copairing codomain {}", self.object_name(y)),
                found: self.object_name(self.cod(g)),
            });
        }
        let (a, b) = (self.dom(f), self.dom(g));
        let cone = self.cone(&self.coproducts, a, b, "coproduct")?;
        self.mediate(
            self.hom_slice(cone.object, y),
            || format!("copairing [{}, {}]", self.name_of(*f), self.name_of(*g)),
            |h| self.comp[&(h, cone.first)] == *f && self.comp[&(h, cone.second)] == *g,
        )
    }

    fn exponential(&self, b: ObjId, a: ObjId) -> Result<ObjId> {
        self.exponentials
            .get(&(b, a))
            .map(|e| e.0)
            .ok_or_else(|| Error::missing(format!("exponential {}^{}", self.object_name(b), self.object_name(a))))
    }

    fn eval(&self, b: ObjId, a: ObjId) -> Result<Morphism> {
        self.exponentials
            .get(&(b, a))
            .map(|e| e.1)
            .ok_or_else(|| Error::missing(format!("exponential {}^{}", self.object_name(b), self.object_name(a))))
    }

    fn point(&self, a: ObjId) -> Result<Option<Morphism>> {
        Ok(self.points.get(&a).copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The two-object category {0, 1} of finite sets of size 0 and 1 with all
    /// functions: products, coproducts, terminal and initial all exist.
    fn bool_cat() -> Value {
        serde_json::json!({
            "objects": ["0", "1"],
            "arrows": [
                {"name": "id0", "dom": "0", "cod": "0"},
                {"name": "id1", "dom": "1", "cod": "1"},
                {"name": "e", "dom": "0", "cod": "1"}
            ],
            "identities": {"0": "id0", "1": "id1"},
            "composition": [["id1", "e", "e"], ["e", "id0", "e"]],
            "products": [
                {"left": "0", "right": "0", "object": "0", "pr1": "id0", "pr2": "id0"},
                {"left": "0", "right": "1", "object": "0", "pr1": "id0", "pr2": "e"},
                {"left": "1", "right": "0", "object": "0", "pr1": "e", "pr2": "id0"},
                {"left": "1", "right": "1", "object": "1", "pr1": "id1", "pr2": "id1"}
            ],
            "terminal": "1",
            "initial": "0",
            "exponentials": [
                {"base": "0", "exponent": "0", "object": "1", "eval": "id0"},
                {"base": "1", "exponent": "0", "object": "1", "eval": "e"},
                {"base": "0", "exponent": "1", "object": "0", "eval": "id0"},
                {"base": "1", "exponent": "1", "object": "1", "eval": "id1"}
            ],
            "points": {"1": "id1"},
            "capabilities": {"products": true, "coproducts": false, "terminal": true,
                             "initial": true, "exponentials": true, "points": true}
        })
    }

    #[test]
    fn loads_and_verifies_small_category() {
        let cat = GeneralFinCat::from_value(&bool_cat()).unwrap();
        let (zero, one) = (ObjId(0), ObjId(1));
        assert_eq!(cat.product(one, zero).unwrap(), zero);
        let e = cat.lookup_arrow("e").unwrap();
        assert_eq!(cat.pair(&e, &e).unwrap(), e);
        assert_eq!(cat.bang(zero).unwrap(), e);
        assert_eq!(cat.enumerate_hom(zero, one).unwrap(), vec![e]);
        assert!(cat.enumerate_hom(one, zero).unwrap().is_empty());
        let ev = cat.eval(one, one).unwrap();
        assert_eq!(cat.transpose(one, one, &ev).unwrap(), cat.identity(one));
    }

    #[test]
    fn rejects_missing_composite() {
        let mut v = bool_cat();
        v["arrows"].as_array_mut().unwrap().push(serde_json::json!({"name": "f", "dom": "1", "cod": "1"}));
        let err = GeneralFinCat::from_value(&v).unwrap_err();
        assert!(matches!(err, Error::LawViolation { ref law, .. } if law == "composition table"), "{err}");
    }

    #[test]
    fn rejects_broken_associativity() {
        // (x∘y)∘x = x but x∘(y∘x) = y.
        let v = serde_json::json!({
            "objects": ["*"],
            "arrows": [
                {"name": "1", "dom": "*", "cod": "*"},
                {"name": "x", "dom": "*", "cod": "*"},
                {"name": "y", "dom": "*", "cod": "*"}
            ],
            "identities": {"*": "1"},
            "composition": [
                ["x", "x", "y"], ["x", "y", "y"], ["y", "x", "x"], ["y", "y", "y"]
            ]
        });
        let err = GeneralFinCat::from_value(&v).unwrap_err();
        assert!(matches!(err, Error::LawViolation { ref law, .. } if law == "associativity"), "{err}");
    }

    #[test]
    fn rejects_fake_product() {
        let mut v = bool_cat();
        // 1 is not a product of 0 and 0: Hom(1, 1) has one arrow while
        // Hom(1, 0) × Hom(1, 0) is empty.
        v["products"][0] = serde_json::json!({"left": "0", "right": "1", "object": "1", "pr1": "id1", "pr2": "id1"});
        let err = GeneralFinCat::from_value(&v).unwrap_err();
        assert!(matches!(err, Error::LawViolation { .. } | Error::NoMediatingArrow(_) | Error::NonUniqueMediatingArrow(_)), "{err}");
    }

    #[test]
    fn missing_structure_is_a_capability_error() {
        let cat = GeneralFinCat::from_value(&bool_cat()).unwrap();
        assert!(matches!(cat.coproduct(ObjId(0), ObjId(1)), Err(Error::MissingCapability(_))));
    }
}
