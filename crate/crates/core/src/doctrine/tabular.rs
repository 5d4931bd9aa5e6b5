use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{verify_doctrine, DocCaps, Doctrine, VerifyBounds};
use crate::error::{Error, Result};
use crate::fincat::{CategoryFile, FiniteCategory, GeneralFinCat, Morphism, ObjId};
use crate::poset::{Poset, Preorder};

/// On-disk description of a doctrine over an explicitly tabulated category.
///
/// Every fiber is listed with its elements and a generating order relation
/// (closed reflexively and transitively on load). Every arrow needs a
/// reindexing table: entry `i` is the image of the `i`-th element of the
/// codomain fiber. Quantifier tables are optional and map the domain fiber
/// to the codomain fiber.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoctrineFile {
    pub category: CategoryFile,
    pub fibers: BTreeMap<String, FiberDecl>,
    pub reindex: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub exists: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub forall: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub capabilities: DocCaps,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDecl {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

#[derive(Clone, Debug)]
struct Fiber {
    names: Vec<String>,
    order: Poset,
}

/// A doctrine whose fibers and reindexing maps are given as finite tables.
/// Predicates are element indices within their fiber.
#[derive(Clone, Debug)]
pub struct TabularDoctrine {
    cat: GeneralFinCat,
    fibers: Vec<Fiber>,
    reindex: HashMap<Morphism, Vec<usize>>,
    exists: HashMap<Morphism, Vec<usize>>,
    forall: HashMap<Morphism, Vec<usize>>,
    caps: DocCaps,
}

impl TabularDoctrine {
    /// Structural parse only: names resolve, tables have the right shape and
    /// fibers are posets. No doctrine laws are checked.
    pub fn parse(file: &DoctrineFile) -> Result<Self> {
        let cat = GeneralFinCat::from_file(&file.category)?;
        let mut fibers = Vec::new();
        for a in cat.objects() {
            let name = cat.object_name(a);
            let decl = file
                .fibers
                .get(&name)
                .ok_or_else(|| Error::Parse(format!("no fiber declared over object {name}")))?;
            let n = decl.elements.len();
            let index = |e: &str| {
                decl.elements
                    .iter()
                    .position(|x| x == e)
                    .ok_or_else(|| Error::Parse(format!("unknown element `{e}` in fiber over {name}")))
            };
            let mut rel = vec![false; n * n];
            for [x, y] in &decl.leq {
                rel[index(x)? * n + index(y)?] = true;
            }
            let order = Poset::from_preorder(Preorder::closure(n, rel)?)
                .map_err(|e| Error::law("fiber order", format!("fiber over {name}: {e}")))?;
            fibers.push(Fiber {
                names: decl.elements.clone(),
                order,
            });
        }
        for k in file.fibers.keys() {
            cat.lookup_object(k)?;
        }

        let table = |arrow: &str, entries: &[String], from: ObjId, to: ObjId| -> Result<(Morphism, Vec<usize>)> {
            let f = cat.lookup_arrow(arrow)?;
            let (src, dst) = (&fibers[from.0], &fibers[to.0]);
            if entries.len() != src.names.len() {
                return Err(Error::ShapeMismatch(format!(
                    "table for {arrow} has {} entries, fiber over {} has {}",
                    entries.len(),
                    cat.object_name(from),
                    src.names.len()
                )));
            }
            let t = entries
                .iter()
                .map(|e| {
                    dst.names
                        .iter()
                        .position(|x| x == e)
                        .ok_or_else(|| Error::Parse(format!("unknown element `{e}` over {}", cat.object_name(to))))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((f, t))
        };

        let mut reindex = HashMap::new();
        for (name, entries) in &file.reindex {
            let f = cat.lookup_arrow(name)?;
            let (m, t) = table(name, entries, cat.cod(&f), cat.dom(&f))?;
            reindex.insert(m, t);
        }
        if let Some(f) = cat.arrows().find(|f| !reindex.contains_key(f)) {
            return Err(Error::Parse(format!("no reindexing table for arrow {}", cat.arrow_name(f))));
        }
        let mut exists = HashMap::new();
        for (name, entries) in &file.exists {
            let f = cat.lookup_arrow(name)?;
            let (m, t) = table(name, entries, cat.dom(&f), cat.cod(&f))?;
            exists.insert(m, t);
        }
        let mut forall = HashMap::new();
        for (name, entries) in &file.forall {
            let f = cat.lookup_arrow(name)?;
            let (m, t) = table(name, entries, cat.dom(&f), cat.cod(&f))?;
            forall.insert(m, t);
        }

        let doc = TabularDoctrine {
            cat,
            fibers,
            reindex,
            exists,
            forall,
            caps: file.capabilities,
        };
        doc.check_declared_tables()?;
        Ok(doc)
    }

    /// Parses and then verifies every doctrine law. A failure is returned as
    /// a [`Error::LawViolation`], functoriality failures first since the
    /// other laws presuppose them.
    pub fn load(file: &DoctrineFile) -> Result<Self> {
        let doc = Self::parse(file)?;
        let report = verify_doctrine(&doc, VerifyBounds::default());
        if let Some(fail) = report.failures().min_by_key(|e| !e.law.starts_with("functoriality")) {
            let mut detail = fail.detail.clone().unwrap_or_default();
            if let Some(cx) = &fail.counterexample {
                detail.push_str(&format!(" at {cx}"));
            }
            return Err(Error::law(fail.law.clone(), detail));
        }
        Ok(doc)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::load(&serde_json::from_str(text)?)
    }

    pub fn element_name(&self, a: ObjId, p: usize) -> &str {
        &self.fibers[a.0].names[p]
    }

    pub fn fiber_poset(&self, a: ObjId) -> &Poset {
        &self.fibers[a.0].order
    }

    fn check_declared_tables(&self) -> Result<()> {
        let cat = &self.cat;
        let objs = cat.objects();
        let need = |have: &HashMap<Morphism, Vec<usize>>, f: Morphism, what: &str| {
            if have.contains_key(&f) {
                Ok(())
            } else {
                Err(Error::law("capabilities", format!("{what} declared but no table for {}", cat.arrow_name(f))))
            }
        };
        for &a in &objs {
            for &b in &objs {
                if self.caps.exists_pr {
                    need(&self.exists, cat.pr1(a, b)?, "exists_pr")?;
                }
                if self.caps.forall_pr {
                    need(&self.forall, cat.pr1(a, b)?, "forall_pr")?;
                }
                if self.caps.exists_inj {
                    need(&self.exists, cat.inj1(a, b)?, "exists_inj")?;
                }
                if self.caps.forall_inj {
                    need(&self.forall, cat.inj1(a, b)?, "forall_inj")?;
                }
            }
        }
        for f in cat.arrows() {
            if self.caps.exists_any {
                need(&self.exists, f, "exists_any")?;
            }
            if self.caps.forall_any {
                need(&self.forall, f, "forall_any")?;
            }
        }
        Ok(())
    }

    fn check(&self, a: ObjId, p: usize) -> Result<()> {
        if p >= self.fibers[a.0].names.len() {
            return Err(Error::InvalidPredicate(format!("element {p} over {}", self.cat.object_name(a))));
        }
        Ok(())
    }

    fn along(&self, tables: &HashMap<Morphism, Vec<usize>>, f: Morphism, p: usize, what: &str) -> Result<usize> {
        self.check(self.cat.dom(&f), p)?;
        tables
            .get(&f)
            .map(|t| t[p])
            .ok_or_else(|| Error::missing(format!("{what} along {}", self.cat.arrow_name(f))))
    }

    fn extremum(&self, a: ObjId, top: bool) -> Result<usize> {
        let o = &self.fibers[a.0].order;
        let found = if top { o.top() } else { o.bottom() };
        found.ok_or_else(|| Error::missing(format!("{} in fiber over {}", if top { "top" } else { "bottom" }, self.cat.object_name(a))))
    }
}

impl Doctrine for TabularDoctrine {
    type Cat = GeneralFinCat;
    type Pred = usize;

    fn base(&self) -> &GeneralFinCat {
        &self.cat
    }

    fn caps(&self) -> DocCaps {
        self.caps
    }

    fn contains(&self, a: ObjId, p: &usize) -> bool {
        a.0 < self.fibers.len() && *p < self.fibers[a.0].names.len()
    }

    fn leq(&self, a: ObjId, p: &usize, q: &usize) -> Result<bool> {
        self.check(a, *p)?;
        self.check(a, *q)?;
        Ok(self.fibers[a.0].order.leq(*p, *q))
    }

    fn reindex(&self, f: &Morphism, p: &usize) -> Result<usize> {
        self.check(self.cat.cod(f), *p)?;
        Ok(self.reindex[f][*p])
    }

    fn enumerate_fiber(&self, a: ObjId, _bound: usize) -> Result<Vec<usize>> {
        Ok((0..self.fibers[a.0].names.len()).collect())
    }

    fn top(&self, a: ObjId) -> Result<usize> {
        self.extremum(a, true)
    }

    fn bottom(&self, a: ObjId) -> Result<usize> {
        self.extremum(a, false)
    }

    fn meet(&self, a: ObjId, p: &usize, q: &usize) -> Result<usize> {
        self.check(a, *p)?;
        self.check(a, *q)?;
        self.fibers[a.0]
            .order
            .meet(*p, *q)
            .ok_or_else(|| Error::missing(format!("meet in fiber over {}", self.cat.object_name(a))))
    }

    fn join(&self, a: ObjId, p: &usize, q: &usize) -> Result<usize> {
        self.check(a, *p)?;
        self.check(a, *q)?;
        self.fibers[a.0]
            .order
            .join(*p, *q)
            .ok_or_else(|| Error::missing(format!("join in fiber over {}", self.cat.object_name(a))))
    }

    fn exists_pr(&self, a1: ObjId, a2: ObjId, p: &usize) -> Result<usize> {
        self.along(&self.exists, self.cat.pr1(a1, a2)?, *p, "exists")
    }

    fn forall_pr(&self, a1: ObjId, a2: ObjId, p: &usize) -> Result<usize> {
        self.along(&self.forall, self.cat.pr1(a1, a2)?, *p, "forall")
    }

    fn exists_inj(&self, a: ObjId, b: ObjId, p: &usize) -> Result<usize> {
        self.along(&self.exists, self.cat.inj1(a, b)?, *p, "exists")
    }

    fn forall_inj(&self, a: ObjId, b: ObjId, p: &usize) -> Result<usize> {
        self.along(&self.forall, self.cat.inj1(a, b)?, *p, "forall")
    }

    fn exists_along(&self, f: &Morphism, p: &usize) -> Result<usize> {
        self.along(&self.exists, *f, *p, "exists")
    }

    fn forall_along(&self, f: &Morphism, p: &usize) -> Result<usize> {
        self.along(&self.forall, *f, *p, "forall")
    }

    fn pred_to_json(&self, a: ObjId, p: &usize) -> Value {
        Value::String(self.element_name(a, *p).to_string())
    }

    fn pred_from_json(&self, a: ObjId, v: &Value) -> Result<usize> {
        let name = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected an element name, found {v}")))?;
        self.fibers[a.0]
            .names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::Parse(format!("unknown element `{name}` over {}", self.cat.object_name(a))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    /// The terminal category with a two-element Boolean fiber and a single
    /// product `1 × 1 = 1`.
    fn point_doctrine() -> Value {
        json!({
            "category": {
                "objects": ["1"],
                "arrows": [{"name": "id", "dom": "1", "cod": "1"}],
                "identities": {"1": "id"},
                "products": [{"left": "1", "right": "1", "object": "1", "pr1": "id", "pr2": "id"}],
                "terminal": "1",
                "capabilities": {"products": true, "terminal": true}
            },
            "fibers": {"1": {"elements": ["f", "t"], "leq": [["f", "t"]]}},
            "reindex": {"id": ["f", "t"]},
            "exists": {"id": ["f", "t"]},
            "forall": {"id": ["f", "t"]},
            "capabilities": {"exists_pr": true, "forall_pr": true, "exists_any": true, "forall_any": true,
                             "meets": true, "joins": true}
        })
    }

    #[test]
    fn loads_valid_file() {
        let d = TabularDoctrine::load(&serde_json::from_value(point_doctrine()).unwrap()).unwrap();
        assert_eq!(d.top(ObjId(0)).unwrap(), 1);
        assert!(d.leq(ObjId(0), &0, &1).unwrap());
        assert_eq!(d.pred_from_json(ObjId(0), &json!("t")).unwrap(), 1);
    }

    #[test]
    fn broken_reindex_names_functoriality() {
        let mut v = point_doctrine();
        v["reindex"]["id"] = json!(["t", "t"]);
        let file: DoctrineFile = serde_json::from_value(v).unwrap();
        assert!(TabularDoctrine::parse(&file).is_ok());
        let err = TabularDoctrine::load(&file).unwrap_err();
        match err {
            Error::LawViolation { law, detail } => {
                assert!(law.starts_with("adjunction") || law.starts_with("functoriality"), "{law}");
                assert!(detail.contains('{'), "{detail}");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn wrong_quantifier_fails_adjunction() {
        let mut v = point_doctrine();
        v["exists"]["id"] = json!(["t", "t"]);
        let err = TabularDoctrine::load(&serde_json::from_value(v).unwrap()).unwrap_err();
        assert!(matches!(err, Error::LawViolation { ref law, .. } if law.starts_with("adjunction/exists")), "{err}");
    }

    #[test]
    fn rejects_cyclic_fiber_order() {
        let mut v = point_doctrine();
        v["fibers"]["1"]["leq"] = json!([["f", "t"], ["t", "f"]]);
        let err = TabularDoctrine::parse(&serde_json::from_value(v).unwrap()).unwrap_err();
        assert!(matches!(err, Error::LawViolation { ref law, .. } if law == "fiber order"), "{err}");
    }
}
