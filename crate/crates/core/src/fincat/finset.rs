use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{CatCaps, FiniteCategory, ObjId};
use crate::error::{Error, Result};

/// Default cap on candidate arrows enumerated per hom-set.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A function between finite carriers, given by its value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub dom: ObjId,
    pub cod: ObjId,
    pub table: Vec<usize>,
}

impl Arrow {
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom {
            return Err(Error::InvalidArrow(format!(
                "table of length {} for domain of size {dom}",
                table.len()
            )));
        }
        if let Some(v) = table.iter().find(|&&v| v >= cod) {
            return Err(Error::InvalidArrow(format!("value {v} outside codomain of size {cod}")));
        }
        Ok(Arrow {
            dom: ObjId(dom),
            cod: ObjId(cod),
            table,
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }
}

/// The skeletal category of finite sets. Object `n` is `{0, .., n-1}`.
///
/// Encodings:
/// * `A × B`: `(a, b) ↦ a·|B| + b`,
/// * `A + B`: left `a ↦ a`, right `b ↦ |A| + b`,
/// * `B^A`: a function `g` is ranked lexicographically by its value tuple,
///   position 0 most significant, i.e. `Σ g(i)·|B|^(|A|-1-i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSet {
    budget: u64,
}

impl Default for FinSet {
    fn default() -> Self {
        FinSet {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl FinSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        FinSet { budget }
    }

    pub fn card(a: ObjId) -> usize {
        a.0
    }

    fn carrier(&self, n: u128, what: impl FnOnce() -> String) -> Result<ObjId> {
        if n > self.budget as u128 {
            return Err(Error::budget(what(), n, self.budget));
        }
        Ok(ObjId(n as usize))
    }

    fn check_obj(&self, f: &Arrow, expected: ObjId, role: &str) -> Result<()> {
        if f.dom != expected {
            return Err(Error::ObjectMismatch {
                expected: format!("{role} {}", expected.0),
                found: f.dom.0.to_string(),
            });
        }
        Ok(())
    }

    /// Rank of the function table `g: A -> B` in the exponential `B^A`.
    pub fn exp_rank(b: usize, g: &[usize]) -> usize {
        g.iter().fold(0, |acc, &v| acc * b + v)
    }

    /// The function table of rank `r` in `B^A`.
    pub fn exp_unrank(b: usize, a: usize, mut r: usize) -> Vec<usize> {
        let mut out = vec![0; a];
        for i in (0..a).rev() {
            out[i] = r % b.max(1);
            r /= b.max(1);
        }
        out
    }
}

struct Odometer {
    dom: usize,
    cod: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Odometer {
    type Item = Arrow;

    fn next(&mut self) -> Option<Arrow> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = self.dom;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.cod {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Arrow {
            dom: ObjId(self.dom),
            cod: ObjId(self.cod),
            table: cur,
        })
    }
}

impl FiniteCategory for FinSet {
    type Arrow = Arrow;

    fn has_object(&self, _a: ObjId) -> bool {
        true
    }

    fn objects_up_to(&self, bound: usize) -> Vec<ObjId> {
        (0..=bound).map(ObjId).collect()
    }

    fn object_name(&self, a: ObjId) -> String {
        a.0.to_string()
    }

    fn lookup_object(&self, name: &str) -> Result<ObjId> {
        name.trim()
            .parse::<usize>()
            .map(ObjId)
            .map_err(|_| Error::UnknownObject(name.to_string()))
    }

    fn arrow_to_json(&self, f: &Arrow) -> Value {
        json!({ "dom": f.dom.0, "cod": f.cod.0, "table": f.table })
    }

    fn arrow_from_json(&self, v: &Value) -> Result<Arrow> {
        #[derive(Deserialize)]
        struct Raw {
            dom: usize,
            cod: usize,
            table: Vec<usize>,
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        Arrow::new(raw.dom, raw.cod, raw.table)
    }

    fn budget(&self) -> u64 {
        self.budget
    }

    fn dom(&self, f: &Arrow) -> ObjId {
        f.dom
    }

    fn cod(&self, f: &Arrow) -> ObjId {
        f.cod
    }

    fn identity(&self, a: ObjId) -> Arrow {
        Arrow {
            dom: a,
            cod: a,
            table: (0..a.0).collect(),
        }
    }

    fn compose(&self, g: &Arrow, f: &Arrow) -> Result<Arrow> {
        if f.cod != g.dom {
            return Err(Error::NotComposable(format!(
                "codomain {} does not match domain {}",
                f.cod.0, g.dom.0
            )));
        }
        Ok(Arrow {
            dom: f.dom,
            cod: g.cod,
            table: f.table.iter().map(|&x| g.table[x]).collect(),
        })
    }

    fn hom_size(&self, a: ObjId, b: ObjId) -> Option<u128> {
        (b.0 as u128).checked_pow(u32::try_from(a.0).ok()?)
    }

    fn hom_iter(&self, a: ObjId, b: ObjId) -> Result<Box<dyn Iterator<Item = Arrow> + '_>> {
        match self.hom_size(a, b) {
            Some(n) if n <= self.budget as u128 => {}
            n => {
                return Err(Error::budget(
                    format!("Hom({}, {})", a.0, b.0),
                    n.map(|n| n.to_string()).unwrap_or_else(|| format!("{}^{}", b.0, a.0)),
                    self.budget,
                ))
            }
        }
        let start = if a.0 > 0 && b.0 == 0 {
            None
        } else {
            Some(vec![0; a.0])
        };
        Ok(Box::new(Odometer {
            dom: a.0,
            cod: b.0,
            next: start,
        }))
    }

    fn caps(&self) -> CatCaps {
        CatCaps::all()
    }

    fn product(&self, a: ObjId, b: ObjId) -> Result<ObjId> {
        self.carrier(a.0 as u128 * b.0 as u128, || format!("carrier {}×{}", a.0, b.0))
    }

    fn pr1(&self, a: ObjId, b: ObjId) -> Result<Arrow> {
        let ab = self.product(a, b)?;
        Ok(Arrow {
            dom: ab,
            cod: a,
            table: (0..ab.0).map(|i| i / b.0).collect(),
        })
    }

    fn pr2(&self, a: ObjId, b: ObjId) -> Result<Arrow> {
        let ab = self.product(a, b)?;
        Ok(Arrow {
            dom: ab,
            cod: b,
            table: (0..ab.0).map(|i| i % b.0).collect(),
        })
    }

    fn pair(&self, f: &Arrow, g: &Arrow) -> Result<Arrow> {
        self.check_obj(g, f.dom, "pairing domain")?;
        let cod = self.product(f.cod, g.cod)?;
        let width = g.cod.0;
        Ok(Arrow {
            dom: f.dom,
            cod,
            table: f
                .table
                .iter()
                .zip(&g.table)
                .map(|(&x, &y)| x * width + y)
                .collect(),
        })
    }

    fn terminal(&self) -> Result<ObjId> {
        Ok(ObjId(1))
    }

    fn bang(&self, a: ObjId) -> Result<Arrow> {
        Ok(Arrow {
            dom: a,
            cod: ObjId(1),
            table: vec![0; a.0],
        })
    }

    fn initial(&self) -> Result<ObjId> {
        Ok(ObjId(0))
    }

    fn from_initial(&self, a: ObjId) -> Result<Arrow> {
        Ok(Arrow {
            dom: ObjId(0),
            cod: a,
            table: vec![],
        })
    }

    fn coproduct(&self, a: ObjId, b: ObjId) -> Result<ObjId> {
        self.carrier(a.0 as u128 + b.0 as u128, || format!("carrier {}+{}", a.0, b.0))
    }

    fn inj1(&self, a: ObjId, b: ObjId) -> Result<Arrow> {
        let ab = self.coproduct(a, b)?;
        Ok(Arrow {
            dom: a,
            cod: ab,
            table: (0..a.0).collect(),
        })
    }

    fn inj2(&self, a: ObjId, b: ObjId) -> Result<Arrow> {
        let ab = self.coproduct(a, b)?;
        Ok(Arrow {
            dom: b,
            cod: ab,
            table: (0..b.0).map(|i| a.0 + i).collect(),
        })
    }

    fn copair(&self, f: &Arrow, g: &Arrow) -> Result<Arrow> {
        if f.cod != g.cod {
            return Err(Error::ObjectMismatch {
                expected: format!("copairing codomain {}", f.cod.0),
                found: g.cod.0.to_string(),
            });
        }
        let dom = self.coproduct(f.dom, g.dom)?;
        let mut table = f.table.clone();
        table.extend_from_slice(&g.table);
        Ok(Arrow {
            dom,
            cod: f.cod,
            table,
        })
    }

    fn exponential(&self, b: ObjId, a: ObjId) -> Result<ObjId> {
        let n = u32::try_from(a.0)
            .ok()
            .and_then(|e| (b.0 as u128).checked_pow(e))
            .unwrap_or(u128::MAX);
        self.carrier(n, || format!("carrier {}^{}", b.0, a.0))
    }

    fn eval(&self, b: ObjId, a: ObjId) -> Result<Arrow> {
        let exp = self.exponential(b, a)?;
        let dom = self.product(a, exp)?;
        let table = (0..dom.0)
            .map(|i| {
                let (x, r) = (i / exp.0, i % exp.0);
                FinSet::exp_unrank(b.0, a.0, r)[x]
            })
            .collect();
        Ok(Arrow { dom, cod: b, table })
    }

    fn point(&self, a: ObjId) -> Result<Option<Arrow>> {
        Ok((a.0 > 0).then(|| Arrow {
            dom: ObjId(1),
            cod: a,
            table: vec![0],
        }))
    }

    fn transpose(&self, x: ObjId, a: ObjId, f: &Arrow) -> Result<Arrow> {
        let expected = self.product(x, a)?;
        if f.dom != expected {
            return Err(Error::ObjectMismatch {
                expected: format!("transpose domain {}", expected.0),
                found: f.dom.0.to_string(),
            });
        }
        let b = f.cod;
        let exp = self.exponential(b, a)?;
        let table = (0..x.0)
            .map(|xi| FinSet::exp_rank(b.0, &f.table[xi * a.0..(xi + 1) * a.0]))
            .collect();
        Ok(Arrow {
            dom: x,
            cod: exp,
            table,
        })
    }

    fn untranspose(&self, x: ObjId, a: ObjId, b: ObjId, h: &Arrow) -> Result<Arrow> {
        let exp = self.exponential(b, a)?;
        if h.dom != x || h.cod != exp {
            return Err(Error::ObjectMismatch {
                expected: format!("arrow {} -> {}", x.0, exp.0),
                found: format!("arrow {} -> {}", h.dom.0, h.cod.0),
            });
        }
        let dom = self.product(x, a)?;
        let mut table = Vec::with_capacity(dom.0);
        for &r in &h.table {
            table.extend(FinSet::exp_unrank(b.0, a.0, r));
        }
        Ok(Arrow { dom, cod: b, table })
    }

    fn swap(&self, a: ObjId, b: ObjId) -> Result<Arrow> {
        let ab = self.product(a, b)?;
        let ba = self.product(b, a)?;
        Ok(Arrow {
            dom: ab,
            cod: ba,
            table: (0..ab.0).map(|i| (i % b.0) * a.0 + i / b.0).collect(),
        })
    }

    fn theta(&self, a: ObjId, b: ObjId, c: ObjId) -> Result<Arrow> {
        let ab = self.product(a, b)?;
        let ac = self.product(a, c)?;
        let dom = self.coproduct(ab, ac)?;
        let bc = self.coproduct(b, c)?;
        let cod = self.product(a, bc)?;
        let mut table = Vec::with_capacity(dom.0);
        for i in 0..ab.0 {
            table.push((i / b.0) * bc.0 + i % b.0);
        }
        for i in 0..ac.0 {
            table.push((i / c.0) * bc.0 + b.0 + i % c.0);
        }
        Ok(Arrow { dom, cod, table })
    }

    fn theta_inv(&self, a: ObjId, b: ObjId, c: ObjId) -> Result<Arrow> {
        let th = self.theta(a, b, c)?;
        let mut table = vec![0; th.cod.0];
        for (i, &v) in th.table.iter().enumerate() {
            table[v] = i;
        }
        Ok(Arrow {
            dom: th.cod,
            cod: th.dom,
            table,
        })
    }

    fn inverse(&self, f: &Arrow) -> Result<Arrow> {
        let mut table = vec![usize::MAX; f.cod.0];
        if f.dom != f.cod {
            return Err(Error::InvalidArrow(format!("{f:?} is not an isomorphism")));
        }
        for (i, &v) in f.table.iter().enumerate() {
            if table[v] != usize::MAX {
                return Err(Error::InvalidArrow(format!("{f:?} is not an isomorphism")));
            }
            table[v] = i;
        }
        Ok(Arrow {
            dom: f.cod,
            cod: f.dom,
            table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set() -> FinSet {
        FinSet::new()
    }

    fn arrow(dom: usize, cod: usize, t: &[usize]) -> Arrow {
        Arrow::new(dom, cod, t.to_vec()).unwrap()
    }

    #[test]
    fn hom_enumeration_small_cases() {
        let c = set();
        let tables = |a, b| -> Vec<Vec<usize>> {
            c.enumerate_hom(ObjId(a), ObjId(b))
                .unwrap()
                .into_iter()
                .map(|f| f.table)
                .collect()
        };
        assert_eq!(tables(1, 2), vec![vec![0], vec![1]]);
        assert_eq!(tables(2, 1), vec![vec![0, 0]]);
        assert_eq!(tables(0, 3), vec![Vec::<usize>::new()]);
        assert_eq!(tables(2, 0), Vec::<Vec<usize>>::new());
        assert_eq!(tables(0, 0), vec![Vec::<usize>::new()]);
        assert_eq!(tables(3, 2).len(), 8);
    }

    #[test]
    fn hom_enumeration_is_lexicographic() {
        let c = set();
        let homs = c.enumerate_hom(ObjId(3), ObjId(3)).unwrap();
        assert_eq!(homs.len(), 27);
        assert!(homs.windows(2).all(|w| w[0].table < w[1].table));
    }

    #[test]
    fn hom_budget_is_a_hard_error() {
        let c = FinSet::with_budget(100);
        assert!(c.hom_iter(ObjId(7), ObjId(2)).err().unwrap().is_budget());
        assert!(c.hom_iter(ObjId(6), ObjId(2)).is_ok());
    }

    #[test]
    fn pairing_examples() {
        let c = set();
        let id2 = c.identity(ObjId(2));
        assert_eq!(c.pair(&id2, &id2).unwrap(), arrow(2, 4, &[0, 3]));
        let to_one = arrow(2, 1, &[0, 0]);
        assert_eq!(c.pair(&to_one, &id2).unwrap(), arrow(2, 2, &[0, 1]));
        let f = arrow(2, 2, &[1, 0]);
        let g = arrow(2, 2, &[0, 0]);
        assert_eq!(c.pair(&f, &g).unwrap(), arrow(2, 4, &[2, 0]));
    }

    #[test]
    fn pairing_domain_mismatch() {
        let c = set();
        let err = c.pair(&c.identity(ObjId(2)), &c.identity(ObjId(3))).unwrap_err();
        assert!(matches!(err, Error::ObjectMismatch { .. }));
    }

    #[test]
    fn pairing_projections_recover_components() {
        let c = set();
        for f in c.enumerate_hom(ObjId(2), ObjId(3)).unwrap() {
            for g in c.enumerate_hom(ObjId(2), ObjId(2)).unwrap() {
                let p = c.pair(&f, &g).unwrap();
                assert_eq!(c.compose(&c.pr1(ObjId(3), ObjId(2)).unwrap(), &p).unwrap(), f);
                assert_eq!(c.compose(&c.pr2(ObjId(3), ObjId(2)).unwrap(), &p).unwrap(), g);
            }
        }
    }

    #[test]
    fn theta_examples() {
        let c = set();
        let th = c.theta(ObjId(1), ObjId(1), ObjId(1)).unwrap();
        assert_eq!(th, c.identity(ObjId(2)));

        // A=2, B=C=1: (2×1)+(2×1) = 4 -> 2×(1+1) = 4.
        // Left (a,0) ↦ (a, left 0) = 2a; right (a,0) ↦ (a, right 0) = 2a+1.
        let th = c.theta(ObjId(2), ObjId(1), ObjId(1)).unwrap();
        assert_eq!(th.table, vec![0, 2, 1, 3]);
        let inv = c.theta_inv(ObjId(2), ObjId(1), ObjId(1)).unwrap();
        assert_eq!(inv.table, vec![0, 2, 1, 3]);
        assert_eq!(c.compose(&th, &inv).unwrap(), c.identity(ObjId(4)));
        assert_eq!(c.compose(&inv, &th).unwrap(), c.identity(ObjId(4)));

        let th = c.theta(ObjId(0), ObjId(2), ObjId(3)).unwrap();
        assert_eq!(th, arrow(0, 0, &[]));
    }

    #[test]
    fn theta_right_matches_generic_definition() {
        let c = set();
        for (a, b, d) in [(1, 2, 2), (2, 1, 3), (2, 2, 2), (0, 2, 1)] {
            let (a, b, d) = (ObjId(a), ObjId(b), ObjId(d));
            let tr = c.theta_right(a, b, d).unwrap();
            let inv = c.theta_right_inv(a, b, d).unwrap();
            assert_eq!(c.compose(&tr, &inv).unwrap(), c.identity(tr.cod));
            assert_eq!(c.compose(&inv, &tr).unwrap(), c.identity(tr.dom));
            // left summand (x, d) goes to (left x, d)
            for x in 0..a.0 {
                for y in 0..d.0 {
                    assert_eq!(tr.apply(x * d.0 + y), x * d.0 + y);
                }
            }
        }
    }

    #[test]
    fn transpose_examples() {
        let c = set();
        // pr_A: 1×2 -> 2 curries to the identity function's point in 2^2.
        let pr = c.pr2(ObjId(1), ObjId(2)).unwrap();
        let t = c.transpose(ObjId(1), ObjId(2), &pr).unwrap();
        assert_eq!(t, arrow(1, 4, &[FinSet::exp_rank(2, &[0, 1])]));
        assert_eq!(t.table, vec![1]);

        // constant 0: 1×2 -> 2 is the rank of [0,0], namely 0.
        let k = arrow(2, 2, &[0, 0]);
        assert_eq!(c.transpose(ObjId(1), ObjId(2), &k).unwrap().table, vec![0]);

        // Every point of 2^2 round-trips.
        for h in c.enumerate_hom(ObjId(1), ObjId(4)).unwrap() {
            let f = c.untranspose(ObjId(1), ObjId(2), ObjId(2), &h).unwrap();
            assert_eq!(c.transpose(ObjId(1), ObjId(2), &f).unwrap(), h);
        }
    }

    #[test]
    fn transpose_agrees_with_eval() {
        let c = set();
        let (x, a, b) = (ObjId(2), ObjId(2), ObjId(3));
        let xa = c.product(x, a).unwrap();
        let ev = c.eval(b, a).unwrap();
        for f in c.enumerate_hom(xa, b).unwrap() {
            let h = c.transpose(x, a, &f).unwrap();
            let lifted = c.product_map(&c.identity(a), &h).unwrap();
            let lhs = c.compose(&ev, &lifted).unwrap();
            let rhs = c.compose(&f, &c.swap(a, x).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn assoc_is_identity_on_skeletal_encoding() {
        let c = set();
        let a = c.assoc(ObjId(2), ObjId(3), ObjId(2)).unwrap();
        assert_eq!(a, c.identity(ObjId(12)));
        let a = c.assoc_inv(ObjId(2), ObjId(3), ObjId(2)).unwrap();
        assert_eq!(a, c.identity(ObjId(12)));
    }

    #[test]
    fn swap_agrees_with_generic_pairing() {
        let c = set();
        let (a, b) = (ObjId(2), ObjId(3));
        let generic = c.pair(&c.pr2(a, b).unwrap(), &c.pr1(a, b).unwrap()).unwrap();
        assert_eq!(c.swap(a, b).unwrap(), generic);
    }
}
