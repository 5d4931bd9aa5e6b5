use std::fmt;

use fixedbitset::FixedBitSet;
use serde_json::Value;

use super::{DocCaps, Doctrine};
use crate::error::{Error, Result};
use crate::fincat::{Arrow, FinSet, FiniteCategory, ObjId};

/// A subset of the carrier `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(FixedBitSet);

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        Subset(s)
    }

    pub fn from_elems(n: usize, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = FixedBitSet::with_capacity(n);
        for e in elems {
            if e >= n {
                return Err(Error::InvalidPredicate(format!("element {e} outside a carrier of size {n}")));
            }
            s.insert(e);
        }
        Ok(Subset(s))
    }

    /// The subset whose members are the set bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        for i in 0..n.min(64) {
            if mask >> i & 1 == 1 {
                s.insert(i);
            }
        }
        Subset(s)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if f(i) {
                s.insert(i);
            }
        }
        Subset(s)
    }

    pub fn carrier(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn elems(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.0.clone();
        s.union_with(&other.0);
        Subset(s)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.0.clone();
        s.intersect_with(&other.0);
        Subset(s)
    }

    /// Preimage along `f`.
    pub fn preimage(&self, f: &Arrow) -> Subset {
        Subset::from_fn(f.dom.0, |x| self.contains(f.apply(x)))
    }

    /// Direct image along `f`.
    pub fn image(&self, f: &Arrow) -> Subset {
        let mut s = FixedBitSet::with_capacity(f.cod.0);
        for x in self.0.ones() {
            s.insert(f.apply(x));
        }
        Subset(s)
    }

    /// `{y | f⁻¹(y) ⊆ self}`.
    pub fn universal_image(&self, f: &Arrow) -> Subset {
        let mut out = Subset::full(f.cod.0);
        for x in 0..f.dom.0 {
            if !self.contains(x) {
                out.0.set(f.apply(x), false);
            }
        }
        out
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{}", self.elems(), self.carrier())
    }
}

/// The powerset doctrine on finite sets: `P(A)` is the Boolean lattice of
/// subsets of `A`, reindexing is preimage, and quantifiers along any arrow
/// are direct image and universal image.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PowersetDoctrine {
    base: FinSet,
}

impl PowersetDoctrine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        PowersetDoctrine {
            base: FinSet::with_budget(budget),
        }
    }

    fn check(&self, a: ObjId, p: &Subset) -> Result<()> {
        if p.carrier() != a.0 {
            return Err(Error::InvalidPredicate(format!(
                "subset of a {}-element carrier used over {}",
                p.carrier(),
                a.0
            )));
        }
        Ok(())
    }

    fn check_dom(&self, f: &Arrow, p: &Subset) -> Result<()> {
        self.check(f.dom, p)
    }
}

impl Doctrine for PowersetDoctrine {
    type Cat = FinSet;
    type Pred = Subset;

    fn base(&self) -> &FinSet {
        &self.base
    }

    fn caps(&self) -> DocCaps {
        DocCaps {
            exists_pr: true,
            forall_pr: true,
            exists_inj: true,
            forall_inj: true,
            exists_any: true,
            forall_any: true,
            meets: true,
            joins: true,
        }
    }

    fn contains(&self, a: ObjId, p: &Subset) -> bool {
        p.carrier() == a.0
    }

    fn leq(&self, a: ObjId, p: &Subset, q: &Subset) -> Result<bool> {
        self.check(a, p)?;
        self.check(a, q)?;
        Ok(p.is_subset(q))
    }

    fn reindex(&self, f: &Arrow, p: &Subset) -> Result<Subset> {
        self.check(f.cod, p)?;
        Ok(p.preimage(f))
    }

    fn enumerate_fiber(&self, a: ObjId, _bound: usize) -> Result<Vec<Subset>> {
        let n = a.0;
        if n >= 64 || (1u64 << n) > self.base.budget() {
            return Err(Error::budget(format!("fiber over {n}"), format!("2^{n}"), self.base.budget()));
        }
        Ok((0..1u64 << n).map(|m| Subset::from_mask(n, m)).collect())
    }

    fn top(&self, a: ObjId) -> Result<Subset> {
        Ok(Subset::full(a.0))
    }

    fn bottom(&self, a: ObjId) -> Result<Subset> {
        Ok(Subset::empty(a.0))
    }

    fn meet(&self, a: ObjId, p: &Subset, q: &Subset) -> Result<Subset> {
        self.check(a, p)?;
        self.check(a, q)?;
        Ok(p.intersection(q))
    }

    fn join(&self, a: ObjId, p: &Subset, q: &Subset) -> Result<Subset> {
        self.check(a, p)?;
        self.check(a, q)?;
        Ok(p.union(q))
    }

    fn exists_pr(&self, a1: ObjId, a2: ObjId, p: &Subset) -> Result<Subset> {
        self.exists_along(&self.base.pr1(a1, a2)?, p)
    }

    fn forall_pr(&self, a1: ObjId, a2: ObjId, p: &Subset) -> Result<Subset> {
        self.forall_along(&self.base.pr1(a1, a2)?, p)
    }

    fn exists_inj(&self, a: ObjId, b: ObjId, p: &Subset) -> Result<Subset> {
        self.exists_along(&self.base.inj1(a, b)?, p)
    }

    fn forall_inj(&self, a: ObjId, b: ObjId, p: &Subset) -> Result<Subset> {
        self.forall_along(&self.base.inj1(a, b)?, p)
    }

    fn exists_along(&self, f: &Arrow, p: &Subset) -> Result<Subset> {
        self.check_dom(f, p)?;
        Ok(p.image(f))
    }

    fn forall_along(&self, f: &Arrow, p: &Subset) -> Result<Subset> {
        self.check_dom(f, p)?;
        Ok(p.universal_image(f))
    }

    fn pred_to_json(&self, _a: ObjId, p: &Subset) -> Value {
        Value::from(p.elems())
    }

    fn pred_from_json(&self, a: ObjId, v: &Value) -> Result<Subset> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected a list of carrier elements, found {v}")))?;
        let elems = items
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| Error::Parse(format!("expected a carrier element, found {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Subset::from_elems(a.0, elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, e: &[usize]) -> Subset {
        Subset::from_elems(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn quantifiers_along_projection() {
        let p = PowersetDoctrine::new();
        let pr = p.base().pr1(ObjId(2), ObjId(2)).unwrap();
        // {(0,0),(0,1),(1,0)} encoded row-major.
        assert_eq!(p.forall_along(&pr, &set(4, &[0, 1, 2])).unwrap(), set(2, &[0]));
        // {(1,0)}
        assert_eq!(p.exists_along(&pr, &set(4, &[2])).unwrap(), set(2, &[1]));
    }

    #[test]
    fn reindex_identity() {
        let p = PowersetDoctrine::new();
        for n in 0..4 {
            let id = p.base().identity(ObjId(n));
            for s in p.enumerate_fiber(ObjId(n), 0).unwrap() {
                assert_eq!(p.reindex(&id, &s).unwrap(), s);
            }
        }
    }

    #[test]
    fn op_reverses_inclusion() {
        let op = super::super::OpDoctrine::new(PowersetDoctrine::new());
        let (u, v) = (set(2, &[0]), set(2, &[0, 1]));
        assert!(op.leq(ObjId(2), &v, &u).unwrap());
        assert!(!op.leq(ObjId(2), &u, &v).unwrap());
        assert_eq!(op.top(ObjId(2)).unwrap(), Subset::empty(2));
        let opop = super::super::OpDoctrine::new(op.clone());
        for x in p_fiber(2) {
            for y in p_fiber(2) {
                assert_eq!(opop.leq(ObjId(2), &x, &y).unwrap(), x.is_subset(&y));
            }
        }
    }

    fn p_fiber(n: usize) -> Vec<Subset> {
        PowersetDoctrine::new().enumerate_fiber(ObjId(n), 0).unwrap()
    }

    #[test]
    fn op_swaps_adjoints_by_galois_search() {
        use crate::poset::{left_adjoint_of, right_adjoint_of, MonotoneMap, Poset};
        let op = super::super::OpDoctrine::new(PowersetDoctrine::new());
        let base = FinSet::new();
        let f = base.pr1(ObjId(2), ObjId(1)).unwrap();
        let (fa, fd) = (p_fiber(2), p_fiber(2));
        let pa = Poset::from_fn(fa.len(), |i, j| op.leq(ObjId(2), &fa[i], &fa[j]).unwrap()).unwrap();
        let pd = pa.clone();
        let table = fa
            .iter()
            .map(|s| fd.iter().position(|t| *t == op.reindex(&f, s).unwrap()).unwrap())
            .collect();
        let reindex = MonotoneMap::new(pa, pd, table).unwrap();
        let left = left_adjoint_of(&reindex).unwrap();
        let right = right_adjoint_of(&reindex).unwrap();
        for (i, s) in fd.iter().enumerate() {
            assert_eq!(fa[left.apply(i)], op.exists_along(&f, s).unwrap());
            assert_eq!(fa[right.apply(i)], op.forall_along(&f, s).unwrap());
            // In the op doctrine the left adjoint is the universal image.
            assert_eq!(op.exists_along(&f, s).unwrap(), s.universal_image(&f));
        }
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let p = PowersetDoctrine::new();
        let s = set(4, &[1, 3]);
        let v = p.pred_to_json(ObjId(4), &s);
        assert_eq!(p.pred_from_json(ObjId(4), &v).unwrap(), s);
        assert!(p.pred_from_json(ObjId(2), &v).is_err());
    }
}
