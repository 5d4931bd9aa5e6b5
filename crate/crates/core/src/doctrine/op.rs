use serde_json::Value;

use super::{Arrow, DocCaps, Doctrine};
use crate::error::Result;
use crate::fincat::ObjId;

/// The fiberwise opposite `(-)^op ∘ P`: same predicates, reversed order.
/// Meets and joins, tops and bottoms, and left and right adjoints swap roles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpDoctrine<D>(pub D);

impl<D> OpDoctrine<D> {
    pub fn new(inner: D) -> Self {
        OpDoctrine(inner)
    }

    pub fn inner(&self) -> &D {
        &self.0
    }

    pub fn into_inner(self) -> D {
        self.0
    }
}

impl<D: Doctrine> Doctrine for OpDoctrine<D> {
    type Cat = D::Cat;
    type Pred = D::Pred;

    fn base(&self) -> &Self::Cat {
        self.0.base()
    }

    fn caps(&self) -> DocCaps {
        self.0.caps().dual()
    }

    fn contains(&self, a: ObjId, p: &Self::Pred) -> bool {
        self.0.contains(a, p)
    }

    fn leq(&self, a: ObjId, p: &Self::Pred, q: &Self::Pred) -> Result<bool> {
        self.0.leq(a, q, p)
    }

    fn reindex(&self, f: &Arrow<Self>, p: &Self::Pred) -> Result<Self::Pred> {
        self.0.reindex(f, p)
    }

    fn enumerate_fiber(&self, a: ObjId, bound: usize) -> Result<Vec<Self::Pred>> {
        self.0.enumerate_fiber(a, bound)
    }

    fn top(&self, a: ObjId) -> Result<Self::Pred> {
        self.0.bottom(a)
    }

    fn bottom(&self, a: ObjId) -> Result<Self::Pred> {
        self.0.top(a)
    }

    fn meet(&self, a: ObjId, p: &Self::Pred, q: &Self::Pred) -> Result<Self::Pred> {
        self.0.join(a, p, q)
    }

    fn join(&self, a: ObjId, p: &Self::Pred, q: &Self::Pred) -> Result<Self::Pred> {
        self.0.meet(a, p, q)
    }

    fn exists_pr(&self, a1: ObjId, a2: ObjId, p: &Self::Pred) -> Result<Self::Pred> {
        self.0.forall_pr(a1, a2, p)
    }

    fn forall_pr(&self, a1: ObjId, a2: ObjId, p: &Self::Pred) -> Result<Self::Pred> {
        self.0.exists_pr(a1, a2, p)
    }

    fn exists_inj(&self, a: ObjId, b: ObjId, p: &Self::Pred) -> Result<Self::Pred> {
        self.0.forall_inj(a, b, p)
    }

    fn forall_inj(&self, a: ObjId, b: ObjId, p: &Self::Pred) -> Result<Self::Pred> {
        self.0.exists_inj(a, b, p)
    }

    fn exists_along(&self, f: &Arrow<Self>, p: &Self::Pred) -> Result<Self::Pred> {
        self.0.forall_along(f, p)
    }

    fn forall_along(&self, f: &Arrow<Self>, p: &Self::Pred) -> Result<Self::Pred> {
        self.0.exists_along(f, p)
    }

    fn pred_to_json(&self, a: ObjId, p: &Self::Pred) -> Value {
        self.0.pred_to_json(a, p)
    }

    fn pred_from_json(&self, a: ObjId, v: &Value) -> Result<Self::Pred> {
        self.0.pred_from_json(a, v)
    }
}
