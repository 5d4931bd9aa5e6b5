//! Poset-valued doctrines over finite base categories.
//!
//! A doctrine assigns to each object `A` a poset of predicates and to each
//! arrow `f: D -> A` a monotone reindexing map from predicates on `A` to
//! predicates on `D`. Fibers are presented intensionally: elements are
//! compared with [`Doctrine::leq`] and enumerated only on demand, since the
//! fibers of a completion are infinite.

mod op;
mod powerset;
mod tabular;
mod verify;

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, ObjId};
use crate::poset::Preorder;

pub use op::OpDoctrine;
pub use powerset::{PowersetDoctrine, Subset};
pub use tabular::{DoctrineFile, TabularDoctrine};
pub use verify::{verify_doctrine, verify_doctrine_laws, VerifyBounds};

type Arrow<D> = <<D as Doctrine>::Cat as FiniteCategory>::Arrow;

/// Which optional structure a doctrine provides.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct DocCaps {
    /// Left adjoints to reindexing along product projections.
    pub exists_pr: bool,
    /// Right adjoints to reindexing along product projections.
    pub forall_pr: bool,
    /// Left adjoints to reindexing along coproduct injections `A -> A+B`.
    pub exists_inj: bool,
    pub forall_inj: bool,
    /// Left adjoints along every arrow.
    pub exists_any: bool,
    pub forall_any: bool,
    /// Binary meets and a top element in every fiber.
    pub meets: bool,
    /// Binary joins and a bottom element in every fiber.
    pub joins: bool,
}

impl DocCaps {
    pub fn lat_fibers(&self) -> bool {
        self.meets && self.joins
    }

    /// The capabilities of the opposite doctrine.
    pub fn dual(&self) -> Self {
        DocCaps {
            exists_pr: self.forall_pr,
            forall_pr: self.exists_pr,
            exists_inj: self.forall_inj,
            forall_inj: self.exists_inj,
            exists_any: self.forall_any,
            forall_any: self.exists_any,
            meets: self.joins,
            joins: self.meets,
        }
    }
}

/// A poset-valued doctrine `P: C^op -> Pos`.
///
/// Predicates do not carry their object; every operation is told which fiber
/// it works in.
pub trait Doctrine {
    type Cat: FiniteCategory;
    type Pred: Clone + Eq + Hash + Ord + Debug;

    fn base(&self) -> &Self::Cat;
    fn caps(&self) -> DocCaps;

    /// Is `p` a well-formed element of the fiber over `a`?
    fn contains(&self, a: ObjId, p: &Self::Pred) -> bool;
    fn leq(&self, a: ObjId, p: &Self::Pred, q: &Self::Pred) -> Result<bool>;
    /// `P_f`, from the fiber over `cod f` to the fiber over `dom f`.
    fn reindex(&self, f: &Arrow<Self>, p: &Self::Pred) -> Result<Self::Pred>;
    /// Elements of the fiber over `a`, in canonical order. Infinite fibers
    /// are cut down to a finite sub-preorder controlled by `bound`.
    fn enumerate_fiber(&self, a: ObjId, bound: usize) -> Result<Vec<Self::Pred>>;

    fn top(&self, a: ObjId) -> Result<Self::Pred>;
    fn bottom(&self, a: ObjId) -> Result<Self::Pred>;
    fn meet(&self, a: ObjId, p: &Self::Pred, q: &Self::Pred) -> Result<Self::Pred>;
    fn join(&self, a: ObjId, p: &Self::Pred, q: &Self::Pred) -> Result<Self::Pred>;

    /// `∃_{pr}`: from the fiber over `a1 × a2` to the fiber over `a1`.
    fn exists_pr(&self, a1: ObjId, a2: ObjId, p: &Self::Pred) -> Result<Self::Pred>;
    /// `∀_{pr}`: from the fiber over `a1 × a2` to the fiber over `a1`.
    fn forall_pr(&self, a1: ObjId, a2: ObjId, p: &Self::Pred) -> Result<Self::Pred>;
    /// `∃_{j}`: from the fiber over `a` to the fiber over `a + b`.
    fn exists_inj(&self, a: ObjId, b: ObjId, p: &Self::Pred) -> Result<Self::Pred>;
    fn forall_inj(&self, a: ObjId, b: ObjId, p: &Self::Pred) -> Result<Self::Pred>;

    fn exists_along(&self, f: &Arrow<Self>, p: &Self::Pred) -> Result<Self::Pred> {
        let _ = (f, p);
        Err(Error::missing("existential quantifier along arbitrary arrows"))
    }

    fn forall_along(&self, f: &Arrow<Self>, p: &Self::Pred) -> Result<Self::Pred> {
        let _ = (f, p);
        Err(Error::missing("universal quantifier along arbitrary arrows"))
    }

    fn pred_to_json(&self, a: ObjId, p: &Self::Pred) -> Value;
    fn pred_from_json(&self, a: ObjId, v: &Value) -> Result<Self::Pred>;

    fn equiv(&self, a: ObjId, p: &Self::Pred, q: &Self::Pred) -> Result<bool> {
        Ok(p == q || (self.leq(a, p, q)? && self.leq(a, q, p)?))
    }

    /// The preorder on an explicit list of elements of one fiber.
    fn fiber_preorder(&self, a: ObjId, elems: &[Self::Pred]) -> Result<Preorder> {
        let n = elems.len();
        let mut rel = Vec::with_capacity(n * n);
        for p in elems {
            for q in elems {
                rel.push(p == q || self.leq(a, p, q)?);
            }
        }
        Preorder::new(n, rel)
    }
}
