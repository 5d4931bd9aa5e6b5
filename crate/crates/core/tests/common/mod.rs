//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use quantcomp::completion::{Completion, QuantElem};
use quantcomp::doctrine::{DocCaps, Doctrine, PowersetDoctrine, Subset};
use quantcomp::fincat::{Arrow, FinSet, ObjId};
use quantcomp::Result;
use serde_json::Value;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Every function `n -> m` as a table, in lexicographic order.
pub fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut t = vec![0; n];
    loop {
        out.push(t.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < m {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Subsets of a triple's predicate, read as `(a, b) ∈ α`.
pub fn has(x: &QuantElem<Subset>, a: usize, b: usize) -> bool {
    x.pred.contains(a * x.qobj.0 + b)
}

/// Existential order on subsets: some `f: A×B -> C` sends every
/// `(a, b) ∈ α` to `(a, f(a, b)) ∈ β`.
pub fn ex_leq_brute(x: &QuantElem<Subset>, y: &QuantElem<Subset>) -> bool {
    let (a, b, c) = (x.base.0, x.qobj.0, y.qobj.0);
    functions(a * b, c).iter().any(|f| {
        (0..a).all(|i| (0..b).all(|j| !has(x, i, j) || has(y, i, f[i * b + j])))
    })
}

/// Universal order on subsets: some `g: A×C -> B` with
/// `(a, g(a, c)) ∈ α ⇒ (a, c) ∈ β`.
pub fn un_leq_brute(x: &QuantElem<Subset>, y: &QuantElem<Subset>) -> bool {
    let (a, b, c) = (x.base.0, x.qobj.0, y.qobj.0);
    functions(a * c, b).iter().any(|g| {
        (0..a).all(|i| (0..c).all(|k| !has(x, i, g[i * c + k]) || has(y, i, k)))
    })
}

/// Dialectica order on subsets: some `f: B -> B'`, `F: B×C' -> C` with
/// `(b, F(b, c')) ∈ α ⇒ (f(b), c') ∈ β`.
pub fn dial_leq_brute(u: (usize, usize, &Subset), v: (usize, usize, &Subset)) -> bool {
    let ((b, c, alpha), (b2, c2, beta)) = (u, v);
    functions(b, b2).iter().any(|f| {
        functions(b * c2, c).iter().any(|ff| {
            (0..b).all(|i| (0..c2).all(|k| !alpha.contains(i * c + ff[i * c2 + k]) || beta.contains(f[i] * c2 + k)))
        })
    })
}

/// The powerset doctrine with `∃_pr` and `∀_pr` exchanged.
#[derive(Clone, Debug, Default)]
pub struct SwappedAdjoints(pub PowersetDoctrine);

impl Doctrine for SwappedAdjoints {
    type Cat = FinSet;
    type Pred = Subset;

    fn base(&self) -> &FinSet {
        self.0.base()
    }
    fn caps(&self) -> DocCaps {
        DocCaps {
            exists_pr: true,
            forall_pr: true,
            ..DocCaps::default()
        }
    }
    fn contains(&self, a: ObjId, p: &Subset) -> bool {
        self.0.contains(a, p)
    }
    fn leq(&self, a: ObjId, p: &Subset, q: &Subset) -> Result<bool> {
        self.0.leq(a, p, q)
    }
    fn reindex(&self, f: &Arrow, p: &Subset) -> Result<Subset> {
        self.0.reindex(f, p)
    }
    fn enumerate_fiber(&self, a: ObjId, bound: usize) -> Result<Vec<Subset>> {
        self.0.enumerate_fiber(a, bound)
    }
    fn top(&self, a: ObjId) -> Result<Subset> {
        self.0.top(a)
    }
    fn bottom(&self, a: ObjId) -> Result<Subset> {
        self.0.bottom(a)
    }
    fn meet(&self, a: ObjId, p: &Subset, q: &Subset) -> Result<Subset> {
        self.0.meet(a, p, q)
    }
    fn join(&self, a: ObjId, p: &Subset, q: &Subset) -> Result<Subset> {
        self.0.join(a, p, q)
    }
    fn exists_pr(&self, a1: ObjId, a2: ObjId, p: &Subset) -> Result<Subset> {
        self.0.forall_pr(a1, a2, p)
    }
    fn forall_pr(&self, a1: ObjId, a2: ObjId, p: &Subset) -> Result<Subset> {
        self.0.exists_pr(a1, a2, p)
    }
    fn exists_inj(&self, a: ObjId, b: ObjId, p: &Subset) -> Result<Subset> {
        self.0.exists_inj(a, b, p)
    }
    fn forall_inj(&self, a: ObjId, b: ObjId, p: &Subset) -> Result<Subset> {
        self.0.forall_inj(a, b, p)
    }
    fn pred_to_json(&self, a: ObjId, p: &Subset) -> Value {
        self.0.pred_to_json(a, p)
    }
    fn pred_from_json(&self, a: ObjId, v: &Value) -> Result<Subset> {
        self.0.pred_from_json(a, v)
    }
}

/// A multiplication that flattens correctly but forgets the predicate.
pub fn sabotaged_mult(
    cc: &Completion<Completion<PowersetDoctrine>>,
    z: &QuantElem<QuantElem<Subset>>,
) -> Result<QuantElem<Subset>> {
    let mut m = cc.mult_q(z)?;
    m.pred = Subset::empty(m.pred.carrier());
    Ok(m)
}
