//! Finite preorders and posets, monotone maps, Galois-connection search,
//! poset reflection and lattice checks.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// A reflexive, transitive relation on `{0, .., n-1}` stored as a dense
/// boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Preorder {
    n: usize,
    rel: Vec<bool>,
}

impl Preorder {
    /// Validates reflexivity and transitivity.
    pub fn new(n: usize, rel: Vec<bool>) -> Result<Self> {
        if rel.len() != n * n {
            return Err(Error::ShapeMismatch(format!("relation of length {} for {} elements", rel.len(), n)));
        }
        let p = Preorder { n, rel };
        for i in 0..n {
            if !p.leq(i, i) {
                return Err(Error::law("reflexivity", format!("{i} is not below itself")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !p.leq(i, j) {
                    continue;
                }
                for k in 0..n {
                    if p.leq(j, k) && !p.leq(i, k) {
                        return Err(Error::law("transitivity", format!("{i} <= {j} <= {k} but not {i} <= {k}")));
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn from_fn(n: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut rel = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                rel.push(leq(i, j));
            }
        }
        Self::new(n, rel)
    }

    /// Reflexive-transitive closure of an arbitrary relation.
    pub fn closure(n: usize, mut rel: Vec<bool>) -> Result<Self> {
        if rel.len() != n * n {
            return Err(Error::ShapeMismatch(format!("relation of length {} for {} elements", rel.len(), n)));
        }
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Ok(Preorder { n, rel })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.n + j]
    }

    pub fn equiv(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && self.leq(j, i)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| !self.equiv(i, j)))
    }

    pub fn relation(&self) -> &[bool] {
        &self.rel
    }

    /// Hasse diagram of the reflection, nodes labelled by the label of each
    /// class representative.
    pub fn to_dot(&self, labels: &[String]) -> String {
        let (p, q) = poset_reflect(self);
        let reps = representatives(&q, p.len());
        let class_labels: Vec<String> = reps
            .iter()
            .map(|&r| labels.get(r).cloned().unwrap_or_else(|| r.to_string()))
            .collect();
        p.to_dot(&class_labels)
    }
}

/// A finite partial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset(Preorder);

impl Poset {
    pub fn new(n: usize, rel: Vec<bool>) -> Result<Self> {
        Self::from_preorder(Preorder::new(n, rel)?)
    }

    pub fn from_fn(n: usize, leq: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        Self::from_preorder(Preorder::from_fn(n, leq)?)
    }

    pub fn from_preorder(p: Preorder) -> Result<Self> {
        for i in 0..p.n {
            for j in 0..i {
                if p.equiv(i, j) {
                    return Err(Error::law("antisymmetry", format!("{i} and {j} are distinct but equivalent")));
                }
            }
        }
        Ok(Poset(p))
    }

    /// The `n`-element chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        Poset(Preorder::from_fn(n, |i, j| i <= j).expect("chains are posets"))
    }

    /// Subsets of an `n`-element set ordered by inclusion, encoded as bitmasks.
    pub fn boolean(n: u32) -> Self {
        Poset(Preorder::from_fn(1 << n, |i, j| i & !j == 0).expect("powersets are posets"))
    }

    pub fn discrete(n: usize) -> Self {
        Poset(Preorder::from_fn(n, |i, j| i == j).expect("discrete orders are posets"))
    }

    pub fn opposite(&self) -> Self {
        Poset(Preorder::from_fn(self.len(), |i, j| self.leq(j, i)).expect("opposite of a poset"))
    }

    pub fn len(&self) -> usize {
        self.0.n
    }

    pub fn is_empty(&self) -> bool {
        self.0.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.0.leq(i, j)
    }

    pub fn as_preorder(&self) -> &Preorder {
        &self.0
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.leq(x, t)))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.leq(b, x)))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&x| self.leq(x, a) && self.leq(x, b)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&x| self.leq(x, m)))
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&x| self.leq(a, x) && self.leq(b, x)).collect();
        upper.iter().copied().find(|&j| upper.iter().all(|&x| self.leq(j, x)))
    }

    /// Pairs `(x, y)` with `x` covered by `y`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y || !self.leq(x, y) {
                    continue;
                }
                let between = (0..n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for i in 0..self.len() {
            let label = labels.get(i).cloned().unwrap_or_else(|| i.to_string());
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", label.replace('\\', "\\\\").replace('"', "\\\""));
        }
        for (x, y) in self.covers() {
            let _ = writeln!(s, "  n{x} -> n{y};");
        }
        s.push_str("}\n");
        s
    }
}

/// A monotone map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub src: Poset,
    pub dst: Poset,
    pub table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(src: Poset, dst: Poset, table: Vec<usize>) -> Result<Self> {
        if table.len() != src.len() || table.iter().any(|&y| y >= dst.len()) {
            return Err(Error::ShapeMismatch("map table does not fit its posets".into()));
        }
        for x in 0..src.len() {
            for y in 0..src.len() {
                if src.leq(x, y) && !dst.leq(table[x], table[y]) {
                    return Err(Error::law("monotonicity", format!("{x} <= {y} but f({x}) > f({y})")));
                }
            }
        }
        Ok(MonotoneMap { src, dst, table })
    }

    pub fn identity(p: &Poset) -> Self {
        MonotoneMap {
            src: p.clone(),
            dst: p.clone(),
            table: (0..p.len()).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonotoneMap) -> Result<MonotoneMap> {
        if first.dst != self.src {
            return Err(Error::NotComposable("monotone maps".into()));
        }
        Ok(MonotoneMap {
            src: first.src.clone(),
            dst: self.dst.clone(),
            table: first.table.iter().map(|&x| self.table[x]).collect(),
        })
    }
}

/// `g ⊣ f`: the map with `g(q) <= p  iff  q <= f(p)`, if it exists.
pub fn left_adjoint_of(f: &MonotoneMap) -> Option<MonotoneMap> {
    let (src, dst) = (&f.src, &f.dst);
    let mut table = Vec::with_capacity(dst.len());
    for q in 0..dst.len() {
        let cands: Vec<usize> = (0..src.len()).filter(|&p| dst.leq(q, f.apply(p))).collect();
        let least = cands.iter().copied().find(|&g| cands.iter().all(|&p| src.leq(g, p)))?;
        table.push(least);
    }
    let g = MonotoneMap {
        src: dst.clone(),
        dst: src.clone(),
        table,
    };
    is_adjunction(&g, f).then_some(g)
}

/// `f ⊣ g`: the map with `f(p) <= q  iff  p <= g(q)`, if it exists.
pub fn right_adjoint_of(f: &MonotoneMap) -> Option<MonotoneMap> {
    let (src, dst) = (&f.src, &f.dst);
    let mut table = Vec::with_capacity(dst.len());
    for q in 0..dst.len() {
        let cands: Vec<usize> = (0..src.len()).filter(|&p| dst.leq(f.apply(p), q)).collect();
        let greatest = cands.iter().copied().find(|&g| cands.iter().all(|&p| src.leq(p, g)))?;
        table.push(greatest);
    }
    let g = MonotoneMap {
        src: dst.clone(),
        dst: src.clone(),
        table,
    };
    is_adjunction(f, &g).then_some(g)
}

/// Does `l ⊣ r` hold, i.e. `l(x) <= y  iff  x <= r(y)`?
pub fn is_adjunction(l: &MonotoneMap, r: &MonotoneMap) -> bool {
    let (a, b) = (&l.src, &l.dst);
    if r.src != *b || r.dst != *a {
        return false;
    }
    (0..a.len()).all(|x| (0..b.len()).all(|y| b.leq(l.apply(x), y) == a.leq(x, r.apply(y))))
}

/// Quotients a preorder by mutual `<=`. Classes are numbered in order of
/// their least member; the returned vector maps each element to its class.
pub fn poset_reflect(p: &Preorder) -> (Poset, Vec<usize>) {
    let n = p.len();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if class[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        for j in i..n {
            if p.equiv(i, j) {
                class[j] = c;
            }
        }
    }
    let poset = Poset(Preorder::from_fn(reps.len(), |a, b| p.leq(reps[a], reps[b])).expect("reflection of a preorder"));
    (poset, class)
}

/// Least member of every class of a quotient map.
pub fn representatives(quotient: &[usize], classes: usize) -> Vec<usize> {
    let mut reps = vec![usize::MAX; classes];
    for (i, &c) in quotient.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = i;
        }
    }
    reps
}

/// Existence of top, bottom and all binary meets and joins, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub size: usize,
    pub top: Option<usize>,
    pub bottom: Option<usize>,
    /// Row-major `size × size` table of meets.
    pub meets: Vec<Option<usize>>,
    pub joins: Vec<Option<usize>>,
    pub missing_meets: Vec<(usize, usize)>,
    pub missing_joins: Vec<(usize, usize)>,
}

impl LatticeReport {
    pub fn is_lattice(&self) -> bool {
        self.top.is_some() && self.bottom.is_some() && self.missing_meets.is_empty() && self.missing_joins.is_empty()
    }
}

pub fn lattice_check(p: &Poset) -> LatticeReport {
    let n = p.len();
    let mut report = LatticeReport {
        size: n,
        top: p.top(),
        bottom: p.bottom(),
        meets: Vec::with_capacity(n * n),
        joins: Vec::with_capacity(n * n),
        missing_meets: Vec::new(),
        missing_joins: Vec::new(),
    };
    for a in 0..n {
        for b in 0..n {
            let m = p.meet(a, b);
            let j = p.join(a, b);
            if m.is_none() && a <= b {
                report.missing_meets.push((a, b));
            }
            if j.is_none() && a <= b {
                report.missing_joins.push((a, b));
            }
            report.meets.push(m);
            report.joins.push(j);
        }
    }
    report
}
