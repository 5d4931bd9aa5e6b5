//! The dialectica poset over a doctrine and its presentation as the fiber
//! over `1` of the existential completion of the universal completion.
//!
//! A dialectica object is `(B, C, α)` with `α` a predicate on `B × C`.
//! `(B, C, α) ≤ (B', C', β)` iff there are `f: B -> B'` and `F: B×C' -> C`
//! with `P_{⟨pr_B, F⟩}(α) ≤ P_{f×1}(β)`; for subsets, whenever
//! `(b, F(b,c')) ∈ α` then `(f(b), c') ∈ β`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::completion::{Completion, Polarity, QuantElem};
use crate::doctrine::Doctrine;
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, ObjId};
use crate::poset::{lattice_check, poset_reflect, representatives, LatticeReport, Poset, Preorder};

type Arrow<D> = <<D as Doctrine>::Cat as FiniteCategory>::Arrow;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DialObj<P> {
    pub src: ObjId,
    pub tgt: ObjId,
    pub pred: P,
}

/// A morphism certificate `(f, F)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DialMap<A> {
    pub forward: A,
    pub backward: A,
}

/// `(P^un)^ex`, whose fiber over `1` is the dialectica poset.
pub type Nested<D> = Completion<Completion<D>>;

pub fn nested<D: Doctrine>(d: D) -> Nested<D> {
    Completion::existential(Completion::universal(d))
}

/// Searches `(f, F)` jointly, lexicographically with `f` most significant.
pub fn dial_leq<D: Doctrine>(d: &D, u: &DialObj<D::Pred>, v: &DialObj<D::Pred>) -> Result<Option<DialMap<Arrow<D>>>> {
    let c = d.base();
    let (b, cc) = (u.src, u.tgt);
    let (b2, c2) = (v.src, v.tgt);
    let bc2 = c.product(b, c2)?;
    let pr_b = c.pr1(b, c2)?;
    let id_c2 = c.identity(c2);
    let backs = c.enumerate_hom(bc2, cc)?;
    // P_{⟨pr_B, F⟩}(α) depends only on F.
    let pulled_u = backs
        .iter()
        .map(|back| d.reindex(&c.pair(&pr_b, back)?, &u.pred))
        .collect::<Result<Vec<_>>>()?;
    for f in c.hom_iter(b, b2)? {
        let pulled_v = d.reindex(&c.product_map(&f, &id_c2)?, &v.pred)?;
        for (back, lhs) in backs.iter().zip(&pulled_u) {
            if d.leq(bc2, lhs, &pulled_v)? {
                return Ok(Some(DialMap {
                    forward: f,
                    backward: back.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// `(B, C, α) ↦ (1, B, (1×B, C, α'))` with `α'` moved along `(1×B)×C ≅ B×C`.
pub fn dial_to_nested<D: Doctrine>(n: &Nested<D>, u: &DialObj<D::Pred>) -> Result<QuantElem<QuantElem<D::Pred>>> {
    let un = n.inner();
    let d = un.inner();
    let c = d.base();
    let one = c.terminal()?;
    let ob = c.product(one, u.src)?;
    let to_b = c.compose(&c.pr2(one, u.src)?, &c.pr1(ob, u.tgt)?)?;
    let iso = c.pair(&to_b, &c.pr2(ob, u.tgt)?)?;
    let inner = un.elem(ob, u.tgt, d.reindex(&iso, &u.pred)?)?;
    Ok(QuantElem {
        polarity: Polarity::Ex,
        base: one,
        qobj: u.src,
        pred: inner,
    })
}

/// Inverse of [`dial_to_nested`]; the outer base must be terminal.
pub fn dial_from_nested<D: Doctrine>(n: &Nested<D>, z: &QuantElem<QuantElem<D::Pred>>) -> Result<DialObj<D::Pred>> {
    let d = n.inner().inner();
    let c = d.base();
    let one = c.terminal()?;
    if z.base != one {
        return Err(Error::ObjectMismatch {
            expected: format!("terminal object {}", c.object_name(one)),
            found: c.object_name(z.base),
        });
    }
    let b = z.qobj;
    let w = &z.pred;
    if w.polarity != Polarity::Un || z.polarity != Polarity::Ex || w.base != c.product(one, b)? {
        return Err(Error::ShapeMismatch("not an element of the nested completion over 1".into()));
    }
    let iso = c.product_map(&c.unit_left(b)?, &c.identity(w.qobj))?;
    Ok(DialObj {
        src: b,
        tgt: w.qobj,
        pred: d.reindex(&iso, &w.pred)?,
    })
}

/// The lexicographically first nested certificate `(f, g)`: `f: 1×B -> B'`
/// is the outer witness and `g: (1×B)×C' -> C` the inner one for the
/// reindexed comparison.
pub fn nested_certificate<D: Doctrine>(
    n: &Nested<D>,
    z1: &QuantElem<QuantElem<D::Pred>>,
    z2: &QuantElem<QuantElem<D::Pred>>,
) -> Result<Option<DialMap<Arrow<D>>>> {
    let Some(outer) = n.leq_witness(z1, z2)? else {
        return Ok(None);
    };
    let c = n.base();
    let g = c.pair(&c.pr1(z1.base, z1.qobj)?, &outer.arrow)?;
    let moved = n.inner().reindex_q(&g, &z2.pred)?;
    let inner = n
        .inner()
        .leq_witness(&z1.pred, &moved)?
        .ok_or_else(|| Error::law("nested order", "outer witness without inner witness"))?;
    Ok(Some(DialMap {
        forward: outer.arrow,
        backward: inner.arrow,
    }))
}

/// Translates a nested certificate into a dialectica one by precomposing
/// with the unit isomorphisms `B ≅ 1×B` and `B×C' ≅ (1×B)×C'`.
pub fn certificate_to_dial<D: Doctrine>(
    d: &D,
    b: ObjId,
    c2: ObjId,
    m: &DialMap<Arrow<D>>,
) -> Result<DialMap<Arrow<D>>> {
    let c = d.base();
    let ul = c.unit_left(b)?;
    Ok(DialMap {
        forward: c.compose(&m.forward, &ul)?,
        backward: c.compose(&m.backward, &c.product_map(&ul, &c.identity(c2))?)?,
    })
}

/// Every dialectica object with source and target among
/// `objects_up_to(bound)`, ordered by source, target, then predicate.
pub fn bounded_dial_objects<D: Doctrine>(d: &D, bound: usize) -> Result<Vec<DialObj<D::Pred>>> {
    let c = d.base();
    let objs = c.objects_up_to(bound);
    let mut out = Vec::new();
    for &b in &objs {
        for &cc in &objs {
            for pred in d.enumerate_fiber(c.product(b, cc)?, bound)? {
                out.push(DialObj { src: b, tgt: cc, pred });
            }
        }
    }
    Ok(out)
}

pub fn dial_to_json<D: Doctrine>(d: &D, u: &DialObj<D::Pred>) -> Value {
    let c = d.base();
    let pred = c
        .product(u.src, u.tgt)
        .map(|bc| d.pred_to_json(bc, &u.pred))
        .unwrap_or(Value::Null);
    json!({"src": c.object_name(u.src), "tgt": c.object_name(u.tgt), "pred": pred})
}

pub fn dial_from_json<D: Doctrine>(d: &D, v: &Value) -> Result<DialObj<D::Pred>> {
    let c = d.base();
    let obj = |k: &str| -> Result<ObjId> {
        match v.get(k) {
            Some(Value::String(s)) => c.lookup_object(s),
            Some(Value::Number(n)) => c.lookup_object(&n.to_string()),
            _ => Err(Error::Parse(format!("dialectica object needs `{k}`"))),
        }
    };
    let (src, tgt) = (obj("src")?, obj("tgt")?);
    let bc = c.product(src, tgt)?;
    let pred = d.pred_from_json(bc, v.get("pred").ok_or_else(|| Error::Parse("dialectica object needs `pred`".into()))?)?;
    Ok(DialObj { src, tgt, pred })
}

/// Outcome of comparing the nested-completion order with the direct
/// dialectica condition on a bounded set of objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub objects: usize,
    pub pairs: usize,
    pub related: usize,
    /// Pairs (by index) where the two procedures disagree on `≤`.
    pub order_mismatches: Vec<(usize, usize)>,
    /// Pairs where both agree but the translated certificates differ.
    pub certificate_mismatches: Vec<(usize, usize)>,
    /// Pairs where a round trip through the nested form changed the object.
    pub round_trip_failures: Vec<usize>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.order_mismatches.is_empty() && self.certificate_mismatches.is_empty() && self.round_trip_failures.is_empty()
    }
}

pub fn check_oracle<D: Doctrine + Clone>(d: &D, bound: usize) -> Result<OracleReport> {
    let n = nested(d.clone());
    let objs = bounded_dial_objects(d, bound)?;
    let nested_objs = objs.iter().map(|u| dial_to_nested(&n, u)).collect::<Result<Vec<_>>>()?;
    let mut report = OracleReport {
        objects: objs.len(),
        ..Default::default()
    };
    for (i, (u, z)) in objs.iter().zip(&nested_objs).enumerate() {
        if dial_from_nested(&n, z)? != *u {
            report.round_trip_failures.push(i);
        }
    }
    for (i, (u, z1)) in objs.iter().zip(&nested_objs).enumerate() {
        for (j, (v, z2)) in objs.iter().zip(&nested_objs).enumerate() {
            report.pairs += 1;
            let direct = dial_leq(d, u, v)?;
            let via = nested_certificate(&n, z1, z2)?;
            match (direct, via) {
                (Some(m), Some(cert)) => {
                    report.related += 1;
                    if certificate_to_dial(d, u.src, v.tgt, &cert)? != m {
                        report.certificate_mismatches.push((i, j));
                    }
                }
                (None, None) => {}
                _ => report.order_mismatches.push((i, j)),
            }
        }
    }
    Ok(report)
}

/// The bounded dialectica preorder, its reflection and lattice report.
pub struct DialLattice<P> {
    pub objects: Vec<DialObj<P>>,
    pub preorder: Preorder,
    pub poset: Poset,
    pub quotient: Vec<usize>,
    pub report: LatticeReport,
}

impl<P> DialLattice<P> {
    /// Least-index member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        representatives(&self.quotient, self.poset.len())
    }
}

pub fn dial_lattice<D: Doctrine>(d: &D, bound: usize) -> Result<DialLattice<D::Pred>> {
    let objects = bounded_dial_objects(d, bound)?;
    let n = objects.len();
    let mut rel = Vec::with_capacity(n * n);
    for u in &objects {
        for v in &objects {
            rel.push(u == v || dial_leq(d, u, v)?.is_some());
        }
    }
    let preorder = Preorder::new(n, rel)?;
    let (poset, quotient) = poset_reflect(&preorder);
    let report = lattice_check(&poset);
    Ok(DialLattice {
        objects,
        preorder,
        poset,
        quotient,
        report,
    })
}
