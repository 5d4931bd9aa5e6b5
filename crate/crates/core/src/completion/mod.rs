//! The existential and universal completions of a doctrine.
//!
//! Both completions have the same elements: triples `(A, B, α)` with `α` a
//! predicate on `A × B`, living in the fiber over `A`. They differ in order:
//!
//! * existential: `(A,B,α) ≤ (A,C,β)` iff some `f: A×B -> C` has
//!   `α ≤ P_{⟨pr_A, f⟩}(β)`,
//! * universal: `(A,B,α) ≤ (A,C,β)` iff some `g: A×C -> B` has
//!   `P_{⟨pr_A, g⟩}(α) ≤ β`.
//!
//! [`Completion`] is itself a [`Doctrine`], so completions nest.


use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::doctrine::{DocCaps, Doctrine, OpDoctrine};
use crate::error::{Error, Result};
use crate::fincat::{FiniteCategory, ObjId};

type Arrow<D> = <<D as Doctrine>::Cat as FiniteCategory>::Arrow;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Ex,
    Un,
}

impl Polarity {
    pub fn dual(self) -> Self {
        match self {
            Polarity::Ex => Polarity::Un,
            Polarity::Un => Polarity::Ex,
        }
    }
}

/// An element `(base, qobj, pred)` of a completion fiber over `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantElem<P> {
    pub polarity: Polarity,
    pub base: ObjId,
    pub qobj: ObjId,
    pub pred: P,
}

/// An arrow certifying an order relation: `f: A×B -> C` for the
/// existential order, `g: A×C -> B` for the universal one. Only produced
/// after the defining inequality has been checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness<A> {
    pub polarity: Polarity,
    pub arrow: A,
}

/// The existential (`Polarity::Ex`) or universal (`Polarity::Un`)
/// completion of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion<D> {
    inner: D,
    polarity: Polarity,
}

impl<D: Doctrine> Completion<D> {
    pub fn new(inner: D, polarity: Polarity) -> Self {
        Completion { inner, polarity }
    }

    pub fn existential(inner: D) -> Self {
        Self::new(inner, Polarity::Ex)
    }

    pub fn universal(inner: D) -> Self {
        Self::new(inner, Polarity::Un)
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    fn cat(&self) -> &D::Cat {
        self.inner.base()
    }

    /// The object `A × B` carrying the predicate of `(A, B, α)`.
    pub fn pred_obj(&self, x: &QuantElem<D::Pred>) -> Result<ObjId> {
        self.cat().product(x.base, x.qobj)
    }

    /// Builds an element, checking that `pred` lies over `base × qobj`.
    pub fn elem(&self, base: ObjId, qobj: ObjId, pred: D::Pred) -> Result<QuantElem<D::Pred>> {
        let ab = self.cat().product(base, qobj)?;
        if !self.inner.contains(ab, &pred) {
            return Err(Error::InvalidPredicate(format!(
                "{pred:?} is not a predicate on {} × {}",
                self.cat().object_name(base),
                self.cat().object_name(qobj)
            )));
        }
        Ok(QuantElem {
            polarity: self.polarity,
            base,
            qobj,
            pred,
        })
    }

    fn own(&self, x: &QuantElem<D::Pred>) -> Result<()> {
        if x.polarity != self.polarity {
            return Err(Error::ShapeMismatch(format!(
                "{:?} element used in the {:?} completion",
                x.polarity, self.polarity
            )));
        }
        Ok(())
    }

    fn same_base(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>) -> Result<()> {
        self.own(x)?;
        self.own(y)?;
        if x.base != y.base {
            return Err(Error::ObjectMismatch {
                expected: self.cat().object_name(x.base),
                found: self.cat().object_name(y.base),
            });
        }
        Ok(())
    }

    fn expect_base(&self, x: &QuantElem<D::Pred>, base: ObjId) -> Result<()> {
        self.own(x)?;
        if x.base != base {
            return Err(Error::ObjectMismatch {
                expected: self.cat().object_name(base),
                found: self.cat().object_name(x.base),
            });
        }
        Ok(())
    }

    /// `⟨pr_A, h⟩: A×X -> A×Y` for `h: A×X -> Y`.
    fn graph(&self, a: ObjId, x: ObjId, h: &Arrow<D>) -> Result<Arrow<D>> {
        self.cat().pair(&self.cat().pr1(a, x)?, h)
    }

    /// Does `arrow` certify `x ≤ y`?
    pub fn check_witness(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>, arrow: &Arrow<D>) -> Result<bool> {
        self.same_base(x, y)?;
        let a = x.base;
        let (xo, yo) = (self.pred_obj(x)?, self.pred_obj(y)?);
        match self.polarity {
            Polarity::Ex => {
                if self.cat().dom(arrow) != xo || self.cat().cod(arrow) != y.qobj {
                    return Ok(false);
                }
                let g = self.graph(a, x.qobj, arrow)?;
                self.inner.leq(xo, &x.pred, &self.inner.reindex(&g, &y.pred)?)
            }
            Polarity::Un => {
                if self.cat().dom(arrow) != yo || self.cat().cod(arrow) != x.qobj {
                    return Ok(false);
                }
                let g = self.graph(a, y.qobj, arrow)?;
                self.inner.leq(yo, &self.inner.reindex(&g, &x.pred)?, &y.pred)
            }
        }
    }

    /// Decides `x ≤ y`, returning the lexicographically first witness.
    /// Fails rather than answering "no" when the candidate hom-set exceeds
    /// the budget.
    pub fn leq_witness(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>) -> Result<Option<Witness<Arrow<D>>>> {
        self.same_base(x, y)?;
        let a = x.base;
        let (xo, yo) = (self.pred_obj(x)?, self.pred_obj(y)?);
        let found = match self.polarity {
            Polarity::Ex => {
                let pr = self.cat().pr1(a, x.qobj)?;
                let mut found = None;
                for f in self.cat().hom_iter(xo, y.qobj)? {
                    let g = self.cat().pair(&pr, &f)?;
                    if self.inner.leq(xo, &x.pred, &self.inner.reindex(&g, &y.pred)?)? {
                        found = Some(f);
                        break;
                    }
                }
                found
            }
            Polarity::Un => {
                let pr = self.cat().pr1(a, y.qobj)?;
                let mut found = None;
                for f in self.cat().hom_iter(yo, x.qobj)? {
                    let g = self.cat().pair(&pr, &f)?;
                    if self.inner.leq(yo, &self.inner.reindex(&g, &x.pred)?, &y.pred)? {
                        found = Some(f);
                        break;
                    }
                }
                found
            }
        };
        Ok(found.map(|arrow| Witness {
            polarity: self.polarity,
            arrow,
        }))
    }

    pub fn leq_q(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>) -> Result<bool> {
        Ok(self.leq_witness(x, y)?.is_some())
    }

    /// Mutual `≤`.
    pub fn equiv_q(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>) -> Result<bool> {
        Ok(x == y || (self.leq_q(x, y)? && self.leq_q(y, x)?))
    }

    /// Reindexing along `f: D -> A`: `(A,B,β) ↦ (D, B, P_{f×1}(β))`, the same
    /// in both completions.
    pub fn reindex_q(&self, f: &Arrow<D>, y: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        self.expect_base(y, self.cat().cod(f))?;
        let f1 = self.cat().product_map(f, &self.cat().identity(y.qobj))?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: self.cat().dom(f),
            qobj: y.qobj,
            pred: self.inner.reindex(&f1, &y.pred)?,
        })
    }

    /// `(A1×A2, B, β) ↦ (A1, A2×B, β)` with the predicate moved along the
    /// reassociation `A1×(A2×B) ≅ (A1×A2)×B`. In the existential completion
    /// this is `∃_{pr}`, in the universal one `∀_{pr}`.
    pub fn quantify_pr(&self, a1: ObjId, a2: ObjId, x: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        self.expect_base(x, self.cat().product(a1, a2)?)?;
        let re = self.cat().assoc_inv(a1, a2, x.qobj)?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: a1,
            qobj: self.cat().product(a2, x.qobj)?,
            pred: self.inner.reindex(&re, &x.pred)?,
        })
    }

    pub fn exists_pr_q(&self, a1: ObjId, a2: ObjId, x: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        match self.polarity {
            Polarity::Ex => self.quantify_pr(a1, a2, x),
            Polarity::Un => Err(Error::missing("existential quantifier in the universal completion")),
        }
    }

    pub fn forall_pr_q(&self, a1: ObjId, a2: ObjId, x: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        match self.polarity {
            Polarity::Un => self.quantify_pr(a1, a2, x),
            Polarity::Ex => self.forall_pr_exp(a1, a2, x),
        }
    }

    /// `∀` along `pr: A1×A2 -> A1` in the existential completion of a
    /// universal doctrine with exponentials:
    /// `(A1×A2, B, α) ↦ (A1, B^{A2}, ∀_{pr} P_k(α))` where
    /// `k: (A1×B^{A2})×A2 -> (A1×A2)×B` sends `((a1,e),a2)` to
    /// `((a1,a2), ev(a2,e))`.
    pub fn forall_pr_exp(&self, a1: ObjId, a2: ObjId, x: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        if self.polarity != Polarity::Ex {
            return Err(Error::ShapeMismatch("forall_pr_exp lives in the existential completion".into()));
        }
        if !self.inner.caps().forall_pr {
            return Err(Error::missing("universal quantifier in the base doctrine"));
        }
        let c = self.cat();
        self.expect_base(x, c.product(a1, a2)?)?;
        let b = x.qobj;
        let e = c.exponential(b, a2)?;
        let a1e = c.product(a1, e)?;
        let p1 = c.pr1(a1e, a2)?;
        let p2 = c.pr2(a1e, a2)?;
        let to_a1 = c.compose(&c.pr1(a1, e)?, &p1)?;
        let to_e = c.compose(&c.pr2(a1, e)?, &p1)?;
        let applied = c.compose(&c.eval(b, a2)?, &c.pair(&p2, &to_e)?)?;
        let k = c.pair(&c.pair(&to_a1, &p2)?, &applied)?;
        let pulled = self.inner.reindex(&k, &x.pred)?;
        Ok(QuantElem {
            polarity: Polarity::Ex,
            base: a1,
            qobj: e,
            pred: self.inner.forall_pr(a1e, a2, &pulled)?,
        })
    }

    /// `∃` along the right injection `Y -> X + Y`.
    fn exists_inj_right(&self, x: ObjId, y: ObjId, p: &D::Pred) -> Result<D::Pred> {
        let s = self.cat().coproduct_swap(x, y)?;
        self.inner.reindex(&s, &self.inner.exists_inj(y, x, p)?)
    }

    fn forall_inj_right(&self, x: ObjId, y: ObjId, p: &D::Pred) -> Result<D::Pred> {
        let s = self.cat().coproduct_swap(x, y)?;
        self.inner.reindex(&s, &self.inner.forall_inj(y, x, p)?)
    }

    /// `(A, 1, ⊤)` existentially, `(A, 0, ⊤)` universally.
    pub fn top_q(&self, a: ObjId) -> Result<QuantElem<D::Pred>> {
        let q = match self.polarity {
            Polarity::Ex => self.cat().terminal()?,
            Polarity::Un => self.cat().initial()?,
        };
        let pred = self.inner.top(self.cat().product(a, q)?)?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: a,
            qobj: q,
            pred,
        })
    }

    /// `(A, 0, ⊥)` existentially, `(A, 1, ⊥)` universally.
    pub fn bottom_q(&self, a: ObjId) -> Result<QuantElem<D::Pred>> {
        let q = match self.polarity {
            Polarity::Ex => self.cat().initial()?,
            Polarity::Un => self.cat().terminal()?,
        };
        let pred = self.inner.bottom(self.cat().product(a, q)?)?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: a,
            qobj: q,
            pred,
        })
    }

    /// `(A, B×C, P_{⟨pr_A,pr_B⟩}β ⋄ P_{⟨pr_A,pr_C⟩}γ)` with `⋄` the base meet
    /// or join.
    fn product_combine(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>, meet: bool) -> Result<QuantElem<D::Pred>> {
        self.same_base(x, y)?;
        let c = self.cat();
        let (a, b, cc) = (x.base, x.qobj, y.qobj);
        let bc = c.product(b, cc)?;
        let abc = c.product(a, bc)?;
        let pr_a = c.pr1(a, bc)?;
        let pr_bc = c.pr2(a, bc)?;
        let to_b = c.pair(&pr_a, &c.compose(&c.pr1(b, cc)?, &pr_bc)?)?;
        let to_c = c.pair(&pr_a, &c.compose(&c.pr2(b, cc)?, &pr_bc)?)?;
        let (p, q) = (self.inner.reindex(&to_b, &x.pred)?, self.inner.reindex(&to_c, &y.pred)?);
        let pred = if meet { self.inner.meet(abc, &p, &q)? } else { self.inner.join(abc, &p, &q)? };
        Ok(QuantElem {
            polarity: self.polarity,
            base: a,
            qobj: bc,
            pred,
        })
    }

    /// `(A, B+C, P_{θ⁻¹}(Q_{j}β ⋄ Q_{j'}γ))` with `Q` the base `∃` (joins) or
    /// `∀` (meets) along the coproduct injections.
    fn coproduct_combine(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>, join: bool) -> Result<QuantElem<D::Pred>> {
        self.same_base(x, y)?;
        let c = self.cat();
        let (a, b, cc) = (x.base, x.qobj, y.qobj);
        let (ab, ac) = (c.product(a, b)?, c.product(a, cc)?);
        let sum = c.coproduct(ab, ac)?;
        let pred = if join {
            let p = self.inner.exists_inj(ab, ac, &x.pred)?;
            let q = self.exists_inj_right(ab, ac, &y.pred)?;
            self.inner.join(sum, &p, &q)?
        } else {
            let p = self.inner.forall_inj(ab, ac, &x.pred)?;
            let q = self.forall_inj_right(ab, ac, &y.pred)?;
            self.inner.meet(sum, &p, &q)?
        };
        let th_inv = c.theta_inv(a, b, cc)?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: a,
            qobj: c.coproduct(b, cc)?,
            pred: self.inner.reindex(&th_inv, &pred)?,
        })
    }

    pub fn meet_q(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        match self.polarity {
            Polarity::Ex => self.product_combine(x, y, true),
            Polarity::Un => self.coproduct_combine(x, y, false),
        }
    }

    pub fn join_q(&self, x: &QuantElem<D::Pred>, y: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        match self.polarity {
            Polarity::Ex => self.coproduct_combine(x, y, true),
            Polarity::Un => self.product_combine(x, y, false),
        }
    }

    /// `∃_{j_A}(A, D, δ) = (A+B, D, P_{θ'⁻¹} ∃_{j_{A×D}} δ)`, where
    /// `θ': (A×D)+(B×D) -> (A+B)×D`.
    pub fn exists_inj_q(&self, a: ObjId, b: ObjId, x: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        self.inj_quantify(a, b, x, true)
    }

    pub fn forall_inj_q(&self, a: ObjId, b: ObjId, x: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        self.inj_quantify(a, b, x, false)
    }

    fn inj_quantify(&self, a: ObjId, b: ObjId, x: &QuantElem<D::Pred>, exists: bool) -> Result<QuantElem<D::Pred>> {
        self.expect_base(x, a)?;
        let c = self.cat();
        let (d, pred) = self.inhabit(x, exists)?;
        let (ad, bd) = (c.product(a, d)?, c.product(b, d)?);
        let moved = if exists {
            self.inner.exists_inj(ad, bd, &pred)?
        } else {
            self.inner.forall_inj(ad, bd, &pred)?
        };
        let th = c.theta_right_inv(a, b, d)?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: c.coproduct(a, b)?,
            qobj: d,
            pred: self.inner.reindex(&th, &moved)?,
        })
    }

    /// Over an initial base every element is equivalent, and the injection
    /// formula is only adjoint when the quantified object has a point or the
    /// answer is the least element. So there `(A, D, δ)` is first replaced
    /// by `(A, 0, -)` for the quantifier that must return the least element
    /// and by `(A, 1, -)` for the other.
    fn inhabit(&self, x: &QuantElem<D::Pred>, exists: bool) -> Result<(ObjId, D::Pred)> {
        let c = self.cat();
        if !c.is_initial(x.base) {
            return Ok((x.qobj, x.pred.clone()));
        }
        let least = (self.polarity == Polarity::Ex) == exists;
        let d = if least { c.initial()? } else { c.terminal()? };
        let to_ad = c.compose(&c.from_initial(c.product(x.base, x.qobj)?)?, &c.pr1(x.base, d)?)?;
        Ok((d, self.inner.reindex(&to_ad, &x.pred)?))
    }

    /// `α ↦ (A, 1, α)`, moving `α` along `A×1 -> A`.
    pub fn unit_q(&self, a: ObjId, alpha: &D::Pred) -> Result<QuantElem<D::Pred>> {
        let one = self.cat().terminal()?;
        let pr = self.cat().pr1(a, one)?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: a,
            qobj: one,
            pred: self.inner.reindex(&pr, alpha)?,
        })
    }

    /// Every element is equivalent to its prenex form `∃_{pr_A} η(α)`
    /// (existential) or `∀_{pr_A} η(α)` (universal).
    pub fn prenex(&self, x: &QuantElem<D::Pred>) -> Result<QuantElem<D::Pred>> {
        self.own(x)?;
        let ab = self.pred_obj(x)?;
        self.quantify_pr(x.base, x.qobj, &self.unit_q(ab, &x.pred)?)
    }

    /// Elements with `qobj` among `objects_up_to(k)` over `a`, in order of
    /// `qobj` and then of the underlying fiber enumeration.
    pub fn bounded_fiber(&self, a: ObjId, k: usize) -> Result<Vec<QuantElem<D::Pred>>> {
        let mut out = Vec::new();
        for q in self.cat().objects_up_to(k) {
            let ab = self.cat().product(a, q)?;
            for pred in self.inner.enumerate_fiber(ab, k)? {
                out.push(QuantElem {
                    polarity: self.polarity,
                    base: a,
                    qobj: q,
                    pred,
                });
            }
        }
        Ok(out)
    }

    pub fn elem_to_json(&self, x: &QuantElem<D::Pred>) -> Value {
        let ab = self.pred_obj(x).ok();
        json!({
            "polarity": x.polarity,
            "base": self.cat().object_name(x.base),
            "qobj": self.cat().object_name(x.qobj),
            "pred": ab.map(|ab| self.inner.pred_to_json(ab, &x.pred)).unwrap_or(Value::Null),
        })
    }

    pub fn elem_from_json(&self, v: &Value) -> Result<QuantElem<D::Pred>> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("element is missing `{k}`")));
        let obj = |k: &str| -> Result<ObjId> {
            match field(k)? {
                Value::String(s) => self.cat().lookup_object(s),
                Value::Number(n) => self.cat().lookup_object(&n.to_string()),
                other => Err(Error::Parse(format!("`{k}` must name an object, found {other}"))),
            }
        };
        if let Some(p) = v.get("polarity") {
            let p: Polarity = serde_json::from_value(p.clone())?;
            if p != self.polarity {
                return Err(Error::ShapeMismatch(format!("{p:?} element given to the {:?} completion", self.polarity)));
            }
        }
        let (base, qobj) = (obj("base")?, obj("qobj")?);
        let ab = self.cat().product(base, qobj)?;
        let pred = self.inner.pred_from_json(ab, field("pred")?)?;
        self.elem(base, qobj, pred)
    }
}

impl<D: Doctrine + Clone> Completion<Completion<D>> {
    /// The multiplication of the doubled completion:
    /// `(A, B, (A×B, C, α)) ↦ (A, B×C, α)` along the reassociation.
    pub fn mult_q(&self, z: &QuantElem<QuantElem<D::Pred>>) -> Result<QuantElem<D::Pred>> {
        let inner = &self.inner;
        if inner.polarity != self.polarity || z.polarity != self.polarity || z.pred.polarity != self.polarity {
            return Err(Error::ShapeMismatch("multiplication needs a single polarity".into()));
        }
        let c = inner.cat();
        let ab = c.product(z.base, z.qobj)?;
        let w = &z.pred;
        if w.base != ab {
            return Err(Error::ShapeMismatch(format!(
                "inner element lives over {}, expected {}",
                c.object_name(w.base),
                c.object_name(ab)
            )));
        }
        let re = c.assoc_inv(z.base, z.qobj, w.qobj)?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: z.base,
            qobj: c.product(z.qobj, w.qobj)?,
            pred: inner.inner.reindex(&re, &w.pred)?,
        })
    }

    /// The unit at the outer level, `x ↦ (A, 1, P_{pr_A} x)`.
    pub fn outer_unit(&self, x: &QuantElem<D::Pred>) -> Result<QuantElem<QuantElem<D::Pred>>> {
        self.unit_q(x.base, x)
    }

    /// The unit applied inside, `(A, B, α) ↦ (A, B, η_{A×B}(α))`.
    pub fn inner_unit(&self, x: &QuantElem<D::Pred>) -> Result<QuantElem<QuantElem<D::Pred>>> {
        let ab = self.inner.pred_obj(x)?;
        Ok(QuantElem {
            polarity: self.polarity,
            base: x.base,
            qobj: x.qobj,
            pred: self.inner.unit_q(ab, &x.pred)?,
        })
    }
}

/// Reinterprets a universal-completion element over `P` as an
/// existential-completion element over `P^op`. The triple is unchanged.
pub fn duality_transport<P: Clone>(x: &QuantElem<P>) -> QuantElem<P> {
    QuantElem {
        polarity: x.polarity.dual(),
        ..x.clone()
    }
}

/// `P^un` and `(P^op)^ex` side by side, for comparing orders.
pub fn dual_pair<D: Doctrine + Clone>(d: &D) -> (Completion<D>, Completion<OpDoctrine<D>>) {
    (Completion::universal(d.clone()), Completion::existential(OpDoctrine::new(d.clone())))
}

impl<D: Doctrine> Doctrine for Completion<D> {
    type Cat = D::Cat;
    type Pred = QuantElem<D::Pred>;

    fn base(&self) -> &D::Cat {
        self.inner.base()
    }

    fn caps(&self) -> DocCaps {
        let d = self.inner.caps();
        let cat = self.cat().caps();
        let points = cat.points;
        match self.polarity {
            Polarity::Ex => DocCaps {
                exists_pr: cat.products,
                forall_pr: d.forall_pr && cat.exponentials,
                exists_inj: d.exists_inj && points,
                forall_inj: d.forall_inj && points,
                exists_any: false,
                forall_any: false,
                meets: d.meets,
                joins: d.joins && d.exists_inj,
            },
            Polarity::Un => DocCaps {
                exists_pr: false,
                forall_pr: cat.products,
                exists_inj: d.exists_inj && points,
                forall_inj: d.forall_inj && points,
                exists_any: false,
                forall_any: false,
                meets: d.meets && d.forall_inj,
                joins: d.joins,
            },
        }
    }

    fn contains(&self, a: ObjId, x: &Self::Pred) -> bool {
        x.polarity == self.polarity
            && x.base == a
            && self.pred_obj(x).map(|ab| self.inner.contains(ab, &x.pred)).unwrap_or(false)
    }

    fn leq(&self, a: ObjId, x: &Self::Pred, y: &Self::Pred) -> Result<bool> {
        self.expect_base(x, a)?;
        self.leq_q(x, y)
    }

    fn reindex(&self, f: &Arrow<D>, y: &Self::Pred) -> Result<Self::Pred> {
        self.reindex_q(f, y)
    }

    fn enumerate_fiber(&self, a: ObjId, bound: usize) -> Result<Vec<Self::Pred>> {
        self.bounded_fiber(a, bound)
    }

    fn top(&self, a: ObjId) -> Result<Self::Pred> {
        self.top_q(a)
    }

    fn bottom(&self, a: ObjId) -> Result<Self::Pred> {
        self.bottom_q(a)
    }

    fn meet(&self, a: ObjId, x: &Self::Pred, y: &Self::Pred) -> Result<Self::Pred> {
        self.expect_base(x, a)?;
        self.meet_q(x, y)
    }

    fn join(&self, a: ObjId, x: &Self::Pred, y: &Self::Pred) -> Result<Self::Pred> {
        self.expect_base(x, a)?;
        self.join_q(x, y)
    }

    fn exists_pr(&self, a1: ObjId, a2: ObjId, x: &Self::Pred) -> Result<Self::Pred> {
        self.exists_pr_q(a1, a2, x)
    }

    fn forall_pr(&self, a1: ObjId, a2: ObjId, x: &Self::Pred) -> Result<Self::Pred> {
        self.forall_pr_q(a1, a2, x)
    }

    fn exists_inj(&self, a: ObjId, b: ObjId, x: &Self::Pred) -> Result<Self::Pred> {
        self.exists_inj_q(a, b, x)
    }

    fn forall_inj(&self, a: ObjId, b: ObjId, x: &Self::Pred) -> Result<Self::Pred> {
        self.forall_inj_q(a, b, x)
    }

    fn pred_to_json(&self, _a: ObjId, x: &Self::Pred) -> Value {
        self.elem_to_json(x)
    }

    fn pred_from_json(&self, a: ObjId, v: &Value) -> Result<Self::Pred> {
        let x = self.elem_from_json(v)?;
        self.expect_base(&x, a)?;
        Ok(x)
    }

    fn equiv(&self, _a: ObjId, x: &Self::Pred, y: &Self::Pred) -> Result<bool> {
        self.equiv_q(x, y)
    }
}
