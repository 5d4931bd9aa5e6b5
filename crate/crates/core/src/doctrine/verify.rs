use serde_json::{json, Value};

use super::{Arrow, Doctrine};
use crate::fincat::{FiniteCategory, ObjId};
use crate::laws::{Checker, LawReport, Stop};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VerifyBounds {
    /// Largest base object (cardinality for finite sets) to range over.
    pub max_card: usize,
    /// Passed to [`Doctrine::enumerate_fiber`].
    pub fiber_bound: usize,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        VerifyBounds {
            max_card: 3,
            fiber_bound: 2,
        }
    }
}

struct Ctx<'a, D: Doctrine> {
    d: &'a D,
    objs: Vec<ObjId>,
    bound: usize,
}

impl<D: Doctrine> Ctx<'_, D> {
    fn cat(&self) -> &D::Cat {
        self.d.base()
    }

    fn fiber(&self, a: ObjId) -> crate::Result<Vec<D::Pred>> {
        self.d.enumerate_fiber(a, self.bound)
    }

    fn hom(&self, a: ObjId, b: ObjId) -> crate::Result<Vec<Arrow<D>>> {
        self.cat().enumerate_hom(a, b)
    }

    fn obj(&self, a: ObjId) -> Value {
        Value::String(self.cat().object_name(a))
    }

    fn arrow(&self, f: &Arrow<D>) -> Value {
        self.cat().arrow_to_json(f)
    }

    fn pred(&self, a: ObjId, p: &D::Pred) -> Value {
        self.d.pred_to_json(a, p)
    }

    /// Every arrow between the objects in scope.
    fn all_arrows(&self) -> crate::Result<Vec<Arrow<D>>> {
        let mut out = Vec::new();
        for &x in &self.objs {
            for &y in &self.objs {
                out.extend(self.hom(x, y)?);
            }
        }
        Ok(out)
    }

    fn pairs(&self) -> Vec<(ObjId, ObjId)> {
        let mut out = Vec::new();
        for &a in &self.objs {
            for &b in &self.objs {
                out.push((a, b));
            }
        }
        out
    }
}

/// Checks functoriality, every declared adjoint against reindexing,
/// Beck-Chevalley on `(f×1, pr)` squares and on `(f, f+h)` injection squares,
/// and the declared lattice structure of fibers together with its
/// preservation by reindexing. Laws whose capability is absent are omitted;
/// laws that cannot be completed within the budget are reported as SKIPPED.
pub fn verify_doctrine<D: Doctrine>(d: &D, bounds: VerifyBounds) -> LawReport {
    verify_doctrine_laws(d, bounds, |_| true)
}

/// As [`verify_doctrine`], restricted to the laws whose id satisfies `want`.
pub fn verify_doctrine_laws<D: Doctrine>(d: &D, bounds: VerifyBounds, want: impl Fn(&str) -> bool) -> LawReport {
    let cx = Ctx {
        d,
        objs: d.base().objects_up_to(bounds.max_card),
        bound: bounds.fiber_bound,
    };
    let caps = d.caps();
    let cat_caps = d.base().caps();
    let mut r = LawReport::new("doctrine");
    let run = |r: &mut LawReport, law: &str, body: &dyn Fn(&mut Checker) -> Result<(), Stop>| {
        if want(law) {
            r.run(law, body);
        }
    };

    run(&mut r, "functoriality/identity", &|ck| identity_law(&cx, ck));
    run(&mut r, "functoriality/composition", &|ck| composition_law(&cx, ck));
    run(&mut r, "functoriality/monotone", &|ck| monotone_law(&cx, ck));

    if caps.exists_pr {
        run(&mut r, "adjunction/exists-pr", &|ck| pr_adjunction(&cx, ck, true));
        run(&mut r, "beck-chevalley/exists-pr", &|ck| pr_bc(&cx, ck, true));
    }
    if caps.forall_pr {
        run(&mut r, "adjunction/forall-pr", &|ck| pr_adjunction(&cx, ck, false));
        run(&mut r, "beck-chevalley/forall-pr", &|ck| pr_bc(&cx, ck, false));
    }
    for (flag, left, name) in [(caps.exists_inj, true, "exists-inj"), (caps.forall_inj, false, "forall-inj")] {
        if !flag {
            continue;
        }
        let (adj, bc) = (format!("adjunction/{name}"), format!("beck-chevalley/{name}"));
        if cat_caps.coproducts {
            run(&mut r, &adj, &|ck| inj_adjunction(&cx, ck, left));
            run(&mut r, &bc, &|ck| inj_bc(&cx, ck, left));
        } else if want(&adj) {
            r.skip(adj, "base category has no chosen coproducts");
        }
    }
    if caps.exists_any {
        run(&mut r, "adjunction/exists-along", &|ck| any_adjunction(&cx, ck, true));
    }
    if caps.forall_any {
        run(&mut r, "adjunction/forall-along", &|ck| any_adjunction(&cx, ck, false));
    }
    if caps.meets {
        run(&mut r, "lattice/meets", &|ck| fiber_lattice(&cx, ck, true));
        run(&mut r, "lattice/reindex-preserves-meets", &|ck| preservation(&cx, ck, true));
    }
    if caps.joins {
        run(&mut r, "lattice/joins", &|ck| fiber_lattice(&cx, ck, false));
        run(&mut r, "lattice/reindex-preserves-joins", &|ck| preservation(&cx, ck, false));
    }
    r.sort();
    r
}

fn identity_law<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker) -> Result<(), Stop> {
    for &a in &cx.objs {
        let id = cx.cat().identity(a);
        for p in cx.fiber(a)? {
            let q = cx.d.reindex(&id, &p)?;
            ck.check(cx.d.equiv(a, &p, &q)?, || {
                (
                    format!("reindexing along the identity of {} moves a predicate", cx.cat().object_name(a)),
                    json!({"object": cx.obj(a), "pred": cx.pred(a, &p), "result": cx.pred(a, &q)}),
                )
            })?;
        }
    }
    Ok(())
}

fn composition_law<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker) -> Result<(), Stop> {
    for &x in &cx.objs {
        for &y in &cx.objs {
            let fs = cx.hom(x, y)?;
            if fs.is_empty() {
                continue;
            }
            for &z in &cx.objs {
                let gs = cx.hom(y, z)?;
                if gs.is_empty() {
                    continue;
                }
                let fiber = cx.fiber(z)?;
                for f in &fs {
                    for g in &gs {
                        let gf = cx.cat().compose(g, f)?;
                        for p in &fiber {
                            let whole = cx.d.reindex(&gf, p)?;
                            let steps = cx.d.reindex(f, &cx.d.reindex(g, p)?)?;
                            ck.check(cx.d.equiv(x, &whole, &steps)?, || {
                                (
                                    "P(g∘f) differs from P(f)∘P(g)".to_string(),
                                    json!({
                                        "f": cx.arrow(f), "g": cx.arrow(g), "pred": cx.pred(z, p),
                                        "composite": cx.pred(x, &whole), "stepwise": cx.pred(x, &steps)
                                    }),
                                )
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn monotone_law<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker) -> Result<(), Stop> {
    for &x in &cx.objs {
        for &y in &cx.objs {
            let fs = cx.hom(x, y)?;
            if fs.is_empty() {
                continue;
            }
            let fiber = cx.fiber(y)?;
            for f in &fs {
                let images: Vec<D::Pred> = fiber.iter().map(|p| cx.d.reindex(f, p)).collect::<crate::Result<_>>()?;
                for (i, p) in fiber.iter().enumerate() {
                    for (j, q) in fiber.iter().enumerate() {
                        if !cx.d.leq(y, p, q)? {
                            continue;
                        }
                        ck.check(cx.d.leq(x, &images[i], &images[j])?, || {
                            (
                                "reindexing is not monotone".to_string(),
                                json!({"f": cx.arrow(f), "p": cx.pred(y, p), "q": cx.pred(y, q)}),
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `∃_pr p ≤ q ⇔ p ≤ P_pr q`, or `P_pr q ≤ p ⇔ q ≤ ∀_pr p`.
fn pr_adjunction<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker, left: bool) -> Result<(), Stop> {
    for (a1, a2) in cx.pairs() {
        let a12 = cx.cat().product(a1, a2)?;
        let pr = cx.cat().pr1(a1, a2)?;
        let upper = cx.fiber(a12)?;
        let lower = cx.fiber(a1)?;
        for p in &upper {
            let q_p = if left { cx.d.exists_pr(a1, a2, p)? } else { cx.d.forall_pr(a1, a2, p)? };
            for q in &lower {
                let pulled = cx.d.reindex(&pr, q)?;
                let (lhs, rhs) = if left {
                    (cx.d.leq(a1, &q_p, q)?, cx.d.leq(a12, p, &pulled)?)
                } else {
                    (cx.d.leq(a1, q, &q_p)?, cx.d.leq(a12, &pulled, p)?)
                };
                ck.check(lhs == rhs, || {
                    (
                        format!("{} along a projection is not adjoint to reindexing", if left { "∃" } else { "∀" }),
                        json!({"a1": cx.obj(a1), "a2": cx.obj(a2), "p": cx.pred(a12, p), "q": cx.pred(a1, q),
                               "quantified": cx.pred(a1, &q_p), "quantifier_side": lhs, "reindex_side": rhs}),
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn pr_bc<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker, left: bool) -> Result<(), Stop> {
    let quant = |a1, a2, p: &D::Pred| if left { cx.d.exists_pr(a1, a2, p) } else { cx.d.forall_pr(a1, a2, p) };
    for &dd in &cx.objs {
        for &a in &cx.objs {
            let fs = cx.hom(dd, a)?;
            if fs.is_empty() {
                continue;
            }
            for &c in &cx.objs {
                let ac = cx.cat().product(a, c)?;
                let fiber = cx.fiber(ac)?;
                for f in &fs {
                    let f1 = cx.cat().product_map(f, &cx.cat().identity(c))?;
                    for p in &fiber {
                        let one = cx.d.reindex(f, &quant(a, c, p)?)?;
                        let two = quant(dd, c, &cx.d.reindex(&f1, p)?)?;
                        ck.check(cx.d.equiv(dd, &one, &two)?, || {
                            (
                                "quantifying then reindexing differs from reindexing then quantifying".to_string(),
                                json!({"f": cx.arrow(f), "c": cx.obj(c), "pred": cx.pred(ac, p),
                                       "reindexed_quantified": cx.pred(dd, &one), "quantified_reindexed": cx.pred(dd, &two)}),
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn inj_adjunction<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker, left: bool) -> Result<(), Stop> {
    for (a, b) in cx.pairs() {
        let ab = cx.cat().coproduct(a, b)?;
        let j = cx.cat().inj1(a, b)?;
        let small = cx.fiber(a)?;
        let big = cx.fiber(ab)?;
        for p in &small {
            let q_p = if left { cx.d.exists_inj(a, b, p)? } else { cx.d.forall_inj(a, b, p)? };
            for q in &big {
                let pulled = cx.d.reindex(&j, q)?;
                let (lhs, rhs) = if left {
                    (cx.d.leq(ab, &q_p, q)?, cx.d.leq(a, p, &pulled)?)
                } else {
                    (cx.d.leq(ab, q, &q_p)?, cx.d.leq(a, &pulled, p)?)
                };
                ck.check(lhs == rhs, || {
                    (
                        format!("{} along an injection is not adjoint to reindexing", if left { "∃" } else { "∀" }),
                        json!({"a": cx.obj(a), "b": cx.obj(b), "p": cx.pred(a, p), "q": cx.pred(ab, q)}),
                    )
                })?;
            }
        }
    }
    Ok(())
}

/// Squares with `f: C -> A` on one side, `f + h: C+D -> A+B` on the other and
/// the left injections horizontally.
fn inj_bc<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker, left: bool) -> Result<(), Stop> {
    let quant = |a, b, p: &D::Pred| if left { cx.d.exists_inj(a, b, p) } else { cx.d.forall_inj(a, b, p) };
    for (c, a) in cx.pairs() {
        let fs = cx.hom(c, a)?;
        if fs.is_empty() {
            continue;
        }
        let fiber = cx.fiber(a)?;
        for (dd, b) in cx.pairs() {
            let hs = cx.hom(dd, b)?;
            for f in &fs {
                for h in &hs {
                    let g = cx.cat().coproduct_map(f, h)?;
                    for p in &fiber {
                        let one = cx.d.reindex(&g, &quant(a, b, p)?)?;
                        let two = quant(c, dd, &cx.d.reindex(f, p)?)?;
                        let cd = cx.cat().coproduct(c, dd)?;
                        ck.check(cx.d.equiv(cd, &one, &two)?, || {
                            (
                                "injection quantifier does not commute with reindexing".to_string(),
                                json!({"f": cx.arrow(f), "h": cx.arrow(h), "pred": cx.pred(a, p),
                                       "reindexed_quantified": cx.pred(cd, &one), "quantified_reindexed": cx.pred(cd, &two)}),
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn any_adjunction<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker, left: bool) -> Result<(), Stop> {
    for f in cx.all_arrows()? {
        let (x, y) = (cx.cat().dom(&f), cx.cat().cod(&f));
        let src = cx.fiber(x)?;
        let dst = cx.fiber(y)?;
        for p in &src {
            let q_p = if left { cx.d.exists_along(&f, p)? } else { cx.d.forall_along(&f, p)? };
            for q in &dst {
                let pulled = cx.d.reindex(&f, q)?;
                let (lhs, rhs) = if left {
                    (cx.d.leq(y, &q_p, q)?, cx.d.leq(x, p, &pulled)?)
                } else {
                    (cx.d.leq(y, q, &q_p)?, cx.d.leq(x, &pulled, p)?)
                };
                ck.check(lhs == rhs, || {
                    (
                        format!("{} along an arrow is not adjoint to reindexing", if left { "∃" } else { "∀" }),
                        json!({"f": cx.arrow(&f), "p": cx.pred(x, p), "q": cx.pred(y, q)}),
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn fiber_lattice<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker, meets: bool) -> Result<(), Stop> {
    // In the meet case `le(x, y)` is `x ≤ y`; for joins the order is flipped
    // so both cases check a greatest lower bound.
    let le = |a, x: &D::Pred, y: &D::Pred| if meets { cx.d.leq(a, x, y) } else { cx.d.leq(a, y, x) };
    for &a in &cx.objs {
        let fiber = cx.fiber(a)?;
        let unit = if meets { cx.d.top(a)? } else { cx.d.bottom(a)? };
        for p in &fiber {
            ck.check(le(a, p, &unit)?, || {
                (
                    format!("{} is not extremal", if meets { "top" } else { "bottom" }),
                    json!({"object": cx.obj(a), "unit": cx.pred(a, &unit), "pred": cx.pred(a, p)}),
                )
            })?;
        }
        for p in &fiber {
            for q in &fiber {
                let m = if meets { cx.d.meet(a, p, q)? } else { cx.d.join(a, p, q)? };
                let bound = le(a, &m, p)? && le(a, &m, q)?;
                let mut best = true;
                for z in &fiber {
                    if le(a, z, p)? && le(a, z, q)? && !le(a, z, &m)? {
                        best = false;
                        break;
                    }
                }
                ck.check(bound && best, || {
                    (
                        format!("{} fails its universal property", if meets { "meet" } else { "join" }),
                        json!({"object": cx.obj(a), "p": cx.pred(a, p), "q": cx.pred(a, q), "result": cx.pred(a, &m)}),
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn preservation<D: Doctrine>(cx: &Ctx<D>, ck: &mut Checker, meets: bool) -> Result<(), Stop> {
    let op = |a, p: &D::Pred, q: &D::Pred| if meets { cx.d.meet(a, p, q) } else { cx.d.join(a, p, q) };
    let unit = |a| if meets { cx.d.top(a) } else { cx.d.bottom(a) };
    for &x in &cx.objs {
        for &y in &cx.objs {
            let fs = cx.hom(x, y)?;
            if fs.is_empty() {
                continue;
            }
            let fiber = cx.fiber(y)?;
            for f in &fs {
                let u = cx.d.reindex(f, &unit(y)?)?;
                ck.check(cx.d.equiv(x, &u, &unit(x)?)?, || {
                    (
                        format!("reindexing does not preserve {}", if meets { "top" } else { "bottom" }),
                        json!({"f": cx.arrow(f)}),
                    )
                })?;
                for p in &fiber {
                    for q in &fiber {
                        let one = cx.d.reindex(f, &op(y, p, q)?)?;
                        let two = op(x, &cx.d.reindex(f, p)?, &cx.d.reindex(f, q)?)?;
                        ck.check(cx.d.equiv(x, &one, &two)?, || {
                            (
                                format!("reindexing does not preserve {}", if meets { "meets" } else { "joins" }),
                                json!({"f": cx.arrow(f), "p": cx.pred(y, p), "q": cx.pred(y, q)}),
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doctrine::{OpDoctrine, PowersetDoctrine};
    use crate::laws::Status;

    #[test]
    fn powerset_passes_small_bounds() {
        let r = verify_doctrine(&PowersetDoctrine::new(), VerifyBounds { max_card: 2, fiber_bound: 0 });
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.entries.len() >= 13);
    }

    #[test]
    fn opposite_powerset_passes() {
        let r = verify_doctrine(&OpDoctrine::new(PowersetDoctrine::new()), VerifyBounds { max_card: 2, fiber_bound: 0 });
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.entry("adjunction/exists-pr").unwrap().status, Status::Pass);
    }
}
