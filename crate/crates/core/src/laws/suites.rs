//! The named law suites behind `verify-laws`.
//!
//! Every suite ranges over base objects of cardinality at most
//! `max_card` and over completion elements whose quantified object has
//! cardinality at most `fiber_bound`. Reports are sorted by law id, so two
//! runs with the same bounds print the same thing.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Checker, LawReport, Status, Stop};
use crate::completion::{Completion, Polarity, QuantElem};
use crate::dialectica::{check_oracle, dial_lattice, nested};
use crate::doctrine::{verify_doctrine_laws, Doctrine, OpDoctrine, PowersetDoctrine, VerifyBounds};
use crate::error::{Error, Result};
use crate::fincat::{FinSet, FiniteCategory, ObjId};
use crate::principles::{extract_choice, extract_counterexample, skolem_check};

type Arrow<D> = <<D as Doctrine>::Cat as FiniteCategory>::Arrow;
type Elem<D> = QuantElem<<D as Doctrine>::Pred>;

/// A multiplication `TT -> T`, pluggable so that a broken one can be tested.
pub type MultFn<'a, D> = &'a dyn Fn(&Completion<Completion<D>>, &QuantElem<Elem<D>>) -> Result<Elem<D>>;

/// Predicates on `(A1×A2)×B` are swept exhaustively up to this many; larger
/// fibers are sampled.
pub const SKOLEM_FULL_SWEEP: usize = 256;
pub const SKOLEM_SAMPLES: usize = 24;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Functoriality,
    Order,
    Adjunctions,
    BeckChevalley,
    Lattice,
    Duality,
    Monad,
    Skolem,
    Choice,
    DialecticaOracle,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `All` runs them.
    pub const EACH: [Suite; 10] = [
        Suite::Functoriality,
        Suite::Order,
        Suite::Adjunctions,
        Suite::BeckChevalley,
        Suite::Lattice,
        Suite::Duality,
        Suite::Monad,
        Suite::Skolem,
        Suite::Choice,
        Suite::DialecticaOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Functoriality => "functoriality",
            Suite::Order => "order",
            Suite::Adjunctions => "adjunctions",
            Suite::BeckChevalley => "beck-chevalley",
            Suite::Lattice => "lattice",
            Suite::Duality => "duality",
            Suite::Monad => "monad",
            Suite::Skolem => "skolem",
            Suite::Choice => "choice",
            Suite::DialecticaOracle => "dialectica-oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LawBounds {
    pub max_card: usize,
    pub fiber_bound: usize,
    /// Seeds the sampled Skolem instances.
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 0x5eed;

impl Default for LawBounds {
    fn default() -> Self {
        LawBounds {
            max_card: 2,
            fiber_bound: 2,
            seed: DEFAULT_SEED,
        }
    }
}

impl LawBounds {
    fn doctrine(&self) -> VerifyBounds {
        VerifyBounds {
            max_card: self.max_card,
            fiber_bound: self.fiber_bound,
        }
    }
}

/// Runs `suite` over the powerset doctrine on finite sets.
pub fn verify_laws(suite: Suite, bounds: &LawBounds) -> LawReport {
    verify_laws_for(&PowersetDoctrine::new(), suite, bounds)
}

/// Runs `suite` over an arbitrary doctrine on finite sets.
pub fn verify_laws_for<D>(d: &D, suite: Suite, bounds: &LawBounds) -> LawReport
where
    D: Doctrine<Cat = FinSet> + Clone,
{
    let mut r = LawReport::new(suite.name());
    match suite {
        Suite::All => {
            for s in Suite::EACH {
                r.extend(verify_laws_for(d, s, bounds));
            }
        }
        Suite::Functoriality => r.extend(layered(d, bounds, "functoriality")),
        Suite::Adjunctions => r.extend(layered(d, bounds, "adjunction")),
        Suite::Lattice => r.extend(layered(d, bounds, "lattice")),
        Suite::BeckChevalley => {
            r.extend(layered(d, bounds, "beck-chevalley"));
            r.extend(strict_bc_laws(d, bounds));
        }
        Suite::Order => {
            for p in [Polarity::Ex, Polarity::Un] {
                r.extend(order_laws(&Completion::new(d.clone(), p), bounds));
            }
        }
        Suite::Duality => r.extend(duality_laws(d, bounds)),
        Suite::Monad => {
            for p in [Polarity::Ex, Polarity::Un] {
                r.extend(monad_laws(d, p, bounds, &|cc, z| cc.mult_q(z)));
            }
        }
        Suite::Skolem => r.extend(skolem_laws(d, bounds)),
        Suite::Choice => r.extend(choice_laws(d, bounds)),
        Suite::DialecticaOracle => r.extend(dialectica_laws(d, bounds)),
    }
    r.sort();
    r
}

fn prefixed(mut r: LawReport, prefix: &str) -> LawReport {
    for e in &mut r.entries {
        e.law = format!("{prefix}/{}", e.law);
    }
    r
}

fn polarity_tag(p: Polarity) -> &'static str {
    match p {
        Polarity::Ex => "ex",
        Polarity::Un => "un",
    }
}

/// One group of doctrine laws checked on the base doctrine and on both of
/// its completions.
fn layered<D: Doctrine + Clone>(d: &D, bounds: &LawBounds, group: &str) -> LawReport {
    let want = |law: &str| law.starts_with(group);
    let vb = bounds.doctrine();
    let mut r = prefixed(verify_doctrine_laws(d, vb, want), "base");
    for p in [Polarity::Ex, Polarity::Un] {
        let c = Completion::new(d.clone(), p);
        r.extend(prefixed(verify_doctrine_laws(&c, vb, want), polarity_tag(p)));
    }
    r
}

struct Scope<'a, D: Doctrine> {
    c: &'a Completion<D>,
    objs: Vec<ObjId>,
    k: usize,
}

impl<'a, D: Doctrine> Scope<'a, D> {
    fn new(c: &'a Completion<D>, bounds: &LawBounds) -> Self {
        Scope {
            c,
            objs: c.base().objects_up_to(bounds.max_card),
            k: bounds.fiber_bound,
        }
    }

    fn cat(&self) -> &D::Cat {
        self.c.base()
    }

    fn fiber(&self, a: ObjId) -> Result<Vec<Elem<D>>> {
        self.c.bounded_fiber(a, self.k)
    }

    fn elem(&self, x: &Elem<D>) -> Value {
        self.c.elem_to_json(x)
    }

    fn arrow(&self, f: &Arrow<D>) -> Value {
        self.cat().arrow_to_json(f)
    }
}

/// Reflexivity, transitivity, validity of every found certificate, and
/// composition of certificates along a chain.
pub fn order_laws<D: Doctrine>(c: &Completion<D>, bounds: &LawBounds) -> LawReport {
    let s = Scope::new(c, bounds);
    let tag = polarity_tag(c.polarity());
    let mut r = LawReport::new("order");
    let mut matrices = Vec::new();
    let built = (|| -> Result<()> {
        for &a in &s.objs {
            let fiber = s.fiber(a)?;
            let mut w = Vec::with_capacity(fiber.len() * fiber.len());
            for x in &fiber {
                for y in &fiber {
                    w.push(c.leq_witness(x, y)?.map(|w| w.arrow));
                }
            }
            matrices.push((a, fiber, w));
        }
        Ok(())
    })();
    if let Err(e) = built {
        for law in ["certificates", "reflexive", "transitive"] {
            r.run(format!("{tag}/order/{law}"), |_| Err(Stop::Error(e.clone())));
        }
        return r;
    }

    r.run(format!("{tag}/order/reflexive"), |ck| {
        for (_, fiber, w) in &matrices {
            let n = fiber.len();
            for i in 0..n {
                ck.check(w[i * n + i].is_some(), || ("no witness for x ≤ x".into(), json!({"x": s.elem(&fiber[i])})))?;
            }
        }
        Ok(())
    });
    r.run(format!("{tag}/order/certificates"), |ck| {
        for (_, fiber, w) in &matrices {
            let n = fiber.len();
            for i in 0..n {
                for j in 0..n {
                    if let Some(f) = &w[i * n + j] {
                        ck.check(c.check_witness(&fiber[i], &fiber[j], f)?, || {
                            (
                                "returned certificate does not validate".into(),
                                json!({"x": s.elem(&fiber[i]), "y": s.elem(&fiber[j]), "witness": s.arrow(f)}),
                            )
                        })?;
                    }
                }
            }
        }
        Ok(())
    });
    r.run(format!("{tag}/order/transitive"), |ck| {
        let cat = s.cat();
        for (a, fiber, w) in &matrices {
            let n = fiber.len();
            for i in 0..n {
                for j in 0..n {
                    let Some(f) = &w[i * n + j] else { continue };
                    for l in 0..n {
                        let Some(g) = &w[j * n + l] else { continue };
                        let (x, y, z) = (&fiber[i], &fiber[j], &fiber[l]);
                        // Existential: A×B -f-> C, A×C -g-> D gives g∘⟨pr_A, f⟩.
                        // Universal: the witnesses point the other way.
                        let (outer, inner, mid) = match c.polarity() {
                            Polarity::Ex => (g, f, x.qobj),
                            Polarity::Un => (f, g, z.qobj),
                        };
                        let pr = cat.pr1(*a, mid)?;
                        let composite = cat.compose(outer, &cat.pair(&pr, inner)?)?;
                        let ok = w[i * n + l].is_some() && c.check_witness(x, z, &composite)?;
                        ck.check(ok, || {
                            (
                                "x ≤ y and y ≤ z but the composed certificate fails for x ≤ z".into(),
                                json!({"x": s.elem(x), "y": s.elem(y), "z": s.elem(z), "composite": s.arrow(&composite)}),
                            )
                        })?;
                    }
                }
            }
        }
        Ok(())
    });
    r
}

/// Beck-Chevalley as literal equality on `(f×1, pr)` squares: for
/// `f: D -> A`, `Q_D(P_{f×1} x) = P_f(Q_A x)`.
fn strict_bc_laws<D: Doctrine<Cat = FinSet> + Clone>(d: &D, bounds: &LawBounds) -> LawReport {
    let mut r = LawReport::new("beck-chevalley");
    let ex = Completion::existential(d.clone());
    let un = Completion::universal(d.clone());
    type Quant<'q, D> = &'q dyn Fn(&Completion<D>, ObjId, ObjId, &Elem<D>) -> Result<Elem<D>>;
    let cases: [(&Completion<D>, &str, Quant<D>); 3] = [
        (&ex, "ex/beck-chevalley-strict/exists-pr", &|c, a, b, x| c.exists_pr_q(a, b, x)),
        (&ex, "ex/beck-chevalley-strict/forall-pr", &|c, a, b, x| c.forall_pr_exp(a, b, x)),
        (&un, "un/beck-chevalley-strict/forall-pr", &|c, a, b, x| c.forall_pr_q(a, b, x)),
    ];
    for (c, law, quant) in cases {
        let s = Scope::new(c, bounds);
        r.run(law, |ck| {
            let cat = s.cat();
            for &a in &s.objs {
                for &b in &s.objs {
                    let ab = cat.product(a, b)?;
                    let fiber = s.fiber(ab)?;
                    for &dd in &s.objs {
                        for f in cat.enumerate_hom(dd, a)? {
                            let f1 = cat.product_map(&f, &cat.identity(b))?;
                            for x in &fiber {
                                let lhs = quant(c, dd, b, &c.reindex_q(&f1, x)?)?;
                                let rhs = c.reindex_q(&f, &quant(c, a, b, x)?)?;
                                ck.check(lhs == rhs, || {
                                    (
                                        "quantifying after reindexing differs from reindexing after quantifying".into(),
                                        json!({
                                            "f": s.arrow(&f), "quantified": cat.object_name(b), "x": s.elem(x),
                                            "quantify_then_reindex": s.elem(&rhs), "reindex_then_quantify": s.elem(&lhs)
                                        }),
                                    )
                                })?;
                            }
                        }
                    }
                }
            }
            Ok(())
        });
    }
    r
}

/// The order of `P^un` against the reversed order of `(P^op)^ex`, and
/// symmetrically, with identical certificates.
fn duality_laws<D: Doctrine<Cat = FinSet> + Clone>(d: &D, bounds: &LawBounds) -> LawReport {
    let mut r = LawReport::new("duality");
    let op = OpDoctrine::new(d.clone());
    r.run("duality/un-vs-op-ex", |ck| {
        duality_matrix(&Completion::universal(d.clone()), &Completion::existential(op.clone()), bounds, ck)
    });
    r.run("duality/ex-vs-op-un", |ck| {
        duality_matrix(&Completion::existential(d.clone()), &Completion::universal(op.clone()), bounds, ck)
    });
    r
}

fn duality_matrix<D, E>(c: &Completion<D>, e: &Completion<E>, bounds: &LawBounds, ck: &mut Checker) -> std::result::Result<(), Stop>
where
    D: Doctrine,
    E: Doctrine<Cat = D::Cat, Pred = D::Pred>,
{
    use crate::completion::duality_transport as t;
    let s = Scope::new(c, bounds);
    for &a in &s.objs {
        let fiber = s.fiber(a)?;
        let dual_fiber = e.bounded_fiber(a, bounds.fiber_bound)?;
        let transported: Vec<_> = fiber.iter().map(t).collect();
        ck.check(transported == dual_fiber, || {
            ("transport does not biject the bounded fibers".into(), json!({"object": s.cat().object_name(a)}))
        })?;
        for x in &fiber {
            for y in &fiber {
                let w = c.leq_witness(x, y)?.map(|w| w.arrow);
                let v = e.leq_witness(&t(y), &t(x))?.map(|w| w.arrow);
                ck.check(w == v, || {
                    (
                        "x ≤ y does not match T(y) ≤ T(x) in the dual completion".into(),
                        json!({
                            "x": s.elem(x), "y": s.elem(y),
                            "witness": w.as_ref().map(|f| s.arrow(f)),
                            "dual_witness": v.as_ref().map(|f| s.arrow(f)),
                        }),
                    )
                })?;
            }
        }
    }
    Ok(())
}

/// Unit and associativity laws of the monad, prenex normal form, and (for
/// the existential completion) the unit commuting with `∀`.
pub fn monad_laws<D>(d: &D, polarity: Polarity, bounds: &LawBounds, mult: MultFn<D>) -> LawReport
where
    D: Doctrine<Cat = FinSet> + Clone,
{
    let tag = polarity_tag(polarity);
    let c = Completion::new(d.clone(), polarity);
    let cc = Completion::new(c.clone(), polarity);
    let s = Scope::new(&c, bounds);
    let mut r = LawReport::new("monad");

    let unit_law = |which: &str, ck: &mut Checker| -> std::result::Result<(), Stop> {
        for &a in &s.objs {
            for x in s.fiber(a)? {
                let z = if which == "inner" { cc.inner_unit(&x)? } else { cc.outer_unit(&x)? };
                let m = mult(&cc, &z)?;
                ck.check(c.equiv_q(&m, &x)?, || {
                    (
                        format!("multiplication after the {which} unit is not the identity"),
                        json!({"x": s.elem(&x), "result": s.elem(&m)}),
                    )
                })?;
            }
        }
        Ok(())
    };
    r.run(format!("{tag}/monad/mult-inner-unit"), |ck| unit_law("inner", ck));
    r.run(format!("{tag}/monad/mult-outer-unit"), |ck| unit_law("outer", ck));

    r.run(format!("{tag}/monad/mult-assoc"), |ck| {
        let cat = s.cat();
        let ccc = Completion::new(cc.clone(), polarity);
        let small = cat.objects_up_to(bounds.max_card.min(1));
        for &a in &small {
            for &b in &s.objs {
                for &cq in &s.objs {
                    for &dq in &s.objs {
                        if b.0 * cq.0 * dq.0 > 4 || cq.0 > s.k || dq.0 > s.k {
                            continue;
                        }
                        let ab = cat.product(a, b)?;
                        let abc = cat.product(ab, cq)?;
                        let abcd = cat.product(abc, dq)?;
                        for delta in d.enumerate_fiber(abcd, s.k)? {
                            let w = QuantElem { polarity, base: abc, qobj: dq, pred: delta };
                            let v = QuantElem { polarity, base: ab, qobj: cq, pred: w };
                            let z3 = QuantElem { polarity, base: a, qobj: b, pred: v };
                            // μ ∘ μT against μ ∘ Tμ.
                            let outer_first = mult(&cc, &ccc.mult_q(&z3)?)?;
                            let inner_first = QuantElem {
                                polarity,
                                base: a,
                                qobj: b,
                                pred: mult(&cc, &z3.pred)?,
                            };
                            let inner_first = mult(&cc, &inner_first)?;
                            ck.check(c.equiv_q(&outer_first, &inner_first)?, || {
                                (
                                    "the two ways of flattening a triple completion disagree".into(),
                                    json!({
                                        "a": cat.object_name(a), "b": cat.object_name(b),
                                        "c": cat.object_name(cq), "d": cat.object_name(dq),
                                        "delta": d.pred_to_json(abcd, &z3.pred.pred.pred),
                                        "mu_mu_t": s.elem(&outer_first), "mu_t_mu": s.elem(&inner_first),
                                    }),
                                )
                            })?;
                        }
                    }
                }
            }
        }
        Ok(())
    });

    r.run(format!("{tag}/monad/prenex"), |ck| {
        for &a in &s.objs {
            for x in s.fiber(a)? {
                let p = c.prenex(&x)?;
                ck.check(c.equiv_q(&p, &x)?, || {
                    ("element differs from its prenex form".into(), json!({"x": s.elem(&x), "prenex": s.elem(&p)}))
                })?;
            }
        }
        Ok(())
    });

    // Only the existential unit preserves ∀: universally, `(A, 0, -)` is
    // the top but `η(∀_{pr} α)` over an empty `A2` is `(A, 1, ⊤)`.
    if polarity == Polarity::Ex && d.caps().forall_pr {
        r.run(format!("{tag}/monad/unit-forall"), |ck| {
            let cat = s.cat();
            for &a1 in &s.objs {
                for &a2 in &s.objs {
                    let a12 = cat.product(a1, a2)?;
                    for alpha in d.enumerate_fiber(a12, s.k)? {
                        let lhs = c.unit_q(a1, &d.forall_pr(a1, a2, &alpha)?)?;
                        let rhs = c.forall_pr_q(a1, a2, &c.unit_q(a12, &alpha)?)?;
                        ck.check(c.equiv_q(&lhs, &rhs)?, || {
                            (
                                "the unit does not commute with the universal quantifier".into(),
                                json!({
                                    "a1": cat.object_name(a1), "a2": cat.object_name(a2),
                                    "alpha": d.pred_to_json(a12, &alpha),
                                    "unit_of_forall": s.elem(&lhs), "forall_of_unit": s.elem(&rhs),
                                }),
                            )
                        })?;
                    }
                }
            }
            Ok(())
        });
    }
    r
}

/// Skolemization in the existential completion: both sides equivalent for
/// every predicate on `(A1×A2)×B`, exhaustively on small fibers and on a
/// seeded sample of the larger ones.
fn skolem_laws<D: Doctrine<Cat = FinSet> + Clone>(d: &D, bounds: &LawBounds) -> LawReport {
    let c = Completion::existential(d.clone());
    let s = Scope::new(&c, bounds);
    let mut r = LawReport::new("skolem");
    let mut triples = Vec::new();
    for &a1 in &s.objs {
        for &a2 in &s.objs {
            for &b in &s.objs {
                if a1.0 > 0 && a2.0 > 0 && b.0 > 0 {
                    triples.push((a1, a2, b));
                }
            }
        }
    }
    let beyond = std::cell::Cell::new(0usize);
    let check = |ck: &mut Checker, sampled: bool| -> std::result::Result<(), Stop> {
        let cat = s.cat();
        let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
        beyond.set(0);
        for &(a1, a2, b) in &triples {
            let obj = cat.product(cat.product(a1, a2)?, b)?;
            let fiber = match d.enumerate_fiber(obj, s.k) {
                Err(e) if e.is_budget() => {
                    beyond.set(beyond.get() + 1);
                    continue;
                }
                other => other?,
            };
            let picked: Vec<usize> = match (fiber.len() <= SKOLEM_FULL_SWEEP, sampled) {
                (true, false) => (0..fiber.len()).collect(),
                (false, true) => {
                    let mut idx = sample(&mut rng, fiber.len(), SKOLEM_SAMPLES.min(fiber.len())).into_vec();
                    idx.sort_unstable();
                    idx
                }
                _ => continue,
            };
            for i in picked {
                let alpha = &fiber[i];
                let rep = match skolem_check(&c, a1, a2, b, alpha) {
                    Err(e) if e.is_budget() => {
                        beyond.set(beyond.get() + 1);
                        continue;
                    }
                    other => other?,
                };
                ck.check(rep.equal(), || {
                    (
                        "the two sides of Skolemization are not equivalent".into(),
                        json!({
                            "a1": cat.object_name(a1), "a2": cat.object_name(a2), "b": cat.object_name(b),
                            "alpha": d.pred_to_json(obj, alpha), "seed": bounds.seed,
                            "lhs": s.elem(&rep.lhs), "rhs": s.elem(&rep.rhs),
                            "lhs_le_rhs": rep.lhs_le_rhs.is_some(), "rhs_le_lhs": rep.rhs_le_lhs.is_some(),
                        }),
                    )
                })?;
            }
        }
        Ok(())
    };
    for (law, sampled) in [("skolem/full-sweep", false), ("skolem/sampled", true)] {
        r.run(law, |ck| check(ck, sampled));
        let e = r.entries.last_mut().expect("just ran");
        if e.status == Status::Pass && beyond.get() > 0 {
            if e.checked == 0 {
                e.status = Status::Skipped;
            }
            e.detail = Some(format!("{} instances beyond the search budget were not checked", beyond.get()));
        }
    }
    r
}

/// The Rule of Choice and the Counterexample Property against a direct
/// search for `f: A -> B` instantiating `α`.
fn choice_laws<D: Doctrine<Cat = FinSet> + Clone>(d: &D, bounds: &LawBounds) -> LawReport {
    let mut r = LawReport::new("choice");
    let cat = d.base();
    let objs = cat.objects_up_to(bounds.max_card);
    let graph = |a: ObjId, f: &Arrow<D>, alpha: &D::Pred| -> Result<D::Pred> {
        d.reindex(&cat.pair(&cat.identity(a), f)?, alpha)
    };
    for choice in [true, false] {
        let (c, name) = if choice {
            (Completion::existential(d.clone()), "choice")
        } else {
            (Completion::universal(d.clone()), "counterexample")
        };
        // Does f instantiate α to ⊤ (choice) or to ⊥ (counterexample)?
        let good = |a: ObjId, f: &Arrow<D>, alpha: &D::Pred| -> Result<bool> {
            let inst = graph(a, f, alpha)?;
            if choice {
                d.leq(a, &d.top(a)?, &inst)
            } else {
                d.leq(a, &inst, &d.bottom(a)?)
            }
        };
        r.run(format!("{name}/soundness-and-completeness"), |ck| {
            for &a in &objs {
                for &b in &objs {
                    let ab = cat.product(a, b)?;
                    let homs = cat.enumerate_hom(a, b)?;
                    for alpha in d.enumerate_fiber(ab, bounds.fiber_bound)? {
                        let x = c.elem(a, b, alpha.clone())?;
                        let found = if choice {
                            extract_choice(&c, &x)?.map(|cert| cert.witness)
                        } else {
                            extract_counterexample(&c, &x)?.map(|cert| cert.counterexample)
                        };
                        let mut expected = None;
                        for f in &homs {
                            if good(a, f, &alpha)? {
                                expected = Some(f.clone());
                                break;
                            }
                        }
                        let ok = match &found {
                            Some(f) => good(a, f, &alpha)? && expected.is_some(),
                            None => expected.is_none(),
                        };
                        ck.check(ok, || {
                            (
                                format!("{name} extraction disagrees with the direct search"),
                                json!({
                                    "x": c.elem_to_json(&x),
                                    "extracted": found.as_ref().map(|f| cat.arrow_to_json(f)),
                                    "direct": expected.as_ref().map(|f| cat.arrow_to_json(f)),
                                }),
                            )
                        })?;
                    }
                }
            }
            Ok(())
        });
    }
    r
}

/// The nested-completion presentation of the dialectica order against the
/// direct condition, the lattice property of its reflection, and the
/// doctrine laws of the nested completion itself on small objects.
fn dialectica_laws<D: Doctrine<Cat = FinSet> + Clone>(d: &D, bounds: &LawBounds) -> LawReport {
    let mut r = LawReport::new("dialectica");
    let k = bounds.fiber_bound;
    let oracle = check_oracle(d, k);
    let pairs = |v: &[(usize, usize)]| json!(v);
    match oracle {
        Ok(o) => {
            let pairs_checked = o.pairs as u64;
            r.run("dialectica/oracle-order", |ck| {
                ck.check(o.order_mismatches.is_empty(), || {
                    ("nested order and direct order disagree".into(), json!({"pairs": pairs(&o.order_mismatches)}))
                })
            });
            r.run("dialectica/oracle-certificates", |ck| {
                ck.check(o.certificate_mismatches.is_empty(), || {
                    (
                        "translated certificates differ from the direct ones".into(),
                        json!({"pairs": pairs(&o.certificate_mismatches)}),
                    )
                })
            });
            r.run("dialectica/round-trip", |ck| {
                ck.check(o.round_trip_failures.is_empty(), || {
                    ("objects change through the nested form".into(), json!({"objects": o.round_trip_failures}))
                })
            });
            for e in r.entries.iter_mut() {
                e.checked = e.checked.max(pairs_checked);
            }
        }
        Err(e) => {
            for law in ["oracle-order", "oracle-certificates", "round-trip"] {
                r.run(format!("dialectica/{law}"), |_| Err(Stop::Error(e.clone())));
            }
        }
    }
    r.run("dialectica/lattice", |ck| {
        let l = dial_lattice(d, k)?;
        ck.check(l.report.is_lattice(), || {
            (
                "the reflected bounded dialectica poset is not a lattice".into(),
                json!({
                    "classes": l.poset.len(),
                    "missing_meets": l.report.missing_meets, "missing_joins": l.report.missing_joins,
                }),
            )
        })
    });
    let small = VerifyBounds {
        max_card: bounds.max_card.min(1),
        fiber_bound: k,
    };
    r.extend(prefixed(verify_doctrine_laws(&nested(d.clone()), small, |_| true), "composite"));
    r
}
