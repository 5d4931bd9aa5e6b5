//! The acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the test harness so that every line is printed; exits
//! nonzero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::{Mutex, OnceLock};

use common::*;
use quantcomp::completion::{Completion, Polarity};
use quantcomp::dialectica::{bounded_dial_objects, check_oracle, dial_lattice, dial_leq};
use quantcomp::doctrine::{verify_doctrine, Doctrine, DoctrineFile, PowersetDoctrine, Subset, TabularDoctrine, VerifyBounds};
use quantcomp::fincat::{FinSet, FiniteCategory, ObjId};
use quantcomp::laws::{monad_laws, verify_laws, verify_laws_for, LawBounds, LawReport, Status, Suite};
use quantcomp::principles::{extract_choice, extract_counterexample, skolem_check};

type Verdict = Result<String, String>;

fn o(n: usize) -> ObjId {
    ObjId(n)
}

/// Every entry whose id satisfies `pick` passes, and there is at least one.
fn require(r: &LawReport, pick: impl Fn(&str) -> bool) -> Verdict {
    let chosen: Vec<_> = r.entries.iter().filter(|e| pick(&e.law)).collect();
    if chosen.is_empty() {
        return Err("no matching laws ran".into());
    }
    let bad: Vec<String> = chosen
        .iter()
        .filter(|e| e.status != Status::Pass)
        .map(|e| {
            format!(
                "{} {} {}{}",
                e.status,
                e.law,
                e.detail.clone().unwrap_or_default(),
                e.counterexample.as_ref().map(|c| format!(" {c}")).unwrap_or_default()
            )
        })
        .collect();
    if bad.is_empty() {
        let checked: u64 = chosen.iter().map(|e| e.checked).sum();
        Ok(format!("{} laws, {checked} instances", chosen.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn defaults() -> LawBounds {
    LawBounds::default()
}

/// Each suite runs once at the default bounds.
fn suite(s: Suite) -> LawReport {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, LawReport>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(s.name()) {
        return r.clone();
    }
    let r = verify_laws(s, &defaults());
    cache.lock().unwrap().insert(s.name(), r.clone());
    r
}

fn c1_doctrine_laws() -> Verdict {
    let d = PowersetDoctrine::new();
    let r = verify_doctrine(&d, VerifyBounds { max_card: 3, fiber_bound: 2 });
    for law in ["adjunction/exists-along", "adjunction/forall-along", "beck-chevalley/exists-pr", "beck-chevalley/forall-pr"] {
        ensure(r.entry(law).is_some(), || format!("{law} did not run"))?;
    }
    let summary = require(&r, |_| true)?;
    // Direct and universal images computed by hand.
    let cat = FinSet::new();
    for x in 0..=3 {
        for y in 0..=3 {
            for f in cat.enumerate_hom(o(x), o(y)).unwrap() {
                for mask in 0..1u64 << x {
                    let s = Subset::from_mask(x, mask);
                    let image = Subset::from_fn(y, |j| (0..x).any(|i| s.contains(i) && f.apply(i) == j));
                    let forall = Subset::from_fn(y, |j| (0..x).all(|i| f.apply(i) != j || s.contains(i)));
                    ensure(d.exists_along(&f, &s).unwrap() == image, || format!("∃ along {f:?} of {s:?}"))?;
                    ensure(d.forall_along(&f, &s).unwrap() == forall, || format!("∀ along {f:?} of {s:?}"))?;
                }
            }
        }
    }
    Ok(summary)
}

fn c2_orders() -> Verdict {
    let summary = require(&suite(Suite::Order), |_| true)?;
    let mut pairs = 0;
    for c in [Completion::existential(PowersetDoctrine::new()), Completion::universal(PowersetDoctrine::new())] {
        for a in 0..=2 {
            let fiber = c.bounded_fiber(o(a), 2).unwrap();
            for x in &fiber {
                for y in &fiber {
                    let brute = match c.polarity() {
                        Polarity::Ex => ex_leq_brute(x, y),
                        Polarity::Un => un_leq_brute(x, y),
                    };
                    ensure(c.leq_q(x, y).unwrap() == brute, || format!("{x:?} ≤ {y:?} disagrees with brute force"))?;
                    pairs += 1;
                }
            }
        }
    }
    // Fibers over 0, 1, 2 have 3, 7 and 21 elements.
    ensure(pairs == 2 * 499, || format!("compared {pairs} pairs"))?;
    Ok(format!("{summary}; {pairs} pairs match brute force"))
}

fn c3_adjunctions() -> Verdict {
    let r = suite(Suite::Adjunctions);
    require(&r, |l| ["ex/adjunction/exists-pr", "ex/adjunction/forall-pr", "un/adjunction/forall-pr"].contains(&l))
}

fn c4_strict_bc() -> Verdict {
    let r = suite(Suite::BeckChevalley);
    require(&r, |l| l.contains("beck-chevalley-strict"))
}

fn c5_duality() -> Verdict {
    require(&suite(Suite::Duality), |_| true)
}

fn c6_lattice() -> Verdict {
    require(&suite(Suite::Lattice), |_| true)
}

fn c7_injections() -> Verdict {
    // Includes the injection laws of the nested completion.
    let mut r = suite(Suite::Adjunctions);
    r.extend(suite(Suite::BeckChevalley));
    r.extend(suite(Suite::DialecticaOracle));
    require(&r, |l| l.ends_with("-inj"))
}

fn c8_monad() -> Verdict {
    require(&suite(Suite::Monad), |_| true)
}

fn c9_skolem() -> Verdict {
    let summary = require(&suite(Suite::Skolem), |_| true)?;
    let c = Completion::existential(PowersetDoctrine::new());
    for (a1, n) in [(1, 4), (2, 8)] {
        for mask in 0..1u64 << n {
            let alpha = Subset::from_mask(n, mask);
            let rep = skolem_check(&c, o(a1), o(2), o(2), &alpha).unwrap();
            ensure(rep.equal(), || format!("{a1}×2×2 {alpha:?}"))?;
        }
    }
    // ∀a2 ∃b (a2 = b) is witnessed by the identity, rank 1 in 2^2.
    let diag = skolem_check(&c, o(1), o(2), o(2), &Subset::from_elems(4, [0, 3]).unwrap()).unwrap();
    let point = c.elem(o(1), o(4), Subset::from_elems(4, [1]).unwrap()).unwrap();
    ensure(c.equiv_q(&diag.rhs, &point).unwrap(), || format!("diagonal gives {:?}", diag.rhs))?;
    Ok(format!("{summary}; all 16 + 256 predicates on 1×2×2 and 2×2×2"))
}

fn c10_choice() -> Verdict {
    let summary = require(&suite(Suite::Choice), |_| true)?;
    let d = PowersetDoctrine::new();
    let (ex, un) = (Completion::existential(d.clone()), Completion::universal(d));
    let mut n = 0;
    for a in 0..=2 {
        for b in 0..=2 {
            for mask in 0..1u64 << (a * b) {
                let alpha = Subset::from_mask(a * b, mask);
                let x = ex.elem(o(a), o(b), alpha.clone()).unwrap();
                let total = (0..a).all(|i| (0..b).any(|j| alpha.contains(i * b + j)));
                match extract_choice(&ex, &x).unwrap() {
                    Some(cert) => ensure(
                        total && (0..a).all(|i| alpha.contains(i * b + cert.witness.apply(i))),
                        || format!("bad choice witness for {x:?}"),
                    )?,
                    None => ensure(!total, || format!("missed a choice witness for {x:?}"))?,
                }
                let y = un.elem(o(a), o(b), alpha.clone()).unwrap();
                let refutable = (0..a).all(|i| (0..b).any(|j| !alpha.contains(i * b + j)));
                match extract_counterexample(&un, &y).unwrap() {
                    Some(cert) => ensure(
                        refutable && (0..a).all(|i| !alpha.contains(i * b + cert.counterexample.apply(i))),
                        || format!("bad counterexample for {y:?}"),
                    )?,
                    None => ensure(!refutable, || format!("missed a counterexample for {y:?}"))?,
                }
                n += 1;
            }
        }
    }
    Ok(format!("{summary}; {n} predicates against the semantic check"))
}

fn c11_dialectica() -> Verdict {
    let d = PowersetDoctrine::new();
    let oracle = check_oracle(&d, 2).map_err(|e| e.to_string())?;
    ensure(oracle.ok(), || format!("{oracle:?}"))?;
    let objs = bounded_dial_objects(&d, 2).unwrap();
    ensure(objs.len() == 31, || format!("{} bounded objects", objs.len()))?;
    for u in &objs {
        for v in &objs {
            let brute = dial_leq_brute((u.src.0, u.tgt.0, &u.pred), (v.src.0, v.tgt.0, &v.pred));
            ensure(dial_leq(&d, u, v).unwrap().is_some() == brute, || format!("{u:?} ≤ {v:?}"))?;
        }
    }
    let lat = dial_lattice(&d, 2).unwrap();
    ensure(lat.poset.len() == 4, || format!("{} classes", lat.poset.len()))?;
    ensure(lat.report.is_lattice(), || format!("{:?}", lat.report))?;
    // Injection laws of the nested completion are counted with the other
    // injection laws.
    let laws = require(&suite(Suite::DialecticaOracle), |l| !l.ends_with("-inj"))?;
    Ok(format!("{} pairs, 4 classes, lattice; {laws}", oracle.pairs))
}

fn c12_negative_controls() -> Verdict {
    // Broken reindexing table: parse succeeds, functoriality fails.
    let good: DoctrineFile = serde_json::from_str(&std::fs::read_to_string(fixture("two_point.json")).unwrap()).unwrap();
    TabularDoctrine::load(&good).map_err(|e| format!("control fixture rejected: {e}"))?;
    let broken: DoctrineFile =
        serde_json::from_str(&std::fs::read_to_string(fixture("broken_reindex.json")).unwrap()).unwrap();
    let t = TabularDoctrine::parse(&broken).map_err(|e| e.to_string())?;
    let r = verify_doctrine(&t, VerifyBounds::default());
    let e = r.entry("functoriality/composition").filter(|e| e.status == Status::Fail);
    let e = e.ok_or("broken reindex table passed functoriality")?;
    let cx = e.counterexample.as_ref().ok_or("no counterexample")?;
    let cat = t.base();
    let f = cat.arrow_from_json(&cx["f"]).map_err(|e| e.to_string())?;
    let g = cat.arrow_from_json(&cx["g"]).map_err(|e| e.to_string())?;
    let p = t.pred_from_json(cat.cod(&g), &cx["pred"]).map_err(|e| e.to_string())?;
    let gf = cat.compose(&g, &f).unwrap();
    ensure(t.reindex(&gf, &p).unwrap() != t.reindex(&f, &t.reindex(&g, &p).unwrap()).unwrap(), || {
        "functoriality counterexample does not replay".into()
    })?;

    // Swapped quantifiers: the projection adjunction fails.
    let swapped = SwappedAdjoints::default();
    let r = verify_laws_for(&swapped, Suite::Adjunctions, &defaults());
    let e = r.entry("base/adjunction/exists-pr").filter(|e| e.status == Status::Fail);
    let cx = e.and_then(|e| e.counterexample.clone()).ok_or("swapped adjoints passed")?;
    let cat = swapped.base();
    let (a1, a2) = (cat.lookup_object(cx["a1"].as_str().unwrap()).unwrap(), cat.lookup_object(cx["a2"].as_str().unwrap()).unwrap());
    let a12 = cat.product(a1, a2).unwrap();
    let p = swapped.pred_from_json(a12, &cx["p"]).unwrap();
    let q = swapped.pred_from_json(a1, &cx["q"]).unwrap();
    let left = swapped.leq(a1, &swapped.exists_pr(a1, a2, &p).unwrap(), &q).unwrap();
    let right = swapped.leq(a12, &p, &swapped.reindex(&cat.pr1(a1, a2).unwrap(), &q).unwrap()).unwrap();
    ensure(left != right, || "adjunction counterexample does not replay".into())?;

    // A multiplication that drops the predicate breaks the unit law.
    let r = monad_laws(&PowersetDoctrine::new(), Polarity::Ex, &defaults(), &sabotaged_mult);
    let e = r.entry("ex/monad/mult-inner-unit").filter(|e| e.status == Status::Fail);
    let cx = e.and_then(|e| e.counterexample.clone()).ok_or("sabotaged mult passed")?;
    let c = Completion::existential(PowersetDoctrine::new());
    let cc = Completion::existential(c.clone());
    let x = c.elem_from_json(&cx["x"]).unwrap();
    let m = sabotaged_mult(&cc, &cc.inner_unit(&x).unwrap()).unwrap();
    ensure(!c.equiv_q(&m, &x).unwrap(), || "monad counterexample does not replay".into())?;
    Ok("3 sabotaged fixtures fail with replayable counterexamples".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("doctrine laws", c1_doctrine_laws),
        ("completion orders", c2_orders),
        ("completion adjunctions", c3_adjunctions),
        ("strict Beck-Chevalley", c4_strict_bc),
        ("duality", c5_duality),
        ("lattice structure", c6_lattice),
        ("injection adjoints", c7_injections),
        ("monad identities", c8_monad),
        ("Skolemization", c9_skolem),
        ("choice principles", c10_choice),
        ("dialectica oracle", c11_dialectica),
        ("negative controls", c12_negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match verdict {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
