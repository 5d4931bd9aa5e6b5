//! `quantcomp`: queries and law suites for doctrine completions.
//!
//! Exit codes: 0 success, 1 negative answer, 2 law failure, 3 input error,
//! 4 search budget exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quantcomp::completion::{Completion, Polarity};
use quantcomp::dialectica::{dial_from_json, dial_lattice, dial_leq, dial_to_json};
use quantcomp::doctrine::{verify_doctrine, Doctrine, DoctrineFile, PowersetDoctrine, TabularDoctrine, VerifyBounds};
use quantcomp::fincat::{FiniteCategory, DEFAULT_BUDGET};
use quantcomp::laws::{verify_laws_for, LawBounds, LawReport, Suite, DEFAULT_SEED};
use quantcomp::poset::poset_reflect;
use quantcomp::principles::{extract_choice, extract_counterexample, skolem_check};
use quantcomp::Error;

#[derive(Parser, Debug)]
#[command(name = "quantcomp", version, about = "Existential and universal completions of finite doctrines")]
struct Cli {
    /// Cap on the number of arrows enumerated by any single search.
    #[arg(long, global = true, env = "QUANTCOMP_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Work over a tabular doctrine file instead of the powerset doctrine.
    /// The file must pass every doctrine law.
    #[arg(long, global = true, value_name = "FILE")]
    doctrine: Option<PathBuf>,

    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Pol {
    Ex,
    Un,
}

impl From<Pol> for Polarity {
    fn from(p: Pol) -> Self {
        match p {
            Pol::Ex => Polarity::Ex,
            Pol::Un => Polarity::Un,
        }
    }
}

#[derive(Args, Debug)]
struct PolArg {
    /// Which completion to work in.
    #[arg(long, short, value_enum, default_value = "ex")]
    polarity: Pol,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Along {
    /// Quantify along the projection `A1×A2 -> A1`.
    #[arg(long, num_args = 2, value_names = ["A1", "A2"])]
    pr: Option<Vec<String>>,
    /// Quantify along the injection `A -> A+B`, where `A` is the element's base.
    #[arg(long, value_name = "B")]
    inj: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify every doctrine law of a tabular doctrine file.
    CheckDoctrine {
        file: PathBuf,
        #[arg(long, default_value_t = VerifyBounds::default().max_card)]
        max_card: usize,
    },
    /// Decide `x ≤ y` in a completion and print the witnessing arrow.
    Leq {
        #[command(flatten)]
        pol: PolArg,
        /// Element as JSON `{"base","qobj","pred"}`, or `@FILE`.
        x: String,
        y: String,
    },
    Meet {
        #[command(flatten)]
        pol: PolArg,
        x: String,
        y: String,
    },
    Join {
        #[command(flatten)]
        pol: PolArg,
        x: String,
        y: String,
    },
    Exists {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        along: Along,
        x: String,
    },
    Forall {
        #[command(flatten)]
        pol: PolArg,
        #[command(flatten)]
        along: Along,
        x: String,
    },
    /// Hasse diagram (DOT) of the poset reflection of a bounded fiber.
    Reflect {
        #[command(flatten)]
        pol: PolArg,
        #[arg(long, value_name = "A")]
        base: String,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Decide the dialectica order between `{"src","tgt","pred"}` objects.
    DialLeq { u: String, v: String },
    /// Reflect the bounded dialectica preorder and check it is a lattice.
    DialLattice {
        #[arg(long, default_value_t = 2)]
        bound: usize,
        /// Print the Hasse diagram in DOT instead of a summary.
        #[arg(long)]
        dot: bool,
    },
    /// Extract a witness arrow from an element of the existential completion
    /// that lies above top.
    Choice { x: String },
    /// Extract a counterexample arrow from an element of the universal
    /// completion that lies below bottom.
    Counterexample { x: String },
    /// Compare both sides of Skolemization for a predicate on `(A1×A2)×B`.
    Skolem {
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        b: String,
        /// Predicate as JSON, or `@FILE`.
        pred: String,
    },
    /// Run a law suite over the powerset doctrine.
    VerifyLaws {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = LawBounds::default().max_card)]
        max_card: usize,
        #[arg(long, default_value_t = LawBounds::default().fiber_bound)]
        fiber_bound: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Omit per-law timings so reports are byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
}

/// Result of a command: text to print and the exit status.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Self {
        Outcome { text: text.into(), code: 0 }
    }

    fn negative(text: impl Into<String>) -> Self {
        Outcome { text: text.into(), code: 1 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors, not law failures.
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 4 } else { 3 })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::CheckDoctrine { file, max_card } => check_doctrine(cli, file, *max_card),
        Command::VerifyLaws {
            suite,
            max_card,
            fiber_bound,
            seed,
            no_timing,
        } => {
            if cli.doctrine.is_some() {
                return Err(Error::Parse(
                    "verify-laws runs over the powerset doctrine; use check-doctrine for doctrine files".into(),
                ));
            }
            let suite: Suite = suite.parse()?;
            let bounds = LawBounds {
                max_card: *max_card,
                fiber_bound: *fiber_bound,
                seed: *seed,
            };
            let mut report = verify_laws_for(&PowersetDoctrine::with_budget(cli.budget), suite, &bounds);
            if *no_timing {
                report.strip_timing();
            }
            Ok(report_outcome(cli, &report))
        }
        _ => match &cli.doctrine {
            Some(path) => query(cli, &TabularDoctrine::load(&read_doctrine(path)?)?),
            None => query(cli, &PowersetDoctrine::with_budget(cli.budget)),
        },
    }
}

fn read_doctrine(path: &Path) -> Result<DoctrineFile, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn check_doctrine(cli: &Cli, file: &Path, max_card: usize) -> Result<Outcome, Error> {
    let doc = TabularDoctrine::parse(&read_doctrine(file)?)?;
    let mut report = verify_doctrine(&doc, VerifyBounds { max_card, ..VerifyBounds::default() });
    report.sort();
    Ok(report_outcome(cli, &report))
}

fn report_outcome(cli: &Cli, report: &LawReport) -> Outcome {
    let text = if cli.json {
        serde_json::to_string_pretty(&report.to_json()).expect("reports serialize")
    } else {
        report.to_text()
    };
    Outcome {
        text,
        code: if report.passed() { 0 } else { 2 },
    }
}

/// An inline JSON value, or the contents of a file when prefixed with `@`.
fn json_arg(s: &str) -> Result<Value, Error> {
    match s.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            Ok(serde_json::from_str(&text)?)
        }
        None => Ok(serde_json::from_str(s)?),
    }
}

fn query<D: Doctrine + Clone>(cli: &Cli, d: &D) -> Result<Outcome, Error> {
    let cat = d.base();
    let completion = |p: &PolArg| Completion::new(d.clone(), p.polarity.into());
    let elem = |c: &Completion<D>, s: &str| c.elem_from_json(&json_arg(s)?);
    let show = |c: &Completion<D>, x| c.elem_to_json(x).to_string();
    match &cli.command {
        Command::Leq { pol, x, y } => {
            let c = completion(pol);
            let (x, y) = (elem(&c, x)?, elem(&c, y)?);
            Ok(match c.leq_witness(&x, &y)? {
                Some(w) => {
                    let arrow = cat.arrow_to_json(&w.arrow);
                    if cli.json {
                        Outcome::ok(json!({"leq": true, "witness": arrow}).to_string())
                    } else {
                        Outcome::ok(format!("true, witness {arrow}"))
                    }
                }
                None if cli.json => Outcome::negative(json!({"leq": false}).to_string()),
                None => Outcome::negative("false"),
            })
        }
        Command::Meet { pol, x, y } | Command::Join { pol, x, y } => {
            let c = completion(pol);
            let (x, y) = (elem(&c, x)?, elem(&c, y)?);
            let z = match cli.command {
                Command::Meet { .. } => c.meet_q(&x, &y)?,
                _ => c.join_q(&x, &y)?,
            };
            Ok(Outcome::ok(show(&c, &z)))
        }
        Command::Exists { pol, along, x } | Command::Forall { pol, along, x } => {
            let c = completion(pol);
            let x = elem(&c, x)?;
            let exists = matches!(cli.command, Command::Exists { .. });
            let z = match (&along.pr, &along.inj) {
                (Some(pr), _) => {
                    let (a1, a2) = (cat.lookup_object(&pr[0])?, cat.lookup_object(&pr[1])?);
                    if exists {
                        c.exists_pr_q(a1, a2, &x)?
                    } else {
                        c.forall_pr_q(a1, a2, &x)?
                    }
                }
                (None, Some(b)) => {
                    let b = cat.lookup_object(b)?;
                    if exists {
                        c.exists_inj_q(x.base, b, &x)?
                    } else {
                        c.forall_inj_q(x.base, b, &x)?
                    }
                }
                (None, None) => unreachable!("clap requires --pr or --inj"),
            };
            Ok(Outcome::ok(show(&c, &z)))
        }
        Command::Reflect { pol, base, bound } => {
            let c = completion(pol);
            let a = cat.lookup_object(base)?;
            let elems = c.bounded_fiber(a, *bound)?;
            let (poset, quotient) = poset_reflect(&c.fiber_preorder(a, &elems)?);
            let labels = class_labels(poset.len(), &quotient, |i| c.elem_to_json(&elems[i]).to_string());
            Ok(Outcome::ok(poset.to_dot(&labels)))
        }
        Command::DialLeq { u, v } => {
            let (u, v) = (dial_from_json(d, &json_arg(u)?)?, dial_from_json(d, &json_arg(v)?)?);
            Ok(match dial_leq(d, &u, &v)? {
                Some(m) => {
                    let (f, g) = (cat.arrow_to_json(&m.forward), cat.arrow_to_json(&m.backward));
                    if cli.json {
                        Outcome::ok(json!({"leq": true, "forward": f, "backward": g}).to_string())
                    } else {
                        Outcome::ok(format!("true, forward {f}, backward {g}"))
                    }
                }
                None if cli.json => Outcome::negative(json!({"leq": false}).to_string()),
                None => Outcome::negative("false"),
            })
        }
        Command::DialLattice { bound, dot } => {
            let lat = dial_lattice(d, *bound)?;
            let is_lattice = lat.report.is_lattice();
            let text = if *dot {
                let labels = class_labels(lat.poset.len(), &lat.quotient, |i| dial_to_json(d, &lat.objects[i]).to_string());
                lat.poset.to_dot(&labels)
            } else if cli.json {
                json!({
                    "objects": lat.objects.len(),
                    "classes": lat.poset.len(),
                    "lattice": is_lattice,
                    "missing_meets": lat.report.missing_meets,
                    "missing_joins": lat.report.missing_joins,
                })
                .to_string()
            } else {
                format!(
                    "{} objects, {} classes, {}",
                    lat.objects.len(),
                    lat.poset.len(),
                    if is_lattice { "lattice" } else { "not a lattice" }
                )
            };
            Ok(Outcome {
                text,
                code: if is_lattice { 0 } else { 1 },
            })
        }
        Command::Choice { x } => {
            let c = Completion::existential(d.clone());
            let x = elem(&c, x)?;
            Ok(match extract_choice(&c, &x)? {
                Some(cert) => certificate(cli, "witness", cat.arrow_to_json(&cert.witness)),
                None => Outcome::negative(no_certificate(cli, "element is not above top")),
            })
        }
        Command::Counterexample { x } => {
            let c = Completion::universal(d.clone());
            let x = elem(&c, x)?;
            Ok(match extract_counterexample(&c, &x)? {
                Some(cert) => certificate(cli, "counterexample", cat.arrow_to_json(&cert.counterexample)),
                None => Outcome::negative(no_certificate(cli, "element is not below bottom")),
            })
        }
        Command::Skolem { a1, a2, b, pred } => {
            let c = Completion::existential(d.clone());
            let (a1, a2, b) = (cat.lookup_object(a1)?, cat.lookup_object(a2)?, cat.lookup_object(b)?);
            let ab = cat.product(cat.product(a1, a2)?, b)?;
            let alpha = d.pred_from_json(ab, &json_arg(pred)?)?;
            let r = skolem_check(&c, a1, a2, b, &alpha)?;
            let arrow = |a: &Option<_>| a.as_ref().map_or(Value::Null, |f| cat.arrow_to_json(f));
            let v = json!({
                "equal": r.equal(),
                "lhs": c.elem_to_json(&r.lhs),
                "rhs": c.elem_to_json(&r.rhs),
                "lhs_le_rhs": arrow(&r.lhs_le_rhs),
                "rhs_le_lhs": arrow(&r.rhs_le_lhs),
            });
            let text = if cli.json {
                v.to_string()
            } else {
                let mut s = format!("equal: {}\nlhs: {}\nrhs: {}\n", r.equal(), v["lhs"], v["rhs"]);
                let _ = writeln!(s, "lhs <= rhs: {}\nrhs <= lhs: {}", v["lhs_le_rhs"], v["rhs_le_lhs"]);
                s
            };
            // Skolemization is a theorem, so unequal sides are a law failure.
            Ok(Outcome {
                text,
                code: if r.equal() { 0 } else { 2 },
            })
        }
        Command::CheckDoctrine { .. } | Command::VerifyLaws { .. } => unreachable!("dispatched in run"),
    }
}

fn certificate(cli: &Cli, key: &str, arrow: Value) -> Outcome {
    if cli.json {
        Outcome::ok(json!({ key: arrow }).to_string())
    } else {
        Outcome::ok(format!("{key} {arrow}"))
    }
}

fn no_certificate(cli: &Cli, why: &str) -> String {
    if cli.json {
        json!({ "reason": why }).to_string()
    } else {
        format!("none: {why}")
    }
}

/// One label per class: the members' labels joined, representatives first.
fn class_labels(classes: usize, quotient: &[usize], label: impl Fn(usize) -> String) -> Vec<String> {
    let mut out = vec![Vec::new(); classes];
    for (i, &q) in quotient.iter().enumerate() {
        out[q].push(label(i));
    }
    out.into_iter().map(|ls| ls.join(" ~ ")).collect()
}
