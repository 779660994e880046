//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a property or verification fails, 2 on
//! usage and input errors, 3 when a statement or regime does not apply.
//! `check --theorem all` exits with the number of failing checks.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::checker::{run_check, Budget, Summary, TheoremId};
use crate::elementarity::{choose_regime, decompose, verify_decomposition, Decomposition, Regime};
use crate::error::Error;
use crate::instances::{is_symmetrizable_upper_bound, resolve};
use crate::poly::{format_poly_in, parse_poly, parse_poly_in, Monomial, Poly};
use crate::predicates::{
    is_2_cancellative, is_frobenius, is_idempotent, is_supertropical, is_upper_bound,
};
use crate::report::{PropertyReport, Verdict};
use crate::semiring::{Semiring, SemiringRef, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tropsym", version, about = "Symmetric polynomials over tropical-like semirings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args, Debug)]
struct Common {
    /// Built-in name, table file, `quasi:<sel>` or `symm:<sel>`.
    #[arg(long)]
    semiring: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampled points on infinite carriers.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Worker threads for theorem suites.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl Common {
    fn strategy(&self, x: &dyn Semiring) -> Strategy {
        Strategy::default_for(x, self.samples, self.seed)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite a symmetric polynomial in elementary symmetric polynomials.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        /// two-var-frobenius, idempotent-frobenius or supertropical.
        #[arg(long)]
        regime: Option<Regime>,
        poly: String,
    },
    /// Check `p = r(e1, ..., en)` for a user-supplied `r` in E1..En.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        poly: String,
        r: String,
    },
    /// Run one theorem check or the whole catalogue.
    Check {
        #[command(flatten)]
        common: Common,
        /// A theorem id or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
        /// Largest number of variables.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        degree: u32,
    },
    /// Structural predicates of a semiring.
    Props {
        #[command(flatten)]
        common: Common,
        /// Largest exponent for sampled Frobenius checks.
        #[arg(long, default_value_t = 5)]
        n: u32,
    },
    /// Evaluate a polynomial at a point.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        poly: String,
        #[arg(allow_hyphen_values = true)]
        point: Vec<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// A failure tagged with the stage it happened in.
struct Failure {
    stage: &'static str,
    error: Error,
}

trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, Failure>;
}

impl<T> Stage<T> for crate::error::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, Failure> {
        self.map_err(|error| Failure { stage, error })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::WrongRegime(_)
        | Error::NotSymmetrizable { .. }
        | Error::NonUnital(_)
        | Error::NeedsAnalyticOrder(_)
        | Error::NeedsFiniteCarrier(_)
        | Error::Undecidable { .. }
        | Error::PermutationLimit { .. } => EXIT_NOT_APPLICABLE,
        Error::VerificationFailed(_) => EXIT_FAILS,
        _ => EXIT_USAGE,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(code, text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(Failure { stage, error }) => {
            let mut stdout = String::new();
            if let Error::VerificationFailed(report) = &error {
                stdout = format!("{}\n", report.line("VERIFY"));
            }
            Outcome {
                code: exit_code(&error),
                stdout,
                stderr: format!("error: {stage}: {error}\n"),
            }
        }
    }
}

fn semiring(common: &Common) -> Result<SemiringRef, Failure> {
    let check = Strategy::Sampled {
        count: common.samples,
        seed: common.seed,
    };
    resolve(&common.semiring, &check).stage("resolve semiring")
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Decompose {
            common,
            n,
            regime,
            poly,
        } => cmd_decompose(&common, n, regime, &poly),
        Command::Verify { common, n, poly, r } => cmd_verify(&common, n, &poly, &r),
        Command::Check {
            common,
            theorem,
            n,
            degree,
        } => cmd_check(&common, &theorem, n, degree),
        Command::Props { common, n } => cmd_props(&common, n),
        Command::Eval {
            common,
            n,
            poly,
            point,
        } => cmd_eval(&common, n, &poly, &point),
    }
}

fn mode(strategy: &Strategy) -> &'static str {
    match strategy {
        Strategy::Exhaustive => "exhaustive",
        Strategy::Sampled { .. } => "sampled",
        Strategy::Grid(_) => "grid",
    }
}

fn mapping_product(x: &dyn Semiring, n: usize, product: &[u32]) -> String {
    let one = x.one().expect("decomposition requires a unit");
    let m = Poly::new(n, vec![Monomial::new(one, product.to_vec())]).expect("arity");
    format_poly_in(x, &m, "E")
}

fn render_decomposition(
    x: &dyn Semiring,
    d: &Decomposition,
    strategy: &Strategy,
    format: Format,
) -> String {
    let mut out = String::new();
    let result = format_poly_in(x, &d.r, "E");
    match format {
        Format::Text => {
            writeln!(out, "{result}").unwrap();
            writeln!(out, "{}", d.report.line("VERIFY")).unwrap();
            writeln!(out, "regime {}", d.regime).unwrap();
            for m in &d.mapping {
                writeln!(
                    out,
                    "  orbit {:?} coeff {} -> {}",
                    m.orbit,
                    x.format(&m.coeff),
                    mapping_product(x, d.n, &m.product)
                )
                .unwrap();
            }
        }
        Format::Machine => {
            writeln!(out, "result={result}").unwrap();
            writeln!(out, "regime={}", d.regime).unwrap();
            for m in &d.mapping {
                let orbit: Vec<String> = m.orbit.iter().map(u32::to_string).collect();
                writeln!(
                    out,
                    "map orbit={} coeff={} product={}",
                    orbit.join(","),
                    x.format(&m.coeff),
                    mapping_product(x, d.n, &m.product)
                )
                .unwrap();
            }
            let seed = strategy.seed().map_or("none".to_string(), |s| s.to_string());
            writeln!(
                out,
                "verify mode={} points={} seed={seed} verdict={}",
                mode(strategy),
                d.report.points,
                d.report.verdict.label()
            )
            .unwrap();
        }
    }
    out
}

fn cmd_decompose(
    common: &Common,
    n: usize,
    regime: Option<Regime>,
    text: &str,
) -> Result<Outcome, Failure> {
    let x = semiring(common)?;
    let x = x.as_ref();
    let p = parse_poly(x, text, n).stage("parse polynomial")?;
    let strategy = common.strategy(x);
    let regime = match regime {
        Some(r) => r,
        None => {
            let frob_n = p.degree().max(1);
            choose_regime(x, n, frob_n, &strategy).stage("choose regime")?
        }
    };
    let d = decompose(x, &p, regime, &strategy).stage("decompose")?;
    Ok(Outcome::ok(EXIT_OK, render_decomposition(x, &d, &strategy, common.format)))
}

fn cmd_verify(common: &Common, n: usize, p: &str, r: &str) -> Result<Outcome, Failure> {
    let x = semiring(common)?;
    let x = x.as_ref();
    let p = parse_poly(x, p, n).stage("parse polynomial")?;
    let r = parse_poly_in(x, r, n, "E").stage("parse decomposition")?;
    let strategy = common.strategy(x);
    let report = verify_decomposition(x, &p, &r, &strategy).stage("verify")?;
    let code = if report.fails() { EXIT_FAILS } else { EXIT_OK };
    Ok(Outcome::ok(code, format!("{}\n", report.line("VERIFY"))))
}

fn render_report(report: &PropertyReport, format: Format, out: &mut String) {
    writeln!(out, "{}", report.line("THEOREM")).unwrap();
    if format == Format::Text {
        for line in &report.trace {
            writeln!(out, "  {line}").unwrap();
        }
    }
}

fn run_all(x: &dyn Semiring, budget: &Budget, jobs: usize) -> crate::error::Result<Vec<PropertyReport>> {
    let ids = TheoremId::ALL;
    if jobs <= 1 {
        return ids.iter().map(|&id| run_check(x, id, budget)).collect();
    }
    let chunk = ids.len().div_ceil(jobs);
    thread::scope(|scope| {
        let handles: Vec<_> = ids
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&id| run_check(x, id, budget))
                        .collect::<crate::error::Result<Vec<_>>>()
                })
            })
            .collect();
        let mut out = Vec::with_capacity(ids.len());
        for h in handles {
            out.extend(h.join().expect("checker thread panicked")?);
        }
        Ok(out)
    })
}

fn cmd_check(common: &Common, theorem: &str, n: usize, degree: u32) -> Result<Outcome, Failure> {
    let x = semiring(common)?;
    let x = x.as_ref();
    let budget = Budget {
        max_vars: n,
        max_degree: degree,
        samples: common.samples,
        seed: common.seed,
        ..Budget::default()
    };
    let mut out = String::new();
    if theorem == "all" {
        let reports = run_all(x, &budget, common.jobs).stage("check")?;
        for r in &reports {
            render_report(r, common.format, &mut out);
        }
        let summary = Summary::of(&reports);
        writeln!(out, "{summary}").unwrap();
        return Ok(Outcome::ok(summary.fails as i32, out));
    }
    let id: TheoremId = theorem.parse().stage("theorem id")?;
    let report = run_check(x, id, &budget).stage("check")?;
    render_report(&report, common.format, &mut out);
    let code = match report.verdict {
        Verdict::Holds | Verdict::SampledHolds => EXIT_OK,
        Verdict::Fails(_) => EXIT_FAILS,
        Verdict::NotApplicable(_) => EXIT_NOT_APPLICABLE,
    };
    Ok(Outcome::ok(code, out))
}

fn prop_line(name: &str, outcome: crate::error::Result<PropertyReport>, format: Format) -> String {
    match (format, outcome) {
        (Format::Machine, Ok(r)) => {
            let mut r = r;
            r.subject = name.to_string();
            r.line("PROP")
        }
        (Format::Machine, Err(e)) => format!("PROP {name} unknown reason=\"{e}\""),
        (Format::Text, Ok(r)) => {
            let value = match &r.verdict {
                Verdict::Holds => "yes".to_string(),
                Verdict::SampledHolds => "yes (sampled)".to_string(),
                Verdict::Fails(w) => format!("no {}", w.description),
                Verdict::NotApplicable(reason) => format!("unknown ({reason})"),
            };
            format!("{name}: {value}")
        }
        (Format::Text, Err(e)) => format!("{name}: unknown ({e})"),
    }
}

fn cmd_props(common: &Common, frob_n: u32) -> Result<Outcome, Failure> {
    let x = semiring(common)?;
    let x = x.as_ref();
    let s = common.strategy(x);
    let f = common.format;
    let lines = [
        prop_line("supertropical", is_supertropical(x, &s), f),
        prop_line("idempotent", is_idempotent(x, &s), f),
        prop_line("2-cancellative", is_2_cancellative(x, &s), f),
        prop_line("upper-bound", is_upper_bound(x, &s), f),
        prop_line(&format!("frobenius(n<={frob_n})"), is_frobenius(x, frob_n, &s), f),
        prop_line("symmetrizable", is_symmetrizable_upper_bound(x, &s), f),
    ];
    let mut out = String::new();
    writeln!(out, "semiring {}", x.name()).unwrap();
    for line in lines {
        writeln!(out, "{line}").unwrap();
    }
    Ok(Outcome::ok(EXIT_OK, out))
}

fn cmd_eval(common: &Common, n: usize, text: &str, point: &[String]) -> Result<Outcome, Failure> {
    let x = semiring(common)?;
    let x = x.as_ref();
    let p = parse_poly(x, text, n).stage("parse polynomial")?;
    let values = point
        .iter()
        .map(|s| x.parse_literal(s))
        .collect::<crate::error::Result<Vec<_>>>()
        .stage("parse point")?;
    let v = p.evaluate(x, &values).stage("evaluate")?;
    Ok(Outcome::ok(EXIT_OK, format!("{}\n", x.format(&v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("tropsym").chain(args.iter().copied()))
    }

    #[test]
    fn decompose_min_plus_sum_of_squares() {
        let o = call(&["decompose", "--semiring", "min_plus", "--n", "2", "x1^2 + x2^2"]);
        assert_eq!(o.code, 0, "{o:?}");
        let mut lines = o.stdout.lines();
        assert_eq!(lines.next(), Some("E1^2"));
        assert_eq!(
            lines.next(),
            Some("VERIFY decomposition sampled-holds seed=0 points=1000")
        );
    }

    #[test]
    fn props_of_extended_tropical() {
        let o = call(&["props", "--semiring", "extended_tropical"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("supertropical: yes"), "{}", o.stdout);
        assert!(o.stdout.contains("idempotent: no"));
        assert!(o.stdout.contains("2-cancellative: no"));
    }

    #[test]
    fn check_sym_elem_exit_zero() {
        let o = call(&["check", "--semiring", "symm:max_plus", "--theorem", "P-sym-elem"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(o.stdout.starts_with("THEOREM P-sym-elem holds"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["decompose", "--semiring", "nope", "--n", "2", "x1"]).code, 2);
        assert_eq!(call(&["decompose", "--semiring", "min_plus", "--n", "2", "x1 + + x2"]).code, 2);
        assert_eq!(call(&["frobnicate"]).code, 2);
        let wrong = call(&["decompose", "--semiring", "naturals", "--n", "2", "x1 + x2"]);
        assert_eq!(wrong.code, 3, "{wrong:?}");
        assert!(wrong.stderr.starts_with("error: choose regime:"));
        let na = call(&["check", "--semiring", "naturals", "--theorem", "P-linear-frob"]);
        assert_eq!(na.code, 3);
        let bad = call(&["verify", "--semiring", "max_plus", "--n", "2", "x1^2 + x2^2", "E2"]);
        assert_eq!(bad.code, 1);
        assert!(bad.stdout.starts_with("VERIFY decomposition fails witness="));
        assert_eq!(call(&["--help"]).code, 0);
    }

    #[test]
    fn eval_with_negative_literals() {
        let o = call(&["eval", "--semiring", "max_plus", "--n", "2", "x1*x2 + 3", "-1/2", "2"]);
        assert_eq!(o.stdout, "3\n");
        let g = call(&["eval", "--semiring", "extended_tropical", "--n", "2", "x1 + x2", "2", "2"]);
        assert_eq!(g.stdout, "2v\n");
    }

    #[test]
    fn machine_format_lists_mapping_and_stats() {
        let o = call(&[
            "decompose", "--semiring", "supertropical3", "--n", "3", "--format", "machine",
            "x1^2*x2 + x1^2*x3 + x2^2*x1 + x2^2*x3 + x3^2*x1 + x3^2*x2",
        ]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(o.stdout.contains("regime=supertropical"), "{}", o.stdout);
        assert!(o.stdout.contains("map orbit=2,1,0 coeff=1 product=E1*E2"));
        assert!(o.stdout.contains("verify mode=exhaustive points=27 seed=none verdict=holds"));
    }
}
