//! The `binform` command line.
//!
//! Exit codes: 0 success, 1 mathematical failure verdict (nonzero residual,
//! failed invariance check, ungraded operand), 2 usage error, 3 parse error.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::CoeffPolynomial;
use crate::annihilators::{self, OperatorKind};
use crate::discovery::{self, DiscoveryRequest, DiscoveryStatus};
use crate::error::Error;
use crate::expr::{self, ParseError};
use crate::transforms::{self, BinaryForm, Convention, FailureReason, LinearTransform, Verdict};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

const EXPR_HELP: &str = "Polynomial in a0..aN, e.g. \"a0*a2 - a1^2\". \
Operators + - * ^ and parentheses; rationals like 3/4. \
Unary minus only applies to numbers: write \"-1*a0\" or \"0 - a0\", not \"-a0\".";

#[derive(Debug, Parser)]
#[command(name = "binform", version, about = "Invariants of binary forms, in exact arithmetic")]
pub struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ExprArgs {
    /// Order of the binary form.
    #[arg(long)]
    pub n: usize,

    #[arg(allow_hyphen_values = true, help = EXPR_HELP)]
    pub expr: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, weight and defect n*g - 2p of a polynomial.
    Analyze(ExprArgs),
    /// Apply D or Delta (optionally a power of it).
    Apply {
        #[arg(long)]
        op: OperatorKind,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[command(flatten)]
        input: ExprArgs,
    },
    /// Residual of the commutator identity; exits 0 iff it is zero.
    Commutator {
        /// Use the k-th power form of the identity.
        #[arg(long, requires = "which")]
        k: Option<u32>,
        /// Which operator is raised to the power k.
        #[arg(long, requires = "k")]
        which: Option<OperatorKind>,
        #[command(flatten)]
        input: ExprArgs,
    },
    /// Randomized exact check of I(a') = d^p I(a).
    Verify {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        input: ExprArgs,
    },
    /// Basis of all invariants of order n and given degree.
    Discover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
    },
    /// Coefficients of the form after substituting x = αx'+βy', y = γx'+δy'.
    Transform {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "binomial")]
        convention: Convention,
        /// Comma-separated a0,...,aN.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Comma-separated α,β,γ,δ.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
}

/// Result of running one command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn render(json: bool, value: Value, text: String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("json");
        s.push('\n');
        s
    } else {
        text + "\n"
    }
}

fn parse_expr(input: &ExprArgs) -> Result<CoeffPolynomial, Outcome> {
    expr::parse(&input.expr, input.n).map_err(|e| parse_failure(&input.expr, &e))
}

fn parse_failure(src: &str, e: &ParseError) -> Outcome {
    let mut msg = format!("parse error: {e}\n  {src}\n  ");
    let col = src.get(..e.offset).map_or(e.offset, |s| s.chars().count());
    msg.push_str(&" ".repeat(col));
    msg.push_str("^\n");
    Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: msg }
}

fn parse_list(src: &str, what: &str) -> Result<Vec<Rational>, Outcome> {
    src.split(',')
        .map(|item| {
            expr::parse_rational(item)
                .map_err(|e| Outcome::error(EXIT_PARSE, format!("invalid {what} entry `{}`: {e}", item.trim())))
        })
        .collect()
}

/// Runs the CLI on `args` (including the program name) and captures output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: rendered }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    match execute(&cli) {
        Ok(o) | Err(o) => o,
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Analyze(input) => {
            let p = parse_expr(input)?;
            let a = p.analyze();
            let mut value = serde_json::to_value(&a).expect("json");
            value["n"] = json!(input.n);
            value["polynomial"] = json!(p.to_string());
            Ok(Outcome::ok(render(json, value, a.to_string())))
        }

        Command::Apply { op, power, input } => {
            let p = parse_expr(input)?;
            let r = annihilators::apply_power(*op, *power, &p);
            let value = json!({ "n": input.n, "op": op, "power": power, "result": r.to_string() });
            Ok(Outcome::ok(render(json, value, r.to_string())))
        }

        Command::Commutator { k, which, input } => {
            let p = parse_expr(input)?;
            let residual = match (k, which) {
                (Some(k), Some(kind)) => annihilators::power_commutator_residual(*kind, *k, &p),
                _ => annihilators::commutator_residual(&p),
            };
            let residual = match residual {
                Ok(r) => r,
                Err(e @ Error::ZeroPower) => return Err(Outcome::error(EXIT_USAGE, e)),
                Err(e) => return Err(Outcome::error(EXIT_FAILURE, e)),
            };
            let zero = residual.is_zero();
            let value = json!({
                "n": input.n,
                "k": k,
                "which": which,
                "residual": residual.to_string(),
                "zero": zero,
            });
            let code = if zero { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome::with_code(code, render(json, value, residual.to_string())))
        }

        Command::Verify { trials, seed, input } => {
            let p = parse_expr(input)?;
            let verdict = transforms::check_invariance(&p, input.n, *trials, *seed);
            let code = if verdict.passed() { EXIT_OK } else { EXIT_FAILURE };
            let value = verdict_json(&verdict, input.n, *seed);
            Ok(Outcome::with_code(code, render(json, value, verdict.to_string())))
        }

        Command::Discover { n, degree } => {
            let req = DiscoveryRequest::new(*n, *degree).map_err(|e| Outcome::error(EXIT_USAGE, e))?;
            let result = discovery::discover(req);
            let basis: Vec<String> = result.basis.iter().map(ToString::to_string).collect();
            let value = json!({
                "status": result.status,
                "n": result.n,
                "degree": result.degree,
                "weight": result.weight,
                "monomial_count": result.monomial_count,
                "basis": basis,
            });
            let text = match result.status {
                DiscoveryStatus::InfeasibleOddNg => {
                    format!("infeasible: n*g = {} is odd, no invariants of this degree", n * *degree as usize)
                }
                DiscoveryStatus::Ok => {
                    let mut t = format!(
                        "# n = {}, degree = {}, weight = {}, monomials = {}, dimension = {}",
                        result.n,
                        result.degree,
                        result.weight.expect("ok has weight"),
                        result.monomial_count,
                        result.dimension()
                    );
                    for b in &basis {
                        t.push('\n');
                        t.push_str(b);
                    }
                    t
                }
            };
            Ok(Outcome::ok(render(json, value, text)))
        }

        Command::Transform { n, convention, coeffs, matrix } => {
            let coeffs = parse_list(coeffs, "coefficient")?;
            if coeffs.len() != n + 1 {
                return Err(Outcome::error(
                    EXIT_USAGE,
                    format!("expected {} coefficients for order {n}, got {}", n + 1, coeffs.len()),
                ));
            }
            let m = parse_list(matrix, "matrix")?;
            let [a, b, c, d]: [Rational; 4] = m
                .try_into()
                .map_err(|m: Vec<_>| Outcome::error(EXIT_USAGE, format!("matrix needs 4 entries, got {}", m.len())))?;
            let t = LinearTransform::new(a, b, c, d).map_err(|e| Outcome::error(EXIT_USAGE, e))?;
            let image = BinaryForm::new(*convention, coeffs).transform(&t);
            let out: Vec<String> = image.coeffs().iter().map(ToString::to_string).collect();
            let value = json!({
                "n": n,
                "convention": convention,
                "determinant": t.determinant().to_string(),
                "coeffs": out,
            });
            Ok(Outcome::ok(render(json, value, out.join(","))))
        }
    }
}

fn verdict_json(v: &Verdict, n: usize, seed: u64) -> Value {
    let strs = |xs: &[Rational]| xs.iter().map(ToString::to_string).collect::<Vec<_>>();
    match v {
        Verdict::Pass { trials, degree, weight } => json!({
            "verdict": "pass",
            "n": n,
            "seed": seed,
            "trials": trials,
            "degree": degree,
            "weight": weight,
        }),
        Verdict::Fail(reason) => {
            let detail = match reason {
                FailureReason::Counterexample(c) => json!({
                    "reason": "counterexample",
                    "trial": c.trial,
                    "coeffs": strs(&c.coeffs),
                    "matrix": c.transform.entries().map(ToString::to_string),
                    "transformed": strs(&c.transformed),
                    "lhs": c.lhs.to_string(),
                    "rhs": c.rhs.to_string(),
                }),
                FailureReason::OrderMismatch { .. } => json!({ "reason": "order_mismatch" }),
                FailureReason::NotHomogeneous => json!({ "reason": "not_homogeneous" }),
                FailureReason::NotIsobaric => json!({ "reason": "not_isobaric" }),
                FailureReason::WeightDegreeMismatch { degree, weight, .. } => json!({
                    "reason": "weight_degree_mismatch",
                    "degree": degree,
                    "weight": weight,
                }),
            };
            json!({
                "verdict": "fail",
                "n": n,
                "seed": seed,
                "message": reason.to_string(),
                "detail": detail,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(args: &[&str]) -> Outcome {
        run(std::iter::once("binform").chain(args.iter().copied()))
    }

    #[test]
    fn discover_quadratic() {
        let o = bf(&["discover", "--n", "2", "--degree", "2"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("dimension = 1"));
        assert!(o.stdout.lines().any(|l| l == "a0*a2 - a1^2"));
    }

    #[test]
    fn discover_odd() {
        let o = bf(&["discover", "--n", "3", "--degree", "3"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("infeasible"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(bf(&["analyze", "--n", "4", "a5"]).code, EXIT_PARSE);
        assert_eq!(bf(&["analyze", "a0"]).code, EXIT_USAGE);
        assert_eq!(bf(&["bogus"]).code, EXIT_USAGE);
        assert_eq!(bf(&["discover", "--n", "2", "--degree", "0"]).code, EXIT_USAGE);
        assert_eq!(bf(&["verify", "--n", "2", "a1"]).code, EXIT_FAILURE);
        assert_eq!(bf(&["commutator", "--n", "2", "a0 + a1"]).code, EXIT_FAILURE);
        assert_eq!(bf(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn parse_error_points_at_offset() {
        let o = bf(&["analyze", "--n", "2", "a0 * b"]);
        assert_eq!(o.code, EXIT_PARSE);
        assert!(o.stderr.contains("at byte 5"), "{}", o.stderr);
        assert!(o.stderr.contains("       ^"), "{}", o.stderr);
    }

    #[test]
    fn negative_expression_argument() {
        let o = bf(&["apply", "--op", "d", "--n", "2", "-1*a1^2"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "-2*a0*a1\n");
    }
}
