//! `orbitwidth` command-line front end.
//!
//! JSON goes to stdout, messages to stderr. Exit codes: 0 ok, 1 domain error,
//! 2 verification failure, 3 usage error.

mod input;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitwidth::exec::Execution;
use orbitwidth::gt_pattern::{enumerate_edges_at_lambda, validate_pattern, EdgeDescriptor};
use orbitwidth::oracle::{verify_interlacing_with, verify_roundtrip_with};
use orbitwidth::orbit_matrix::{gt_map, MatrixJson};
use orbitwidth::reconstruction::{reconstruct, Gauges};
use orbitwidth::root_system::{is_regular, Root};
use orbitwidth::width_bound::{bound, standard_torus_comparison};
use orbitwidth::{Family, GroupSpec, GtPattern, OrbitError, Scalar, SkewMatrix, WeylPoint};
use serde_json::{json, Value};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(OrbitError),
    /// Checks ran and found problems; the report is still printed.
    Verification(Value, String),
}

impl From<OrbitError> for Failure {
    fn from(e: OrbitError) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "orbitwidth", version, about = "Gelfand-Tsetlin tools for SO(n) coadjoint orbits")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "B" | "b" => Ok(Family::B),
        "D" | "d" => Ok(Family::D),
        _ => Err(format!("unknown family {s:?}, expected B or D")),
    }
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// B for SO(2n+1), D for SO(2n)
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    rank: usize,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Comma-separated chamber coordinates, e.g. `6,1` or `5,3,-1/2`
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gromov-width lower bound (regular or single-block non-regular λ)
    Bound {
        #[command(flatten)]
        point: PointArgs,
        /// Rational arithmetic
        #[arg(long)]
        exact: bool,
    },
    /// Edges of the GT polytope at the vertex Λ(λ)
    Edges {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        exact: bool,
    },
    /// GT values of a skew matrix
    Gt {
        /// JSON `{"size": m, "rows": [...]}`, inline or a file path
        #[arg(long)]
        matrix: String,
    },
    /// Orbit point with prescribed GT values
    Reconstruct {
        /// Pattern JSON `{"family", "lambda", "rows": {"2": [...], ...}}`, inline or a file path
        #[arg(long)]
        pattern: String,
        /// Circle angles per level, e.g. `{"3": [0.5]}`
        #[arg(long)]
        gauges: Option<String>,
        /// Slack for the pattern inequalities
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
    },
    /// Random orbit-point checks
    Verify {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, env = "ORBITWIDTH_SEED", default_value_t = 0)]
        seed: u64,
        /// Override the default residual tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Run trials on one thread
        #[arg(long)]
        sequential: bool,
    },
    /// Compare a standard-torus centered region with the coroot bound
    #[command(name = "appendix-a")]
    AppendixA {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Long root, e.g. `e1+e2`
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Short root, e.g. `e2`
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        exact: bool,
    },
    /// Check a pattern against the interlacing inequalities
    #[command(name = "pattern-check")]
    PatternCheck {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Interlacing,
    Roundtrip,
    All,
}

fn edges_json<T: Scalar>(lambda: &WeylPoint<T>) -> Result<Value, Failure> {
    let edges = enumerate_edges_at_lambda(lambda)?;
    Ok(json!({
        "family": lambda.group().family(),
        "rank": lambda.group().rank(),
        "lambda": lambda.coords().iter().map(|v| orbitwidth::json::Num(v.to_f64())).collect::<Vec<_>>(),
        "edges": edges.iter().map(EdgeDescriptor::to_json).collect::<Vec<_>>(),
    }))
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Bound { point, exact } => {
            let g = input::group(point.group.family, point.group.rank)?;
            if exact {
                Ok(bound(&input::exact_point(g, &point.lambda, "lambda")?)?.to_json())
            } else {
                Ok(bound(&input::float_point(g, &point.lambda, "lambda")?)?.to_json())
            }
        }
        Command::Edges { point, exact } => {
            let g = input::group(point.group.family, point.group.rank)?;
            if exact {
                edges_json(&input::exact_point(g, &point.lambda, "lambda")?)
            } else {
                edges_json(&input::float_point(g, &point.lambda, "lambda")?)
            }
        }
        Command::Gt { matrix } => {
            let m: MatrixJson = input::json_source(&matrix, "matrix")?;
            let m = SkewMatrix::try_from(m)?;
            let g = GroupSpec::from_matrix_size(m.size())?;
            Ok(serde_json::to_value(gt_map(&m, g)?).expect("pattern serializes"))
        }
        Command::Reconstruct { pattern, gauges, tol } => {
            let p: GtPattern = input::json_source(&pattern, "pattern")?;
            let gauges: Option<Gauges> = gauges.map(|s| input::json_source(&s, "gauges")).transpose()?;
            let lambda = WeylPoint::new(p.group(), p.lambda().to_vec())?;
            let r = reconstruct(&lambda, &p, gauges.as_ref(), tol)?;
            Ok(serde_json::to_value(r).expect("report serializes"))
        }
        Command::Verify { point, suite, trials, seed, tol, sequential } => {
            let g = input::group(point.group.family, point.group.rank)?;
            let lambda = input::float_point(g, &point.lambda, "lambda")?;
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let mut out = json!({
                "family": g.family(),
                "rank": g.rank(),
                "lambda": orbitwidth::json::nums(lambda.coords()),
                "seed": seed,
            });
            let mut failures = 0;
            if matches!(suite, Suite::Interlacing | Suite::All) {
                let r = verify_interlacing_with(&lambda, trials, seed, exec, tol)?;
                failures += r.failures.len();
                out["interlacing"] = r.to_json();
            }
            if matches!(suite, Suite::Roundtrip | Suite::All) {
                if suite == Suite::All && !is_regular(&lambda) {
                    eprintln!("note: λ is not regular, round trip skipped");
                    out["roundtrip"] = Value::Null;
                } else {
                    let r = verify_roundtrip_with(&lambda, trials, seed, exec, tol)?;
                    failures += r.failures.len();
                    out["roundtrip"] = r.to_json();
                }
            }
            if failures > 0 {
                return Err(Failure::Verification(out, format!("{failures} failed trial checks")));
            }
            Ok(out)
        }
        Command::AppendixA { group, p, alpha, beta, exact } => {
            let g = input::group(group.family, group.rank)?;
            let alpha = Root::parse(&alpha, g.rank()).map_err(|e| Failure::Usage(format!("--alpha: {e}")))?;
            let beta = Root::parse(&beta, g.rank()).map_err(|e| Failure::Usage(format!("--beta: {e}")))?;
            if exact {
                let p = input::exact_point(g, &p, "p")?;
                Ok(standard_torus_comparison(&p, &alpha, &beta)?.to_json())
            } else {
                let p = input::float_point(g, &p, "p")?;
                Ok(standard_torus_comparison(&p, &alpha, &beta)?.to_json())
            }
        }
        Command::PatternCheck { pattern, tol } => {
            let p: GtPattern = input::json_source(&pattern, "pattern")?;
            let violations = validate_pattern(&p, &tol)?;
            let out = json!({
                "family": p.group().family(),
                "rank": p.group().rank(),
                "valid": violations.is_empty(),
                "violations": violations,
            });
            if violations.is_empty() {
                Ok(out)
            } else {
                let msg = format!("{} inequalities fail, first: {}", violations.len(), violations[0]);
                Err(Failure::Verification(out, msg))
            }
        }
    }
}

fn emit(v: &Value, output: Output) {
    let text = match output {
        Output::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("JSON value")),
        Output::Table => table::render(v),
    };
    // A closed pipe is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = cli.output;
    match run(cli) {
        Ok(v) => {
            emit(&v, output);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(v, msg)) => {
            emit(&v, output);
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
