use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heatsphere::asymptotics::{remainder_order, RemainderOutcome};
use heatsphere::exactnum::parse_rational;
use heatsphere::identities::{verify_identity, Identity, OmegaRange, ParameterBox};
use heatsphere::invariants::{heat_invariant_via, Route};
use heatsphere::opercalc::check_bernoulli_link;
use heatsphere::{heat_invariant, Error, VerificationReport};
use heatsphere_cli::exit;
use heatsphere_cli::range::IntRange;
use heatsphere_cli::record::{OutputRecord, CSV_HEADER};
use heatsphere_cli::suites;
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "heatsphere",
    version,
    about = "Exact heat-trace coefficients of spheres"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a_{n,d} for every cell of an (n, d) grid.
    Compute(ComputeArgs),
    /// Run a verification suite; exit 1 if any point fails.
    Verify(VerifyArgs),
    /// Compare the numeric heat trace with the truncated expansion.
    Asympt(AsymptArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Index n: an integer or an inclusive range a..b.
    #[arg(long)]
    n: IntRange,
    /// Dimension d: an integer or an inclusive range a..b.
    #[arg(long)]
    d: IntRange,
    /// Summation bound for the general formula (must be >= 2n).
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<i64>,
    #[arg(long, value_enum, default_value_t = Formula::Auto)]
    formula: Formula,
    #[arg(long, value_enum, default_value_t = RecordFormat::Json)]
    format: RecordFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Auto,
    General,
    Odd,
    Even,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum RecordFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    S1,
    S1g,
    S3,
    Vychet,
    Lemmas,
    BernoulliLink,
    Legendre,
    Crosscheck,
    OmegaStability,
    Sharpness,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    #[arg(long)]
    n: Option<IntRange>,
    #[arg(long)]
    d: Option<IntRange>,
    /// Absolute omega range (default: 2n..2n+4, or 2n..3n+4 for omega-stability).
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<IntRange>,
    #[arg(long)]
    j: Option<IntRange>,
    #[arg(long)]
    t: Option<IntRange>,
    #[arg(long)]
    s: Option<IntRange>,
    /// Comma-separated shifts for s1g, e.g. `0,1/2,7/3`.
    #[arg(long, value_delimiter = ',')]
    x: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct AsymptArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n_terms: u32,
    #[arg(long, default_value_t = 0.05)]
    t0: f64,
    /// Largest accepted relative deviation of the observed order.
    #[arg(long, default_value_t = 0.2)]
    max_dev: f64,
}

/// Failure carrying the exit code it maps to.
struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SummationCap { .. } => exit::VERIFY_FAILED,
            _ => exit::USAGE,
        };
        Exit {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit {
            code: exit::VERIFY_FAILED,
            message: format!("write failed: {e}"),
        }
    }
}

type Run = Result<i32, Exit>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            } as u8);
        }
    };
    let outcome = std::panic::catch_unwind(|| match cli.command {
        Command::Compute(args) => compute(args),
        Command::Verify(args) => verify(args),
        Command::Asympt(args) => asympt(args),
    });
    let code = match outcome {
        Ok(Ok(code)) => code,
        Ok(Err(e)) if e.message.contains("Broken pipe") => exit::OK,
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message);
            e.code
        }
        Err(_) => exit::VERIFY_FAILED,
    };
    ExitCode::from(code as u8)
}

fn compute(args: ComputeArgs) -> Run {
    let ns = args.n.to_u32("n").map_err(Exit::usage)?;
    let ds = args.d.to_u32("d").map_err(Exit::usage)?;
    let cells: Vec<(u32, u32)> = ns.flat_map(|n| ds.clone().map(move |d| (n, d))).collect();
    let route = match args.formula {
        Formula::Auto => None,
        Formula::General => Some(Route::General),
        Formula::Odd => Some(Route::Odd),
        Formula::Even => Some(Route::Even),
        Formula::Closed => Some(Route::Closed),
    };
    let results = cells
        .par_iter()
        .map(|&(n, d)| match route {
            None => heat_invariant(n, d, args.omega),
            Some(route) => heat_invariant_via(n, d, route, args.omega),
        })
        .collect::<Vec<_>>();

    let mut out = BufWriter::new(io::stdout().lock());
    if let RecordFormat::Csv = args.format {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for result in results {
        let record = OutputRecord::from(&result?);
        match args.format {
            RecordFormat::Json => writeln!(out, "{}", record.to_json())?,
            RecordFormat::Csv => writeln!(out, "{}", record.to_csv())?,
        }
    }
    out.flush()?;
    Ok(exit::OK)
}

fn verify(args: VerifyArgs) -> Run {
    use Target::*;
    let allowed: &[&str] = match args.target {
        S1 | S3 => &["n", "omega"],
        S1g => &["n", "omega", "x"],
        Vychet => &["j"],
        Lemmas => &["t", "s"],
        BernoulliLink => &["t"],
        Legendre => &["j", "d"],
        Crosscheck => &["n", "d"],
        OmegaStability => &["n", "d", "omega"],
        Sharpness => &["n", "d"],
    };
    let given = [
        ("n", args.n.is_some()),
        ("d", args.d.is_some()),
        ("omega", args.omega.is_some()),
        ("j", args.j.is_some()),
        ("t", args.t.is_some()),
        ("s", args.s.is_some()),
        ("x", args.x.is_some()),
    ];
    if let Some((flag, _)) = given.iter().find(|(f, set)| *set && !allowed.contains(f)) {
        return Err(Exit::usage(format!(
            "--{flag} does not apply to this suite"
        )));
    }

    let u32_range = |r: &Option<IntRange>, flag: &str, lo: u32, hi: u32| match r {
        Some(r) => r.to_u32(flag).map_err(Exit::usage),
        None => Ok(lo..=hi),
    };
    let report = match args.target {
        S1 | S1g | S3 | Vychet => {
            let mut bx = ParameterBox {
                n: u32_range(&args.n, "n", 1, 5)?,
                j: u32_range(&args.j, "j", 0, 10)?,
                ..ParameterBox::default()
            };
            if let Some(w) = &args.omega {
                bx.omega = OmegaRange::Absolute(w.iter());
            }
            if let Some(xs) = &args.x {
                bx.x = xs
                    .iter()
                    .map(|x| parse_rational(x))
                    .collect::<Result<_, _>>()?;
            }
            let id = match args.target {
                S1 => Identity::S1,
                S1g => Identity::S1g,
                S3 => Identity::S3,
                _ => Identity::Vychet,
            };
            verify_identity(id, &bx)?
        }
        Lemmas => {
            let t = args.t.clone().unwrap_or(IntRange::new(0, 4));
            suites::lemmas(t.iter(), u32_range(&args.s, "s", 0, 3)?)?
        }
        BernoulliLink => {
            let t = u32_range(&args.t, "t", 0, 8)?;
            check_bernoulli_link(*t.end())
        }
        Legendre => suites::legendre(
            u32_range(&args.j, "j", 0, 4)?,
            u32_range(&args.d, "d", 2, 5)?,
        )?,
        Crosscheck => suites::crosscheck(
            u32_range(&args.n, "n", 1, 6)?,
            u32_range(&args.d, "d", 1, 8)?,
        )?,
        OmegaStability => {
            let omega = args.omega.clone();
            suites::omega_stability(
                u32_range(&args.n, "n", 1, 6)?,
                u32_range(&args.d, "d", 1, 8)?,
                move |n| match &omega {
                    Some(w) => w.iter(),
                    None => 2 * n as i64..=3 * n as i64 + 4,
                },
            )?
        }
        Sharpness => {
            if args.n.is_none() && args.d.is_none() {
                suites::sharpness(&suites::SHARPNESS_CELLS)?
            } else {
                let ns = u32_range(&args.n, "n", 1, 2)?;
                let ds = u32_range(&args.d, "d", 1, 3)?;
                let cells: Vec<_> = ns.flat_map(|n| ds.clone().map(move |d| (n, d))).collect();
                suites::sharpness(&cells)?
            }
        }
    };
    render_report(&report, args.format)?;
    Ok(if report.passed {
        exit::OK
    } else {
        exit::VERIFY_FAILED
    })
}

fn render_report(report: &VerificationReport, format: ReportFormat) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        ReportFormat::Text => write!(out, "{report}"),
        ReportFormat::Json => {
            let failures: Vec<_> = report
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "params": f.params,
                        "computed": f.computed.to_string(),
                        "expected": f.expected.to_string(),
                    })
                })
                .collect();
            let doc = json!({
                "identity": report.identity_name,
                "passed": report.passed,
                "points_checked": report.points_checked(),
                "failures": failures,
                "notes": report.notes,
            });
            writeln!(out, "{doc}")
        }
    }
}

fn asympt(args: AsymptArgs) -> Run {
    if args.max_dev.is_nan() || args.max_dev < 0.0 {
        return Err(Exit::usage("--max-dev must be a non-negative number"));
    }
    let outcome = remainder_order(args.d, args.n_terms, args.t0)?;
    let (doc, ok) = match &outcome {
        RemainderOutcome::Measured(est) => (
            json!({
                "status": outcome.status(),
                "d": est.d,
                "n_terms": est.n_terms,
                "t_values": est.t_values,
                "remainders": est.remainders,
                "observed_order": est.observed_order,
                "expected_order": est.expected_order,
                "relative_deviation": est.relative_deviation,
                "max_dev": args.max_dev,
            }),
            est.relative_deviation <= args.max_dev,
        ),
        RemainderOutcome::BeyondAllOrders { d, n_terms } => (
            json!({ "status": outcome.status(), "d": d, "n_terms": n_terms }),
            true,
        ),
        RemainderOutcome::Inconclusive {
            d,
            n_terms,
            t_values,
            remainders,
        } => (
            json!({
                "status": outcome.status(),
                "d": d,
                "n_terms": n_terms,
                "t_values": t_values,
                "remainders": remainders,
            }),
            true,
        ),
    };
    writeln!(io::stdout().lock(), "{doc}")?;
    Ok(if ok { exit::OK } else { exit::VERIFY_FAILED })
}
