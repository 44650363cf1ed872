//! `derange`: generate derangement sequences and polynomials, check their
//! Hankel determinants and identities, and run the Erlang Monte Carlo.
//!
//! Exit codes: 0 when everything checked passes, 1 on a failed check,
//! 2 on a usage error.

mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use derange_core::exact::{format_rational, parse_rational, Rational};
use derange_core::hankel::verify_hankel;
use derange_core::poly::{generalized_poly, order_poly};
use derange_core::report::Params;
use derange_core::series::{egf_values, FamilySpec};
use derange_core::stochastic::{erlang_moment_exact, mc_generalized, mc_moments, moment_expansion, McConfig};
use derange_core::suite::{run_suite, Grid, Suite};
use derange_core::Cell;
use num_traits::ToPrimitive;

use output::{csv_rows, emit, json, Format, RunReport};

/// Tolerance of the Monte Carlo checks, in standard errors.
const MC_SIGMAS: f64 = 6.0;

#[derive(Debug, Parser)]
#[command(name = "derange", version, about = "Exact derangement polynomial families and their Hankel determinants")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sequence values n! [z^n] of a family's generating function.
    Seq(SeqArgs),
    /// Coefficients (low to high) of a generalized (D) or order-r (d) polynomial.
    Poly(PolyArgs),
    /// Hankel determinant of a family against its closed form.
    Hankel(HankelArgs),
    /// Run a verification suite over a parameter grid.
    Verify(VerifyArgs),
    /// Monte Carlo estimate of an Erlang moment or a generalized polynomial.
    Mc(McArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Classic,
    OrderRNumbers,
    RDerangementNumbers,
    RDerangementPoly,
    OrderRPoly,
    Cyclic,
    Generalized,
}

#[derive(Debug, Args)]
struct SeqArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, alias = "z", value_parser = rational, allow_hyphen_values = true)]
    x: Option<Rational>,
    #[arg(long)]
    count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "D")]
    Generalized,
    #[value(name = "d")]
    Order,
}

#[derive(Debug, Args)]
struct PolyArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u32,
}

#[derive(Debug, Args)]
struct HankelArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    r: Option<u32>,
    /// Evaluation point of the polynomial families.
    #[arg(long, alias = "x", value_parser = rational, allow_hyphen_values = true)]
    z: Option<Rational>,
    /// The matrix has size n + 1.
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = suite)]
    suite: Suite,
    /// Orders to check (comma separated); default 0..=3.
    #[arg(long, value_delimiter = ',')]
    r: Vec<u32>,
    /// Evaluation points (comma separated); default depends on the suite.
    #[arg(long, alias = "z", value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
    x: Vec<Rational>,
    #[arg(long)]
    nmax: Option<usize>,
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long)]
    r: u32,
    /// Moment order of E[Y_r^k].
    #[arg(long, conflicts_with = "dn")]
    k: Option<usize>,
    /// Estimate the generalized polynomial D_n^(r)(x) instead of a moment.
    #[arg(long, requires_all = ["n", "x"])]
    dn: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    x: Option<Rational>,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, env = "DERANGE_SEED", default_value_t = 42)]
    seed: u64,
    /// Independent sub-streams; the estimate depends on (seed, samples, streams).
    #[arg(long, default_value_t = 1)]
    streams: usize,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: derange_core::Error| e.to_string())
}

fn family_spec(family: Family, r: Option<u32>, x: Option<Rational>) -> Result<FamilySpec> {
    let r = || r.ok_or_else(|| anyhow!("--r is required for this family"));
    let x = || x.clone().ok_or_else(|| anyhow!("an evaluation point (--x/--z) is required for this family"));
    let spec = match family {
        Family::Classic => FamilySpec::Classic,
        Family::OrderRNumbers => FamilySpec::OrderRNumbers { r: r()? },
        Family::RDerangementNumbers => FamilySpec::RDerangementNumbers { r: r()? },
        Family::RDerangementPoly => FamilySpec::RDerangementPoly { r: r()?, x: x()? },
        Family::OrderRPoly => FamilySpec::OrderRPoly { r: r()?, x: x()? },
        Family::Cyclic => FamilySpec::Cyclic { r: r()? },
        Family::Generalized => FamilySpec::Generalized { r: r()?, x: x()? },
    };
    spec.validate()?;
    Ok(spec)
}

/// What a subcommand produced: rendered output and whether every check
/// passed.
struct Outcome {
    content: String,
    ok: bool,
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn seq(args: SeqArgs, format: Format) -> Result<Outcome> {
    let spec = family_spec(args.family, args.r, args.x)?;
    let values = egf_values(&spec, args.count)?;
    let content = match format {
        Format::Text => values
            .iter()
            .enumerate()
            .map(|(n, v)| format!("{n} {}\n", format_rational(v)))
            .collect(),
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Term {
                n: usize,
                value: String,
            }
            #[derive(serde::Serialize)]
            struct Out {
                command: String,
                params: BTreeMap<String, String>,
                values: Vec<Term>,
            }
            json(&Out {
                command: command_echo(),
                params: spec.params(),
                values: values
                    .iter()
                    .enumerate()
                    .map(|(n, v)| Term { n, value: format_rational(v) })
                    .collect(),
            })?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .enumerate()
                .map(|(n, v)| vec![n.to_string(), format_rational(v)])
                .collect();
            csv_rows(&["n", "value"], &rows)?
        }
    };
    Ok(Outcome { content, ok: true })
}

fn poly(args: PolyArgs, format: Format) -> Result<Outcome> {
    let p = match args.which {
        Which::Generalized => generalized_poly(args.n, args.r),
        Which::Order => order_poly(args.n, args.r),
    };
    let coeffs: Vec<String> = p.coeffs().iter().map(format_rational).collect();
    let content = match format {
        Format::Text => format!("{}\n", coeffs.join(" ")),
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Out<'a> {
                command: String,
                params: BTreeMap<&'a str, String>,
                coeffs: &'a [String],
            }
            let which = match args.which {
                Which::Generalized => "D",
                Which::Order => "d",
            };
            json(&Out {
                command: command_echo(),
                params: BTreeMap::from([
                    ("which", which.to_string()),
                    ("n", args.n.to_string()),
                    ("r", args.r.to_string()),
                ]),
                coeffs: &coeffs,
            })?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), c.clone()])
                .collect();
            csv_rows(&["k", "coeff"], &rows)?
        }
    };
    Ok(Outcome { content, ok: true })
}

fn report_outcome(report: RunReport, format: Format) -> Result<Outcome> {
    Ok(Outcome { content: report.render(format)?, ok: report.ok() })
}

fn hankel(args: HankelArgs, format: Format) -> Result<Outcome> {
    let start = Instant::now();
    let spec = family_spec(args.family, args.r, args.z)?;
    let report = verify_hankel(&spec, args.n)?;
    let mut grid = spec.params();
    grid.insert("n".into(), args.n.to_string());
    let run = RunReport::new(command_echo(), grid, vec![report.to_cell()], start.elapsed());
    report_outcome(run, format)
}

fn verify(args: VerifyArgs, format: Format) -> Result<Outcome> {
    let start = Instant::now();
    let mut grid = Grid::default();
    if !args.r.is_empty() {
        grid.rs = args.r;
    }
    if !args.x.is_empty() {
        grid.points = Some(args.x);
    }
    if let Some(n) = args.nmax {
        grid.n_max = n;
    }
    let cells = run_suite(args.suite, &grid)?;
    let mut echo = BTreeMap::new();
    echo.insert("suite".to_string(), args.suite.to_string());
    echo.insert("nmax".to_string(), grid.n_max.to_string());
    echo.insert(
        "r".to_string(),
        grid.rs.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    );
    echo.insert(
        "points".to_string(),
        grid.points.as_ref().map_or_else(
            || "default".to_string(),
            |p| p.iter().map(format_rational).collect::<Vec<_>>().join(","),
        ),
    );
    report_outcome(RunReport::new(command_echo(), echo, cells, start.elapsed()), format)
}

fn mc(args: McArgs, format: Format) -> Result<Outcome> {
    let start = Instant::now();
    let config = McConfig::new(args.samples, args.seed).with_streams(args.streams);
    let mut params = Params::new(if args.dn { "mc-generalized" } else { "mc-moment" })
        .set("r", args.r)
        .set("samples", args.samples)
        .set("seed", args.seed)
        .set("streams", args.streams);
    let (target, estimate) = if args.dn {
        let (n, x) = (args.n.unwrap(), args.x.unwrap());
        params = params.set("n", n).rational("x", &x);
        (moment_expansion(n, args.r, &x), mc_generalized(n, args.r, &x, config)?)
    } else {
        let k = args.k.ok_or_else(|| anyhow!("either --k or --dn is required"))?;
        if k > derange_core::stochastic::MAX_MC_ORDER {
            bail!("--k must be <= {}", derange_core::stochastic::MAX_MC_ORDER);
        }
        params = params.set("k", k);
        let exact = Rational::from_integer(erlang_moment_exact(args.r, k));
        (exact, mc_moments(args.r, config)?[k])
    };
    let target_f = target.to_f64().ok_or_else(|| anyhow!("target does not fit in f64"))?;
    let z = estimate.z_score(target_f);
    let pass = z.abs() <= MC_SIGMAS;
    let cell = Cell {
        params: params.0,
        expected: format_rational(&target),
        actual: estimate.mean.to_string(),
        verdict: if pass { derange_core::Verdict::Pass } else { derange_core::Verdict::Fail },
        details: BTreeMap::from([
            ("stderr".to_string(), estimate.stderr.to_string()),
            ("z_score".to_string(), z.to_string()),
        ]),
    };
    let grid = BTreeMap::from([("tolerance_sigmas".to_string(), MC_SIGMAS.to_string())]);
    report_outcome(RunReport::new(command_echo(), grid, vec![cell], start.elapsed()), format)
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Seq(a) => seq(a, format),
        Command::Poly(a) => poly(a, format),
        Command::Hankel(a) => hankel(a, format),
        Command::Verify(a) => verify(a, format),
        Command::Mc(a) => mc(a, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli).and_then(|o| emit(&o.content, output.as_deref()).map(|_| o.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
