//! The `fcc` command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 oracle cap
//! exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{self, CensusError, CensusTable};
use crate::complex::{enumerate_trees, build_complex, Composition, DecompositionTree};
use crate::geometry::{lift, render_svg, schlegel};
use crate::series;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "fcc", version, about = "Fuss-Catalan complexes: enumeration, census, verification, geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical tree encodings of every complex, then the count.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Colour census from the closed formulas or by enumeration.
    Census(CensusArgs),
    /// Run an identity check and print a JSON report.
    Verify(VerifyArgs),
    /// Schlegel diagram or lifted polytope of one complex.
    Geometry(GeometryArgs),
    /// The coloured complex of one tree as JSON.
    Complex {
        #[command(flatten)]
        tree: TreeChoice,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// Merge colours into consecutive blocks, e.g. `1,2`.
    #[arg(long)]
    beta: Option<Composition>,
    /// Count by building every complex.
    #[arg(long, conflicts_with = "compare")]
    oracle: bool,
    /// Run the formulas and the enumeration and fail on any difference.
    #[arg(long)]
    compare: bool,
    /// Largest census the enumeration may attempt.
    #[arg(long, env = "FCC_ORACLE_CAP", default_value_t = census::DEFAULT_ORACLE_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    format: TableFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    AlgD2,
    Y,
    Z,
    Jacobian,
    G0,
    Rothe1,
    Rothe2,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    /// Dimension for the jacobian and g0 checks.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Series truncation order.
    #[arg(long, default_value_t = 10)]
    trunc: u32,
    /// Largest total degree compared by the g0 check; defaults to `--trunc`.
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random points for the jacobian check.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct TreeChoice {
    #[arg(long)]
    d: usize,
    /// Tree encoding such as `((EE)E)`.
    #[arg(long, conflicts_with_all = ["n", "index"])]
    tree: Option<String>,
    #[arg(long, requires = "index")]
    n: Option<usize>,
    /// Position in the canonical enumeration order, from 0.
    #[arg(long, requires = "n")]
    index: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeometryFormat {
    Json,
    Off,
    Svg,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    #[command(flatten)]
    tree: TreeChoice,
    /// Apply the paraboloid lift.
    #[arg(long)]
    lift: bool,
    #[arg(long, value_enum, default_value_t = GeometryFormat::Json)]
    format: GeometryFormat,
    #[command(flatten)]
    output: Output,
}

/// A failed command: exit code and message for stderr.
struct Failure(u8, String);

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::CapExceeded { .. } => Failure(EXIT_CAP, e.to_string()),
            _ => Failure(EXIT_USAGE, e.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` unless `-o` is given. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Enumerate { d, n, output } => cmd_enumerate(d, n).map(|t| (t, output, EXIT_OK)),
        Command::Census(a) => cmd_census(&a).map(|(t, code)| (t, a.output, code)),
        Command::Verify(a) => cmd_verify(&a).map(|(t, code)| (t, a.output, code)),
        Command::Geometry(a) => cmd_geometry(&a).map(|t| (t, a.output, EXIT_OK)),
        Command::Complex { tree, output } => {
            resolve_tree(&tree).map(|t| (build_complex(&t).to_json() + "\n", output, EXIT_OK))
        }
    };
    match result {
        Ok((text, output, code)) => match emit(&text, &output, out) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn emit(text: &str, output: &Output, out: &mut impl Write) -> std::io::Result<()> {
    match &output.path {
        Some(path) => std::fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn cmd_enumerate(d: usize, n: usize) -> Result<String, Failure> {
    let mut text = String::new();
    let mut count = 0u64;
    for t in enumerate_trees(d, n).map_err(usage)? {
        text.push_str(&t.encode());
        text.push('\n');
        count += 1;
    }
    text.push_str(&format!("{count}\n"));
    Ok(text)
}

fn census_table(a: &CensusArgs, oracle: bool) -> Result<CensusTable, CensusError> {
    match (&a.beta, oracle) {
        (None, false) => census::census_formula(a.d, a.n),
        (None, true) => census::census_enumerated(a.d, a.n, a.cap),
        (Some(b), false) => census::census_coarse_formula(a.d, a.n, b),
        (Some(b), true) => census::census_coarse_enumerated(a.d, a.n, b, a.cap),
    }
}

fn cmd_census(a: &CensusArgs) -> Result<(String, u8), Failure> {
    let table = census_table(a, a.oracle)?;
    let mut code = EXIT_OK;
    if a.compare {
        let oracle = census_table(a, true)?;
        if oracle != table {
            eprintln!("census mismatch between formulas and enumeration");
            code = EXIT_MISMATCH;
        }
    }
    let text = match a.format {
        TableFormat::Json => table.to_json() + "\n",
        TableFormat::Csv => table.to_csv(),
    };
    Ok((text, code))
}

/// One entry of the verification report.
#[derive(Debug, Serialize)]
struct Report {
    check: &'static str,
    d: usize,
    truncation: Option<u32>,
    residual_zero: Option<bool>,
    max_degree_certified: Option<u32>,
    points_tested: Option<usize>,
    seed: Option<u64>,
    cases: u64,
    passed: bool,
}

impl Report {
    fn new(check: &'static str, d: usize) -> Self {
        Report {
            check,
            d,
            truncation: None,
            residual_zero: None,
            max_degree_certified: None,
            points_tested: None,
            seed: None,
            cases: 0,
            passed: false,
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyDoc {
    passed: bool,
    reports: Vec<Report>,
}

fn residual_report(check: &'static str, t: u32, residual: series::MultiSeries) -> Report {
    let zero = residual.is_zero();
    Report {
        truncation: Some(t),
        residual_zero: Some(zero),
        max_degree_certified: Some(t),
        cases: 1,
        passed: zero,
        ..Report::new(check, 2)
    }
}

fn jacobian_report(d: usize, trials: usize, seed: u64) -> Report {
    let points = series::random_points(d, trials, seed);
    let mut passed = points.iter().all(|p| {
        let sides = series::jacobian_check(p);
        matches!(sides, Ok((l, r)) if l == r) && series::esym_checks(p)
    });
    let mut cases = points.len() as u64;
    if d <= 2 {
        passed &= series::jacobian_symbolic(d);
        cases += 1;
    }
    Report {
        points_tested: Some(points.len()),
        seed: Some(seed),
        cases,
        passed,
        ..Report::new("jacobian", d)
    }
}

fn g0_report(d: usize, max: u32) -> Report {
    let r = series::g0_bridge(d, max);
    Report {
        truncation: Some(max),
        max_degree_certified: Some(max),
        cases: r.cases as u64,
        passed: r.mismatches.is_empty(),
        ..Report::new("g0", d)
    }
}

/// Block sizes up to 4, `s` up to 8 and `gamma` up to 12.
fn rothe_report(second: bool) -> Report {
    let mut cases = 0;
    let mut passed = true;
    for lo in 1..=4u64 {
        for hi in 1..=4u64 {
            for gamma in lo + hi..=12 {
                let sides = if second {
                    census::rothe_second_laurent(lo, hi, gamma)
                } else {
                    census::rothe_first_laurent(lo, hi, gamma)
                };
                let Ok((lhs, rhs)) = sides else {
                    passed = false;
                    continue;
                };
                cases += 1;
                passed &= lhs == rhs;
                for s in 0..=8i64 {
                    cases += 1;
                    passed &= lhs.eval(s) == rhs.eval(s);
                }
            }
        }
    }
    Report {
        cases,
        passed,
        ..Report::new(if second { "rothe2" } else { "rothe1" }, 2)
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, u8), Failure> {
    if a.d < 2 && matches!(a.check, Check::G0 | Check::All) {
        return Err(usage(format!("the g0 check needs d >= 2, got {}", a.d)));
    }
    let max = a.max_degree.unwrap_or(a.trunc);
    let wanted = |c: Check| a.check == c || a.check == Check::All;
    let mut reports = Vec::new();
    if wanted(Check::AlgD2) {
        reports.push(residual_report("alg-d2", a.trunc, series::check_alg_d2(a.trunc)));
    }
    if wanted(Check::Y) {
        reports.push(residual_report("y", a.trunc, series::check_y(a.trunc)));
    }
    if wanted(Check::Z) {
        reports.push(residual_report("z", a.trunc, series::check_z(a.trunc)));
    }
    if wanted(Check::Jacobian) {
        reports.push(jacobian_report(a.d, a.trials, a.seed));
    }
    if wanted(Check::G0) {
        reports.push(g0_report(a.d, max));
    }
    if wanted(Check::Rothe1) {
        reports.push(rothe_report(false));
    }
    if wanted(Check::Rothe2) {
        reports.push(rothe_report(true));
    }
    let passed = reports.iter().all(|r| r.passed);
    let doc = VerifyDoc { passed, reports };
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    Ok((text, if passed { EXIT_OK } else { EXIT_MISMATCH }))
}

fn resolve_tree(choice: &TreeChoice) -> Result<DecompositionTree, Failure> {
    match (&choice.tree, choice.n, choice.index) {
        (Some(text), _, _) => DecompositionTree::decode(text, choice.d).map_err(usage),
        (None, Some(n), Some(i)) => enumerate_trees(choice.d, n)
            .map_err(usage)?
            .nth(i)
            .ok_or_else(|| usage(format!("index {i} is out of range for d = {}, n = {n}", choice.d))),
        _ => Err(usage("give either --tree or both --n and --index")),
    }
}

fn cmd_geometry(a: &GeometryArgs) -> Result<String, Failure> {
    let tree = resolve_tree(&a.tree)?;
    let sd = schlegel(&tree);
    Ok(match (a.format, a.lift) {
        (GeometryFormat::Svg, false) => render_svg(&tree).map_err(usage)?,
        (GeometryFormat::Svg, true) => return Err(usage("SVG output draws the diagram; drop --lift")),
        (GeometryFormat::Json, false) => sd.to_json() + "\n",
        (GeometryFormat::Json, true) => lift(&sd).to_json() + "\n",
        (GeometryFormat::Off, false) => sd.to_off(),
        (GeometryFormat::Off, true) => lift(&sd).to_off(),
    })
}
