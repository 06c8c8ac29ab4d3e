//! `braidline` — command-line front end for the braided-line transform
//! library.
//!
//! Four subcommands: `transform` converts between orbit counts and fixed-
//! subspace probabilities, `glstats` enumerates a matrix group and reports
//! its measured statistics, `qexp` evaluates the truncated q-exponential,
//! and `check` runs the identity suite. All structured output is a single
//! line of JSON on stdout with stable key order and canonical rational
//! strings, so identical inputs produce identical bytes. `--pretty` appends
//! a table after the JSON; `--output` redirects the JSON to a file.
//!
//! Exit codes: 0 success, 1 failed check or violated internal invariant,
//! 2 malformed or degenerate input, 3 enumeration bound exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use braidline_core::checks::{run_all_checks, CheckReport, CheckStatus};
use braidline_core::gl_oracle::{Field, GroupInput, MatrixGroup};
use braidline_core::orbit_transform::{
    orbits_to_probabilities, probabilities_to_orbits, probabilities_to_orbits_via_operator,
    FixSpectrum, OrbitCounts,
};
use braidline_core::qcalc::{count_indep_tuples, truncated_q_exp_neg, QParam};
use braidline_core::{Error, Rat};

#[derive(Parser)]
#[command(
    name = "braidline",
    version,
    about = "Exact conversions between orbit counts and fixed-subspace probabilities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between orbit counts L and fixed-subspace probabilities P.
    Transform(TransformArgs),
    /// Enumerate a matrix group and report its fixed-point statistics.
    Glstats(GlstatsArgs),
    /// Evaluate the truncated q-exponential (no-fixed-vector probability).
    Qexp(QexpArgs),
    /// Run the identity-check suite over a list of q values.
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Orbit counts to probabilities.
    L2p,
    /// Probabilities to orbit counts.
    P2l,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(value_enum)]
    direction: Direction,
    /// Ambient dimension; vectors have length d+1.
    #[arg(long)]
    d: Option<usize>,
    /// Field-size parameter, a nonzero rational ("2", "3/2", "-2").
    #[arg(long)]
    q: Option<String>,
    /// Orbit counts L_0,..,L_d, comma-separated rationals.
    #[arg(long)]
    l: Option<String>,
    /// Probabilities P_0,..,P_d, comma-separated rationals.
    #[arg(long)]
    p: Option<String>,
    /// JSON file {"d":..,"q":"..","L":[..]} or {"d":..,"q":"..","P":[..]}.
    #[arg(long, conflicts_with_all = ["d", "q", "l", "p"])]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct GlstatsArgs {
    /// Matrix dimension (ignored when --generators is given).
    #[arg(long)]
    d: Option<usize>,
    /// Field order, a prime power with a built-in modulus (ignored with --generators).
    #[arg(long)]
    q: Option<u64>,
    /// JSON file {"d":..,"p":..,"k":..,"modulus":[..],"generators":[..]};
    /// without it the group is the full GL(d, F_q).
    #[arg(long, conflicts_with_all = ["d", "q"])]
    generators: Option<PathBuf>,
    /// Abort enumeration past this many elements.
    #[arg(long, default_value_t = 1_000_000)]
    max_order: usize,
    /// Skip direct orbit counting past this many tuples per degree.
    #[arg(long, default_value_t = 1_000_000)]
    max_tuples: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct QexpArgs {
    /// Truncation degree.
    #[arg(long)]
    d: usize,
    /// Nonzero rational, admissible through degree d.
    #[arg(long)]
    q: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// Largest polynomial degree exercised by the suite (at least 1).
    #[arg(long, default_value_t = 10)]
    max_degree: usize,
    /// Comma-separated q values to run the suite at.
    #[arg(long, default_value = "2,3,5,3/2,1/2,-2")]
    q: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print a human-readable table after the JSON.
    #[arg(long)]
    pretty: bool,
}

// One failure type for every exit path; `kind` and `message` go to stderr as
// {"error":{"kind":..,"message":..}} so scripts never have to parse prose.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "invalid-input", message: message.into() }
    }

    fn io(context: &str, err: std::io::Error) -> Self {
        Failure { code: 2, kind: "io", message: format!("{context}: {err}") }
    }

    fn to_json(&self) -> String {
        serde_json::json!({"error": {"kind": self.kind, "message": self.message}}).to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        use Error::*;
        let (code, kind) = match &e {
            OrderBoundExceeded { .. } => (3, "order-bound-exceeded"),
            TupleBudgetExceeded { .. } => (3, "tuple-budget-exceeded"),
            // These two mean the library itself broke a promise, not that
            // the input was bad.
            NonIntegerOrbitCount { .. } => (1, "non-integer-orbit-count"),
            NotNilpotent { .. } => (1, "not-nilpotent"),
            DegenerateQ { .. } => (2, "degenerate-q"),
            ZeroQ => (2, "zero-q"),
            IndexOutOfRange { .. } => (2, "index-out-of-range"),
            InvalidRational { .. } => (2, "invalid-rational"),
            DimensionMismatch { .. } => (2, "dimension-mismatch"),
            DivisionByZero { .. } => (2, "division-by-zero"),
            Singular => (2, "singular"),
            SingularGenerator { .. } => (2, "singular-generator"),
            InvalidField(_) => (2, "invalid-field"),
            InvalidInput(_) => (2, "invalid-input"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    // Die with SIGPIPE like other line-oriented tools instead of panicking
    // when a downstream reader (`head`, `jq -e`, ...) closes the pipe early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Transform(args) => cmd_transform(args),
        Command::Glstats(args) => cmd_glstats(args),
        Command::Qexp(args) => cmd_qexp(args),
        Command::Check(args) => cmd_check(args),
    }
}

fn emit(json: &impl Serialize, table: Option<String>, out: &OutputArgs) -> Result<(), Failure> {
    let line = serde_json::to_string(json)
        .map_err(|e| Failure { code: 1, kind: "serialize", message: e.to_string() })?;
    match &out.output {
        Some(path) => {
            std::fs::write(path, line + "\n").map_err(|e| Failure::io("writing output", e))?
        }
        None => println!("{line}"),
    }
    if out.pretty {
        if let Some(table) = table {
            println!("{table}");
        }
    }
    Ok(())
}

fn parse_rat(text: &str) -> Result<Rat, Failure> {
    text.parse::<Rat>().map_err(Failure::from)
}

fn parse_rat_list(text: &str) -> Result<Vec<Rat>, Failure> {
    text.split(',').map(parse_rat).collect()
}

fn parse_q(text: &str) -> Result<QParam, Failure> {
    QParam::new(parse_rat(text)?).map_err(Failure::from)
}

// --- transform ---------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformInput {
    d: usize,
    q: Rat,
    #[serde(rename = "L")]
    l: Option<Vec<Rat>>,
    #[serde(rename = "P")]
    p: Option<Vec<Rat>>,
}

#[derive(Serialize)]
struct TransformOutput {
    d: usize,
    q: Rat,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    p: Option<Vec<Rat>>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    l: Option<Vec<Rat>>,
}

fn cmd_transform(args: TransformArgs) -> Result<(), Failure> {
    let (d, q, vector) = if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io("reading input", e))?;
        let input: TransformInput =
            serde_json::from_str(&text).map_err(|e| Failure::input(e.to_string()))?;
        let vector = match (args.direction, input.l, input.p) {
            (Direction::L2p, Some(l), None) => l,
            (Direction::P2l, None, Some(p)) => p,
            (Direction::L2p, ..) => {
                return Err(Failure::input("l2p input must carry exactly the key \"L\""))
            }
            (Direction::P2l, ..) => {
                return Err(Failure::input("p2l input must carry exactly the key \"P\""))
            }
        };
        (input.d, QParam::new(input.q)?, vector)
    } else {
        let d = args.d.ok_or_else(|| Failure::input("--d is required without --input"))?;
        let q = args.q.as_deref().ok_or_else(|| Failure::input("--q is required without --input"))?;
        let vector = match (args.direction, &args.l, &args.p) {
            (Direction::L2p, Some(l), None) => parse_rat_list(l)?,
            (Direction::P2l, None, Some(p)) => parse_rat_list(p)?,
            (Direction::L2p, ..) => return Err(Failure::input("l2p needs --l and not --p")),
            (Direction::P2l, ..) => return Err(Failure::input("p2l needs --p and not --l")),
        };
        (d, parse_q(q)?, vector)
    };

    let output = match args.direction {
        Direction::L2p => {
            let counts = OrbitCounts::new(d, q.clone(), vector)?;
            let spectrum = orbits_to_probabilities(&counts)?;
            TransformOutput { d, q: q.value().clone(), p: Some(spectrum.probs().to_vec()), l: None }
        }
        Direction::P2l => {
            let spectrum = FixSpectrum::new(d, q.clone(), vector)?;
            let counts = probabilities_to_orbits(&spectrum);
            TransformOutput { d, q: q.value().clone(), p: None, l: Some(counts.counts().to_vec()) }
        }
    };

    let (label, values) = match args.direction {
        Direction::L2p => ("P", output.p.as_deref().unwrap()),
        Direction::P2l => ("L", output.l.as_deref().unwrap()),
    };
    let table = indexed_table(label, values);
    emit(&output, Some(table), &args.out)
}

fn indexed_table(label: &str, values: &[Rat]) -> String {
    let width = values.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
    values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{label}_{i} = {v:>width$}"))
        .collect::<Vec<_>>()
        .join("\n")
}

// --- glstats ------------------------------------------------------------------

#[derive(Serialize)]
struct GlstatsOutput {
    d: usize,
    q: Rat,
    order: usize,
    #[serde(rename = "P")]
    p: Vec<Rat>,
    #[serde(rename = "L_burnside")]
    l_burnside: Vec<Rat>,
    #[serde(rename = "L_direct")]
    l_direct: Option<Vec<Rat>>,
    transform_consistent: bool,
    #[serde(rename = "P0_matches_qexp", skip_serializing_if = "Option::is_none")]
    p0_matches_qexp: Option<bool>,
}

fn cmd_glstats(args: GlstatsArgs) -> Result<(), Failure> {
    let group = if let Some(path) = &args.generators {
        let text =
            std::fs::read_to_string(path).map_err(|e| Failure::io("reading generators", e))?;
        GroupInput::parse(&text)?.build(args.max_order)?
    } else {
        let d = args.d.ok_or_else(|| Failure::input("--d is required without --generators"))?;
        let q = args.q.ok_or_else(|| Failure::input("--q is required without --generators"))?;
        let field = Arc::new(Field::from_order(q)?);
        MatrixGroup::full_gl(&field, d, args.max_order)?
    };

    let d = group.dimension();
    let q = QParam::from_integer(group.field().order() as i64)?;
    let spectrum = group.fix_spectrum();
    let burnside = group.orbit_counts_burnside()?;
    let direct = match group.orbit_counts_direct(args.max_tuples) {
        Ok(counts) => Some(counts),
        Err(Error::TupleBudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };

    let forward = probabilities_to_orbits(&spectrum);
    let forward_op = probabilities_to_orbits_via_operator(&spectrum)?;
    let back = orbits_to_probabilities(&burnside)?;
    let transform_consistent = forward == burnside
        && forward_op == burnside
        && back == spectrum
        && direct.as_ref().is_none_or(|direct| *direct == burnside);

    // The no-fixed-vector series only describes the full general linear
    // group, recognizable by its order.
    let full_order = count_indep_tuples(d, d, &q);
    let p0_matches_qexp = if Rat::from(group.order() as u64) == full_order {
        Some(spectrum.probs()[0] == truncated_q_exp_neg(d, &q)?)
    } else {
        None
    };

    let output = GlstatsOutput {
        d,
        q: q.value().clone(),
        order: group.order(),
        p: spectrum.probs().to_vec(),
        l_burnside: burnside.counts().to_vec(),
        l_direct: direct.map(|c| c.counts().to_vec()),
        transform_consistent,
        p0_matches_qexp,
    };
    let table = glstats_table(&output);
    emit(&output, Some(table), &args.out)
}

fn glstats_table(out: &GlstatsOutput) -> String {
    let mut lines = vec![
        format!("group of order {} in GL({}, F_{})", out.order, out.d, out.q),
        format!("transform consistent: {}", out.transform_consistent),
    ];
    if let Some(flag) = out.p0_matches_qexp {
        lines.push(format!("P_0 matches truncated series: {flag}"));
    }
    let width = |col: &[Rat]| col.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
    let pw = width(&out.p);
    let lw = width(&out.l_burnside);
    for i in 0..out.p.len() {
        let direct = match &out.l_direct {
            Some(l) => format!("  L_direct = {}", l[i]),
            None => String::new(),
        };
        lines.push(format!(
            "i = {i}: P = {:>pw$}  L_burnside = {:>lw$}{direct}",
            out.p[i], out.l_burnside[i]
        ));
    }
    lines.join("\n")
}

// --- qexp ---------------------------------------------------------------------

#[derive(Serialize)]
struct QexpOutput {
    d: usize,
    q: Rat,
    value: Rat,
    decimal: String,
}

fn cmd_qexp(args: QexpArgs) -> Result<(), Failure> {
    let q = parse_q(&args.q)?;
    let value = truncated_q_exp_neg(args.d, &q)?;
    let output = QexpOutput {
        d: args.d,
        q: q.value().clone(),
        decimal: value.to_decimal_string(12),
        value,
    };
    let table = format!("{} ≈ {}", output.value, output.decimal);
    emit(&output, Some(table), &args.out)
}

// --- check ----------------------------------------------------------------------

fn cmd_check(args: CheckArgs) -> Result<(), Failure> {
    if args.max_degree == 0 {
        return Err(Failure::input("--max-degree must be at least 1"));
    }
    let qs: Vec<QParam> = args
        .q
        .split(',')
        .map(|text| {
            QParam::new(parse_rat(text)?).map_err(Failure::from)
        })
        .collect::<Result<_, _>>()?;

    let mut reports: Vec<CheckReport> = Vec::new();
    for q in &qs {
        reports.extend(run_all_checks(args.max_degree, q));
    }

    let table = check_table(&reports);
    emit(&reports, Some(table), &args.out)?;

    let failures = reports.iter().filter(|r| r.status == CheckStatus::Fail).count();
    if failures > 0 {
        return Err(Failure {
            code: 1,
            kind: "check-failed",
            message: format!("{failures} identity check(s) failed"),
        });
    }
    Ok(())
}

fn check_table(reports: &[CheckReport]) -> String {
    let name_width = reports.iter().map(|r| r.name.len()).max().unwrap_or(4);
    let q_width = reports.iter().map(|r| r.q.to_string().len()).max().unwrap_or(1);
    reports
        .iter()
        .map(|r| {
            let status = match r.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::SkippedDegenerate => "skipped (degenerate q)",
            };
            format!("{:<name_width$}  q = {:>q_width$}  {status}", r.name, r.q)
        })
        .collect::<Vec<_>>()
        .join("\n")
}
