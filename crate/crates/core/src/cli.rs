//! Command-line front end. JSON goes to stdout, summaries and timings to
//! stderr. Every JSON document carries `schema_version`.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::admissibility::{check_admissible, CriticalPair, Sign, Verdict};
use crate::dynamics::{self, orbit, OverlapParams, ReconstructOptions, RoundTripVerdict};
use crate::growth::{classify_growth_with, estimate_growth_with, Classification, GrowthError, DEFAULT_COUNT_LEN, DEFAULT_NONNULL_THRESHOLD};
use crate::projection::{project_to_bits, smallest_root_with, RootOptions, RootStatus};
use crate::real::{parse_rational, PrecisionReal};
use crate::words::{EPWord, Word};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_NOT_ADMISSIBLE: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "kneading", version, about = "Critical itineraries of uniform overlapping maps")]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,
    /// Root tolerance on |π_r(α) − π_r(β)|.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// α, e.g. `01(10)` or `@primes`.
    alpha: String,
    /// β, e.g. `1(0)`.
    beta: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide admissibility of (α, β).
    Check {
        #[command(flatten)]
        pair: PairArgs,
        /// Shifts checked and comparison depth for stream words.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Smallest root r of π_x(α) = π_x(β), with a = 1/r and p = π_r(α).
    Solve {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Reconstruct f_(a,p,±) and verify the critical itineraries.
    Reconstruct {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 64)]
        verify_len: usize,
        /// Precision ceiling in bits.
        #[arg(long, default_value_t = dynamics::DEFAULT_MAX_BITS)]
        max_bits: u32,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Prefix counts and growth rate of the address space.
    Growth {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        max_len: Option<usize>,
        /// Estimated rates at or above this are reported non-null.
        #[arg(long, default_value_t = DEFAULT_NONNULL_THRESHOLD)]
        threshold: f64,
    },
    /// Primality via f^(n−1)(p) > p for the prime pair.
    Primes {
        #[arg(long, default_value_t = 100)]
        max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = dynamics::DEFAULT_MAX_BITS)]
        max_bits: u32,
    },
    /// CSV of the graph of f and the orbit of x.
    Plotdata {
        /// Slope; decimal, fraction or `sqrt(q)`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, default_value_t = SignArg::Minus)]
        sign: SignArg,
        /// Orbit start, defaults to p.
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = 20)]
        len: usize,
        /// Grid intervals for the graph block.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate small eventually periodic pairs looking for null ones.
    SearchNull {
        #[arg(long, default_value_t = 3)]
        max_pre: usize,
        #[arg(long, default_value_t = 3)]
        max_per: usize,
        /// Stop after this many candidate pairs.
        #[arg(long)]
        limit: Option<usize>,
        /// Emit one line per admissible pair, not only null ones.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Grid step for the sign scan.
    #[arg(long, default_value_t = 1e-3)]
    grid: f64,
    /// The scan stops at 1 − delta.
    #[arg(long, default_value_t = 1e-4)]
    delta: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Estimate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Minus,
    Plus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Minus => Sign::Minus,
            SignArg::Plus => Sign::Plus,
        }
    }
}

/// A published value that reports are compared against.
struct Claim {
    alpha: &'static str,
    beta: &'static str,
    quantity: &'static str,
    value: f64,
    text: &'static str,
}

const CLAIMS: &[Claim] = &[
    Claim { alpha: "@primes", beta: "1(0)", quantity: "a", value: 1.792568768, text: "1.792568768" },
    Claim { alpha: "@primes", beta: "1(0)", quantity: "p", value: 0.4421413462, text: "0.4421413462" },
    Claim { alpha: "01(10)", beta: "10(01)", quantity: "growth_rate", value: 0.0, text: "0" },
];

fn claims_for(pair: &CriticalPair, quantity: &str) -> Option<&'static Claim> {
    let (a, b) = (pair.alpha().to_string(), pair.beta().to_string());
    let canon = |s: &str| s.parse::<Word>().map(|w| w.to_string()).unwrap_or_default();
    CLAIMS
        .iter()
        .find(|c| c.quantity == quantity && canon(c.alpha) == a && canon(c.beta) == b)
}

fn claim_row(claim: &Claim, measured: &PrecisionReal) -> Value {
    json!({
        "quantity": claim.quantity,
        "published": claim.text,
        "measured": measured,
        "difference": measured.value() - claim.value,
    })
}

fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32
}

fn envelope(sub: &str, inputs: Value, outputs: Value, warnings: &[String], digits: u32) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "subcommand": sub,
        "inputs": inputs,
        "outputs": outputs,
        "diagnostics": { "warnings": warnings, "precision_digits": digits },
    })
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn json(&mut self, v: &Value) {
        let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(v).expect("serializable"));
    }

    fn line(&mut self, v: &Value) {
        let _ = writeln!(self.out, "{}", serde_json::to_string(v).expect("serializable"));
    }

    fn note(&mut self, msg: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", msg.as_ref());
    }

    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        code
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parse a real literal: decimal, `p/q`, or `sqrt(q)`.
pub fn parse_real_literal(text: &str, bits: u32) -> Option<PrecisionReal> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|s| s.strip_suffix(')')) {
        let q = parse_rational(inner)?;
        return PrecisionReal::from_rational(&q, bits + 8).sqrt().ok();
    }
    parse_rational(t).map(|q| PrecisionReal::from_rational(&q, bits))
}

/// Run the CLI with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io.out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(io.err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let started = Instant::now();
    let name = command_name(&cli.command);
    let code = dispatch(&cli, &mut io);
    io.note(format!("{name}: {:.1} ms", started.elapsed().as_secs_f64() * 1e3));
    code
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Solve { .. } => "solve",
        Command::Reconstruct { .. } => "reconstruct",
        Command::Growth { .. } => "growth",
        Command::Primes { .. } => "primes",
        Command::Plotdata { .. } => "plotdata",
        Command::SearchNull { .. } => "search-null",
    }
}

fn parse_pair(p: &PairArgs, io: &mut Io<'_>) -> Result<CriticalPair, i32> {
    CriticalPair::parse(&p.alpha, &p.beta).map_err(|e| io.fail(EXIT_USAGE, e))
}

fn root_options(cli: &Cli, scan: &ScanArgs) -> RootOptions {
    RootOptions {
        tol: cli.tol,
        digits: cli.precision,
        grid_step: scan.grid,
        delta: scan.delta,
        ..RootOptions::default()
    }
}

fn dispatch(cli: &Cli, io: &mut Io<'_>) -> i32 {
    match &cli.command {
        Command::Check { pair, depth } => cmd_check(cli, io, pair, *depth),
        Command::Solve { pair, scan } => cmd_solve(cli, io, pair, scan),
        Command::Reconstruct { pair, verify_len, max_bits, scan } => {
            cmd_reconstruct(cli, io, pair, *verify_len, *max_bits, scan)
        }
        Command::Growth { pair, mode, max_len, threshold } => cmd_growth(cli, io, pair, *mode, *max_len, *threshold),
        Command::Primes { max, format, max_bits } => cmd_primes(cli, io, *max, *format, *max_bits),
        Command::Plotdata { a, p, sign, x, len, samples, out } => {
            cmd_plotdata(cli, io, a, p, (*sign).into(), x.as_deref(), *len, *samples, out.as_ref())
        }
        Command::SearchNull { max_pre, max_per, limit, all } => cmd_search_null(cli, io, *max_pre, *max_per, *limit, *all),
    }
}

fn pair_inputs(pair: &CriticalPair) -> Value {
    json!({ "alpha": pair.alpha().to_string(), "beta": pair.beta().to_string() })
}

fn cmd_check(cli: &Cli, io: &mut Io<'_>, args: &PairArgs, depth: Option<usize>) -> i32 {
    let pair = match parse_pair(args, io) {
        Ok(p) => p,
        Err(c) => return c,
    };
    let report = match check_admissible(&pair, depth) {
        Ok(r) => r,
        Err(e) => return io.fail(EXIT_USAGE, e),
    };
    let mut inputs = pair_inputs(&pair);
    inputs["depth"] = json!(depth);
    io.json(&envelope("check", inputs, to_value(&report), &[], cli.precision));
    io.note(format!("{pair}: {:?}", report.verdict));
    match report.verdict {
        Verdict::Admissible => EXIT_OK,
        Verdict::NotAdmissible => EXIT_NOT_ADMISSIBLE,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn cmd_solve(cli: &Cli, io: &mut Io<'_>, args: &PairArgs, scan: &ScanArgs) -> i32 {
    let pair = match parse_pair(args, io) {
        Ok(p) => p,
        Err(c) => return c,
    };
    let opts = root_options(cli, scan);
    let root = match smallest_root_with(&pair, &opts) {
        Ok(r) => r,
        Err(e) => return io.fail(EXIT_FAILURE, e),
    };
    let mut outputs = json!({ "root": root });
    let warnings = root.warnings.clone();
    let mut code = EXIT_OK;
    if let Some(r) = &root.r {
        let bits = bits_for_digits(cli.precision);
        let a = r.recip().expect("r > 0");
        match project_to_bits(pair.alpha(), r, bits) {
            Ok(p) => {
                let comparisons: Vec<Value> = [("a", &a), ("p", &p)]
                    .iter()
                    .filter_map(|(q, v)| claims_for(&pair, q).map(|c| claim_row(c, v)))
                    .collect();
                io.note(format!("r = {}  a = {}  p = {}", r.to_decimal_string(15), a.to_decimal_string(15), p.to_decimal_string(15)));
                outputs["r"] = to_value(r);
                outputs["a"] = to_value(&a);
                outputs["p"] = to_value(&p);
                outputs["published_comparison"] = json!(comparisons);
            }
            Err(e) => return io.fail(EXIT_FAILURE, e),
        }
    } else {
        io.note(format!("no root found below {}", root.scan_ceiling));
        code = EXIT_FAILURE;
    }
    let mut inputs = pair_inputs(&pair);
    inputs["tol"] = json!(cli.tol);
    inputs["grid"] = json!(scan.grid);
    inputs["delta"] = json!(scan.delta);
    io.json(&envelope("solve", inputs, outputs, &warnings, cli.precision));
    code
}

fn cmd_reconstruct(cli: &Cli, io: &mut Io<'_>, args: &PairArgs, verify_len: usize, max_bits: u32, scan: &ScanArgs) -> i32 {
    let pair = match parse_pair(args, io) {
        Ok(p) => p,
        Err(c) => return c,
    };
    let opts = ReconstructOptions {
        root: root_options(cli, scan),
        verify_len,
        max_bits,
    };
    let report = match dynamics::reconstruct(&pair, &opts) {
        Ok(r) => r,
        Err(e) => return io.fail(EXIT_FAILURE, e),
    };
    let mut outputs = to_value(&report);
    let comparisons: Vec<Value> = [("a", &report.a), ("p", &report.p)]
        .iter()
        .filter_map(|(q, v)| claims_for(&pair, q).map(|c| claim_row(c, v)))
        .collect();
    outputs["published_comparison"] = json!(comparisons);
    let mut inputs = pair_inputs(&pair);
    inputs["verify_len"] = json!(verify_len);
    inputs["tol"] = json!(cli.tol);
    io.note(format!(
        "a = {}  p = {}  verdict {:?} to depth {}",
        report.a.to_decimal_string(15),
        report.p.to_decimal_string(15),
        report.verdict,
        report.verified_depth
    ));
    io.json(&envelope("reconstruct", inputs, outputs, &report.warnings, cli.precision));
    match report.verdict {
        RoundTripVerdict::Verified => EXIT_OK,
        RoundTripVerdict::Mismatch { .. } => EXIT_MISMATCH,
        RoundTripVerdict::Inconclusive { .. } => EXIT_UNKNOWN,
    }
}

fn cmd_growth(cli: &Cli, io: &mut Io<'_>, args: &PairArgs, mode: Option<Mode>, max_len: Option<usize>, threshold: f64) -> i32 {
    let pair = match parse_pair(args, io) {
        Ok(p) => p,
        Err(c) => return c,
    };
    let mode = mode.unwrap_or(if pair.is_periodic() { Mode::Exact } else { Mode::Estimate });
    let report = match mode {
        Mode::Exact => classify_growth_with(&pair, max_len.unwrap_or(DEFAULT_COUNT_LEN)),
        Mode::Estimate => estimate_growth_with(&pair, max_len.unwrap_or(20), threshold),
    };
    let report = match report {
        Ok(r) => r,
        Err(e @ (GrowthError::NotPeriodic | GrowthError::FirstSymbols)) => return io.fail(EXIT_USAGE, e),
        Err(e) => return io.fail(EXIT_FAILURE, e),
    };
    let mut outputs = to_value(&report);
    let mut comparison = json!({ "measured_rate": report.rate });
    let root = smallest_root_with(
        &pair,
        &RootOptions {
            tol: cli.tol,
            digits: cli.precision,
            ..RootOptions::default()
        },
    );
    if let Ok(root) = root {
        if let (RootStatus::Root, Some(r)) = (root.status, &root.r) {
            let ln_inv = -r.value().ln();
            comparison["ln_inverse_r"] = json!(ln_inv);
            comparison["rate_minus_ln_inverse_r"] = json!(report.rate.value() - ln_inv);
        }
    }
    if let Some(c) = claims_for(&pair, "growth_rate") {
        comparison["published_rate"] = json!(c.text);
        io.note(format!(
            "measured rate {:.10} vs ln(1/r) {} vs published {}",
            report.rate.value(),
            comparison.get("ln_inverse_r").map_or("n/a".to_string(), |v| format!("{:.10}", v.as_f64().unwrap_or(f64::NAN))),
            c.text
        ));
    }
    outputs["comparison"] = comparison;
    let mut inputs = pair_inputs(&pair);
    inputs["mode"] = json!(format!("{mode:?}").to_lowercase());
    inputs["max_len"] = json!(report.counts.len() - 1);
    io.note(format!("{pair}: {:?}, rate {:.10}", report.classification, report.rate.value()));
    io.json(&envelope("growth", inputs, outputs, &[], cli.precision));
    EXIT_OK
}

/// Trial division, independent of the stream's sieve.
fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn cmd_primes(cli: &Cli, io: &mut Io<'_>, max: usize, format: Format, max_bits: u32) -> i32 {
    if max < 2 {
        return io.fail(EXIT_USAGE, "--max must be at least 2");
    }
    let table = match dynamics::primality_indicator_with(max, max_bits) {
        Ok(t) => t,
        Err(e @ dynamics::DynamicsError::PrecisionCeiling { .. }) => return io.fail(EXIT_FAILURE, e),
        Err(e) => return io.fail(EXIT_FAILURE, e),
    };
    let disagreements: Vec<usize> = table
        .rows
        .iter()
        .filter(|r| r.indicator != is_prime(r.n))
        .map(|r| r.n)
        .collect();
    match format {
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| json!({ "n": r.n, "indicator": r.indicator, "sieve": is_prime(r.n), "iterate": r.iterate }))
                .collect();
            let outputs = json!({
                "a": table.a,
                "p": table.p,
                "precision_bits": table.precision_bits,
                "rows": rows,
                "disagreements": disagreements,
            });
            io.json(&envelope("primes", json!({ "max": max }), outputs, &[], cli.precision));
        }
        Format::Csv => {
            let _ = writeln!(io.out, "n,indicator,sieve,iterate,error_bound,precision_bits");
            for r in &table.rows {
                let _ = writeln!(
                    io.out,
                    "{},{},{},{},{:e},{}",
                    r.n,
                    r.indicator,
                    is_prime(r.n),
                    r.iterate.to_decimal_string(20),
                    r.iterate.error_bound(),
                    table.precision_bits
                );
            }
        }
    }
    io.note(format!(
        "{} rows at {} bits, {} disagreements with trial division",
        table.rows.len(),
        table.precision_bits,
        disagreements.len()
    ));
    if disagreements.is_empty() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_plotdata(
    cli: &Cli,
    io: &mut Io<'_>,
    a: &str,
    p: &str,
    sign: Sign,
    x: Option<&str>,
    len: usize,
    samples: usize,
    out: Option<&PathBuf>,
) -> i32 {
    let bits = bits_for_digits(cli.precision);
    let (Some(a_r), Some(p_r)) = (parse_real_literal(a, bits), parse_real_literal(p, bits)) else {
        return io.fail(EXIT_USAGE, "cannot parse --a or --p");
    };
    let params = match OverlapParams::new(a_r, p_r, sign) {
        Ok(v) => v,
        Err(e) => return io.fail(EXIT_USAGE, e),
    };
    let x0 = match x {
        None => params.p.clone(),
        Some(t) if t.trim() == p.trim() => params.p.clone(),
        Some(t) => match parse_real_literal(t, bits) {
            Some(v) => v,
            None => return io.fail(EXIT_USAGE, "cannot parse --x"),
        },
    };
    let mut csv = String::from("block,x,y,branch\n");
    let (af, pf) = (params.a.value(), params.p.value());
    let samples = samples.max(1);
    for i in 0..=samples {
        let xv = i as f64 / samples as f64;
        let left = match sign {
            Sign::Minus => xv <= pf,
            Sign::Plus => xv < pf,
        };
        let (y, b) = if left { (af * xv, 0) } else { (af * xv + 1.0 - af, 1) };
        csv.push_str(&format!("graph,{xv},{y},{b}\n"));
    }
    let pts = match orbit(&params, &x0, len) {
        Ok(o) => o,
        Err(e) => return io.fail(EXIT_FAILURE, e),
    };
    for w in pts.windows(2) {
        let b = params.branch(&w[0]).unwrap_or(params.tie_symbol());
        csv.push_str(&format!("orbit,{},{},{b}\n", w[0].value(), w[1].value()));
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &csv) {
                return io.fail(EXIT_FAILURE, format!("{}: {e}", path.display()));
            }
            io.note(format!("wrote {}", path.display()));
        }
        None => {
            let _ = write!(io.out, "{csv}");
        }
    }
    EXIT_OK
}

fn binary_strings(max_len: usize, min_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for len in min_len..=max_len {
        for code in 0u32..(1 << len) {
            out.push((0..len).map(|i| ((code >> (len - 1 - i)) & 1) as u8).collect());
        }
    }
    out
}

/// Canonical words `pre(per)` within the bounds starting with `head`.
fn words_with_head(head: [u8; 2], max_pre: usize, max_per: usize) -> BTreeSet<EPWord> {
    let mut set = BTreeSet::new();
    for pre in binary_strings(max_pre, 0) {
        for per in binary_strings(max_per, 1) {
            if let Ok(w) = EPWord::new(pre.clone(), per) {
                if w.symbol(0) == head[0] && w.symbol(1) == head[1] {
                    set.insert(w);
                }
            }
        }
    }
    set
}

fn cmd_search_null(cli: &Cli, io: &mut Io<'_>, max_pre: usize, max_per: usize, limit: Option<usize>, all: bool) -> i32 {
    if max_pre > 8 || max_per > 8 {
        return io.fail(EXIT_USAGE, "--max-pre and --max-per are limited to 8");
    }
    let alphas = words_with_head([0, 1], max_pre, max_per);
    let betas = words_with_head([1, 0], max_pre, max_per);
    let (mut enumerated, mut admissible, mut null_count, mut nonnull, mut failed) = (0usize, 0usize, 0usize, 0usize, 0usize);
    'outer: for a in &alphas {
        for b in &betas {
            if limit.is_some_and(|l| enumerated >= l) {
                break 'outer;
            }
            enumerated += 1;
            let pair = CriticalPair::new(Word::Periodic(a.clone()), Word::Periodic(b.clone())).expect("distinct heads");
            match check_admissible(&pair, None) {
                Ok(r) if r.verdict == Verdict::Admissible => {}
                _ => continue,
            }
            admissible += 1;
            let report = match classify_growth_with(&pair, 16) {
                Ok(r) => r,
                Err(_) => {
                    failed += 1;
                    continue;
                }
            };
            let is_null = report.classification == Classification::Null;
            if is_null {
                null_count += 1;
            } else {
                nonnull += 1;
            }
            if is_null || all {
                io.line(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "finding": if is_null { "null" } else { "non_null" },
                    "alpha": a.to_string(),
                    "beta": b.to_string(),
                    "rate": report.rate,
                    "states": report.automaton_states,
                }));
            }
        }
    }
    io.line(&json!({
        "schema_version": SCHEMA_VERSION,
        "summary": {
            "max_pre": max_pre,
            "max_per": max_per,
            "limit": limit,
            "enumerated": enumerated,
            "admissible": admissible,
            "null": null_count,
            "non_null": nonnull,
            "failed": failed,
            "precision_digits": cli.precision,
        }
    }));
    io.note(format!("{enumerated} pairs, {admissible} admissible, {null_count} null"));
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["kneading"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn parsed(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn check_exit_codes() {
        let (c, out, _) = call(&["check", "01(10)", "10(01)"]);
        assert_eq!(c, 0);
        assert_eq!(parsed(&out)["schema_version"], 1);
        assert_eq!(call(&["check", "01(0)", "1(0)"]).0, 3);
        assert_eq!(call(&["check", "0(1)", "2(0)"]).0, 1);
        assert_eq!(call(&["bogus"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn solve_full_shift() {
        let (c, out, _) = call(&["solve", "0(1)", "1(0)"]);
        assert_eq!(c, 0);
        let v = parsed(&out);
        assert_eq!(v["outputs"]["a"]["value"], "2");
        assert_eq!(v["outputs"]["p"]["value"], "0.5");
    }

    #[test]
    fn solve_without_root_exits_2() {
        // α = 0(1), β = (1): G = −1 everywhere
        let (c, _, _) = call(&["solve", "0(1)", "(1)"]);
        assert_eq!(c, 2);
    }

    #[test]
    fn determinism() {
        let a = call(&["growth", "0(10)", "1(0)", "--max-len", "12"]).1;
        let b = call(&["growth", "0(10)", "1(0)", "--max-len", "12"]).1;
        assert_eq!(a, b);
    }

    #[test]
    fn real_literals() {
        let s = parse_real_literal("sqrt(2)", 128).unwrap();
        assert!((s.value() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(parse_real_literal("3/4", 64).unwrap().value(), 0.75);
        assert!(parse_real_literal("sqrt(x)", 64).is_none());
    }

    #[test]
    fn plot_header_and_points() {
        let (c, out, _) = call(&["plotdata", "--a", "2", "--p", "0.5", "--len", "3"]);
        assert_eq!(c, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "block,x,y,branch");
        assert!(lines.contains(&"graph,0,0,0"));
        assert!(lines.contains(&"graph,0.5,1,0"));
        assert!(lines.contains(&"graph,0.75,0.5,1"));
        assert_eq!(lines.iter().filter(|l| l.starts_with("orbit")).count(), 3);
    }

    #[test]
    fn trial_division() {
        let primes: Vec<usize> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
