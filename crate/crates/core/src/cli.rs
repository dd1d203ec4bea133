//! The `spiderlab` command line.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (not antimagic,
//! infeasible, disagreement), 2 on usage, input or validation errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::export::{labeling_to_json, parse_labeling, to_dot};
use crate::forest::{generate_forest, parse_forest, validate_for_scheme, GeneratorParams, Scheme, SpiderForest};
use crate::interval::Interval;
use crate::oracle::{brute_force_with, cross_check, min_k, OracleConfig, DEFAULT_EDGE_BUDGET, HARD_EDGE_CAP};
use crate::scheme_a::{compute_params_a, label_scheme_a};
use crate::scheme_b::{compute_params_b, label_scheme_b_any, layout_b};
use crate::scheme_c::{compute_params_c, construct_scheme_c, Swap};
use crate::sums::{check_antimagic, Labeling};

/// Overrides the oracle's hard edge cap.
pub const MAX_EDGES_ENV: &str = "SPIDERLAB_MAX_EDGES";

#[derive(Debug, Parser)]
#[command(name = "spiderlab", version, about = "k-shifted antimagic labelings of spider forests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Label a forest with one of the three constructions.
    Label(LabelArgs),
    /// Check a labeling document against a forest.
    Verify(VerifyArgs),
    /// Decide feasibility at one shift by exhaustive search.
    Oracle(OracleArgs),
    /// Feasibility table over a range of shifts.
    MinK(MinKArgs),
    /// Print the block sizes and intervals a construction would use.
    Params(ParamsArgs),
    /// Generate a random forest.
    Gen(GenArgs),
    /// Run a construction and the oracle on the same instance.
    CrossCheck(CrossCheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeChoice {
    /// A if the forest has no 1-legs and k >= 0, else C if every leg has
    /// length 1 or even length and k >= 0, else B (k >= k0 or k <= -(m+k0+1)).
    /// A and C cover every k >= 0; B needs the threshold.
    Auto,
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FixedScheme {
    A,
    B,
    C,
}

impl From<FixedScheme> for Scheme {
    fn from(s: FixedScheme) -> Scheme {
        match s {
            FixedScheme::A => Scheme::A,
            FixedScheme::B => Scheme::B,
            FixedScheme::C => Scheme::C,
        }
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Forest file, text (`spider 2 2 2` per line) or JSON.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct LabelArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, value_enum, default_value_t = SchemeChoice::Auto)]
    scheme: SchemeChoice,
    /// Write the labeling here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a Graphviz rendering.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    labeling: PathBuf,
}

#[derive(Debug, Args)]
struct OracleOpts {
    /// Refuse forests with more edges than this.
    #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
    max_edges: usize,
    /// Search the first edge's labels in parallel; the witness is then any solution.
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[command(flatten)]
    opts: OracleOpts,
}

#[derive(Debug, Args)]
struct MinKArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    from: i64,
    #[arg(long, allow_negative_numbers = true)]
    to: i64,
    #[command(flatten)]
    opts: OracleOpts,
}

#[derive(Debug, Args)]
struct ParamsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, value_enum)]
    scheme: FixedScheme,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    /// Spider count range, `A..B` (inclusive) or a single number.
    #[arg(long, value_parser = parse_range)]
    spiders: RangeInclusive<usize>,
    /// Legs per spider, `C..D` (inclusive) or a single number.
    #[arg(long, value_parser = parse_range)]
    legs: RangeInclusive<usize>,
    /// Comma-separated leg lengths to draw from; repeats weight the draw.
    #[arg(long, value_delimiter = ',', required = true)]
    lengths: Vec<usize>,
    /// Keep only lengths 1 and even lengths, and fail unless the result
    /// satisfies scheme C.
    #[arg(long)]
    scheme_c_only: bool,
    /// Emit JSON instead of the text format.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CrossCheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, value_enum)]
    scheme: FixedScheme,
    #[command(flatten)]
    opts: OracleOpts,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

/// Parses `args` (program name first) and runs the command, writing to the
/// process's stdout and stderr.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (io::stdout(), io::stderr());
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let _ = out.write_all(report.stdout.as_bytes());
            let _ = err.write_all(report.stderr.as_bytes());
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[derive(Default)]
struct Report {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Report {
    fn new(stdout: String, ok: bool) -> Self {
        Report { stdout, stderr: String::new(), code: if ok { 0 } else { 1 } }
    }
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Label(a) => label(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
        Command::MinK(a) => table(a),
        Command::Params(a) => params(a),
        Command::Gen(a) => gen(a),
        Command::CrossCheck(a) => check(a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(input: &InputArgs) -> Result<SpiderForest> {
    parse_forest(&read(&input.input)?)
}

fn oracle_config(opts: &OracleOpts) -> Result<OracleConfig> {
    let hard_cap = match std::env::var(MAX_EDGES_ENV) {
        Ok(v) => v.trim().parse().map_err(|e| Error::Io(format!("{MAX_EDGES_ENV}={v:?}: {e}")))?,
        Err(_) => HARD_EDGE_CAP,
    };
    Ok(OracleConfig { budget: opts.max_edges, hard_cap, pruning: true, parallel: opts.parallel })
}

/// Runs the chosen construction; returns the scheme used and any repair swaps.
fn construct(forest: &SpiderForest, k: i64, choice: SchemeChoice) -> Result<(Scheme, Labeling, Vec<Swap>)> {
    let fits = |s: Scheme| k >= 0 && validate_for_scheme(forest, s).is_valid();
    let scheme = match choice {
        SchemeChoice::A => Scheme::A,
        SchemeChoice::B => Scheme::B,
        SchemeChoice::C => Scheme::C,
        SchemeChoice::Auto if fits(Scheme::A) => Scheme::A,
        SchemeChoice::Auto if fits(Scheme::C) => Scheme::C,
        SchemeChoice::Auto => Scheme::B,
    };
    match scheme {
        Scheme::A => Ok((scheme, label_scheme_a(forest, k)?, Vec::new())),
        Scheme::B => match label_scheme_b_any(forest, k) {
            Err(Error::BelowThreshold { .. }) if choice == SchemeChoice::Auto => Err(Error::NoScheme { k }),
            r => Ok((scheme, r?, Vec::new())),
        },
        Scheme::C => {
            let out = construct_scheme_c(forest, k)?;
            Ok((scheme, out.labeling, out.switch_log.swaps))
        }
    }
}

fn label(a: LabelArgs) -> Result<Report> {
    let forest = load(&a.input)?;
    let (scheme, labeling, swaps) = construct(&forest, a.k, a.scheme)?;
    let json = labeling_to_json(&forest, &labeling, &swaps) + "\n";
    let mut report = Report::default();
    writeln!(report.stderr, "scheme {scheme}").unwrap();
    match &a.out {
        Some(path) => write(path, &json)?,
        None => report.stdout = json,
    }
    if let Some(path) = &a.dot {
        write(path, &to_dot(&forest, &labeling)?)?;
    }
    Ok(report)
}

fn verify(a: VerifyArgs) -> Result<Report> {
    let forest = load(&a.input)?;
    let (labeling, _) = parse_labeling(&forest, &read(&a.labeling)?)?;
    let v = check_antimagic(&forest, &labeling);
    let text = format!(
        "{v}\nrange {}\nbijection {}\ndistinct sums {}\n",
        yes(v.range_ok),
        yes(v.bijection_ok),
        yes(v.sums_distinct)
    );
    Ok(Report::new(text, v.is_antimagic()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "failed"
    }
}

fn oracle(a: OracleArgs) -> Result<Report> {
    let forest = load(&a.input)?;
    let r = brute_force_with(&forest, a.k, &oracle_config(&a.opts)?)?;
    let mut text = String::new();
    writeln!(text, "{}", if r.feasible { "feasible" } else { "infeasible" }).unwrap();
    writeln!(text, "k={} nodes={} bijections={}", r.k, r.nodes, r.bijections).unwrap();
    if let Some(w) = &r.witness {
        text.push_str(&labeling_to_json(&forest, w, &[]));
        text.push('\n');
    }
    Ok(Report::new(text, r.feasible))
}

fn table(a: MinKArgs) -> Result<Report> {
    let forest = load(&a.input)?;
    let map = min_k(&forest, a.from, a.to, &oracle_config(&a.opts)?)?;
    let mut text = String::new();
    for (k, feasible) in &map.entries {
        writeln!(text, "{k}\t{}", if *feasible { "feasible" } else { "infeasible" }).unwrap();
    }
    match map.min_feasible() {
        Some(k) => writeln!(text, "min feasible k = {k}").unwrap(),
        None => writeln!(text, "no feasible k in range").unwrap(),
    }
    Ok(Report::new(text, true))
}

fn intervals(text: &mut String, ivs: &[Interval]) {
    for (i, iv) in ivs.iter().enumerate() {
        writeln!(text, "I{}={iv}", i + 1).unwrap();
    }
}

fn params(a: ParamsArgs) -> Result<Report> {
    let forest = load(&a.input)?;
    let mut text = String::new();
    writeln!(text, "m={} k={}", forest.edge_count(), a.k).unwrap();
    match a.scheme {
        FixedScheme::A => {
            let p = compute_params_a(&forest, a.k)?;
            writeln!(text, "a={} b={} c1={} c2={} n1={}", p.a, p.b, p.c1, p.c2, p.n1).unwrap();
            writeln!(text, "t'={}", p.t_odd).unwrap();
            intervals(&mut text, &p.intervals);
        }
        FixedScheme::B => {
            let l = layout_b(&forest)?;
            writeln!(text, "a={} b={} c1={} c2={} n1={} q={}", l.a, l.b, l.c1, l.c2, l.n1, l.q).unwrap();
            writeln!(text, "alpha={} beta={} gamma={} t'={} k0={}", l.alpha, l.beta, l.gamma, l.t_odd, l.k0).unwrap();
            match compute_params_b(&forest, a.k) {
                Ok(p) => intervals(&mut text, &p.intervals),
                Err(Error::BelowThreshold { k0, .. }) => {
                    writeln!(text, "k is below k0 = {k0}; intervals undefined").unwrap()
                }
                Err(e) => return Err(e),
            }
        }
        FixedScheme::C => {
            let p = compute_params_c(&forest, a.k)?;
            writeln!(text, "s={} t1={} t2={} t3={} m'={}", p.s, p.t1, p.t2, p.t3, p.m_prime).unwrap();
            intervals(&mut text, &p.intervals);
        }
    }
    Ok(Report::new(text, true))
}

fn gen(a: GenArgs) -> Result<Report> {
    let mut lengths = a.lengths;
    if a.scheme_c_only {
        lengths.retain(|&l| l == 1 || l % 2 == 0);
    }
    let forest = generate_forest(a.seed, &GeneratorParams { spiders: a.spiders, legs: a.legs, lengths })?;
    if a.scheme_c_only {
        validate_for_scheme(&forest, Scheme::C).into_result()?;
    }
    let text = if a.json { forest.to_json() + "\n" } else { forest.to_text() };
    Ok(Report::new(text, true))
}

fn check(a: CrossCheckArgs) -> Result<Report> {
    let forest = load(&a.input)?;
    let c = cross_check(&forest, a.k, a.scheme.into(), &oracle_config(&a.opts)?)?;
    let text = format!(
        "scheme {} k={}: construction {}; oracle {}\n{}\n",
        c.scheme,
        c.k,
        c.verdict,
        if c.oracle.feasible { "feasible" } else { "infeasible" },
        if c.agree() { "agree" } else { "disagree" }
    );
    Ok(Report::new(text, c.agree()))
}
