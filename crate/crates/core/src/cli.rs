//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::genfun::{self, PowerSeries};
use crate::polyring::Polynomial;
use crate::sequences::{
    check_identity, Bounds, IdentityName, MedianVariant, SequenceCache, SequenceKind, Sequences,
    VerificationRecord, VerificationReport,
};
use crate::tilings::{self, TilingError, DEFAULT_CAP};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

/// Largest index any `verify` run will probe.
pub const MAX_VERIFY_INDEX: usize = 64;

pub const CAP_ENV: &str = "QFIB_CAP";

/// Identities checked here rather than in `sequences`, since they involve
/// tilings or series.
const EXTRA_IDENTITIES: [&str; 4] = ["tiling-count", "tile-count-lemma", "generating-function", "expansion-theorem"];

#[derive(Debug, Parser)]
#[command(name = "qfib", version, about = "q-biperiodic Fibonacci polynomials, identities and tilings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one term of a sequence.
    Seq(SeqArgs),
    /// Check an identity over a range of indices.
    Verify(VerifyArgs),
    /// Weight sum (or full list) of the tilings of an n-board.
    Tilings(TilingsArgs),
    /// Generating-function coefficients as a JSON array.
    Genfun(GenfunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "F")]
    F,
    #[value(name = "Fhat")]
    FHat,
    #[value(name = "D")]
    D,
    #[value(name = "Fshift")]
    FShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Method {
    #[default]
    Solve,
    Expansion,
    /// The expansion with `f(x)` factored out of the sum; differs from `solve` unless `a = b`.
    ExpansionStatement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Variant {
    #[default]
    Proof,
    Statement,
}

impl From<Variant> for MedianVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Proof => MedianVariant::Proof,
            Variant::Statement => MedianVariant::Statement,
        }
    }
}

/// Optional integer values for `a`, `b`, `q`; unset variables stay symbolic.
#[derive(Debug, Clone, Copy, Default, Args)]
pub struct Specialization {
    #[arg(long = "a", allow_negative_numbers = true)]
    pub a: Option<i64>,
    #[arg(long = "b", allow_negative_numbers = true)]
    pub b: Option<i64>,
    #[arg(long = "q", allow_negative_numbers = true)]
    pub q: Option<i64>,
}

impl Specialization {
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.specialize(self.a, self.b, self.q)
    }
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    /// Shift for `--kind Fshift`.
    #[arg(long)]
    pub s: Option<u32>,
    #[command(flatten)]
    pub spec: Specialization,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub identity: String,
    /// Probe every index from the identity's minimum up to this bound.
    #[arg(long, conflicts_with = "n")]
    pub max_n: Option<usize>,
    /// Probe a single index.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub max_k: usize,
    /// Exponent used by the median-square identity.
    #[arg(long, value_enum, default_value_t)]
    pub variant: Variant,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TilingsArgs {
    #[arg(long)]
    pub n: usize,
    /// Emit every tiling with its weight instead of the weight sum.
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub cap: Option<usize>,
    #[command(flatten)]
    pub spec: Specialization,
}

#[derive(Debug, Args)]
pub struct GenfunArgs {
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub order: u64,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
    #[command(flatten)]
    pub spec: Specialization,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: u8, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { stdout: String::new(), stderr, code }
    }
}

pub fn run_from_env() -> Outcome {
    run(std::env::args(), std::env::var(CAP_ENV).ok())
}

/// Parses `args` (program name first) and runs the command. `env_cap` is
/// the value of the cap environment variable, if set.
pub fn run<I, T>(args: I, env_cap: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code() as u8;
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::fail(EXIT_USAGE, text)
            };
        }
    };
    let env_cap = match env_cap.map(|v| v.trim().parse::<usize>().map_err(|_| v)) {
        None => None,
        Some(Ok(c)) => Some(c),
        Some(Err(v)) => return Outcome::fail(EXIT_USAGE, format!("invalid {CAP_ENV} value '{v}'")),
    };
    match cli.command {
        Command::Seq(args) => cmd_seq(&args),
        Command::Verify(args) => cmd_verify(&args, args.cap.or(env_cap).unwrap_or(DEFAULT_CAP)),
        Command::Tilings(args) => cmd_tilings(&args, args.cap.or(env_cap).unwrap_or(DEFAULT_CAP)),
        Command::Genfun(args) => cmd_genfun(&args),
    }
}

fn tiling_failure(e: TilingError) -> Outcome {
    let code = match e {
        TilingError::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    };
    Outcome::fail(code, e.to_string())
}

pub fn cmd_seq(args: &SeqArgs) -> Outcome {
    let kind = match (args.kind, args.s) {
        (Kind::F, None) => SequenceKind::F,
        (Kind::FHat, None) => SequenceKind::FHat,
        (Kind::D, None) => SequenceKind::D,
        (Kind::FShift, Some(s)) => SequenceKind::FShifted(s),
        (Kind::FShift, None) => return Outcome::fail(EXIT_USAGE, "--kind Fshift requires --s"),
        (_, Some(_)) => return Outcome::fail(EXIT_USAGE, "--s applies only to --kind Fshift"),
    };
    let value = args.spec.apply(SequenceCache::new(kind).get(args.n));
    let rendered = value.to_canonical_string();
    Outcome::ok(match args.format {
        Format::Text => format!("{rendered}\n"),
        Format::Json => format!("{}\n", serde_json::Value::String(rendered)),
    })
}

fn series_records(name: &str, lhs: &PowerSeries, rhs: &PowerSeries) -> VerificationReport {
    let order = lhs.order().min(rhs.order());
    VerificationReport {
        records: (0..=order)
            .map(|n| VerificationRecord::new(name, &[("n", n)], lhs.coeff(n), rhs.coeff(n)))
            .collect(),
    }
}

fn run_extra_identity(name: &str, min_n: usize, max_n: usize, cap: usize) -> Result<VerificationReport, Outcome> {
    let mut report = VerificationReport::default();
    match name {
        "tiling-count" => {
            let mut seqs = Sequences::new();
            for n in min_n..=max_n {
                let weight = tilings::total_weight(n, cap).map_err(tiling_failure)?;
                report.push(VerificationRecord::new(name, &[("n", n)], &weight, &seqs.f(n + 1)));
            }
        }
        "tile-count-lemma" => {
            // `n` bounds the board length n_tiles + k
            for board in min_n..=max_n {
                for k in 0..=board / 2 {
                    let n_tiles = board - k;
                    let counted = tilings::weight_by_tile_count(n_tiles, k, cap).map_err(tiling_failure)?;
                    let closed = tilings::tile_count_closed_form(n_tiles, k);
                    report.push(VerificationRecord::new(name, &[("n", n_tiles), ("k", k)], &counted, &closed));
                }
            }
        }
        "generating-function" => {
            let w = genfun::solve_w(max_n).map_err(|e| Outcome::fail(EXIT_USAGE, e.to_string()))?;
            let mut cache = SequenceCache::new(SequenceKind::F);
            cache.get(max_n);
            let rec = PowerSeries::from_coeffs(max_n, cache.values().to_vec());
            report = series_records(name, &w, &rec);
            report.records.retain(|r| r.indices["n"] as usize >= min_n);
        }
        "expansion-theorem" => {
            let fail = |e: genfun::GenfunError| Outcome::fail(EXIT_USAGE, e.to_string());
            let expansion = genfun::expansion_theorem_series(max_n).map_err(fail)?;
            let w = genfun::solve_w(max_n).map_err(fail)?;
            report = series_records(name, &expansion, &w);
            report.records.retain(|r| r.indices["n"] as usize >= min_n);
        }
        _ => unreachable!("caller checks the name"),
    }
    Ok(report)
}

fn extra_default_max(name: &str) -> usize {
    match name {
        "tiling-count" => 14,
        "tile-count-lemma" => 12,
        "generating-function" => 20,
        _ => 16,
    }
}

pub fn cmd_verify(args: &VerifyArgs, cap: usize) -> Outcome {
    let builtin = args.identity.parse::<IdentityName>().ok();
    let extra = EXTRA_IDENTITIES.contains(&args.identity.as_str());
    if builtin.is_none() && !extra {
        let names: Vec<&str> = IdentityName::ALL_NAMES.iter().chain(EXTRA_IDENTITIES.iter()).copied().collect();
        return Outcome::fail(
            EXIT_USAGE,
            format!("unknown identity '{}'; valid names: {}", args.identity, names.join(", ")),
        );
    }
    let default_max = builtin.map_or_else(|| extra_default_max(&args.identity), IdentityName::default_max_n);
    let (min_n, max_n) = match (args.n, args.max_n) {
        (Some(n), _) => (n, n),
        (None, max) => (0, max.unwrap_or(default_max)),
    };
    if max_n > MAX_VERIFY_INDEX || args.max_k > MAX_VERIFY_INDEX {
        return Outcome::fail(EXIT_CAP, format!("verification bounds exceed the index cap {MAX_VERIFY_INDEX}"));
    }
    let report = match builtin {
        Some(id) => {
            let bounds = Bounds { min_n, max_n, max_k: args.max_k, variant: args.variant.into() };
            check_identity(id, &bounds)
        }
        None => match run_extra_identity(&args.identity, min_n, max_n, cap) {
            Ok(r) => r,
            Err(outcome) => return outcome,
        },
    };
    let stdout = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_report_text(&args.identity, &report),
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED },
    }
}

fn render_report_text(identity: &str, report: &VerificationReport) -> String {
    let mut out = String::new();
    for r in &report.records {
        let status = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{} {} {status}", r.identity, r.indices_label());
    }
    let passed = report.records.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{identity}: {passed}/{} instances pass", report.records.len());
    if let Some(r) = report.first_failure() {
        let _ = writeln!(out, "first counterexample: {}", r.indices_label());
        let _ = writeln!(out, "  lhs: {}", r.lhs_canonical);
        let _ = writeln!(out, "  rhs: {}", r.rhs_canonical);
    }
    out
}

pub fn cmd_tilings(args: &TilingsArgs, cap: usize) -> Outcome {
    if args.list {
        let iter = match tilings::enumerate_tilings(args.n, cap) {
            Ok(it) => it,
            Err(e) => return tiling_failure(e),
        };
        let mut out = String::new();
        for t in iter {
            out.push_str(&t.stream_line());
            out.push('\n');
        }
        return Outcome::ok(out);
    }
    match tilings::total_weight(args.n, cap) {
        Ok(p) => Outcome::ok(format!("{}\n", args.spec.apply(&p))),
        Err(e) => tiling_failure(e),
    }
}

pub fn cmd_genfun(args: &GenfunArgs) -> Outcome {
    let order = args.order as usize;
    let series = match args.method {
        Method::Solve => genfun::solve_w(order),
        Method::Expansion => genfun::expansion_theorem_series(order),
        Method::ExpansionStatement => {
            genfun::expansion_theorem_series_with(order, genfun::ExpansionVariant::Statement)
        }
    };
    match series {
        Ok(s) => {
            let s = s.specialize(args.spec.a, args.spec.b, args.spec.q);
            Outcome::ok(format!("{}\n", s.to_json()))
        }
        Err(e) => Outcome::fail(EXIT_USAGE, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("qfib").chain(args.iter().copied()), None)
    }

    #[test]
    fn seq_outputs() {
        assert_eq!(run_args(&["seq", "--kind", "F", "--n", "5"]).stdout, "a^2*b^2 + a*b*q + a*b*q^2 + a*b*q^3 + q^4\n");
        assert_eq!(run_args(&["seq", "--kind", "F", "--n", "20", "--a", "1", "--b", "1", "--q", "1"]).stdout, "6765\n");
        assert_eq!(run_args(&["seq", "--kind", "Fhat", "--n", "0"]).stdout, "1\n");
        assert_eq!(run_args(&["seq", "--kind", "Fshift", "--s", "2", "--n", "2"]).stdout, "a\n");
        assert_eq!(run_args(&["seq", "--kind", "D", "--n", "4", "--format", "json"]).stdout, "\"1 + q + q^2\"\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["seq", "--kind", "F"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["seq", "--kind", "F", "--n", "x"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["seq", "--kind", "Fshift", "--n", "3"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["genfun", "--order", "0"]).code, EXIT_USAGE);
        let unknown = run_args(&["verify", "--identity", "nope"]);
        assert_eq!(unknown.code, EXIT_USAGE);
        assert!(unknown.stderr.contains("median-square"));
        assert!(unknown.stderr.contains("tiling-count"));
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(run_args(&["verify", "--identity", "closed-form", "--max-n", "10"]).code, EXIT_OK);
        let statement = run_args(&["verify", "--identity", "median-square", "--variant", "statement", "--n", "2"]);
        assert_eq!(statement.code, EXIT_VERIFY_FAILED);
        assert!(statement.stdout.contains("first counterexample: n=2"));
        assert_eq!(run_args(&["verify", "--identity", "cassini", "--max-n", "100"]).code, EXIT_CAP);
    }

    #[test]
    fn verify_extra_identities() {
        for id in EXTRA_IDENTITIES {
            let out = run_args(&["verify", "--identity", id, "--max-n", "6"]);
            assert_eq!(out.code, EXIT_OK, "{id}: {}", out.stdout);
        }
        let capped = run(["qfib", "verify", "--identity", "tiling-count", "--max-n", "12"], Some("10".into()));
        assert_eq!(capped.code, EXIT_CAP);
    }

    #[test]
    fn tilings_outputs_and_cap() {
        assert_eq!(run_args(&["tilings", "--n", "2", "--list"]).stdout, "SS\ta*b\nD\tq\n");
        assert_eq!(run_args(&["tilings", "--n", "0"]).stdout, "1\n");
        assert_eq!(run_args(&["tilings", "--n", "4", "--a", "1", "--b", "1", "--q", "1"]).stdout, "5\n");
        assert_eq!(run_args(&["tilings", "--n", "26"]).code, EXIT_CAP);
        assert_eq!(run(["qfib", "tilings", "--n", "8"], Some("7".into())).code, EXIT_CAP);
        assert_eq!(run(["qfib", "tilings", "--n", "8", "--cap", "9"], Some("7".into())).code, EXIT_OK);
        assert_eq!(run(["qfib", "tilings", "--n", "1"], Some("many".into())).code, EXIT_USAGE);
    }

    #[test]
    fn genfun_outputs() {
        assert_eq!(run_args(&["genfun", "--order", "3"]).stdout, "[\"0\",\"1\",\"a\",\"a*b + q\"]\n");
        let solve = run_args(&["genfun", "--order", "8", "--method", "solve"]);
        let expansion = run_args(&["genfun", "--order", "8", "--method", "expansion"]);
        assert_eq!(solve, expansion);
        let stated = run_args(&["genfun", "--order", "8", "--method", "expansion-statement"]);
        assert_ne!(solve.stdout, stated.stdout);
        let stated_diag = run_args(&["genfun", "--order", "8", "--method", "expansion-statement", "--a", "3", "--b", "3"]);
        let solve_diag = run_args(&["genfun", "--order", "8", "--a", "3", "--b", "3"]);
        assert_eq!(stated_diag, solve_diag);
    }
}
