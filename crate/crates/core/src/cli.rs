//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 input-file error, 3 conjecture violation or
//! failed verification. Numbers are printed with 17 significant digits.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::attack::{
    failure_probability, failure_probability_leading, normalized_error_rate_small_alpha, AttackGeometry, ErrorModel,
    PcConvention,
};
use crate::catalog::{conjecture_scan, SCAN_ALPHAS, SCAN_MAX_N};
use crate::error::Error;
use crate::gf2::{hamming_code, CodeSpec};
use crate::info::{analyze, InfoReport};
use crate::oracle::{compare, dense_properties};
use crate::parity::dense_density_matrix;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_FAILED: u8 = 3;

/// Largest Hamming parameter accepted by the `hamming:<r>` shorthand.
pub const CLI_MAX_HAMMING_R: usize = 4;

/// `n · p_e^(N)` above this triggers a reliability warning.
pub const RELIABILITY_WARN: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(name = "collective-qkd", version, about = "Eavesdropper information under collective attacks on B92")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block spectrum, exact information and closed-form sum for one code
    Analyze(AnalyzeArgs),
    /// Information and reliability over a range of probe angles (CSV)
    Sweep(SweepArgs),
    /// Check I_total <= I_sum over all short codes up to symmetry (CSV)
    Conjecture(ConjectureArgs),
    /// Compare the fast path with dense brute-force oracles
    Verify(VerifyArgs),
    /// Sifted error rate and failure probability of single-error correction
    Reliability(ReliabilityArgs),
}

#[derive(Debug, Args)]
pub struct CodeArg {
    /// Code file, or `hamming:<r>` for r in 2..=4
    #[arg(long)]
    pub code: String,
}

#[derive(Debug, Args)]
pub struct AngleArgs {
    /// Angles are given in degrees instead of radians
    #[arg(long)]
    pub degrees: bool,
    /// Convention for the conclusive-correct probability
    #[arg(long, default_value = "squared")]
    pub pc_convention: PcConvention,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub code: CodeArg,
    /// Eve's probe angle
    #[arg(long, conflicts_with_all = ["theta", "error_rate"], required_unless_present = "theta")]
    pub alpha: Option<f64>,
    /// Alice's state angle; requires --error-rate
    #[arg(long, requires = "error_rate")]
    pub theta: Option<f64>,
    /// Raw error rate p_e induced by the attack
    #[arg(long, requires = "theta")]
    pub error_rate: Option<f64>,
    #[command(flatten)]
    pub angles: AngleArgs,
    /// Write the summary row as CSV
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub code: CodeArg,
    #[arg(long)]
    pub alpha_from: f64,
    #[arg(long)]
    pub alpha_to: f64,
    /// Number of angles, endpoints included
    #[arg(long)]
    pub steps: usize,
    /// Space the angles geometrically
    #[arg(long)]
    pub log: bool,
    /// Alice's state angle used for the error columns (default 22.5 degrees)
    #[arg(long)]
    pub theta: Option<f64>,
    #[command(flatten)]
    pub angles: AngleArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    /// Largest string length to enumerate
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArg,
    #[arg(long)]
    pub alpha: f64,
    /// With --error-rate, also report the sifted error rate under every convention
    #[arg(long, requires = "error_rate")]
    pub theta: Option<f64>,
    #[arg(long, requires = "theta")]
    pub error_rate: Option<f64>,
    #[command(flatten)]
    pub angles: AngleArgs,
}

#[derive(Debug, Args)]
pub struct ReliabilityArgs {
    #[command(flatten)]
    pub code: CodeArg,
    #[arg(long)]
    pub theta: f64,
    #[arg(long)]
    pub error_rate: f64,
    #[command(flatten)]
    pub angles: AngleArgs,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Self { code: EXIT_USAGE, msg: msg.to_string() }
    }

    fn input(msg: impl ToString) -> Self {
        Self { code: EXIT_INPUT, msg: msg.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Code(_) => Failure::input(e),
            _ => Failure::usage(e),
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    ExitCode::from(run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock()))
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&config.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    match command {
        Command::Analyze(a) => run_analyze(a, out),
        Command::Sweep(a) => run_sweep(a, out),
        Command::Conjecture(a) => run_conjecture(a, out, err),
        Command::Verify(a) => run_verify(a, out),
        Command::Reliability(a) => run_reliability(a, out, err),
    }
}

/// Resolve `hamming:<r>` or read a code file.
pub fn load_code(source: &str) -> Result<CodeSpec, String> {
    if let Some(r) = source.strip_prefix("hamming:") {
        let r: usize = r.parse().map_err(|_| format!("bad Hamming parameter `{r}`"))?;
        if !(2..=CLI_MAX_HAMMING_R).contains(&r) {
            return Err(format!("hamming:<r> needs r in 2..={CLI_MAX_HAMMING_R}, got {r}"));
        }
        return hamming_code(r).map_err(|e| e.to_string());
    }
    let text = std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?;
    CodeSpec::parse(&text).map_err(|e| format!("{source}: {e}"))
}

fn code_of(arg: &CodeArg) -> Result<CodeSpec, Failure> {
    let is_shorthand = arg.code.starts_with("hamming:");
    load_code(&arg.code).map_err(|m| if is_shorthand { Failure::usage(m) } else { Failure::input(m) })
}

fn radians(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

/// 17 significant digits, locale free.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Failure::usage),
    }
}

pub const SUMMARY_HEADER: &str = "code_id,n,r,alpha,I_total,I_sum,margin,verdict";

fn verdict_word(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "violated"
    }
}

/// Human-readable analysis report.
pub fn format_report(report: &InfoReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "code      {}", report.code_id);
    let _ = writeln!(s, "n         {}", report.n);
    let _ = writeln!(s, "r         {}", report.r);
    let _ = writeln!(s, "blocks    {}", report.per_block.len());
    let _ = writeln!(s, "alpha     {}", num(report.alpha));
    let _ = writeln!(s, "block representative a_j beta_j I_j");
    for (i, b) in report.per_block.iter().enumerate() {
        let _ = writeln!(s, "{i} {} {} {} {}", b.representative, num(b.weight), num(b.beta), num(b.info));
    }
    let _ = writeln!(s, "word distance I(distance)");
    for w in &report.per_word {
        let _ = writeln!(s, "{} {} {}", w.word, w.distance, num(w.info));
    }
    let _ = writeln!(s, "I_total   {}", num(report.i_total));
    let _ = writeln!(s, "I_sum     {}", num(report.i_sum));
    let _ = writeln!(s, "margin    {}", num(report.margin));
    let mut verdict = verdict_word(report.conjecture_holds).to_string();
    if report.conjecture_holds && report.margin == 0.0 {
        verdict.push_str(" (equality)");
    }
    if report.extrapolated {
        verdict.push_str(" (alpha beyond small-angle regime; I_sum extrapolated)");
    }
    let _ = writeln!(s, "verdict   {verdict}");
    s
}

pub fn summary_row(report: &InfoReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        report.code_id,
        report.n,
        report.r,
        num(report.alpha),
        num(report.i_total),
        num(report.i_sum),
        num(report.margin),
        verdict_word(report.conjecture_holds)
    )
}

fn run_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let code = code_of(&args.code)?;
    let deg = args.angles.degrees;
    let mut preamble = String::new();
    let alpha = match (args.alpha, args.theta, args.error_rate) {
        (Some(a), None, None) => radians(a, deg),
        (None, Some(t), Some(p)) => {
            let g = AttackGeometry::from_error(radians(t, deg), p).map_err(Failure::usage)?;
            let _ = writeln!(preamble, "theta     {}", num(g.theta()));
            let _ = writeln!(preamble, "theta'    {}", num(g.theta_prime()));
            let _ = writeln!(preamble, "p_e       {}", num(p));
            g.alpha()
        }
        _ => return Err(Failure::usage("give either --alpha or both --theta and --error-rate")),
    };
    let report = analyze(&code, alpha)?;
    let text = format!("{preamble}{}", format_report(&report));
    out.write_all(text.as_bytes()).map_err(Failure::usage)?;
    if let Some(path) = &args.out {
        emit(&format!("{SUMMARY_HEADER}\n{}\n", summary_row(&report)), Some(path), out)?;
    }
    Ok(EXIT_OK)
}

/// Angles for a sweep: `steps` points from `from` to `to`, linear or geometric.
pub fn sweep_alphas(from: f64, to: f64, steps: usize, log: bool) -> Result<Vec<f64>, String> {
    if steps == 0 || from.is_nan() || to.is_nan() || from > to || from < 0.0 {
        return Err(format!("empty sweep range [{from}, {to}] with {steps} steps"));
    }
    if log && from <= 0.0 {
        return Err("logarithmic sweep needs a positive start".into());
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            let t = i as f64 / last;
            if i == steps - 1 {
                to
            } else if log {
                from * (to / from).powf(t)
            } else {
                from + (to - from) * t
            }
        })
        .collect())
}

pub const SWEEP_HEADER: &str = "alpha,I_total,I_sum,p_e_norm,p_f";

fn run_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let code = code_of(&args.code)?;
    let deg = args.angles.degrees;
    let theta = args.theta.map_or(std::f64::consts::FRAC_PI_8, |t| radians(t, deg));
    let alphas = sweep_alphas(radians(args.alpha_from, deg), radians(args.alpha_to, deg), args.steps, args.log)
        .map_err(Failure::usage)?;
    let mut csv = format!("{SWEEP_HEADER}\n");
    for alpha in alphas {
        let report = analyze(&code, alpha)?;
        let (p_norm, p_f) = match AttackGeometry::from_alpha(theta, alpha) {
            Ok(g) => {
                let q = ErrorModel::new(&g, args.angles.pc_convention).p_e_norm;
                (num(q), num(failure_probability(code.n(), q)))
            }
            Err(_) => ("NaN".to_string(), "NaN".to_string()),
        };
        let _ = writeln!(csv, "{},{},{},{p_norm},{p_f}", num(alpha), num(report.i_total), num(report.i_sum));
    }
    emit(&csv, args.out.as_ref(), out)?;
    Ok(EXIT_OK)
}

fn run_conjecture(args: &ConjectureArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    if args.max_n == 0 || args.max_n > SCAN_MAX_N {
        return Err(Failure::usage(format!("--max-n must lie in 1..={SCAN_MAX_N}")));
    }
    let rows = conjecture_scan(args.max_n, &SCAN_ALPHAS);
    let mut csv = format!("{SUMMARY_HEADER}\n");
    let mut violations = 0;
    let mut equalities = 0;
    for row in &rows {
        let v = &row.verdict;
        violations += usize::from(!v.holds);
        equalities += usize::from(v.holds && !v.strict);
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            row.code_id,
            row.n,
            row.r,
            num(row.alpha),
            num(v.i_total),
            num(v.i_sum),
            num(v.margin),
            verdict_word(v.holds)
        );
    }
    emit(&csv, args.out.as_ref(), out)?;
    let _ = writeln!(err, "{} rows, {violations} violations, {equalities} equalities", rows.len());
    Ok(if violations == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let code = code_of(&args.code)?;
    let deg = args.angles.degrees;
    let alpha = radians(args.alpha, deg);
    let rep = compare(&code, alpha)?;
    let expected_rank = 1usize << (code.n() - code.r() - 1);
    let mut s = String::new();
    let _ = writeln!(s, "code                      {}", rep.code_id);
    let _ = writeln!(s, "alpha                     {}", num(rep.alpha));
    let _ = writeln!(s, "max_offblock_entry        {}", num(rep.max_offblock_entry));
    let _ = writeln!(s, "max_onblock_error         {}", num(rep.max_onblock_error));
    let _ = writeln!(s, "witness_failures          {}", rep.witness_failures);
    let _ = writeln!(s, "max_block_rank2_residual  {}", num(rep.max_block_rank2_residual));
    let _ = writeln!(s, "max_weight_delta          {}", num(rep.max_weight_delta()));
    let _ = writeln!(s, "max_beta_delta            {}", num(rep.max_beta_delta()));
    let _ = writeln!(s, "info_fast                 {}", num(rep.info_fast));
    let _ = writeln!(s, "info_oracle               {}", num(rep.info_oracle));
    let _ = writeln!(s, "info_delta                {}", num(rep.info_delta));
    let mut dense_ok = true;
    for key in [false, true] {
        let p = dense_properties(&dense_density_matrix(&code, key, alpha)?);
        let ok = (p.trace - 1.0).abs() <= 1e-12 && p.min_eigenvalue >= -1e-12 && p.rank == expected_rank;
        dense_ok &= ok;
        let k = key as u8;
        let _ = writeln!(s, "rho{k}_trace                {}", num(p.trace));
        let _ = writeln!(s, "rho{k}_min_eigenvalue       {}", num(p.min_eigenvalue));
        let _ = writeln!(s, "rho{k}_rank                 {} (expected {expected_rank})", p.rank);
    }
    if let (Some(t), Some(p_e)) = (args.theta, args.error_rate) {
        let g = AttackGeometry::from_error(radians(t, deg), p_e).map_err(Failure::usage)?;
        for conv in PcConvention::ALL {
            let _ = writeln!(s, "p_e_norm[{:<12}]        {}", conv.name(), num(ErrorModel::new(&g, conv).p_e_norm));
        }
        let _ =
            writeln!(s, "p_e_norm[small-alpha]     {}", num(normalized_error_rate_small_alpha(g.theta(), g.alpha())));
    }
    let pass = rep.passes() && dense_ok;
    let _ = writeln!(s, "result                    {}", if pass { "PASS" } else { "FAIL" });
    out.write_all(s.as_bytes()).map_err(Failure::usage)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAILED })
}

fn run_reliability(args: &ReliabilityArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let code = code_of(&args.code)?;
    let n = code.n();
    let g = AttackGeometry::from_error(radians(args.theta, args.angles.degrees), args.error_rate)
        .map_err(Failure::usage)?;
    let mut s = String::new();
    let _ = writeln!(s, "n                         {n}");
    let _ = writeln!(s, "theta                     {}", num(g.theta()));
    let _ = writeln!(s, "theta'                    {}", num(g.theta_prime()));
    let _ = writeln!(s, "alpha                     {}", num(g.alpha()));
    let _ = writeln!(s, "p_e                       {}", num(g.error_rate()));
    for conv in PcConvention::ALL {
        let _ = writeln!(s, "p_e_norm[{:<12}]        {}", conv.name(), num(ErrorModel::new(&g, conv).p_e_norm));
    }
    let _ = writeln!(s, "p_e_norm[small-alpha]     {}", num(normalized_error_rate_small_alpha(g.theta(), g.alpha())));
    let q = ErrorModel::new(&g, args.angles.pc_convention).p_e_norm;
    let _ = writeln!(s, "convention                {}", args.angles.pc_convention);
    let _ = writeln!(s, "p_f                       {}", num(failure_probability(n, q)));
    let _ = writeln!(s, "p_f_leading               {}", num(failure_probability_leading(n, q)));
    let load = n as f64 * q;
    let _ = writeln!(s, "n_p_e_norm                {}", num(load));
    out.write_all(s.as_bytes()).map_err(Failure::usage)?;
    if load > RELIABILITY_WARN {
        let _ =
            writeln!(err, "warning: n * p_e_norm = {load:.3} is not small; single-error correction is unreliable here");
    }
    Ok(EXIT_OK)
}
