//! `rsw`: decode single words and run failure / expected-catch sweeps.

mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rsw_core::decoder::{classical_decode, johnson_radius, reduced_decode, wu_decode, DecodeOutcome, DecodeResult};
use rsw_core::sim::{
    expected_catch, failure_sweep, write_csv, CatchCondition, CatchConfig, SweepConfig, CATCH_HEADER, SIM_HEADER,
};
use rsw_core::{Field, FieldElement, GrsCode, ReducedConfig, SnrConvention};

#[derive(Parser, Debug)]
#[command(name = "rsw", version, about = "Soft-decision Reed-Solomon list decoding toolkit")]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "RSW_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decode one received word read from a file (or `-` for stdin).
    Decode(DecodeArgs),
    /// Monte Carlo block-failure rates over an SNR grid.
    Sweep(SweepArgs),
    /// Empirical mean of the catch quantity against its bound, per L.
    Catch(CatchArgs),
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Primitive polynomial as an integer bit mask, e.g. 67 for x^6+x+1.
    #[arg(long)]
    modulus: Option<u32>,
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Extension degree m of GF(2^m).
    #[arg(long, default_value_t = 6)]
    field_m: u32,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 63)]
    n: usize,
    #[arg(long, default_value_t = 31)]
    k: usize,
    /// Decoding radius (default: the Johnson radius).
    #[arg(long)]
    tau: Option<usize>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Number of least reliable positions used by the reduced decoder.
    #[arg(long = "L", value_name = "L")]
    ls: Vec<usize>,
    /// Replace the computed τ_L.
    #[arg(long)]
    tau_l_override: Option<usize>,
    #[arg(long, default_value_t = 5.0)]
    snr_from: f64,
    #[arg(long, default_value_t = 6.0)]
    snr_to: f64,
    #[arg(long, default_value_t = 0.25)]
    snr_step: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Convention::EbN0)]
    snr_convention: Convention,
    /// CSV destination (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// Received-word file: "m n k", then n symbols, then optionally n reliabilities.
    input: PathBuf,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    tau: Option<usize>,
    /// Window size for the reduced decoder; the first value is used.
    #[arg(long = "L", value_name = "L")]
    ls: Vec<usize>,
    #[arg(long)]
    tau_l_override: Option<usize>,
    /// Decoder; `auto` picks `reduced` when reliabilities are given, else `wu`.
    #[arg(long, value_enum, default_value_t = DecoderKind::Auto)]
    decoder: DecoderKind,
    /// Write the codewords here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    run: RunArgs,
    /// Leave out the full hard-decision list decoder (the slowest column).
    #[arg(long)]
    skip_wu: bool,
}

#[derive(Args, Debug)]
struct CatchArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t = Condition::All)]
    condition: Condition,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderKind {
    Auto,
    Classical,
    Wu,
    Reduced,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Convention {
    /// σ² = 1/(2·R·SNR)
    #[value(name = "eb-n0")]
    EbN0,
    /// σ² = 1/(4·R·SNR)
    #[value(name = "half-eb-n0")]
    HalfEbN0,
}

impl From<Convention> for SnrConvention {
    fn from(c: Convention) -> SnrConvention {
        match c {
            Convention::EbN0 => SnrConvention::EbN0,
            Convention::HalfEbN0 => SnrConvention::HalfEbN0,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Condition {
    All,
    BeyondHalf,
}

impl From<Condition> for CatchCondition {
    fn from(c: Condition) -> CatchCondition {
        match c {
            Condition::All => CatchCondition::All,
            Condition::BeyondHalf => CatchCondition::BeyondHalf,
        }
    }
}

const DEFAULT_SWEEP_LS: [usize; 3] = [15, 25, 45];

fn build_code(m: u32, modulus: Option<u32>, n: usize, k: usize) -> anyhow::Result<GrsCode> {
    let field = Field::new(m, modulus)?;
    Ok(GrsCode::reed_solomon(field, n, k)?)
}

fn snr_grid(from: f64, to: f64, step: f64) -> anyhow::Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || to < from {
        bail!("SNR range {from}..{to} is empty or not finite");
    }
    if from == to {
        return Ok(vec![from]);
    }
    if step <= 0.0 {
        bail!("--snr-step must be positive");
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    // Round away accumulated binary error so CSV values print cleanly.
    Ok((0..count).map(|i| ((from + i as f64 * step) * 1e9).round() / 1e9).collect())
}

fn open_out(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn format_word(w: &[FieldElement]) -> String {
    w.iter().map(|e| e.value().to_string()).collect::<Vec<_>>().join(" ")
}

fn report(res: &DecodeResult) {
    let d = &res.diagnostics;
    eprintln!("stage: {:?}", d.stage);
    eprintln!("halt iteration: {}, deg H1: {}", d.halt_iteration, d.deg_h1);
    if let Some(t) = d.tau_l {
        eprintln!("tau_L: {t}");
    }
    if let Some(p) = &d.params {
        eprintln!("interpolation: s = {}, ell = {}, T = {}, weights ({}, {})", p.s, p.ell, p.t, p.w1, p.w2);
    }
    if !d.positions.is_empty() {
        eprintln!("positions: {:?}", d.positions);
    }
    eprintln!("candidates: {}", d.candidates);
    if let Some(f) = &d.failure {
        eprintln!("failure: {f:?}");
    }
}

fn cmd_decode(args: &DecodeArgs) -> anyhow::Result<ExitCode> {
    let text = if args.input.as_os_str() == "-" {
        io::read_to_string(io::stdin())?
    } else {
        std::fs::read_to_string(&args.input).with_context(|| format!("cannot read {}", args.input.display()))?
    };
    let file = input::parse(&text).with_context(|| format!("{}", args.input.display()))?;
    let code = build_code(file.m, args.field.modulus, file.n, file.k)?;
    let f = code.field();
    let r: Vec<FieldElement> = file.symbols.iter().map(|&s| f.element(s)).collect::<Result<_, _>>()?;
    let tau = args.tau.unwrap_or_else(|| johnson_radius(code.n(), code.d()));

    let kind = match (args.decoder, &file.reliabilities) {
        (DecoderKind::Auto, Some(_)) => DecoderKind::Reduced,
        (DecoderKind::Auto, None) => DecoderKind::Wu,
        (k, _) => k,
    };
    let res = match kind {
        DecoderKind::Classical => {
            let found = classical_decode(&code, &r)?;
            eprintln!("decoder: classical");
            let mut out = open_out(args.out.as_deref())?;
            if let Some(c) = &found {
                writeln!(out, "{}", format_word(c))?;
            }
            out.flush()?;
            return Ok(if found.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        DecoderKind::Wu => wu_decode(&code, &r, tau)?,
        DecoderKind::Reduced | DecoderKind::Auto => {
            let Some(eta) = &file.reliabilities else {
                bail!("the reduced decoder needs a reliability line in the input file");
            };
            let l = args.ls.first().copied().unwrap_or(DEFAULT_SWEEP_LS[1]);
            let mut cfg = ReducedConfig::new(tau, l);
            cfg.tau_l_override = args.tau_l_override;
            reduced_decode(&code, &r, eta, &cfg)?
        }
    };
    eprintln!("decoder: {kind:?}, tau = {tau}");
    report(&res);
    let mut out = open_out(args.out.as_deref())?;
    for c in res.codewords() {
        writeln!(out, "{}", format_word(c))?;
    }
    out.flush()?;
    let label = match &res.outcome {
        DecodeOutcome::Unique(_) => "unique",
        DecodeOutcome::List(_) => "list",
        DecodeOutcome::Fail => "fail",
    };
    eprintln!("outcome: {label} ({} codewords)", res.codewords().len());
    Ok(if res.is_fail() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn sweep_code(code: &CodeArgs) -> anyhow::Result<(GrsCode, usize)> {
    let c = build_code(code.field_m, code.field.modulus, code.n, code.k)?;
    let tau = code.tau.unwrap_or_else(|| johnson_radius(c.n(), c.d()));
    Ok((c, tau))
}

fn cmd_sweep(args: &SweepArgs) -> anyhow::Result<ExitCode> {
    let (code, tau) = sweep_code(&args.code)?;
    let run = &args.run;
    let cfg = SweepConfig {
        tau,
        ls: if run.ls.is_empty() { DEFAULT_SWEEP_LS.to_vec() } else { run.ls.clone() },
        tau_l_override: run.tau_l_override,
        snrs: snr_grid(run.snr_from, run.snr_to, run.snr_step)?,
        trials: run.trials,
        seed: run.seed,
        convention: run.snr_convention.into(),
        include_wu: !args.skip_wu,
    };
    let recs = failure_sweep(&code, &cfg)?;
    let mut out = open_out(run.out.as_deref())?;
    write_csv(&mut out, SIM_HEADER, recs.iter().map(|r| r.csv_row()))?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_catch(args: &CatchArgs) -> anyhow::Result<ExitCode> {
    let (code, tau) = sweep_code(&args.code)?;
    let run = &args.run;
    if run.tau_l_override.is_some() {
        bail!("--tau-l-override is not used by `catch`");
    }
    let cfg = CatchConfig {
        tau,
        ls: if run.ls.is_empty() { (1..=12).map(|i| 5 * i).collect() } else { run.ls.clone() },
        snrs: snr_grid(run.snr_from, run.snr_to, run.snr_step)?,
        trials: run.trials,
        seed: run.seed,
        convention: run.snr_convention.into(),
        condition: args.condition.into(),
    };
    let recs = expected_catch(&code, &cfg)?;
    let mut out = open_out(run.out.as_deref())?;
    write_csv(&mut out, CATCH_HEADER, recs.iter().map(|r| r.csv_row()))?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::warn!("thread pool: {e}");
        }
    }
    let run = match &cli.command {
        Command::Decode(a) => cmd_decode(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Catch(a) => cmd_catch(a),
    };
    match run {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snr_grid_is_inclusive() {
        assert_eq!(snr_grid(5.0, 6.0, 0.25).unwrap(), vec![5.0, 5.25, 5.5, 5.75, 6.0]);
        assert_eq!(snr_grid(5.0, 6.0, 0.1).unwrap().len(), 11);
        assert_eq!(snr_grid(40.0, 40.0, 0.0).unwrap(), vec![40.0]);
        assert!(snr_grid(6.0, 5.0, 0.25).is_err());
        assert!(snr_grid(5.0, 6.0, 0.0).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
