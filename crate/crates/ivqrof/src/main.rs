use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ivqrof::io::{
    emit_report, emit_sweep, format_sig10, parse_problem, run_sweep, ReportFormat, SweepParam,
};
use ivqrof::mcgdm::{solve, DecisionProblem, PipelineParams};
use ivqrof::params::RungSpec;
use ivqrof::selfcheck::{run_all, SelfcheckConfig, DEFAULT_CASES, DEFAULT_SEED};
use ivqrof::{Error, ScoreKind};

/// Interval-valued fuzzy decision tool: validates problem files, ranks
/// alternatives, sweeps parameters, and re-verifies its own arithmetic.
#[derive(Parser)]
#[command(name = "ivqrof", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a problem file and report whether it is well-formed
    Validate { file: PathBuf },
    /// Rank the alternatives of a problem file
    Solve {
        file: PathBuf,
        /// Override the rung: a number, or "auto" to infer it from the data
        #[arg(long, value_parser = parse_rung)]
        q: Option<RungSpec>,
        /// Override the operation family parameter
        #[arg(long)]
        phi: Option<f64>,
        /// Override the first pair exponent
        #[arg(long)]
        x: Option<f64>,
        /// Override the second pair exponent
        #[arg(long)]
        y: Option<f64>,
        /// Override the ranking score function
        #[arg(long, value_enum)]
        score: Option<ScoreArg>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Also print the expert-aggregated matrix
        #[arg(long)]
        intermediates: bool,
    },
    /// Re-solve a problem once per value of one parameter
    Sweep {
        file: PathBuf,
        #[arg(long, value_enum)]
        param: ParamArg,
        /// Comma-separated parameter values
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    /// Run the seeded randomized verification suites
    Selfcheck {
        /// Cases per suite family
        #[arg(long)]
        cases: Option<usize>,
        /// Seed (default: IVQROF_SEED from the environment, then 42)
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScoreArg {
    Linear,
    Qpow,
}

impl From<ScoreArg> for ScoreKind {
    fn from(s: ScoreArg) -> ScoreKind {
        match s {
            ScoreArg::Linear => ScoreKind::Linear,
            ScoreArg::Qpow => ScoreKind::QPow,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Q,
    Phi,
    X,
    Y,
}

impl From<ParamArg> for SweepParam {
    fn from(p: ParamArg) -> SweepParam {
        match p {
            ParamArg::Q => SweepParam::Q,
            ParamArg::Phi => SweepParam::Phi,
            ParamArg::X => SweepParam::X,
            ParamArg::Y => SweepParam::Y,
        }
    }
}

fn parse_rung(s: &str) -> Result<RungSpec, String> {
    if s == "auto" {
        return Ok(RungSpec::Auto);
    }
    s.parse::<f64>()
        .map(RungSpec::Fixed)
        .map_err(|_| format!("expected a number or \"auto\", got {s:?}"))
}

const EXIT_INPUT: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;

// stdout may be a pipe whose reader is gone (`ivqrof ... | head`); a failed
// write means nobody is listening, not a fault worth a panic
fn emit(text: std::fmt::Arguments) {
    if std::io::stdout().write_fmt(text).is_err() {
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

fn exit_for(e: &Error) -> ExitCode {
    if e.is_numerical() {
        ExitCode::from(EXIT_NUMERICAL)
    } else {
        ExitCode::from(EXIT_INPUT)
    }
}

fn load(file: &PathBuf) -> Result<DecisionProblem, ExitCode> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", file.display());
        ExitCode::from(EXIT_INPUT)
    })?;
    parse_problem(&text).map_err(|e| {
        eprintln!("error: {e}");
        exit_for(&e)
    })
}

fn main() -> ExitCode {
    // clap would exit(2) on usage errors; 2 is reserved for numerical
    // failures, so usage problems map to the input-error code instead
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Validate { file } => match load(&file) {
            Ok(p) => {
                outln!(
                    "ok: {} alternatives, {} criteria, {} experts",
                    p.alternatives().len(),
                    p.criteria().len(),
                    p.experts().len()
                );
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Solve {
            file,
            q,
            phi,
            x,
            y,
            score,
            format,
            intermediates,
        } => {
            let problem = match load(&file) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let base = *problem.params();
            let params = PipelineParams {
                rung: q.unwrap_or(base.rung),
                phi: phi.unwrap_or(base.phi),
                x: x.unwrap_or(base.x),
                y: y.unwrap_or(base.y),
                score: score.map(ScoreKind::from).unwrap_or(base.score),
            };
            match solve(&problem.with_params(params)) {
                Ok(report) => {
                    let fmt = match format {
                        FormatArg::Text => ReportFormat::Text,
                        FormatArg::Csv => ReportFormat::Csv,
                    };
                    out!("{}", emit_report(&report, fmt, intermediates));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_for(&e)
                }
            }
        }
        Command::Sweep {
            file,
            param,
            values,
        } => {
            let problem = match load(&file) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let report = run_sweep(&problem, param.into(), &values);
            out!("{}", emit_sweep(&report));
            ExitCode::SUCCESS
        }
        Command::Selfcheck { cases, seed } => {
            let seed = seed
                .or_else(|| {
                    std::env::var("IVQROF_SEED")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(DEFAULT_SEED);
            let config = SelfcheckConfig {
                cases: cases.unwrap_or(DEFAULT_CASES),
                seed,
            };
            outln!("selfcheck: cases={} seed={}", config.cases, config.seed);
            let outcomes = run_all(&config);
            let mut all_ok = true;
            for o in &outcomes {
                let status = if o.passed() {
                    "PASS"
                } else if o.asserted {
                    all_ok = false;
                    "FAIL"
                } else {
                    "OBSERVED"
                };
                outln!(
                    "suite {}: {status} cases={} failures={} max_dev={}",
                    o.name,
                    o.cases,
                    o.failures,
                    format_sig10(o.max_dev)
                );
                for note in &o.notes {
                    outln!("  note: {note}");
                }
            }
            if all_ok {
                outln!("selfcheck: PASS");
                ExitCode::SUCCESS
            } else {
                outln!("selfcheck: FAIL");
                ExitCode::from(EXIT_NUMERICAL)
            }
        }
    }
}
