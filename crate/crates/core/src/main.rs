use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use relcoh::harness::verify::run_all;
use relcoh::harness::{
    evolve, measure_report, run_sweep, ChannelKind, Check, Dims, EvolveRow, Format, MeasureSelection, SweepConfig,
    SCHEMA_VERSION,
};
use relcoh::states::load_state_json;
use relcoh::Error;

/// Relative quantum coherence, incompatibility and correlation measures.
#[derive(Parser)]
#[command(name = "relcoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every applicable measure for a state file.
    Measure {
        state: PathBuf,
        /// Reference state; defaults to the maximally mixed state.
        #[arg(long)]
        against: Option<PathBuf>,
        /// l1, re or all.
        #[arg(long, default_value = "all")]
        measure: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized sweep of named checks. Exits 1 when any row fails.
    Sweep {
        /// Comma-separated check names.
        #[arg(long, value_delimiter = ',', required = true)]
        check: Vec<String>,
        /// Comma-separated dimensions, `d` or `d_axd_b`.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<String>,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coherence of a channel-evolved state relative to the initial state.
    ///
    /// The channel acts on every qubit with strength gamma(t) = 1 - exp(-t),
    /// so t is unbounded time and t -> infinity is the fully applied channel.
    Evolve {
        state: PathBuf,
        /// dephasing, amplitude_damping or depolarizing.
        #[arg(long)]
        channel: String,
        /// Only `default`, i.e. gamma(t) = 1 - exp(-t).
        #[arg(long, default_value = "default")]
        gamma_profile: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 5.0)]
        t_max: f64,
        /// json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite. Exits 1 when any criterion fails.
    Verify,
}

/// Failure that maps to an exit code.
enum Failure {
    Usage(String),
    Violations(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct EvolveReport<'a> {
    schema_version: u32,
    channel: &'static str,
    gamma_profile: &'a str,
    steps: usize,
    t_max: f64,
    rows: Vec<EvolveRow>,
}

fn evolve_csv(rows: &[EvolveRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "gamma", "c_l1", "c_re", "q_l1", "degenerate_reference", "converged"])
        .expect("in-memory write");
    let f = |x: f64| format!("{x:.11e}");
    for r in rows {
        w.write_record([
            f(r.t),
            f(r.gamma),
            f(r.c_l1),
            f(r.c_re),
            f(r.q_l1),
            r.degenerate_reference.to_string(),
            r.converged.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Measure {
            state,
            against,
            measure,
            out,
        } => {
            let loaded = load_state_json(&read(&state)?)?;
            let sigma = match against {
                Some(p) => Some(load_state_json(&read(&p)?)?.state),
                None => None,
            };
            let selection: MeasureSelection = measure.parse()?;
            let report = measure_report(&loaded, sigma.as_ref(), selection)?;
            emit(&serde_json::to_string_pretty(&report).expect("serializes"), out.as_deref())
        }
        Command::Sweep {
            check,
            dims,
            samples,
            seed,
            format,
            out,
        } => {
            let cfg = SweepConfig {
                checks: check.iter().map(|c| c.parse::<Check>()).collect::<Result<_, _>>()?,
                dims: dims.iter().map(|d| d.parse::<Dims>()).collect::<Result<_, _>>()?,
                samples,
                seed,
                format: format.parse::<Format>()?,
            };
            let report = run_sweep(&cfg)?;
            emit(&report.render(cfg.format), out.as_deref())?;
            if report.summary.violations > 0 {
                return Err(Failure::Violations(format!(
                    "{} of {} rows failed",
                    report.summary.violations, report.summary.rows
                )));
            }
            Ok(())
        }
        Command::Evolve {
            state,
            channel,
            gamma_profile,
            steps,
            t_max,
            format,
            out,
        } => {
            if gamma_profile != "default" {
                return Err(Failure::Usage(format!("unknown gamma profile `{gamma_profile}`")));
            }
            let kind: ChannelKind = channel.parse()?;
            let format: Format = format.parse()?;
            let rho = load_state_json(&read(&state)?)?.state;
            let rows = evolve(&rho, kind, steps, t_max)?;
            let text = match format {
                Format::Csv => evolve_csv(&rows),
                Format::Json => serde_json::to_string_pretty(&EvolveReport {
                    schema_version: SCHEMA_VERSION,
                    channel: kind.name(),
                    gamma_profile: &gamma_profile,
                    steps,
                    t_max,
                    rows,
                })
                .expect("serializes"),
            };
            emit(&text, out.as_deref())
        }
        Command::Verify => {
            let results = run_all();
            for r in &results {
                println!("{}", r.line());
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure::Violations(format!("{failed} of {} criteria failed", results.len())));
            }
            println!("all {} criteria passed", results.len());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
