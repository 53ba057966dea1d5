use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use e7forge::pipeline::{golden_for_config, run, PipelineConfig};

#[derive(Parser)]
#[command(name = "e7forge", version, about = "Build and verify E7 Lie algebras from Fano-plane quaternion labelings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a pipeline and write one JSON report per command plus summary.json.
    Run {
        /// Pipeline config, or a bare labeling file for the default pipeline.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of primes used for modular rank certificates.
        #[arg(long)]
        primes: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble the labeling and write its structure constants.
    Golden {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn threads() {
    let Ok(v) = std::env::var("E7FORGE_THREADS") else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size the thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring E7FORGE_THREADS={v:?}"),
    }
}

fn load(path: &PathBuf, seed: Option<u64>) -> Result<PipelineConfig, ExitCode> {
    match PipelineConfig::load(path) {
        Ok(mut c) => {
            if let Some(s) = seed {
                c.seed = s;
            }
            Ok(c)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    threads();
    match Cli::parse().cmd {
        Cmd::Run { config, seed, primes, out } => {
            let mut cfg = match load(&config, seed) {
                Ok(c) => c,
                Err(code) => return code,
            };
            if let Some(p) = primes {
                cfg.prime_count = p;
            }
            if let Some(o) = out {
                cfg.output_dir = o;
            }
            match run(&cfg) {
                Ok(outcome) => {
                    for r in &outcome.reports {
                        let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                        println!("{:<18} {status}", r.check);
                        for w in r.witnesses.iter().filter(|_| r.status != e7forge::pipeline::Status::Pass) {
                            println!("    {w}");
                        }
                    }
                    println!("summary: {}", serde_json::to_string(&outcome.summary).unwrap_or_default());
                    ExitCode::from(outcome.exit_code as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Cmd::Golden { config, seed, out } => {
            let cfg = match load(&config, seed) {
                Ok(c) => c,
                Err(code) => return code,
            };
            match golden_for_config(&cfg, &out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(match e {
                        e7forge::Error::Io(_) | e7forge::Error::Schema { .. } | e7forge::Error::LabelingRejected(_) => 1,
                        _ => 2,
                    })
                }
            }
        }
    }
}
