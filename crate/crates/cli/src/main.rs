//! `jacobi`: batch front end for exact Jacobi-form computations.
//!
//! Exit status: 0 on success, 1 on a mathematical negative result
//! (`NOT_EIGEN`, `INCONCLUSIVE`), 2 on usage or argument errors.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jacobi_core::eisenstein::eisenstein_km;
use jacobi_core::indivisibility::{
    reduce_to_fundamental, scan, LocalCondition, LocalConditions, ScanOptions, ScanStatus,
};
use jacobi_core::operators::{detect_eigenvalue, hecke_tp, Eigenvalue};
use jacobi_core::theta::decompose;
use jacobi_core::{ExactRational, JacobiExpansion};

use config::Config;

#[derive(Parser, Debug)]
#[command(
    name = "jacobi",
    version,
    about = "Exact Fourier-coefficient computations for Jacobi forms"
)]
struct Cli {
    /// TOML file with defaults (bound, hecke_primes, threads, format, conditions)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eisenstein series E_{k,m} on |D| <= bound
    Eisenstein {
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Apply T_p, or certify an eigenvalue with --verify-eigen
    Hecke {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        verify_eigen: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Scan fundamental discriminants for nu_ell(c(n, r)) = 0
    Scan {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        bound: Option<u64>,
        /// Local condition p:eps, e.g. 5:+1 (repeatable)
        #[arg(long = "cond")]
        conditions: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        hecke_primes: Option<Vec<i64>>,
        #[arg(long)]
        threads: Option<usize>,
        /// Resumable state file
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Descend (n, r) to a fundamental discriminant
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
    },
    /// Theta decomposition of a level-one expansion
    Theta {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Negative(String),
    Usage(String),
}

impl From<jacobi_core::Error> for Failure {
    fn from(e: jacobi_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_expansion(path: &Path) -> Result<JacobiExpansion, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(JacobiExpansion::from_json(&text)?)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn resolve_format(flag: Option<Format>, cfg: &Config) -> Result<Format, Failure> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match cfg.format.as_deref() {
        None | Some("json") => Ok(Format::Json),
        Some("csv") => Ok(Format::Csv),
        Some(other) => Err(usage(format!("config format `{other}` is not json or csv"))),
    }
}

fn write_expansion(phi: &JacobiExpansion, out: Option<&Path>, format: Format) -> Outcome {
    let text = match format {
        Format::Json => phi.to_json()?,
        Format::Csv => phi.to_csv()?,
    };
    emit(out, &text)
}

fn show(x: &ExactRational) -> String {
    match x.to_integer() {
        Some(n) => n.to_string(),
        None => x.to_string(),
    }
}

fn run(cli: Cli) -> Outcome {
    let cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(Failure::Usage)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Eisenstein {
            k,
            m,
            bound,
            out,
            format,
        } => {
            let bound = bound
                .or(cfg.bound)
                .ok_or_else(|| usage("--bound is required"))?;
            if bound < 4 {
                return Err(usage(format!("bound must be at least 4, got {bound}")));
            }
            if m < 1 {
                return Err(usage(format!("index must be positive, got {m}")));
            }
            let phi = eisenstein_km(k, m, bound)?;
            write_expansion(&phi, out.as_deref(), resolve_format(format, &cfg)?)
        }
        Command::Hecke {
            input,
            p,
            verify_eigen,
            out,
            format,
        } => {
            let phi = read_expansion(&input)?;
            if !verify_eigen {
                let image = hecke_tp(&phi, p)?;
                return write_expansion(&image, out.as_deref(), resolve_format(format, &cfg)?);
            }
            let rep = detect_eigenvalue(&phi, p)?;
            if let Some(o) = &out {
                let json = serde_json::to_string_pretty(&rep).map_err(|e| usage(e.to_string()))?;
                emit(Some(o), &(json + "\n"))?;
            }
            match &rep.eigenvalue {
                Eigenvalue::Certified(l) => {
                    println!(
                        "eigenvalue {} certified |D|<={}",
                        show(l),
                        rep.certified_bound
                    );
                    Ok(())
                }
                Eigenvalue::NotEigen => {
                    let w = rep
                        .witness
                        .map(|k| format!(" at (D, rho) = ({}, {})", k.disc, k.rho))
                        .unwrap_or_default();
                    Err(Failure::Negative(format!("NOT_EIGEN for T_{p}{w}")))
                }
            }
        }
        Command::Scan {
            input,
            ell,
            bound,
            conditions,
            hecke_primes,
            threads,
            checkpoint,
            out,
            format,
        } => {
            let phi = read_expansion(&input)?;
            let raw = if conditions.is_empty() {
                cfg.conditions.clone().unwrap_or_default()
            } else {
                conditions
            };
            let parsed = raw
                .iter()
                .map(|s| s.parse::<LocalCondition>())
                .collect::<Result<Vec<_>, _>>()?;
            let conds = LocalConditions::new(parsed)?;
            let mut opts = ScanOptions {
                bound: bound.or(cfg.bound),
                threads: threads.or(cfg.threads),
                checkpoint,
                ..ScanOptions::default()
            };
            if let Some(h) = hecke_primes.or(cfg.hecke_primes.clone()) {
                opts.hecke_primes = h;
            }
            let rep = scan(&phi, ell, &conds, &opts)?;
            let text = match resolve_format(format, &cfg)? {
                Format::Json => rep.to_json()?,
                Format::Csv => rep.to_csv()?,
            };
            emit(out.as_deref(), &text)?;
            let status = match rep.status {
                ScanStatus::Confirmed => "CONFIRMED",
                ScanStatus::Inconclusive => "INCONCLUSIVE",
            };
            let line = format!(
                "ell {ell}: {} hits of {} examined, |D|<={}, {status}",
                rep.hits.len(),
                rep.examined,
                rep.bound
            );
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            match rep.status {
                ScanStatus::Confirmed => Ok(()),
                ScanStatus::Inconclusive => Err(Failure::Negative("INCONCLUSIVE".into())),
            }
        }
        Command::Reduce { input, n, r } => {
            let phi = read_expansion(&input)?;
            let red = reduce_to_fundamental(&phi, n, r)?;
            println!("({}, {}, f={})", red.n0, red.r0, red.f);
            Ok(())
        }
        Command::Theta { input, out } => {
            let phi = read_expansion(&input)?;
            emit(out.as_deref(), &decompose(&phi)?.to_json()?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
