use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use theta_kernel::commands::{cmd_classgroup, cmd_invariants, cmd_theta, expansion_json};
use theta_kernel::data::data_dir;
use theta_kernel::format::{index_entries, to_json_bytes, GramFile};
use theta_kernel::{run_suite, CliError, Result, RunConfig, Suite};

/// Exact theta series, theta operators mod p and verification suites.
#[derive(Debug, Parser)]
#[command(name = "theta-kernel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for independent claims (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Record wall-clock time per claim (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fourier expansion of a theta series.
    Theta {
        #[arg(long, value_name = "PATH")]
        gram: PathBuf,
        #[arg(long, visible_alias = "n", default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        bound: u64,
        /// Weight by det(X).
        #[arg(long)]
        det: bool,
        /// Expansion at the cusp ω_j.
        #[arg(long, value_name = "J")]
        cusp: Option<usize>,
    },
    /// Reduced representatives of the classes of discriminant D.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Determinant, level, rank and Hasse–Witt invariants of a Gram matrix.
    Invariants {
        #[arg(long, value_name = "PATH")]
        gram: PathBuf,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Run a verification suite.
    Verify {
        suite: SuiteName,
        #[command(flatten)]
        params: SuiteArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteName {
    Kernel,
    Dimensions,
    Km,
    Witt,
    Erratum,
    Dj,
    Special,
}

impl From<SuiteName> for Suite {
    fn from(s: SuiteName) -> Self {
        match s {
            SuiteName::Kernel => Suite::Kernel,
            SuiteName::Dimensions => Suite::Dimensions,
            SuiteName::Km => Suite::Km,
            SuiteName::Witt => Suite::Witt,
            SuiteName::Erratum => Suite::Erratum,
            SuiteName::Dj => Suite::Dj,
            SuiteName::Special => Suite::Special,
        }
    }
}

#[derive(Debug, Args)]
struct SuiteArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, visible_alias = "n")]
    degree: Option<usize>,
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long)]
    dmax: Option<u64>,
    /// Auxiliary prime for the witt suite; repeatable.
    #[arg(long)]
    q: Vec<u64>,
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|source| CliError::Write { path: path.to_owned(), source }),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|source| CliError::Write { path: PathBuf::from("<stdout>"), source }),
    }
}

fn csv_bytes(header: &[&str], rows: Vec<Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))
}

/// Exit code 3 signals a completed run with at least one failed claim.
fn run(cli: Cli) -> Result<u8> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Theta { gram, degree, bound, det, cusp } => {
            let s = GramFile::load(&gram)?;
            let result = cmd_theta(&s, degree, bound, det, cusp)?;
            if let Some(w) = &result.warning {
                eprintln!("warning: {w}");
            }
            let f = &result.expansion;
            let bytes = if cli.csv {
                let rows = f
                    .coefficients()
                    .iter()
                    .map(|(k, v)| Ok(vec![serde_json::to_string(&index_entries(k, f.denominator()))?, v.to_string()]))
                    .collect::<Result<Vec<_>>>()?;
                csv_bytes(&["index_2T", "value"], rows)?
            } else {
                to_json_bytes(&expansion_json(f)?)?
            };
            emit(&bytes, out)?;
            Ok(0)
        }
        Command::Classgroup { disc } => {
            let list = cmd_classgroup(disc)?;
            let bytes = if cli.csv {
                let rows = list
                    .forms
                    .iter()
                    .map(|f| {
                        vec![
                            f.abc[0].to_string(),
                            f.abc[1].to_string(),
                            f.abc[2].to_string(),
                            f.ambiguous.to_string(),
                            f.gl_partner.map(|i| i.to_string()).unwrap_or_default(),
                        ]
                    })
                    .collect();
                csv_bytes(&["a", "b", "c", "ambiguous", "gl_partner"], rows)?
            } else {
                to_json_bytes(&list)?
            };
            emit(&bytes, out)?;
            Ok(0)
        }
        Command::Invariants { gram, p } => {
            let s = GramFile::load(&gram)?;
            let inv = cmd_invariants(&s, p)?;
            let bytes = if cli.csv {
                let rows = inv.hasse_witt.iter().map(|h| vec![h.place.clone(), h.hasse_witt.to_string()]).collect();
                csv_bytes(&["place", "hasse_witt"], rows)?
            } else {
                to_json_bytes(&inv)?
            };
            emit(&bytes, out)?;
            Ok(0)
        }
        Command::Verify { suite, params } => {
            let config = RunConfig {
                command: "verify".to_owned(),
                p: params.p,
                degree: params.degree,
                bound: params.bound,
                d_max: params.dmax,
                q: params.q,
                inputs: Vec::new(),
                output: cli.out.clone(),
                threads: cli.threads,
                timing: cli.timing,
                data_dir: data_dir(),
            };
            let report = run_suite(suite.into(), &config)?;
            let bytes = if cli.csv { report.to_csv()? } else { report.to_json()? };
            emit(&bytes, out)?;
            Ok(if report.verdict.is_pass() { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
