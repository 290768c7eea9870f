//! Command-line front end for `ucnorm`: text formats, bundled examples and
//! the command runner behind the `ucnorm` binary.

pub mod commands;
pub mod error;
pub mod format;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use commands::{Outcome, RunConfig};
pub use error::{exit, CliError, CliResult};
pub use format::{Document, Record};

use commands::{EvalAt, VnOptions};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "UCNORM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ucnorm", version, about = "Norms, realizations and interpolation for commutative operator algebras")]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Numerical tolerance of the command.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Number of random samples for searches.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Operator space tag: min-l1, min-l2, min-linf, max-l1, max-l2, max-linf, row, column.
    #[arg(long, global = true)]
    pub space: Option<String>,
    /// Truncation degree of the built-in shift tuples.
    #[arg(long, global = true)]
    pub degree_cap: Option<usize>,
    /// Iteration cap of the iterative cone solver.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Report file (a directory for `examples`); stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a factorization file at its sample points.
    VerifyFactorization { input: PathBuf },
    /// Build a unitary colligation from a factorization file.
    Realize { input: PathBuf },
    /// Evaluate a polynomial or a colligation's transfer function.
    Eval {
        input: PathBuf,
        /// Point as `re[:im],re[:im],…`.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "tuple", conflicts_with = "tuple")]
        point: Option<String>,
        /// Commuting tuple file.
        #[arg(long)]
        tuple: Option<PathBuf>,
    },
    /// Search for a tuple beating the scalar sup norm of a polynomial.
    VnSearch {
        input: PathBuf,
        /// Also try the built-in tuples.
        #[arg(long)]
        include_library_tuples: bool,
        /// Phases per axis of the torus grid for the sup norm.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Solve an interpolation problem.
    Pick { input: PathBuf },
    /// Decide a finite-set cone problem and write its certificate.
    Cone { input: PathBuf },
    /// Write a bundled example.
    Examples {
        #[arg(value_parser = commands::EXAMPLE_NAMES)]
        name: String,
    },
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let mut cfg = RunConfig {
            seed: self.seed,
            output: self.out.clone(),
            ..RunConfig::default()
        };
        if let Some(t) = self.tol {
            cfg.tolerances.insert("tol".into(), t);
        }
        let budgets = [
            ("samples", self.budget),
            ("degree_cap", self.degree_cap),
            ("max_iter", self.max_iter),
        ];
        for (name, v) in budgets {
            if let Some(v) = v {
                cfg.budgets.insert(name.into(), v);
            }
        }
        if let Command::VnSearch { grid: Some(g), .. } = self.command {
            cfg.budgets.insert("grid".into(), g);
        }
        cfg
    }
}

/// Runs a parsed command line without touching the file system.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let cfg = cli.config();
    match &cli.command {
        Command::VerifyFactorization { input } => commands::verify_factorization_cmd(&cfg, input),
        Command::Realize { input } => commands::realize_cmd(&cfg, input),
        Command::Eval { input, point, tuple } => {
            let at = match (point, tuple) {
                (Some(p), _) => EvalAt::Point(commands::parse_point(p)?),
                (None, Some(t)) => EvalAt::Tuple(t.clone()),
                (None, None) => return Err(CliError::Usage("eval needs --point or --tuple".into())),
            };
            commands::eval_cmd(&cfg, input, &at)
        }
        Command::VnSearch {
            input,
            include_library_tuples,
            ..
        } => commands::vn_search_cmd(
            &cfg,
            input,
            &VnOptions {
                space: cli.space.clone(),
                include_library: *include_library_tuples,
            },
        ),
        Command::Pick { input } => commands::pick_cmd(&cfg, input),
        Command::Cone { input } => commands::cone_cmd(&cfg, input),
        Command::Examples { name } => commands::examples_cmd(&cfg, name),
    }
}

/// Runs the command and writes its outputs; returns the exit code.
pub fn execute(cli: &Cli) -> CliResult<u8> {
    let outcome = run(cli)?;
    for (path, text) in &outcome.files {
        write_atomic(path, text)?;
    }
    let to_file = !matches!(cli.command, Command::Examples { .. });
    match (&cli.out, to_file) {
        (Some(path), true) => write_atomic(path, &outcome.report)?,
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.report.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(outcome.exit)
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, text: &str) -> CliResult<()> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Sizes the global thread pool from `UCNORM_THREADS` when it is set.
pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}
