//! Front end for `simons-verify`: flag and config-file handling, subcommand
//! dispatch, and JSON/CSV/text reports.

pub mod config;
pub mod report;
pub mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use simons_core::Precision;

pub use config::{ConfigError, Format, Overrides, RunConfig};
pub use report::RunReport;
pub use run::{execute, Command, RunError};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "SIMONS_VERIFY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "simons-verify", version, about = "Verify Simons-type identities on Calabi's standard minimal spheres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArg,

    /// Degrees s of the immersions into S^{2s}, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub degree: Option<Vec<i64>>,

    /// Sample points per degree for the pointwise checks.
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Base tolerance of the pointwise checks.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,

    /// Tolerance of the integral identities.
    #[arg(long = "tol-integral", global = true, allow_hyphen_values = true)]
    pub tol_integral: Option<f64>,

    /// Gauss-Legendre nodes in cos(theta); the rule has 2n^2 points.
    #[arg(long = "quad-order", global = true)]
    pub quad_order: Option<usize>,

    #[arg(long, global = true, value_parser = clap::value_parser!(Format))]
    pub format: Option<Format>,

    #[arg(long, global = true, value_parser = clap::value_parser!(Precision))]
    pub precision: Option<Precision>,

    /// Random vector pairs in the pinching sweep.
    #[arg(long = "pinch-samples", global = true)]
    pub pinch_samples: Option<usize>,

    /// `key = value` file with defaults for any of the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Directory receiving one CSV per quadrature rule.
    #[arg(long = "export-rule", global = true)]
    pub export_rule: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CommandArg {
    /// Pointwise identity residuals at seeded sample points.
    Verify,
    /// Integral identities, Gauss-Bonnet, area and Bochner checks.
    Integrate,
    /// Critical point and forbidden interval of the pinching gap.
    Gap,
    /// Exact polynomial certificates and the pinching-inequality sweep.
    Algebra,
    /// Everything above.
    All,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Command {
        match c {
            CommandArg::Verify => Command::Verify,
            CommandArg::Integrate => Command::Integrate,
            CommandArg::Gap => Command::Gap,
            CommandArg::Algebra => Command::Algebra,
            CommandArg::All => Command::All,
        }
    }
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            degree: self.degree.clone(),
            samples: self.samples,
            quad_order: self.quad_order,
            tol_pointwise: self.tol,
            tol_integral: self.tol_integral,
            seed: self.seed,
            format: self.format,
            precision: self.precision,
            pinch_samples: self.pinch_samples,
        }
    }

    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg = Overrides::from_file(path)?.apply(cfg);
        }
        let cfg = self.overrides().apply(cfg);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Exit status and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(stderr: String) -> Self {
        Self { code: 2, stdout: String::new(), stderr }
    }
}

pub fn parse_threads(value: Option<&str>) -> Result<Option<usize>, ConfigError> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ConfigError::Invalid(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}

/// Runs one command line. `threads` is the raw value of [`THREADS_ENV`].
pub fn run_cli<I, T>(args: I, threads: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let cfg = match cli.resolve() {
        Ok(cfg) => cfg,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    let threads = match parse_threads(threads) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let command = Command::from(cli.command);
    let result = pool.install(|| execute(command, &cfg, cli.export_rule.as_deref()));
    match result {
        Ok(report) => {
            let stdout = report.render(cfg.format);
            match report.first_failure() {
                None => Outcome { code: 0, stdout, stderr: String::new() },
                Some(name) => Outcome { code: 1, stdout, stderr: format!("FAILED: {name}\n") },
            }
        }
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
