//! Argument grammar, run configuration, and the error-to-exit-code
//! contract.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use quadpre_core::Error as CoreError;

/// Environment variable overriding the default working precision.
pub const PRECISION_ENV: &str = "QUADPRE_PRECISION_BITS";

#[derive(Parser, Debug)]
#[command(
    name = "quadpre",
    version,
    about = "Exact and certified computation for preperiodic parameters of z^2 + c"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Solver tolerance (default 1e-10).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Working precision in bits (>= 53); also set by QUADPRE_PRECISION_BITS.
    #[arg(long, global = true)]
    pub precision: Option<u32>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Cap on polynomial degrees (default 4096).
    #[arg(long, global = true)]
    pub degree_cap: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Iterated polynomial F_n(c, a) as an integer polynomial in c.
    Iterate {
        /// Integer base point.
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Iteration count.
        #[arg(long)]
        n: u32,
    },
    /// Parameters c for which a has preperiod <= k and period dividing p.
    Params {
        /// Integer base point.
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Preperiod bound.
        #[arg(long)]
        k: u32,
        /// Period to divide.
        #[arg(long)]
        p: u32,
        /// Cross-validate real elements against the coding solver.
        #[arg(long)]
        confirm: bool,
    },
    /// Points z preperiodic for a fixed rational parameter c.
    Points {
        /// Rational parameter: integer, fraction "p/q", or decimal.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Preperiod bound.
        #[arg(long)]
        k: u32,
        /// Period to divide.
        #[arg(long)]
        p: u32,
    },
    /// Common parameters of two base points over all cells up to a depth.
    Intersect {
        /// First integer base point.
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Second integer base point.
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Bound on both preperiod and period.
        #[arg(long)]
        depth: u32,
    },
    /// Value of the coding map at a sign sequence, with residuals.
    Code {
        /// Real parameter, at most -2.
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Sequence "prefix|cycle" over +/-, e.g. "+-|+".
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Parameter where the coding value of the sequence equals a.
    Gamma {
        /// Target value for the coding map.
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Sequence "prefix|cycle" over +/-, e.g. "+-|+".
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Checks the classified intersection for one base-point pair.
    VerifyTheorem {
        /// First integer base point.
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Second integer base point.
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Bound on both preperiod and period.
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// CSV curve samples for external plotting.
    PlotData {
        /// Curve family to sample.
        #[arg(long, value_enum)]
        kind: PlotKind,
        /// Base point (param-curves, zeta-curves).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        /// Parameter (dyn-curves).
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
        /// Lower end of the sampled range.
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<f64>,
        /// Upper end of the sampled range.
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<f64>,
        /// Number of sample rows.
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Runs the quick invariant suite.
    Check,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    /// c on the x-axis, F_0..F_3 at the base point on the y-axis.
    ParamCurves,
    /// z on the x-axis, F_0..F_3 at a fixed parameter on the y-axis.
    DynCurves,
    /// c on the x-axis, the four depth-(2,1) coding curves on the y-axis.
    ZetaCurves,
}

/// Resolved run configuration; every command is deterministic given
/// these values.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub tol: f64,
    pub degree_cap: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
        let env_precision = match std::env::var(PRECISION_ENV) {
            Ok(text) => Some(text.parse::<u32>().map_err(|_| {
                CliError::Usage(format!("{PRECISION_ENV} must be an integer, got {text:?}"))
            })?),
            Err(_) => None,
        };
        let precision_bits = cli.precision.or(env_precision).unwrap_or(53);
        if precision_bits < 53 {
            return Err(CliError::Usage(format!(
                "precision must be at least 53 bits, got {precision_bits}"
            )));
        }
        let tol = cli.tol.unwrap_or(1e-10);
        if tol.is_nan() || tol <= 0.0 {
            return Err(CliError::Usage(format!("tolerance must be positive, got {tol}")));
        }
        let degree_cap = cli.degree_cap.unwrap_or(quadpre_core::poly::DEFAULT_DEGREE_CAP);
        if degree_cap == 0 {
            return Err(CliError::Usage("degree cap must be positive".to_string()));
        }
        Ok(RunConfig {
            precision_bits,
            tol,
            degree_cap,
            format: cli.format.unwrap_or(Format::Text),
        })
    }
}

/// Command failures carrying their exit code: usage 1, resource cap 2,
/// certification 3.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Certification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Certification(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::InvalidInput(_) | CoreError::DomainViolation(_) => {
                CliError::Usage(e.to_string())
            }
            CoreError::DegreeCapExceeded { .. }
            | CoreError::DepthCapExceeded { .. }
            | CoreError::ResourceLimit(_) => CliError::Resource(e.to_string()),
            CoreError::NumericalBreakdown(_)
            | CoreError::EndpointIsRoot { .. }
            | CoreError::UncertifiedRoots(_) => CliError::Certification(e.to_string()),
        }
    }
}
