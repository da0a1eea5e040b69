use std::fmt;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(weylspec::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use weylspec::Error as E;
        match self {
            CliError::Config(_) | CliError::Core(E::Invalid(_)) => 2,
            CliError::Core(E::Budget { .. }) => 3,
            CliError::Core(E::Io(_) | E::Csv(_) | E::Serde(_)) => 4,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<weylspec::Error> for CliError {
    fn from(e: weylspec::Error) -> Self {
        CliError::Core(e)
    }
}

pub fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub cache_dir: Option<PathBuf>,
    pub spectrum: SpectrumArgs,
    pub lattice: LatticeArgs,
    pub arith: ArithArgs,
    pub geodesics: GeodesicArgs,
    pub bessel: BesselArgs,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Core(e.into()))?;
        toml::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
    }
}

/// Command-line values win over the config file, field by field.
macro_rules! mergeable {
    ($name:ident { $($field:ident),* $(,)? }) => {
        impl $name {
            pub fn merge(self, file: Self) -> Self {
                $name { $($field: self.$field.or(file.$field)),* }
            }
        }
    };
}

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct SpectrumArgs {
    /// SO, Spin, U or SU.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Single cutoff λ.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub lambda_start: Option<f64>,
    #[arg(long)]
    pub lambda_stop: Option<f64>,
    #[arg(long)]
    pub lambda_ratio: Option<f64>,
    /// Maximum lattice points to visit.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Also write the spectrum up to the largest λ as JSON.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}
mergeable!(SpectrumArgs { group, n, lambda, lambda_start, lambda_stop, lambda_ratio, budget, dump });

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct LatticeArgs {
    /// Basis columns as rationals, e.g. "1,0;1/2,1".
    #[arg(long)]
    pub basis: Option<String>,
    /// Translation vector, e.g. "1/3,1/7".
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<String>,
    /// Homogeneous weight such as "1", "x1^2" or "|x|^2".
    #[arg(long)]
    pub weight: Option<String>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub r_start: Option<f64>,
    #[arg(long)]
    pub r_stop: Option<f64>,
    #[arg(long)]
    pub r_ratio: Option<f64>,
    #[arg(long)]
    pub budget: Option<f64>,
}
mergeable!(LatticeArgs { basis, shift, weight, r, r_start, r_stop, r_ratio, budget });

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ArithArgs {
    /// jacobi, recursion, sharp, rep or trend.
    #[arg(long)]
    pub check: Option<String>,
    #[arg(long)]
    pub m: Option<u32>,
    /// Dimension for recursion, sharp, rep and trend.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub t_max: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub r_max: Option<u64>,
    #[arg(long)]
    pub r2: Option<u64>,
    #[arg(long)]
    pub r2_start: Option<f64>,
    #[arg(long)]
    pub r2_stop: Option<f64>,
    #[arg(long)]
    pub r2_ratio: Option<f64>,
    #[arg(long)]
    pub k_max: Option<u64>,
    /// Polynomial for the trend check, e.g. "x1^2".
    #[arg(long)]
    pub poly: Option<String>,
}
mergeable!(ArithArgs { check, m, n, t, t_max, r, r_max, r2, r2_start, r2_stop, r2_ratio, k_max, poly });

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct GeodesicArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long)]
    pub x_start: Option<f64>,
    #[arg(long)]
    pub x_stop: Option<f64>,
    #[arg(long)]
    pub x_ratio: Option<f64>,
    /// List squared lengths up to this length instead of counting.
    #[arg(long)]
    pub lengths: Option<f64>,
}
mergeable!(GeodesicArgs { n, x, x_start, x_stop, x_ratio, lengths });

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct BesselArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    #[arg(long)]
    pub z_start: Option<f64>,
    #[arg(long)]
    pub z_stop: Option<f64>,
    #[arg(long)]
    pub z_ratio: Option<f64>,
    /// lemma or base: print identity residuals instead of the envelope.
    #[arg(long)]
    pub check: Option<String>,
}
mergeable!(BesselArgs { alpha, beta, z, z_start, z_stop, z_ratio, check });

pub fn required<T>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| bad(format!("--{name} is required")))
}

/// Either a single value or a geometric grid `start, start·ratio, … ≤ stop`.
pub fn grid(name: &str, single: Option<f64>, start: Option<f64>, stop: Option<f64>, ratio: Option<f64>) -> Result<Vec<f64>, CliError> {
    match (single, start, stop, ratio) {
        (Some(v), None, None, None) => {
            if !v.is_finite() {
                return Err(bad(format!("--{name} must be finite")));
            }
            Ok(vec![v])
        }
        (None, Some(a), Some(b), Some(r)) => {
            if !(a > 0.0 && a.is_finite() && b.is_finite()) {
                return Err(bad(format!("--{name}-start must be positive and --{name}-stop finite")));
            }
            if b < a {
                return Err(bad(format!("--{name}-stop must not be below --{name}-start")));
            }
            if !(r > 1.0 && r.is_finite()) {
                return Err(bad(format!("--{name}-ratio must exceed 1")));
            }
            let mut out = Vec::new();
            let mut k = 0i32;
            loop {
                let v = a * r.powi(k);
                if v > b * (1.0 + 1e-12) || out.len() > 1_000_000 {
                    break;
                }
                out.push(v.min(b));
                k += 1;
            }
            Ok(out)
        }
        _ => Err(bad(format!("give either --{name} or all of --{name}-start, --{name}-stop, --{name}-ratio"))),
    }
}

pub fn budget(b: Option<f64>) -> Result<Option<f64>, CliError> {
    match b {
        Some(v) if !(v > 0.0 && v.is_finite()) => Err(bad("--budget must be positive")),
        other => Ok(other),
    }
}
