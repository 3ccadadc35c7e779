//! Command-line flags and their conversion into library configurations.
//!
//! All flag checks happen here, before any computation or file output.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use dftstat::input::{Column, ReadOptions, Transform};
use dftstat::simulate::{preset, ModelSpec, PRESET_NAMES};
use dftstat::spectral::{KernelKind, DEFAULT_RIDGE_FACTOR};
use dftstat::stattest::{CorrectionSpec, TestConfig, DEFAULT_LEVELS};
use dftstat::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "dftstat", version, about = "DFT-covariance test for second-order stationarity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test a series read from a file.
    Test(TestCmd),
    /// Test the full series and every block of a dyadic segmentation.
    Segment(SegmentCmd),
    /// Write one simulated series to a file.
    Simulate(SimulateCmd),
    /// Monte Carlo rejection rate of the test under a model.
    Mc(McCmd),
    /// Per-lag rejection rates of T|ĉ(r)|² under a model.
    Scan(ScanCmd),
    /// Noncentrality B(r) of a model over a lag set.
    Power(PowerCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorrectionMode {
    Gaussian,
    LinearPlugin,
    User,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Series file: one value per line, or CSV with --column.
    pub input: PathBuf,
    /// CSV column, by zero-based index or header name.
    #[arg(long)]
    pub column: Option<String>,
    /// Skip rows whose value is missing or not numeric.
    #[arg(long)]
    pub skip_missing: bool,
    /// Preprocessing: none or sqrt-abs-logdiff2.
    #[arg(long, default_value = "none")]
    pub transform: String,
}

impl InputArgs {
    pub fn read_options(&self) -> Result<ReadOptions> {
        Ok(ReadOptions {
            column: self.column.as_deref().map(str::parse::<Column>).transpose()?,
            skip_missing: self.skip_missing,
            transform: self.transform.parse::<Transform>()?,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct TestArgs {
    /// Use lags 1..=m.
    #[arg(long = "m", conflicts_with = "lags")]
    pub m: Option<usize>,
    /// Explicit lags: a comma list, ranges a..b inclusive, or both.
    #[arg(long)]
    pub lags: Option<String>,
    /// Kernel bandwidth b in cycles, or "auto" for T^{-1/3}.
    #[arg(long, default_value = "auto")]
    pub bandwidth: String,
    #[arg(long, default_value = "daniell")]
    pub kernel: String,
    /// Spectral floor as a fraction of the mean periodogram.
    #[arg(long, default_value_t = DEFAULT_RIDGE_FACTOR)]
    pub ridge: f64,
    #[arg(long, value_enum, default_value = "gaussian")]
    pub correction: CorrectionMode,
    /// MA coefficients ψ₀, ψ₁, … for the linear plug-in correction.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub psi: Option<Vec<f64>>,
    /// Innovation fourth cumulant for the linear plug-in correction.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa4: Option<f64>,
    /// One κ_r per lag for the user correction.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub kappa: Option<Vec<f64>>,
    /// Significance level; repeat for several.
    #[arg(long = "level")]
    pub levels: Vec<f64>,
    /// Test the raw series without subtracting its mean.
    #[arg(long)]
    pub no_demean: bool,
}

pub const DEFAULT_M: usize = 4;

impl TestArgs {
    pub fn lags(&self) -> Result<Vec<usize>> {
        match (&self.lags, self.m) {
            (Some(text), _) => parse_lags(text)?
                .into_iter()
                .map(|r| {
                    usize::try_from(r).map_err(|_| {
                        Error::InvalidInput(format!("lag {r} must be positive"))
                    })
                })
                .collect(),
            (None, Some(0)) => Err(Error::InvalidInput("--m must be at least 1".into())),
            (None, m) => Ok((1..=m.unwrap_or(DEFAULT_M)).collect()),
        }
    }

    /// The test configuration; `default_levels` applies when no --level is
    /// given.
    pub fn config(&self, default_levels: &[f64]) -> Result<TestConfig> {
        let lags = self.lags()?;
        let bandwidth = match self.bandwidth.trim() {
            "auto" => None,
            s => Some(s.parse::<f64>().map_err(|_| {
                Error::InvalidInput(format!("bandwidth must be a number or 'auto', got '{s}'"))
            })?),
        };
        let correction = match self.correction {
            CorrectionMode::Gaussian => {
                if self.psi.is_some() || self.kappa4.is_some() || self.kappa.is_some() {
                    return Err(Error::InvalidInput(
                        "--psi, --kappa4 and --kappa need a non-gaussian --correction".into(),
                    ));
                }
                CorrectionSpec::Gaussian
            }
            CorrectionMode::LinearPlugin => {
                if self.kappa.is_some() {
                    return Err(Error::InvalidInput("--kappa belongs to --correction user".into()));
                }
                match (&self.psi, self.kappa4) {
                    (Some(psi), Some(kappa4)) => CorrectionSpec::LinearPlugin {
                        psi: psi.clone(),
                        kappa4,
                    },
                    _ => {
                        return Err(Error::InvalidInput(
                            "--correction linear-plugin needs --psi and --kappa4".into(),
                        ))
                    }
                }
            }
            CorrectionMode::User => {
                if self.psi.is_some() || self.kappa4.is_some() {
                    return Err(Error::InvalidInput(
                        "--psi and --kappa4 belong to --correction linear-plugin".into(),
                    ));
                }
                match &self.kappa {
                    Some(kappa) if kappa.len() == lags.len() => {
                        CorrectionSpec::User { kappa: kappa.clone() }
                    }
                    Some(kappa) => {
                        return Err(Error::InvalidInput(format!(
                            "--kappa has {} values for {} lags",
                            kappa.len(),
                            lags.len()
                        )))
                    }
                    None => {
                        return Err(Error::InvalidInput("--correction user needs --kappa".into()))
                    }
                }
            }
        };
        let levels = if self.levels.is_empty() {
            default_levels.to_vec()
        } else {
            self.levels.clone()
        };
        let config = TestConfig::consecutive(1)
            .with_lags(lags)
            .with_kernel(self.kernel.parse::<KernelKind>()?)
            .with_bandwidth(bandwidth)
            .with_ridge_factor(self.ridge)
            .with_correction(correction)
            .with_levels(levels)
            .with_demean(!self.no_demean);
        config.validate()?;
        Ok(config)
    }

    pub fn default_config(&self) -> Result<TestConfig> {
        self.config(&DEFAULT_LEVELS)
    }
}

/// Lag lists such as `3,17,40`, `1..120` or `1..4,10`. Ranges are
/// inclusive; `a..=b` is accepted too.
pub fn parse_lags(text: &str) -> Result<Vec<i64>> {
    let bad = |part: &str| Error::InvalidInput(format!("cannot parse lag '{part}'"));
    let mut lags = Vec::new();
    for part in text.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(bad(part));
        }
        match part.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                let lo: i64 = a.trim().parse().map_err(|_| bad(part))?;
                let hi: i64 = b.trim().parse().map_err(|_| bad(part))?;
                if hi < lo {
                    return Err(Error::InvalidInput(format!("empty lag range '{part}'")));
                }
                lags.extend(lo..=hi);
            }
            None => lags.push(part.parse().map_err(|_| bad(part))?),
        }
    }
    Ok(lags)
}

/// A preset name or the path of a JSON model description.
pub fn load_model(name: &str) -> Result<ModelSpec> {
    if PRESET_NAMES.contains(&name.to_ascii_lowercase().as_str()) {
        return preset(name);
    }
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {name}: {e}")))?;
        let spec: ModelSpec = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("bad model description in {name}: {e}")))?;
        spec.validate(false)?;
        return Ok(spec);
    }
    preset(name)
}

#[derive(Debug, Clone, Args)]
pub struct OutDirArg {
    /// Directory for output files.
    #[arg(long, env = "DFTSTAT_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TestCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub test: TestArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SegmentCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub test: TestArgs,
    /// Number of halvings; depth d gives 2^(d+1) − 1 blocks.
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateCmd {
    /// Preset name (model1..model6) or JSON model file.
    pub model: String,
    #[arg(long = "T", default_value_t = 512)]
    pub len: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stream id within the seed; replication i of mc uses stream i.
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    #[arg(long, default_value_t = dftstat::simulate::DEFAULT_BURN_IN)]
    pub burn_in: usize,
    /// Output file; defaults to series.txt in the output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub out_dir: OutDirArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    /// Preset name (model1..model6) or JSON model file.
    pub model: String,
    #[arg(long = "T", default_value_t = 256)]
    pub len: usize,
    #[arg(long = "N", default_value_t = 1000)]
    pub replications: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = dftstat::simulate::DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[command(flatten)]
    pub test: TestArgs,
    #[command(flatten)]
    pub out_dir: OutDirArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub const MC_LEVEL: f64 = 0.05;

impl McArgs {
    pub fn mc_config(&self) -> Result<dftstat::experiments::McConfig> {
        if self.test.levels.len() > 1 {
            return Err(Error::InvalidInput("mc and scan take a single --level".into()));
        }
        let test = self.test.config(&[MC_LEVEL])?;
        let level = test.levels[0];
        let cfg = dftstat::experiments::McConfig::new(
            load_model(&self.model)?,
            self.len,
            test,
            self.replications,
        )
        .with_seed(self.seed)
        .with_level(level)
        .with_burn_in(self.burn_in);
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct McCmd {
    #[command(flatten)]
    pub mc: McArgs,
    /// Histogram bins for the statistic density.
    #[arg(long, default_value_t = dftstat::experiments::DEFAULT_BINS)]
    pub bins: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ScanCmd {
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PowerCmd {
    /// Preset name (model1..model6) or JSON model file.
    pub model: String,
    /// Lags: a comma list, ranges a..b inclusive, or both.
    #[arg(long, default_value = "1..10")]
    pub lags: String,
    /// Evaluate the shifted spectrum at ω + 2πr/T instead of ω.
    #[arg(long = "T")]
    pub len: Option<usize>,
    #[arg(long, default_value_t = 1024)]
    pub u_grid: usize,
    #[arg(long, default_value_t = 256)]
    pub omega_grid: usize,
    #[command(flatten)]
    pub out_dir: OutDirArg,
    #[command(flatten)]
    pub output: OutputArgs,
}
