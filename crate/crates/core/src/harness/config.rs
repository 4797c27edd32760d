use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Signature;
use crate::sampling::SamplerConfig;

/// Environment variable consulted when neither the command line nor the
/// config file sets a seed.
pub const SEED_ENV: &str = "KREINVAL_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Structural,
    Trace,
    Weyl,
    Lidskii,
    ThompsonFreede,
    CourantFischer,
    KyFan,
    Wielandt,
    Polyhedral,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Structural,
        Suite::Trace,
        Suite::Weyl,
        Suite::Lidskii,
        Suite::ThompsonFreede,
        Suite::CourantFischer,
        Suite::KyFan,
        Suite::Wielandt,
        Suite::Polyhedral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structural => "structural",
            Suite::Trace => "trace",
            Suite::Weyl => "weyl",
            Suite::Lidskii => "lidskii",
            Suite::ThompsonFreede => "thompson_freede",
            Suite::CourantFischer => "courant_fischer",
            Suite::KyFan => "ky_fan",
            Suite::Wielandt => "wielandt",
            Suite::Polyhedral => "polyhedral",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config {
                field: "suites".into(),
                message: format!(
                    "unknown suite `{s}`, expected one of {}",
                    Suite::ALL.map(Suite::name).join(", ")
                ),
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config {
                field: "format".into(),
                message: format!("unknown format `{other}`, expected json or csv"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Structural residuals (`AJ = JA*`).
    pub tol_struct: f64,
    /// Planted eigenvalue recovery, multiplied by `cond(U)²`.
    pub tol_eig: f64,
    /// One-sided bounds and sum inequalities.
    pub tol_check: f64,
    /// Equalities at eigenvector witnesses.
    pub tol_witness: f64,
    /// Trace identity, relative.
    pub tol_trace: f64,
    /// LP membership residuals.
    pub tol_lp: f64,
    /// Ascent target for the existential flag statement.
    pub tol_soft: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_struct: 1e-10,
            tol_eig: 1e-8,
            tol_check: 1e-8,
            tol_witness: 1e-9,
            tol_trace: 1e-9,
            tol_lp: 1e-9,
            tol_soft: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleCounts {
    pub rayleigh_vectors: usize,
    pub cf_subspaces: usize,
    pub ky_fan_frames: usize,
    pub flags: usize,
    pub frames_per_flag: usize,
    pub ascent_flags: usize,
    pub ascent_iters: usize,
    pub interlace_subspaces: usize,
    /// Tuples visited when `p` or `q` exceeds the exhaustive limit.
    pub tuple_samples: usize,
}

impl Default for SampleCounts {
    fn default() -> Self {
        SampleCounts {
            rayleigh_vectors: 1000,
            cf_subspaces: 500,
            ky_fan_frames: 200,
            flags: 100,
            frames_per_flag: 20,
            ascent_flags: 50,
            ascent_iters: 200,
            interlace_subspaces: 50,
            tuple_samples: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub p: usize,
    pub q: usize,
    pub instances: usize,
    /// Run seed; unset means `KREINVAL_SEED`, then 0.
    pub seed: Option<u64>,
    pub suites: Vec<Suite>,
    pub max_m: usize,
    pub tolerances: Tolerances,
    pub sampler: SamplerConfig,
    pub samples: SampleCounts,
    /// Minimum success rate of soft checks.
    pub soft_threshold: f64,
    /// Output directory; not echoed into summaries.
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            p: 2,
            q: 1,
            instances: 10,
            seed: None,
            suites: Suite::ALL.to_vec(),
            max_m: 4,
            tolerances: Tolerances::default(),
            sampler: SamplerConfig::default(),
            samples: SampleCounts::default(),
            soft_threshold: 0.95,
            out: None,
            format: OutputFormat::Json,
        }
    }
}

fn config_error(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        message: message.into(),
    }
}

impl SuiteConfig {
    /// Parses a JSON config; syntax and schema errors carry line and column.
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| config_error(origin, e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn signature(&self) -> Result<Signature> {
        Signature::new(self.p, self.q).map_err(|e| config_error("p, q", e.to_string()))
    }

    /// Fills an unset seed from `env_value` (the value of `KREINVAL_SEED`).
    pub fn resolve_seed(&mut self, env_value: Option<&str>) -> Result<()> {
        if self.seed.is_none() {
            self.seed = match env_value {
                Some(v) => Some(v.trim().parse().map_err(|_| {
                    config_error(SEED_ENV, format!("`{v}` is not an unsigned 64-bit integer"))
                })?),
                None => Some(0),
            };
        }
        self.sampler.seed = self.seed.unwrap_or(0);
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        self.signature()?;
        if self.instances == 0 {
            return Err(config_error("instances", "must be >= 1"));
        }
        if self.suites.is_empty() {
            return Err(config_error("suites", "at least one suite is required"));
        }
        if self.max_m == 0 {
            return Err(config_error("max_m", "must be >= 1"));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("tolerances.tol_struct", t.tol_struct),
            ("tolerances.tol_eig", t.tol_eig),
            ("tolerances.tol_check", t.tol_check),
            ("tolerances.tol_witness", t.tol_witness),
            ("tolerances.tol_trace", t.tol_trace),
            ("tolerances.tol_lp", t.tol_lp),
            ("tolerances.tol_soft", t.tol_soft),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(config_error(name, "must be a finite number > 0"));
            }
        }
        let s = &self.samples;
        for (name, v) in [
            ("samples.rayleigh_vectors", s.rayleigh_vectors),
            ("samples.cf_subspaces", s.cf_subspaces),
            ("samples.ky_fan_frames", s.ky_fan_frames),
            ("samples.flags", s.flags),
            ("samples.frames_per_flag", s.frames_per_flag),
            ("samples.ascent_flags", s.ascent_flags),
            ("samples.ascent_iters", s.ascent_iters),
            ("samples.interlace_subspaces", s.interlace_subspaces),
            ("samples.tuple_samples", s.tuple_samples),
        ] {
            if v == 0 {
                return Err(config_error(name, "must be >= 1"));
            }
        }
        if !(0.0..=1.0).contains(&self.soft_threshold) {
            return Err(config_error("soft_threshold", "must lie in [0, 1]"));
        }
        self.sampler.validate().map_err(|e| match e {
            Error::Config { field, message } => config_error(&format!("sampler.{field}"), message),
            other => other,
        })
    }
}
