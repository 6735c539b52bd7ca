//! Numeric configuration: CLI flags override config-file entries, which
//! override the built-in defaults. The effective values are echoed into
//! every manifest.

use crate::error::CliError;
use gslab_core::radial::IntegratorConfig;
use serde::Serialize;
use std::path::Path;

/// `key = value` entries loaded from --config.
#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub r0: Option<f64>,
    pub rmax: Option<f64>,
    pub zero_threshold: Option<f64>,
    pub blowup_threshold: Option<f64>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "{}:{}: expected `key = value`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse = |v: &str| -> Result<f64, CliError> {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("bad numeric value for {key}: {v}")))
            };
            match key {
                "rtol" => cfg.rtol = Some(parse(value)?),
                "atol" => cfg.atol = Some(parse(value)?),
                "r0" => cfg.r0 = Some(parse(value)?),
                "rmax" => cfg.rmax = Some(parse(value)?),
                "zero_threshold" => cfg.zero_threshold = Some(parse(value)?),
                "blowup_threshold" => cfg.blowup_threshold = Some(parse(value)?),
                "jobs" => {
                    cfg.jobs = Some(value.parse().map_err(|_| {
                        CliError::Usage(format!("bad integer value for jobs: {value}"))
                    })?)
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown config key `{other}` in {}",
                        path.display()
                    )))
                }
            }
        }
        Ok(cfg)
    }
}

/// Resolved numeric settings. Absent thresholds fall back to the
/// amplitude-scaled defaults (1e-4·a and 1e8·a).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Numerics {
    pub rtol: f64,
    pub atol: f64,
    pub r0: f64,
    pub rmax: f64,
    pub zero_threshold: Option<f64>,
    pub blowup_threshold: Option<f64>,
}

impl Numerics {
    pub fn resolve(
        cli_rtol: Option<f64>,
        cli_atol: Option<f64>,
        cli_r0: Option<f64>,
        cli_rmax: Option<f64>,
        cli_zero: Option<f64>,
        cli_blowup: Option<f64>,
        file: &FileConfig,
    ) -> Self {
        Self {
            rtol: cli_rtol.or(file.rtol).unwrap_or(1e-9),
            atol: cli_atol.or(file.atol).unwrap_or(1e-12),
            r0: cli_r0.or(file.r0).unwrap_or(1e-3),
            rmax: cli_rmax.or(file.rmax).unwrap_or(100.0),
            zero_threshold: cli_zero.or(file.zero_threshold),
            blowup_threshold: cli_blowup.or(file.blowup_threshold),
        }
    }

    /// Integrator configuration for a run at amplitude `a`.
    pub fn integrator_for(&self, a: f64) -> IntegratorConfig {
        let defaults = IntegratorConfig::for_amplitude(a);
        IntegratorConfig {
            rel_tol: self.rtol,
            abs_tol: self.atol,
            r0: self.r0,
            r_max: self.rmax,
            zero_threshold: self.zero_threshold.unwrap_or(defaults.zero_threshold),
            blowup_threshold: self.blowup_threshold.unwrap_or(defaults.blowup_threshold),
            ..defaults
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.integrator_for(1.0)
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}
