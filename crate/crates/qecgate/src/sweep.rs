//! Parameter sweeps over `θ₀` (fixed gate) or over the concentration step `Δ`
//! (fixed `θ₀` and `ξ`, with `η = arctan(Δ tan ξ)`).
//!
//! A sweep can be described by flags or by a TOML file:
//!
//! ```toml
//! variable = "delta"
//! start = 1.01
//! stop = 2.0
//! points = 100
//! theta0 = 0.3
//! xi = 0.2
//! mode = "nearest"
//! output = "fmin.csv"
//! ```

use std::f64::consts::FRAC_PI_4;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use qecgate_core::{f_min, make_plan, GateParams, StepMode};
use rayon::prelude::*;
use serde::Deserialize;

use crate::records::PlanRecord;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    Theta0,
    Delta,
}

impl SweepVariable {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepVariable::Theta0 => "theta0",
            SweepVariable::Delta => "delta",
        }
    }
}

/// Sweep description as read from a TOML file; every field is optional so
/// that command-line flags can fill in or override it.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub variable: Option<SweepVariable>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub points: Option<usize>,
    pub theta0: Option<f64>,
    pub xi: Option<f64>,
    pub eta: Option<f64>,
    pub mode: Option<String>,
    pub output: Option<PathBuf>,
}

impl SweepFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    /// Fields set in `other` take precedence.
    pub fn merge(self, other: SweepFile) -> SweepFile {
        SweepFile {
            variable: other.variable.or(self.variable),
            start: other.start.or(self.start),
            stop: other.stop.or(self.stop),
            points: other.points.or(self.points),
            theta0: other.theta0.or(self.theta0),
            xi: other.xi.or(self.xi),
            eta: other.eta.or(self.eta),
            mode: other.mode.or(self.mode),
            output: other.output.or(self.output),
        }
    }
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub theta0: Option<f64>,
    pub xi: f64,
    pub eta: Option<f64>,
    pub mode: StepMode,
    pub output: Option<PathBuf>,
}

fn missing(name: &str) -> CliError {
    CliError::Invalid(format!("sweep is missing '{name}'"))
}

impl TryFrom<SweepFile> for SweepSpec {
    type Error = CliError;

    fn try_from(f: SweepFile) -> Result<Self, CliError> {
        let spec = SweepSpec {
            variable: f.variable.ok_or_else(|| missing("variable"))?,
            start: f.start.ok_or_else(|| missing("start"))?,
            stop: f.stop.ok_or_else(|| missing("stop"))?,
            points: f.points.ok_or_else(|| missing("points"))?,
            theta0: f.theta0,
            xi: f.xi.ok_or_else(|| missing("xi"))?,
            eta: f.eta,
            mode: f.mode.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            output: f.output,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(CliError::Invalid(format!(
                "sweep needs start < stop (got {} and {})",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(CliError::Invalid(format!(
                "sweep needs points >= 2 (got {})",
                self.points
            )));
        }
        match self.variable {
            SweepVariable::Theta0 => {
                let eta = self.eta.ok_or_else(|| missing("eta"))?;
                GateParams::new(self.xi, eta)?;
                if !(self.start > 0.0 && self.stop <= FRAC_PI_4) {
                    return Err(CliError::Invalid(format!(
                        "theta0 sweep needs 0 < start < stop <= pi/4 (got {}..{})",
                        self.start, self.stop
                    )));
                }
            }
            SweepVariable::Delta => {
                let theta0 = self.theta0.ok_or_else(|| missing("theta0"))?;
                if !(theta0 > 0.0 && theta0 <= FRAC_PI_4) {
                    return Err(CliError::Invalid(format!(
                        "theta0 must satisfy 0 < theta0 <= pi/4 (got {theta0})"
                    )));
                }
                if self.start <= 1.0 {
                    return Err(CliError::Invalid(format!(
                        "delta sweep needs start > 1 (got {})",
                        self.start
                    )));
                }
                GateParams::from_step(self.xi, self.stop)?;
            }
        }
        Ok(())
    }

    /// Evenly spaced grid including both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last as f64
                }
            })
            .collect()
    }

    /// Evaluates every grid point; rows come back in grid order.
    pub fn run(&self) -> Result<Vec<PlanRecord>, CliError> {
        self.grid().into_par_iter().map(|x| self.evaluate(x)).collect()
    }

    fn evaluate(&self, x: f64) -> Result<PlanRecord, CliError> {
        match self.variable {
            SweepVariable::Theta0 => {
                let params = GateParams::new(self.xi, self.eta.expect("validated"))?;
                Ok(PlanRecord::from(&make_plan(x, &params, self.mode)?))
            }
            SweepVariable::Delta => {
                let params = GateParams::from_step(self.xi, x)?;
                let mut rec = PlanRecord::from(&make_plan(self.theta0.expect("validated"), &params, self.mode)?);
                rec.f_min = Some(f_min(x)?);
                Ok(rec)
            }
        }
    }
}
