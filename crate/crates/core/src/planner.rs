//! Closed-form description of repeated gate application.
//!
//! Each success maps `tan θ → Δ · tan θ`. Starting from `θ₀`, the planner
//! picks the number of applications `T`, then reports the angle trajectory,
//! the per-step and total success probabilities, the fidelity of the final
//! state with the Bell state `(|00⟩ + |11⟩)/√2`, and the worst-case fidelity
//! over all inputs for a given step `Δ`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)]
use num_traits::Float;

use crate::gate::GateParams;
use crate::states::SchmidtState;
use crate::{Error, Result};

/// Distance from an integer below which the step-count quotient snaps to it.
const GAUSS_SNAP: f64 = 1e-9;

/// How the number of gate applications is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StepMode {
    /// Largest `T` with `θ_T ≤ π/4`.
    Capped,
    /// Whichever of `T` and `T + 1` (capped count and one more) lands closer
    /// to `π/4`; ties go to the smaller.
    #[default]
    Nearest,
}

impl StepMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            StepMode::Capped => "capped",
            StepMode::Nearest => "nearest",
        }
    }
}

impl fmt::Display for StepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "capped" => Ok(StepMode::Capped),
            "nearest" => Ok(StepMode::Nearest),
            _ => Err(Error::UnknownMode(s.into())),
        }
    }
}

fn advance(theta: f64, step: f64) -> f64 {
    (step * theta.tan()).atan()
}

/// Angle after `k` successes, `arctan(Δᵏ tan θ₀)`.
fn angle_after(theta0: f64, step: f64, k: u32) -> f64 {
    (theta0.tan() * pow_step(step, k)).atan()
}

fn pow_step(step: f64, k: u32) -> f64 {
    match i32::try_from(k) {
        Ok(k) => step.powi(k),
        Err(_) => step.powf(k as f64),
    }
}

fn check_theta0(theta0: f64) -> Result<()> {
    if theta0 > 0.0 && theta0 <= FRAC_PI_4 {
        Ok(())
    } else {
        Err(Error::domain("0 < theta0 <= pi/4", theta0))
    }
}

/// Schmidt angle after one successful application: `arctan(Δ · tan θ)`.
pub fn next_theta(theta: f64, params: &GateParams) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::domain("0 < theta < pi/2", theta));
    }
    Ok(advance(theta, params.step()))
}

/// Number of gate applications for input angle `theta0`.
pub fn step_count(theta0: f64, params: &GateParams, mode: StepMode) -> Result<u32> {
    check_theta0(theta0)?;
    let step = params.step();
    let quotient = -theta0.tan().ln() / step.ln();
    let nearest_int = quotient.round();
    let quotient = if (quotient - nearest_int).abs() < GAUSS_SNAP {
        nearest_int
    } else {
        quotient
    };
    let capped = quotient.floor().max(0.0);
    if !capped.is_finite() || capped > u32::MAX as f64 - 1.0 {
        return Err(Error::domain("step count must fit in u32", capped));
    }
    let capped = capped as u32;
    match mode {
        StepMode::Capped => Ok(capped),
        StepMode::Nearest => {
            let below = (angle_after(theta0, step, capped) - FRAC_PI_4).abs();
            let above = (angle_after(theta0, step, capped + 1) - FRAC_PI_4).abs();
            Ok(if below <= above { capped } else { capped + 1 })
        }
    }
}

/// Fidelity of the state after `steps` successes with the Bell state:
/// `½ (1 + x)² / (1 + x²)` where `x = tan θ₀ · Δ^T`.
pub fn fidelity(theta0: f64, params: &GateParams, steps: u32) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&theta0) {
        return Err(Error::domain("0 <= theta0 <= pi/2", theta0));
    }
    Ok(fidelity_of_tan(theta0.tan() * pow_step(params.step(), steps)))
}

/// `½ (1 + x)² / (1 + x²)`, evaluated as `½ + x / (1 + x²)`.
fn fidelity_of_tan(x: f64) -> f64 {
    if !x.is_finite() {
        return 0.5;
    }
    let r = if x > 1.0 {
        let inv = 1.0 / x;
        inv / (1.0 + inv * inv)
    } else {
        x / (1.0 + x * x)
    };
    0.5 + r
}

/// Worst-case fidelity over all inputs for step `Δ`:
/// `½ ((1 + √Δ)/√(1 + Δ))²`.
pub fn f_min(step: f64) -> Result<f64> {
    if !(1.0..).contains(&step) || !step.is_finite() {
        return Err(Error::domain("step >= 1", step));
    }
    Ok(0.5 + step.sqrt() / (1.0 + step))
}

/// Full closed-form description of concentrating `θ₀` with one gate.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationPlan {
    pub theta0: f64,
    pub params: GateParams,
    pub mode: StepMode,
    pub steps: u32,
    /// `θ₀, θ₁, …, θ_T`.
    pub thetas: Vec<f64>,
    /// `γ₁, …, γ_T`, with `γ_i = sin² θ_{i−1} / sin² θ_i`.
    pub step_probs: Vec<f64>,
    /// `Γ = sin² θ₀ / sin² θ_T`.
    pub total_prob: f64,
    pub fidelity: f64,
    /// Final state rebuilt from the product form of `G^T` and brought into
    /// canonical range.
    pub final_state: SchmidtState,
    /// Normalizing coefficient `A` of the product-form final state.
    pub normalization: f64,
    /// `|A · ‖unnormalized final state‖ − 1|`.
    pub normalization_residual: f64,
}

impl ConcentrationPlan {
    pub fn theta_final(&self) -> f64 {
        *self.thetas.last().expect("trajectory holds theta0")
    }

    /// `2 sin² θ₀`, the `Δ → 1` limit of the total probability.
    pub fn total_prob_limit(&self) -> f64 {
        2.0 * self.theta0.sin().powi(2)
    }

    pub fn entanglement_trajectory(&self) -> Vec<f64> {
        self.thetas
            .iter()
            .map(|&t| crate::states::entanglement(t).map(|e| e.entropy).unwrap_or(f64::NAN))
            .collect()
    }
}

/// Product-form amplitudes `(c₁₁, c₀₀)` after `T` successes, before
/// normalization, and the normalizing coefficient `A`.
fn product_form(theta0: f64, params: &GateParams, steps: u32) -> (f64, f64, f64) {
    let (xi, eta) = (params.xi(), params.eta());
    let c11 = theta0.cos() * pow_step(eta.cos() / xi.cos(), steps);
    let c00 = theta0.sin() * pow_step(eta.sin() / xi.sin(), steps);
    let (txi, teta) = (xi.tan(), eta.tan());
    let weight = theta0.cos().powi(2) + pow_step(params.step(), steps).powi(2) * theta0.sin().powi(2);
    let shrink = pow_step((1.0 + txi * txi) / (1.0 + teta * teta), steps);
    (c11, c00, (weight * shrink).sqrt().recip())
}

pub fn make_plan(theta0: f64, params: &GateParams, mode: StepMode) -> Result<ConcentrationPlan> {
    let steps = step_count(theta0, params, mode)?;

    let mut thetas = Vec::with_capacity(steps as usize + 1);
    thetas.push(theta0);
    let mut theta = theta0;
    for _ in 0..steps {
        theta = next_theta(theta, params)?;
        thetas.push(theta);
    }
    let step_probs: Vec<f64> = thetas.windows(2).map(|w| (w[0].sin() / w[1].sin()).powi(2)).collect();
    let total_prob = (theta0.sin() / theta.sin()).powi(2);

    let (c11, c00, normalization) = product_form(theta0, params, steps);
    let normalization_residual = (normalization * c11.hypot(c00) - 1.0).abs();
    let final_angle = if c11.is_finite() && c00.is_finite() && (c11 > 0.0 || c00 > 0.0) {
        c00.atan2(c11)
    } else {
        theta
    };

    Ok(ConcentrationPlan {
        theta0,
        params: *params,
        mode,
        steps,
        thetas,
        step_probs,
        total_prob,
        fidelity: fidelity(theta0, params, steps)?,
        final_state: SchmidtState::from_angle(final_angle.clamp(0.0, FRAC_PI_2))?,
        normalization,
        normalization_residual,
    })
}
