//! State-vector simulation of repeated gate application.
//!
//! [`run_exact`] pushes a dense two-qubit state through the postselected
//! gate and follows the success branch. [`run_multipartite`] does the same
//! for `cos θ |1…1⟩ + sin θ |0…0⟩` on `n` parties, keeping only the two
//! nonzero amplitudes since the gate touches one party and the probe.
//! [`run_monte_carlo`] samples probe outcomes from the exact branch
//! probabilities.
//!
//! Monte Carlo randomness is ChaCha8 (`rand_chacha`), keyed by
//! `seed_from_u64(seed)`, with trial `i` drawing from stream `i`. Uniform
//! draws use the 53-bit construction of `rand`'s `StandardUniform`, so records
//! are reproducible across platforms and independent of evaluation order.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gate::{apply_postselect, sparse_success, GateParams};
use crate::linalg::ComplexVector;
use crate::planner::{make_plan, StepMode};
use crate::states::schmidt_amplitudes;
use crate::{Error, Result};

/// Largest party count for which [`MultipartiteState::to_dense`] is allowed.
pub const MAX_DENSE_PARTIES: usize = 20;

fn check_angle(theta0: f64) -> Result<()> {
    if (0.0..=FRAC_PI_2).contains(&theta0) {
        Ok(())
    } else {
        Err(Error::domain("0 <= theta0 <= pi/2", theta0))
    }
}

/// Schmidt angle of `c11 |11⟩ + c00 |00⟩` from the amplitude moduli.
fn angle_of(c11: Complex64, c00: Complex64) -> f64 {
    c00.norm().atan2(c11.norm())
}

/// Result of following the success branch for a fixed number of steps.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRun {
    /// Conditional two-qubit state after the last success.
    pub final_state: ComplexVector,
    /// Success probability of each step.
    pub branch_probs: Vec<f64>,
    /// Schmidt angle before the first step and after each step.
    pub thetas: Vec<f64>,
    /// Conditional state of the failure branch at each step.
    pub failure_states: Vec<ComplexVector>,
}

impl ExactRun {
    pub fn success_prob(&self) -> f64 {
        self.branch_probs.iter().product()
    }

    pub fn theta_final(&self) -> f64 {
        *self.thetas.last().expect("trajectory holds theta0")
    }
}

/// Applies the gate `steps` times to `cos θ₀ |11⟩ + sin θ₀ |00⟩`, keeping the
/// `P0` branch each time.
pub fn run_exact(theta0: f64, params: &GateParams, steps: u32) -> Result<ExactRun> {
    check_angle(theta0)?;
    let gate = params.unitary();
    let mut state = schmidt_amplitudes(theta0);
    let mut run = ExactRun {
        final_state: state.clone(),
        branch_probs: Vec::with_capacity(steps as usize),
        thetas: Vec::with_capacity(steps as usize + 1),
        failure_states: Vec::with_capacity(steps as usize),
    };
    run.thetas.push(angle_of(state[3], state[0]));
    for _ in 0..steps {
        let [success, failure] = apply_postselect(&gate, &state)?;
        run.branch_probs.push(success.probability);
        run.failure_states.push(failure.state);
        state = success.state;
        run.thetas.push(angle_of(state[3], state[0]));
    }
    run.final_state = state;
    Ok(run)
}

/// `c1 |1…1⟩ + c0 |0…0⟩` on `n` parties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipartiteState {
    pub n: usize,
    pub c1: Complex64,
    pub c0: Complex64,
}

impl MultipartiteState {
    pub fn from_angle(n: usize, theta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::PartyCount(n));
        }
        Ok(MultipartiteState {
            n,
            c1: Complex64::new(theta.cos(), 0.0),
            c0: Complex64::new(theta.sin(), 0.0),
        })
    }

    pub fn theta(&self) -> f64 {
        angle_of(self.c1, self.c0)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    /// Dense `2ⁿ` amplitude vector, party 1 most significant.
    pub fn to_dense(&self) -> Result<ComplexVector> {
        if self.n > MAX_DENSE_PARTIES {
            return Err(Error::domain("dense form needs n <= 20", self.n as f64));
        }
        let dim = 1usize << self.n;
        let mut v = ComplexVector::zeros(dim);
        v[0] = self.c0;
        v[dim - 1] = self.c1;
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultipartiteRun {
    pub final_state: MultipartiteState,
    pub branch_probs: Vec<f64>,
    pub thetas: Vec<f64>,
}

impl MultipartiteRun {
    pub fn success_prob(&self) -> f64 {
        self.branch_probs.iter().product()
    }
}

/// Repeated gate application on party 1 of an `n`-party GHZ-type state.
pub fn run_multipartite(n: usize, theta0: f64, params: &GateParams, steps: u32) -> Result<MultipartiteRun> {
    let mut state = MultipartiteState::from_angle(n, theta0)?;
    check_angle(theta0)?;
    let gate = params.unitary();
    let mut branch_probs = Vec::with_capacity(steps as usize);
    let mut thetas = Vec::with_capacity(steps as usize + 1);
    thetas.push(state.theta());
    for _ in 0..steps {
        let (prob, c0, c1) = sparse_success(&gate, state.c0, state.c1);
        let scale = 1.0 / prob.sqrt();
        state.c0 = c0 * scale;
        state.c1 = c1 * scale;
        branch_probs.push(prob);
        thetas.push(state.theta());
    }
    Ok(MultipartiteRun {
        final_state: state,
        branch_probs,
        thetas,
    })
}

/// Outcome of a seeded Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    /// `successes / trials`.
    pub empirical_prob: f64,
    /// Mean number of steps performed by successful trials (0 if none).
    pub mean_steps_on_success: f64,
    /// Number of gate applications per trial.
    pub steps: u32,
    /// Closed-form total success probability for the same input.
    pub analytic_prob: f64,
}

impl RunRecord {
    /// Binomial standard deviation of `empirical_prob` under `analytic_prob`.
    pub fn std_error(&self) -> f64 {
        let p = self.analytic_prob;
        (p * (1.0 - p) / self.trials as f64).max(0.0).sqrt()
    }

    /// Deviation of the empirical rate from the analytic value in units of
    /// [`std_error`](Self::std_error). Zero when both coincide exactly.
    pub fn z_score(&self) -> f64 {
        let diff = self.empirical_prob - self.analytic_prob;
        let sigma = self.std_error();
        if diff == 0.0 {
            0.0
        } else if sigma == 0.0 {
            diff.signum() * f64::INFINITY
        } else {
            diff / sigma
        }
    }
}

/// Samples `trials` independent runs of the protocol. A trial succeeds iff
/// every one of its `T` probe readouts is `P0`; the first failure ends it.
pub fn run_monte_carlo(theta0: f64, params: &GateParams, mode: StepMode, trials: u64, seed: u64) -> Result<RunRecord> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let plan = make_plan(theta0, params, mode)?;
    let exact = run_exact(theta0, params, plan.steps)?;
    let base = ChaCha8Rng::seed_from_u64(seed);

    let mut successes = 0u64;
    let mut success_steps = 0u64;
    for trial in 0..trials {
        let mut rng = base.clone();
        rng.set_stream(trial);
        let completed = exact
            .branch_probs
            .iter()
            .take_while(|&&p| rng.random::<f64>() < p)
            .count();
        if completed == exact.branch_probs.len() {
            successes += 1;
            success_steps += completed as u64;
        }
    }

    Ok(RunRecord {
        seed,
        trials,
        successes,
        empirical_prob: successes as f64 / trials as f64,
        mean_steps_on_success: if successes == 0 {
            0.0
        } else {
            success_steps as f64 / successes as f64
        },
        steps: plan.steps,
        analytic_prob: plan.total_prob,
    })
}
