//! The concentration gate `G(ξ, η)`.
//!
//! The gate is the controlled rotation `Λ₁(U)` on Alice's qubit `A` and a
//! probe `P`: identity when `A = |0⟩`, and
//!
//! ```text
//! U = | δ        -√(1-δ²) |      δ = tan ξ / tan η
//!     | √(1-δ²)   δ       |
//! ```
//!
//! on the probe when `A = |1⟩`. The probe starts in `|P0⟩` and is measured
//! afterwards; outcome `P0` is success.
//!
//! Registers are ordered `A ⊗ P` for the gate matrix and `A ⊗ B ⊗ P` for the
//! full system, big-endian in both.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{ComplexMatrix, ComplexVector, Tolerances};
use crate::{Error, Result};

/// Parameters of one gate `G(ξ, η)`, `0 < ξ < η < π/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateParams {
    xi: f64,
    eta: f64,
    delta: f64,
    step: f64,
    gamma0: f64,
}

impl GateParams {
    pub fn new(xi: f64, eta: f64) -> Result<Self> {
        if !(xi.is_finite() && eta.is_finite()) || !(0.0 < xi && xi < eta && eta < FRAC_PI_4) {
            let value = if xi <= 0.0 || !xi.is_finite() || xi >= eta {
                xi
            } else {
                eta
            };
            return Err(Error::domain("0 < xi < eta < pi/4", value));
        }
        let (txi, teta) = (xi.tan(), eta.tan());
        Ok(GateParams {
            xi,
            eta,
            delta: txi / teta,
            step: teta / txi,
            gamma0: (xi.sin() / eta.sin()).powi(2),
        })
    }

    /// Gate with the given `ξ` and concentration step `Δ`, i.e.
    /// `η = arctan(Δ · tan ξ)`.
    pub fn from_step(xi: f64, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 1.0) {
            return Err(Error::domain("step > 1", step));
        }
        if !(xi > 0.0 && xi < FRAC_PI_4) {
            return Err(Error::domain("0 < xi < pi/4", xi));
        }
        Self::new(xi, (step * xi.tan()).atan())
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `δ = tan ξ / tan η`, the success amplitude on `|1⟩|P0⟩`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Concentration step `Δ = 1/δ = tan η / tan ξ`.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// `γ₀ = sin² ξ / sin² η`, the optimal probability of taking
    /// `θ = ξ` to `θ = η`.
    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn unitary(&self) -> ComplexMatrix {
        controlled_rotation(self.delta)
    }
}

fn controlled_rotation(delta: f64) -> ComplexMatrix {
    let s = (1.0 - delta * delta).max(0.0).sqrt();
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, delta, -s],
        [0.0, 0.0, s, delta],
    ])
}

/// The 4×4 gate unitary on `A ⊗ P`.
pub fn build_gate(xi: f64, eta: f64) -> Result<ComplexMatrix> {
    GateParams::new(xi, eta).map(|p| p.unitary())
}

/// Probe readout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbeLabel {
    P0,
    P1,
}

/// One measurement branch of a postselected gate application.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchOutcome {
    pub probe: ProbeLabel,
    /// Conditional state on `A ⊗ B`; the zero vector when `probability == 0`.
    pub state: ComplexVector,
    pub probability: f64,
    /// False for a zero-probability branch, whose state is not normalized.
    pub valid: bool,
}

/// Lifts a gate on `A ⊗ P` to `A ⊗ B ⊗ P` with identity on `B`.
pub fn embed_gate(gate: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_gate_shape(gate)?;
    let mut full = ComplexMatrix::zeros(8, 8);
    for a in 0..2 {
        for p in 0..2 {
            for a2 in 0..2 {
                for p2 in 0..2 {
                    let g = gate[(a * 2 + p, a2 * 2 + p2)];
                    for b in 0..2 {
                        full[(a * 4 + b * 2 + p, a2 * 4 + b * 2 + p2)] = g;
                    }
                }
            }
        }
    }
    Ok(full)
}

fn check_gate_shape(gate: &ComplexMatrix) -> Result<()> {
    if gate.rows() != 4 || gate.cols() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: if gate.rows() != 4 { gate.rows() } else { gate.cols() },
        });
    }
    Ok(())
}

/// Applies `gate ⊗ I_B` to `state ⊗ |P0⟩` and projects the probe.
///
/// Returns the `P0` branch first, then `P1`.
pub fn apply_postselect(gate: &ComplexMatrix, state: &ComplexVector) -> Result<[BranchOutcome; 2]> {
    let tol = Tolerances::default();
    check_gate_shape(gate)?;
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: state.dim(),
        });
    }
    let norm = state.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > tol.input_norm {
        return Err(Error::NotNormalized { norm });
    }
    let defect = gate.unitarity_defect();
    if defect > tol.input_norm {
        return Err(Error::domain("gate must be unitary", defect));
    }

    let mut full = ComplexVector::zeros(8);
    for (ab, &amp) in state.entries().iter().enumerate() {
        full[ab * 2] = amp;
    }
    let out = embed_gate(gate)?.apply(&full)?;

    let branch = |probe: ProbeLabel, p: usize| {
        let projected = ComplexVector::new((0..4).map(|ab| out[ab * 2 + p]).collect::<Vec<_>>());
        let probability = projected.norm_sqr();
        match projected.normalized() {
            Some(state) if probability > 0.0 => BranchOutcome {
                probe,
                state,
                probability,
                valid: true,
            },
            _ => BranchOutcome {
                probe,
                state: ComplexVector::zeros(4),
                probability: 0.0,
                valid: false,
            },
        }
    };
    Ok([branch(ProbeLabel::P0, 0), branch(ProbeLabel::P1, 1)])
}

/// `(probability, state)` of the success branch when the amplitudes on
/// `|1⟩_A|P0⟩ → |1⟩_A|P0⟩` and `|0⟩_A|P0⟩ → |0⟩_A|P0⟩` are applied to a state
/// supported on `|0…0⟩` and `|1…1⟩`.
pub(crate) fn sparse_success(gate: &ComplexMatrix, c0: Complex64, c1: Complex64) -> (f64, Complex64, Complex64) {
    let keep0 = gate[(0, 0)];
    let keep1 = gate[(2, 2)];
    let (n0, n1) = (keep0 * c0, keep1 * c1);
    (n0.norm_sqr() + n1.norm_sqr(), n0, n1)
}
