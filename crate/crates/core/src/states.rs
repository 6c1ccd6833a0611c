//! Two-qubit pure states in Schmidt form `cos θ |11⟩ + sin θ |00⟩`.
//!
//! Amplitude vectors use the basis order `|00⟩, |01⟩, |10⟩, |11⟩` (qubit A
//! is the most significant bit), so the canonical state has amplitudes
//! `(sin θ, 0, 0, cos θ)`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{svd2x2, tensor_matrix, ComplexMatrix, ComplexVector, Tolerances};
use crate::{Error, Result, MAX_ENTANGLED_THETA};
use core::f64::consts::FRAC_PI_2;

/// `cos θ |11⟩ + sin θ |00⟩` as an amplitude vector; defined for any `θ`.
pub fn schmidt_amplitudes(theta: f64) -> ComplexVector {
    ComplexVector::from_real(&[theta.sin(), 0.0, 0.0, theta.cos()])
}

/// Canonical form of a two-qubit pure state: `(frame_a ⊗ frame_b)` applied to
/// `cos θ |11⟩ + sin θ |00⟩` with `0 ≤ θ ≤ π/4`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtState {
    pub theta: f64,
    pub frame_a: ComplexMatrix,
    pub frame_b: ComplexMatrix,
}

impl SchmidtState {
    /// Schmidt state with identity frames. `theta` must lie in `[0, π/4]`.
    pub fn canonical(theta: f64) -> Result<Self> {
        if !(0.0..=MAX_ENTANGLED_THETA).contains(&theta) {
            return Err(Error::domain("0 <= theta <= pi/4", theta));
        }
        Ok(SchmidtState {
            theta,
            frame_a: ComplexMatrix::identity(2),
            frame_b: ComplexMatrix::identity(2),
        })
    }

    /// Brings `cos θ |11⟩ + sin θ |00⟩` with `θ ∈ [0, π/2]` into canonical
    /// range. Above `π/4` the roles of `|00⟩` and `|11⟩` swap, which is
    /// absorbed into `X ⊗ X` frames.
    pub fn from_angle(theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::domain("0 <= theta <= pi/2", theta));
        }
        if theta <= MAX_ENTANGLED_THETA {
            return Self::canonical(theta);
        }
        let x = ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]);
        Ok(SchmidtState {
            theta: FRAC_PI_2 - theta,
            frame_a: x.clone(),
            frame_b: x,
        })
    }

    pub fn amplitudes(&self) -> ComplexVector {
        reconstruct(self)
    }

    pub fn entanglement(&self) -> EntanglementValue {
        entanglement(self.theta).expect("canonical theta is in range")
    }
}

/// Entanglement entropy in ebits (base 2), in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntanglementValue {
    pub entropy: f64,
}

/// Decomposes a normalized two-qubit state into Schmidt form.
///
/// The input must have unit norm within 1e-9; it is renormalized before the
/// decomposition. At `θ = π/4` the frames are not unique and any valid pair
/// is returned.
pub fn schmidt_decompose(amps: &ComplexVector) -> Result<SchmidtState> {
    schmidt_decompose_with(amps, &Tolerances::default())
}

pub fn schmidt_decompose_with(amps: &ComplexVector, tol: &Tolerances) -> Result<SchmidtState> {
    if amps.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: amps.dim(),
        });
    }
    let norm = amps.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > tol.input_norm {
        return Err(Error::NotNormalized { norm });
    }
    let psi = amps.scale(Complex64::new(1.0 / norm, 0.0));

    // psi = Σ_ab M_ab |a⟩|b⟩ = Σ_k s_k |u_k⟩ ⊗ |conj(v_k)⟩
    let m = ComplexMatrix::new(2, 2, psi.into_entries())?;
    let svd = svd2x2(&m)?;
    let [s0, s1] = svd.s;
    let theta = s1.atan2(s0).clamp(0.0, MAX_ENTANGLED_THETA);

    // |1⟩ carries the larger Schmidt coefficient, |0⟩ the smaller.
    let u = |k: usize| svd.u.column(k);
    let vbar = |k: usize| ComplexVector::new(svd.v.column(k).entries().iter().map(|z| z.conj()).collect());
    let frame_a = ComplexMatrix::from_columns(&[u(1), u(0)])?;
    let frame_b = ComplexMatrix::from_columns(&[vbar(1), vbar(0)])?;

    Ok(SchmidtState {
        theta,
        frame_a,
        frame_b,
    })
}

/// Amplitudes of `(frame_a ⊗ frame_b)(cos θ |11⟩ + sin θ |00⟩)`.
pub fn reconstruct(s: &SchmidtState) -> ComplexVector {
    tensor_matrix(&s.frame_a, &s.frame_b)
        .apply(&schmidt_amplitudes(s.theta))
        .expect("2x2 frames act on a 4-dim state")
}

/// Binary entropy of `cos² θ` in bits, with `0 · log 0 = 0`.
///
/// Accepts `θ ∈ [0, π/2]`; symmetric about `π/4`.
pub fn entanglement(theta: f64) -> Result<EntanglementValue> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::domain("0 <= theta <= pi/2", theta));
    }
    let c2 = theta.cos().powi(2);
    let s2 = theta.sin().powi(2);
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(EntanglementValue {
        entropy: (term(c2) + term(s2)).clamp(0.0, 1.0),
    })
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell_state() -> ComplexVector {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    ComplexVector::from_real(&[h, 0.0, 0.0, h])
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn product_state_has_zero_theta() {
        let s = schmidt_decompose(&ComplexVector::basis(4, 0)).unwrap();
        assert_eq!(s.theta, 0.0);
        assert!(reconstruct(&s).overlap(&ComplexVector::basis(4, 0)).unwrap() > 1.0 - 1e-15);
    }

    #[test]
    fn product_01_state() {
        let psi = ComplexVector::basis(4, 1);
        let s = schmidt_decompose(&psi).unwrap();
        assert_eq!(s.theta, 0.0);
        assert!(reconstruct(&s).overlap(&psi).unwrap() > 1.0 - 1e-15);
    }

    #[test]
    fn bell_state_is_maximal() {
        let s = schmidt_decompose(&bell_state()).unwrap();
        assert!((s.theta - FRAC_PI_4).abs() < 1e-12);
        assert!(reconstruct(&s).overlap(&bell_state()).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn canonical_reconstruct() {
        let got = reconstruct(&SchmidtState::canonical(FRAC_PI_4).unwrap());
        let want = ComplexVector::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]);
        assert!(got.max_abs_diff(&want).unwrap() < 1e-15);
        // θ = 0 is the product state |11⟩
        let got = reconstruct(&SchmidtState::canonical(0.0).unwrap());
        assert_eq!(got, ComplexVector::basis(4, 3));
    }

    #[test]
    fn rejects_unnormalized() {
        let v = ComplexVector::from_real(&[1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(schmidt_decompose(&v), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn accepts_slightly_unnormalized() {
        let v = ComplexVector::from_real(&[1.0 + 5e-10, 0.0, 0.0, 0.0]);
        assert!(schmidt_decompose(&v).is_ok());
    }

    #[test]
    fn rejects_wrong_dim() {
        assert!(schmidt_decompose(&ComplexVector::basis(2, 0)).is_err());
    }

    #[test]
    fn entanglement_endpoints() {
        assert!((entanglement(FRAC_PI_4).unwrap().entropy - 1.0).abs() < 1e-15);
        assert_eq!(entanglement(0.0).unwrap().entropy, 0.0);
        assert!(entanglement(FRAC_PI_2).unwrap().entropy < 1e-15);
    }

    #[test]
    fn entanglement_pi_over_six() {
        let want = -0.75 * 0.75f64.log2() - 0.25 * 0.25f64.log2();
        let got = entanglement(FRAC_PI_6).unwrap().entropy;
        assert!((got - want).abs() < 1e-14);
        assert!(got < entanglement(FRAC_PI_4).unwrap().entropy);
    }

    #[test]
    fn entanglement_out_of_range() {
        assert!(entanglement(-0.1).is_err());
        assert!(entanglement(2.0).is_err());
    }

    #[test]
    fn entanglement_strictly_increasing_and_symmetric() {
        let grid: alloc::vec::Vec<f64> = (1..=100).map(|i| FRAC_PI_4 * i as f64 / 101.0).collect();
        for w in grid.windows(2) {
            assert!(entanglement(w[1]).unwrap().entropy > entanglement(w[0]).unwrap().entropy);
        }
        for &t in &grid {
            let a = entanglement(t).unwrap().entropy;
            let b = entanglement(FRAC_PI_2 - t).unwrap().entropy;
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn from_angle_above_pi_over_four() {
        let t = 1.2;
        let s = SchmidtState::from_angle(t).unwrap();
        assert!((s.theta - (FRAC_PI_2 - t)).abs() < 1e-15);
        assert!(reconstruct(&s).overlap(&schmidt_amplitudes(t)).unwrap() > 1.0 - 1e-15);
    }
}
