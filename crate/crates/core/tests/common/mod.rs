#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_4, PI};

use qecgate_core::{Complex64, ComplexMatrix, ComplexVector, GateParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix2(rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_rows([
        [random_complex(rng), random_complex(rng)],
        [random_complex(rng), random_complex(rng)],
    ])
}

/// Normalized state with uniformly drawn real and imaginary parts.
pub fn random_state(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    loop {
        let v = ComplexVector::new((0..dim).map(|_| random_complex(rng)).collect());
        if v.norm() > 1e-3 {
            return v.normalized().unwrap();
        }
    }
}

/// `e^{iα} [[e^{iβ} cos t, −e^{iγ} sin t], [e^{−iγ} sin t, e^{−iβ} cos t]]`.
pub fn random_unitary2(rng: &mut impl Rng) -> ComplexMatrix {
    let t = rng.random_range(0.0..PI);
    let [a, b, g] = [(); 3].map(|_| rng.random_range(0.0..2.0 * PI));
    let e = |phi: f64| Complex64::from_polar(1.0, phi);
    ComplexMatrix::from_rows([
        [e(a + b) * t.cos(), -e(a + g) * t.sin()],
        [e(a - g) * t.sin(), e(a - b) * t.cos()],
    ])
}

pub fn random_params(rng: &mut impl Rng) -> GateParams {
    loop {
        let xi = rng.random_range(1e-3..FRAC_PI_4 - 1e-3);
        let eta = rng.random_range(xi..FRAC_PI_4 - 1e-6);
        if let Ok(p) = GateParams::new(xi, eta) {
            if eta - xi > 1e-6 {
                return p;
            }
        }
    }
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn bell() -> ComplexVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexVector::from_real(&[h, 0.0, 0.0, h])
}

/// Deterministic grid of 50 `(θ₀, ξ, η)` cases.
pub fn grid50() -> Vec<(f64, GateParams)> {
    let thetas = [0.05, 0.2, 0.45, 0.7, FRAC_PI_4];
    let pairs = [
        (0.05, 0.08),
        (0.1, 0.2),
        (0.15, 0.2),
        (0.2, 0.5),
        (0.3, 0.35),
        (0.35, 0.7),
        (0.4, 0.6),
        (0.5, 0.55),
        (0.6, 0.78),
        (0.7, 0.75),
    ];
    thetas
        .iter()
        .flat_map(|&t| pairs.iter().map(move |&(x, e)| (t, GateParams::new(x, e).unwrap())))
        .collect()
}

/// Dense simulation of one gate application on party 1 of an `n`-party
/// register with the probe appended as least significant qubit. Returns the
/// `P0` branch probability and the renormalized party state.
pub fn dense_multipartite_step(gate: &ComplexMatrix, n: usize, state: &ComplexVector) -> (f64, ComplexVector) {
    let dim = 1usize << n;
    assert_eq!(state.dim(), dim);
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * dim];
    for idx in 0..dim {
        let amp = state[idx];
        let a = idx >> (n - 1);
        let rest = idx & ((1 << (n - 1)) - 1);
        for a2 in 0..2 {
            for p2 in 0..2 {
                let g = gate[(a2 * 2 + p2, a * 2)];
                let target = ((a2 << (n - 1)) | rest) * 2 + p2;
                out[target] += g * amp;
            }
        }
    }
    let success = ComplexVector::new((0..dim).map(|i| out[i * 2]).collect());
    let prob = success.norm_sqr();
    (prob, success.normalized().unwrap())
}
