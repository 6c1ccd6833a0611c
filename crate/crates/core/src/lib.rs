//! Entanglement concentration gate: construction, closed-form planning and
//! exact simulation.
//!
//! The gate `G(ξ, η)` is a controlled rotation of a probe qubit conditioned on
//! Alice's qubit, followed by a probe measurement. Each successful
//! application multiplies `tan θ` of a two-qubit Schmidt state
//! `cos θ |11⟩ + sin θ |00⟩` by the concentration step `Δ = tan η / tan ξ`.
//!
//! Modules:
//!
//! * [`linalg`]: small dense complex vectors and matrices, Kronecker products,
//!   analytic 2×2 SVD.
//! * [`states`]: Schmidt form of two-qubit pure states and the entanglement
//!   entropy.
//! * [`gate`]: gate parameters, the 4×4 gate unitary and postselected
//!   application.
//! * [`planner`]: closed-form step count, success probability and fidelity.
//! * [`simulator`]: iterated state-vector simulation (bipartite and
//!   n-partite) and seeded Monte Carlo sampling of probe outcomes.
//!
//! Basis ordering is big-endian everywhere: for a register `X ⊗ Y` the
//! composite index is `x · dim(Y) + y`, so `|10⟩` is index 2.
//!
//! The crate is `no_std` and only needs `alloc`. Transcendental functions go
//! through `libm`.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod gate;
pub mod linalg;
pub mod planner;
pub mod simulator;
pub mod states;

pub use error::{Error, Result};
pub use gate::{apply_postselect, build_gate, BranchOutcome, GateParams, ProbeLabel};
pub use linalg::{svd2x2, tensor_matrix, tensor_vector, ComplexMatrix, ComplexVector, Svd2, Tolerances};
pub use planner::{f_min, fidelity, make_plan, next_theta, step_count, ConcentrationPlan, StepMode};
pub use simulator::{
    run_exact, run_monte_carlo, run_multipartite, ExactRun, MultipartiteRun, MultipartiteState, RunRecord,
};
pub use states::{entanglement, reconstruct, schmidt_decompose, EntanglementValue, SchmidtState};

pub use num_complex::Complex64;

/// `π/4`, the Schmidt angle of a maximally entangled two-qubit state.
pub const MAX_ENTANGLED_THETA: f64 = core::f64::consts::FRAC_PI_4;
