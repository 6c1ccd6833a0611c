//! Dense complex linear algebra for the handful of small registers the gate
//! needs (dimension ≤ 2⁷ in practice).
//!
//! Kronecker products follow the crate-wide big-endian convention: in
//! `a ⊗ b` the composite index is `index_a · dim_b + index_b`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Numerical tolerances shared by the checks in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Algebraic identities (unitarity, normalization, probability sums).
    pub algebra: f64,
    /// Results of decompositions (SVD reconstruction, Schmidt angles).
    pub decomposition: f64,
    /// Accepted deviation of a user-supplied state from unit norm.
    pub input_norm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            algebra: 1e-12,
            decomposition: 1e-10,
            input_norm: 1e-9,
        }
    }
}

/// A column vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        ComplexVector(entries)
    }

    pub fn from_real(entries: &[f64]) -> Self {
        ComplexVector(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexVector(vec![ZERO; dim])
    }

    /// Computational basis vector `e_index`.
    ///
    /// # Panics
    ///
    /// If `index >= dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut v = Self::zeros(dim);
        v.0[index] = ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ComplexVector(self.0.iter().map(|&x| x * c).collect())
    }

    /// Returns `self / ‖self‖`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n == 0.0 {
            None
        } else {
            Some(self.scale(Complex64::new(1.0 / n, 0.0)))
        }
    }

    /// Inner product `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> Result<Complex64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &ComplexVector) -> Result<f64> {
        self.inner(other).map(|c| c.norm_sqr())
    }

    pub fn max_abs_diff(&self, other: &ComplexVector) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn tensor(&self, other: &ComplexVector) -> ComplexVector {
        tensor_vector(self, other)
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_rows<const R: usize, const C: usize>(rows: [[Complex64; C]; R]) -> Self {
        ComplexMatrix {
            rows: R,
            cols: C,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn from_real_rows<const R: usize, const C: usize>(rows: [[f64; C]; R]) -> Self {
        ComplexMatrix {
            rows: R,
            cols: C,
            data: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
                .collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Square matrix with the given diagonal.
    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    /// Builds a square matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[ComplexVector]) -> Result<Self> {
        let n = columns.len();
        let mut m = Self::zeros(n, n);
        for (j, col) in columns.iter().enumerate() {
            check_dim(n, col.dim())?;
            for i in 0..n {
                m[(i, j)] = col[i];
            }
        }
        Ok(m)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_dim(self.cols, rhs.rows)?;
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        check_dim(self.cols, v.dim())?;
        Ok(ComplexVector(
            (0..self.rows)
                .map(|i| {
                    self.data[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(v.entries())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |(M†M − I)_ij|`; infinite for non-square input.
    pub fn unitarity_defect(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        self.adjoint()
            .matmul(self)
            .and_then(|p| p.max_abs_diff(&Self::identity(self.rows)))
            .unwrap_or(f64::INFINITY)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    pub fn tensor(&self, other: &ComplexMatrix) -> ComplexMatrix {
        tensor_matrix(self, other)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Kronecker product `a ⊗ b` of two matrices.
pub fn tensor_matrix(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let x = a[(ia, ja)];
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    out[(ia * b.rows + ib, ja * b.cols + jb)] = x * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Kronecker product `a ⊗ b` of two vectors.
pub fn tensor_vector(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    ComplexVector(
        a.entries()
            .iter()
            .flat_map(|&x| b.entries().iter().map(move |&y| x * y))
            .collect(),
    )
}

/// Singular value decomposition `m = u · diag(s) · v†` of a 2×2 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd2 {
    pub u: ComplexMatrix,
    /// Singular values, `s[0] ≥ s[1] ≥ 0`.
    pub s: [f64; 2],
    pub v: ComplexMatrix,
}

impl Svd2 {
    /// `u · diag(s) · v†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let sigma = ComplexMatrix::diagonal(&[Complex64::new(self.s[0], 0.0), Complex64::new(self.s[1], 0.0)]);
        self.u
            .matmul(&sigma)
            .and_then(|us| us.matmul(&self.v.adjoint()))
            .expect("2x2 shapes")
    }
}

/// Orthogonal complement of a unit 2-vector: `(−conj(y), conj(x))`.
fn complement(v: &ComplexVector) -> ComplexVector {
    ComplexVector(vec![-v[1].conj(), v[0].conj()])
}

/// Analytic SVD of a 2×2 matrix from the eigen-decomposition of `m†m`.
///
/// Phase convention: the first nonzero entry of each column of `u` is real
/// and nonnegative (`v` absorbs the compensating phase). The zero matrix
/// yields `u = v = I`, `s = (0, 0)`.
pub fn svd2x2(m: &ComplexMatrix) -> Result<Svd2> {
    check_dim(2, m.rows())?;
    check_dim(2, m.cols())?;

    // h = m†m = [[a, b], [conj(b), d]]
    let h = m.adjoint().matmul(m)?;
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    let half_gap = 0.5 * (a - d);
    let radius = (half_gap * half_gap + b.norm_sqr()).sqrt();
    let lambda_max = 0.5 * (a + d) + radius;

    if lambda_max <= 0.0 {
        return Ok(Svd2 {
            u: ComplexMatrix::identity(2),
            s: [0.0, 0.0],
            v: ComplexMatrix::identity(2),
        });
    }

    // Two candidate eigenvectors for lambda_max; take the better conditioned.
    let cand1 = ComplexVector(vec![b, Complex64::new(lambda_max - a, 0.0)]);
    let cand2 = ComplexVector(vec![Complex64::new(lambda_max - d, 0.0), b.conj()]);
    let best = if cand1.norm_sqr() >= cand2.norm_sqr() {
        cand1
    } else {
        cand2
    };
    let v0 = best.normalized().unwrap_or_else(|| ComplexVector::basis(2, 0));
    let v1 = complement(&v0);

    let mv0 = m.apply(&v0)?;
    let s0 = mv0.norm();
    let u0 = mv0.scale(Complex64::new(1.0 / s0, 0.0));
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let s1 = det.norm() / s0;

    // m·v1 is parallel to the complement of u0; recover its phase.
    let comp = complement(&u0);
    let c = comp.inner(&m.apply(&v1)?)?;
    let u1 = if c.norm() > 0.0 { comp.scale(c / c.norm()) } else { comp };

    let mut us = [u0, u1];
    let mut vs = [v0, v1];
    for k in 0..2 {
        if let Some(first) = us[k].entries().iter().find(|z| z.norm() > 0.0).copied() {
            let phase = first.conj() / first.norm();
            us[k] = us[k].scale(phase);
            vs[k] = vs[k].scale(phase);
        }
    }

    Ok(Svd2 {
        u: ComplexMatrix::from_columns(&us)?,
        s: [s0, s1.min(s0)],
        v: ComplexMatrix::from_columns(&vs)?,
    })
}
