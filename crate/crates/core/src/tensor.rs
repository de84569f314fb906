//! Small dense complex linear algebra.
//!
//! Everything here is sized for brute-force checks: a few thousand basis
//! states at most. Matrices are row-major and value-semantic.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{invalid, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Tolerance used for unitarity checks.
pub const UNITARY_TOL: f64 = 1e-12;

/// `e^{i theta}`
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Matrix::zeros(diag.len(), diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Build from nested rows. Panics if rows are ragged.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.concat() }
    }

    /// Build from a row-major slice of real numbers.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|&v| Complex64::new(v, 0.0)).collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(invalid(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(invalid(format!("cannot apply {}x{} to vector of length {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// `U†U = I` elementwise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let prod = &self.adjoint() * self;
        prod.max_abs_diff(&Matrix::identity(self.rows)).is_ok_and(|d| d <= tol)
    }

    pub fn powi(&self, mut exp: u32) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(invalid(format!("shape mismatch: {}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    /// Panics on a shape mismatch; use [`Matrix::try_matmul`] for a fallible product.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let v = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Normalized (or soon to be) dense amplitude vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(Vec<Complex64>);

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        assert!(!amplitudes.is_empty(), "state vector must be non-empty");
        StateVector(amplitudes)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut v = vec![ZERO; dim];
        v[index] = ONE;
        StateVector(v)
    }

    /// Equal superposition of all basis states.
    pub fn uniform(dim: usize) -> Self {
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        StateVector(vec![a; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm_sqr().sqrt();
        assert!(n > 0.0, "cannot normalize the zero vector");
        for a in &mut self.0 {
            *a /= n;
        }
        self
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(invalid(format!("state dims differ: {} vs {}", self.dim(), other.dim())));
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum())
    }
}

/// Tensor product `a ⊗ b`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac, br, bc) = (a.rows, a.cols, b.rows, b.cols);
    let mut out = Matrix::zeros(ar * br, ac * bc);
    for i1 in 0..ar {
        for j1 in 0..ac {
            let s = a[(i1, j1)];
            if s == ZERO {
                continue;
            }
            for i2 in 0..br {
                for j2 in 0..bc {
                    out[(i1 * br + i2, j1 * bc + j2)] = s * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// `m ⊗ m ⊗ … ⊗ m` (`copies` factors).
pub fn kron_power(m: &Matrix, copies: usize) -> Matrix {
    assert!(copies >= 1);
    (1..copies).fold(m.clone(), |acc, _| kron(&acc, m))
}

/// Controlled gate on `n_qubits` register qubits followed by one ancilla of
/// dimension `anc_dim`: `|0⟩⟨0| ⊗ u0 + |1⟩⟨1| ⊗ u1` on (control, ancilla),
/// identity elsewhere. Qubit 0 is the most significant register bit and the
/// ancilla is the least significant factor.
pub fn embed_controlled(control_qubit: usize, n_qubits: usize, anc_dim: usize, u0: &Matrix, u1: &Matrix) -> Result<Matrix> {
    if control_qubit >= n_qubits {
        return Err(invalid(format!("control qubit {control_qubit} out of range for {n_qubits} qubits")));
    }
    for (name, u) in [("u0", u0), ("u1", u1)] {
        if u.rows != anc_dim || u.cols != anc_dim {
            return Err(invalid(format!("{name} is {}x{}, expected {anc_dim}x{anc_dim}", u.rows, u.cols)));
        }
    }
    let reg = 1usize << n_qubits;
    let shift = n_qubits - 1 - control_qubit;
    let mut out = Matrix::zeros(reg * anc_dim, reg * anc_dim);
    for bits in 0..reg {
        let u = if (bits >> shift) & 1 == 1 { u1 } else { u0 };
        for i in 0..anc_dim {
            for j in 0..anc_dim {
                out[(bits * anc_dim + i, bits * anc_dim + j)] = u[(i, j)];
            }
        }
    }
    Ok(out)
}

/// `min_φ ‖u − e^{iφ} v‖_F`.
///
/// The minimizer aligns `e^{iφ}` with the phase of `tr(v†u)`. When that trace
/// vanishes the objective does not depend on `φ`, so `φ = 0` is exact.
pub fn phase_distance(u: &Matrix, v: &Matrix) -> Result<f64> {
    if u.rows != v.rows || u.cols != v.cols || !u.is_square() {
        return Err(invalid(format!("phase_distance needs equal square shapes, got {}x{} and {}x{}", u.rows, u.cols, v.rows, v.cols)));
    }
    let overlap: Complex64 = v.data.iter().zip(&u.data).map(|(b, a)| b.conj() * a).sum();
    let align = if overlap.norm() > f64::MIN_POSITIVE { overlap / overlap.norm() } else { ONE };
    Ok(u.data.iter().zip(&v.data).map(|(a, b)| (a - align * b).norm_sqr()).sum::<f64>().sqrt())
}

/// `|⟨a|b⟩|²`
pub fn state_fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Matrix exponential by scaling and squaring with a Taylor core.
///
/// Used as an independent dense oracle, so it makes no structural
/// assumptions about `m` beyond squareness.
pub fn expm(m: &Matrix) -> Matrix {
    assert!(m.is_square(), "expm needs a square matrix");
    let norm = m.frobenius_norm();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));
    let n = m.rows;
    let mut result = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=30 {
        term = (&term * &scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        result = result.try_add(&term).expect("same shape");
        if term.frobenius_norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &Matrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(invalid("eigenvalues need a square matrix"));
    }
    let dm = nalgebra::DMatrix::from_row_slice(m.rows, m.cols, &m.data);
    let mut ev: Vec<f64> = dm.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

pub mod gates {
    //! Fixed qubit gates used throughout.
    use super::*;

    pub fn pauli_x() -> Matrix {
        Matrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn pauli_y() -> Matrix {
        Matrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]])
    }

    pub fn pauli_z() -> Matrix {
        Matrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
    }

    pub fn hadamard() -> Matrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Matrix::from_real(2, 2, &[h, h, h, -h])
    }

    /// `R(θ) = |0⟩⟨0| + e^{iθ}|1⟩⟨1|`
    pub fn phase(theta: f64) -> Matrix {
        Matrix::from_diag(&[ONE, cis(theta)])
    }

    /// `|0⟩⟨0|⊗I + |1⟩⟨1|⊗R(θ)` on two qubits.
    pub fn controlled_phase(theta: f64) -> Matrix {
        Matrix::from_diag(&[ONE, ONE, ONE, cis(theta)])
    }

    /// `exp(iθ Z⊗Z)`
    pub fn zz_phase(theta: f64) -> Matrix {
        Matrix::from_diag(&[cis(theta), cis(-theta), cis(-theta), cis(theta)])
    }

    /// Value of qubit `q` in basis index `bits` of an `n`-qubit register.
    pub fn bit(bits: usize, n_qubits: usize, q: usize) -> usize {
        (bits >> (n_qubits - 1 - q)) & 1
    }

    /// Diagonal `n`-qubit gate with phase `phase(bits)` on each basis state.
    pub fn diagonal(n_qubits: usize, phase: impl Fn(usize) -> f64) -> Matrix {
        Matrix::from_diag(&(0..1usize << n_qubits).map(|b| cis(phase(b))).collect::<Vec<_>>())
    }
}
