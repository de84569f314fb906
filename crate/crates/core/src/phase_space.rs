//! Displacement algebra on the discrete toroidal phase space `Z(d) × Z(d)`.
//!
//! The position basis `|m⟩_x` is the computational basis of the qudit. `X_d`
//! shifts it cyclically, `Z_d` multiplies by powers of `ω_d = e^{2πi/d}`, and
//! a displacement `D_d(x, p)` is `Z_d^p X_d^x` up to a convention-dependent
//! prefactor.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::tensor::{cis, Matrix, ONE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuditDim(usize);

impl QuditDim {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(invalid(format!("qudit dimension must be >= 2, got {d}")));
        }
        Ok(QuditDim(d))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Reduce an integer into `0..d`.
    pub fn reduce(self, a: i64) -> i64 {
        a.rem_euclid(self.0 as i64)
    }
}

/// `ω_d(a) = e^{2πia/d}`, with `a` reduced mod `d` first.
pub fn omega(d: QuditDim, a: i64) -> Complex64 {
    cis(2.0 * PI * d.reduce(a) as f64 / d.get() as f64)
}

/// How the `ω_d(−2⁻¹xp)` prefactor of a displacement is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseConvention {
    /// `2⁻¹ = (d+1)/2 mod d`; only defined for odd `d`.
    ModularInverse,
    /// `e^{−iπxp/d}`; defined for every `d`, periodic in `2d`.
    HalfRoot,
}

impl PhaseConvention {
    /// Conventions usable at dimension `d`.
    pub fn valid_for(d: QuditDim) -> &'static [PhaseConvention] {
        if d.get() % 2 == 1 {
            &[PhaseConvention::ModularInverse, PhaseConvention::HalfRoot]
        } else {
            &[PhaseConvention::HalfRoot]
        }
    }
}

/// A qudit dimension together with a phase convention valid for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuditSpace {
    dim: QuditDim,
    convention: PhaseConvention,
}

impl QuditSpace {
    pub fn new(d: usize, convention: PhaseConvention) -> Result<Self> {
        let dim = QuditDim::new(d)?;
        if convention == PhaseConvention::ModularInverse && d.is_multiple_of(2) {
            return Err(Error::InvalidConvention(d));
        }
        Ok(QuditSpace { dim, convention })
    }

    pub fn dim(self) -> QuditDim {
        self.dim
    }

    pub fn d(self) -> usize {
        self.dim.get()
    }

    pub fn convention(self) -> PhaseConvention {
        self.convention
    }

    pub fn label(self, x: i64, p: i64) -> LatticeLabel {
        LatticeLabel { x, p, dim: self.dim }
    }

    /// Scalar `c(x, p)` with `D_d(x, p) = c · Z_d^p X_d^x`.
    pub fn prefactor(self, x: i64, p: i64) -> Complex64 {
        match self.convention {
            PhaseConvention::ModularInverse => {
                let half = (self.d() as i64 + 1) / 2;
                let xp = self.dim.reduce(x) * self.dim.reduce(p) % self.d() as i64;
                omega(self.dim, -half * xp)
            }
            PhaseConvention::HalfRoot => cis(-PI * (x as f64) * (p as f64) / self.d() as f64),
        }
    }

    /// `D_d(x, p)` as a dense `d × d` matrix.
    pub fn displacement(self, x: i64, p: i64) -> Matrix {
        let d = self.d();
        let shift = self.dim.reduce(x) as usize;
        let c = self.prefactor(x, p);
        // Z^p X^x |m⟩ = ω(p(m+x)) |m+x⟩
        let mut out = Matrix::zeros(d, d);
        for m in 0..d {
            let target = (m + shift) % d;
            out[(target, m)] = c * omega(self.dim, p * target as i64);
        }
        out
    }

    /// Label and scalar `s` such that `D(l2)·D(l1) = s · D(l1 + l2)`.
    pub fn compose_labels(self, l1: LatticeLabel, l2: LatticeLabel) -> Result<(LatticeLabel, Complex64)> {
        if l1.dim != self.dim || l2.dim != self.dim {
            return Err(invalid("labels belong to a different qudit dimension"));
        }
        let area = l1.x * l2.p - l1.p * l2.x;
        let phase = match self.convention {
            PhaseConvention::ModularInverse => {
                let half = (self.d() as i64 + 1) / 2;
                omega(self.dim, half * self.dim.reduce(area))
            }
            PhaseConvention::HalfRoot => cis(PI * area as f64 / self.d() as f64),
        };
        Ok((l1 + l2, phase))
    }

    /// Scalar `s` with `D(l_k)···D(l_1) = s·I` for a loop that closes on the
    /// torus. `labels` is in application order.
    pub fn loop_phase(self, labels: &[LatticeLabel]) -> Result<Complex64> {
        let mut acc = self.label(0, 0);
        let mut phase = ONE;
        for &l in labels {
            let (next, s) = self.compose_labels(acc, l)?;
            acc = next;
            phase *= s;
        }
        if !acc.is_origin() {
            return Err(Error::OpenLoop { x: self.dim.reduce(acc.x), p: self.dim.reduce(acc.p), d: self.d() });
        }
        // D(L) with L ≡ 0 mod d is its own prefactor times the identity
        Ok(phase * self.prefactor(acc.x, acc.p))
    }

    /// The rectangle `(x,0), (0,p), (−x,0), (0,−p)` in application order.
    pub fn rectangle(self, x: i64, p: i64) -> [LatticeLabel; 4] {
        [self.label(x, 0), self.label(0, p), self.label(-x, 0), self.label(0, -p)]
    }
}

/// A phase-space point of the qudit. Coordinates are kept as written; equality
/// compares them mod `d`.
#[derive(Clone, Copy, Debug, Eq)]
pub struct LatticeLabel {
    pub x: i64,
    pub p: i64,
    pub dim: QuditDim,
}

impl LatticeLabel {
    pub fn reduced(self) -> (i64, i64) {
        (self.dim.reduce(self.x), self.dim.reduce(self.p))
    }

    pub fn is_origin(self) -> bool {
        self.reduced() == (0, 0)
    }
}

impl PartialEq for LatticeLabel {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.reduced() == other.reduced()
    }
}

impl std::hash::Hash for LatticeLabel {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.reduced().hash(state);
    }
}

impl std::ops::Add for LatticeLabel {
    type Output = LatticeLabel;

    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.dim, rhs.dim);
        LatticeLabel { x: self.x + rhs.x, p: self.p + rhs.p, dim: self.dim }
    }
}

impl std::ops::Neg for LatticeLabel {
    type Output = LatticeLabel;

    fn neg(self) -> Self {
        LatticeLabel { x: -self.x, p: -self.p, dim: self.dim }
    }
}

/// `(X_d, Z_d)`: the cyclic shift `|m⟩ → |m+1⟩` and `diag(ω_d^m)`.
pub fn generalized_pauli(d: QuditDim) -> (Matrix, Matrix) {
    let n = d.get();
    let mut x = Matrix::zeros(n, n);
    for m in 0..n {
        x[((m + 1) % n, m)] = ONE;
    }
    let z = Matrix::from_diag(&(0..n).map(|m| omega(d, m as i64)).collect::<Vec<_>>());
    (x, z)
}

/// `F = d^{-1/2} Σ ω_d(mn) |m⟩⟨n|`, so that `F|m⟩_x = |m⟩_p`.
pub fn fourier(d: QuditDim) -> Matrix {
    let n = d.get();
    let norm = 1.0 / (n as f64).sqrt();
    Matrix::from_fn(n, n, |i, j| omega(d, (i * j) as i64) * norm)
}

/// `R_d(θ) = Σ e^{inθ} |n⟩⟨n|`
pub fn rotation(d: QuditDim, theta: f64) -> Matrix {
    Matrix::from_diag(&(0..d.get()).map(|n| cis(n as f64 * theta)).collect::<Vec<_>>())
}

/// Effective z-spin `diag(s, s−1, …, −s)` with `s = (d−1)/2`.
pub fn spin_z(d: QuditDim) -> Matrix {
    let s = (d.get() as f64 - 1.0) / 2.0;
    Matrix::from_diag(&(0..d.get()).map(|n| Complex64::new(s - n as f64, 0.0)).collect::<Vec<_>>())
}
