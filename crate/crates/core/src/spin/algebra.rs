//! Displacements of spin coherent states in the stereographic chart.
//!
//! A coherent state of `N` spins is `((|1⟩ + ζ|0⟩)/√(1+|ζ|²))^{⊗N}`; the
//! reference state `ζ = 0` is `|1⟩^{⊗N}`, the north pole. Every displacement
//! acts as the same 2×2 unitary on each spin, so composition only ever needs
//! one spin's worth of arithmetic plus an `N`-fold phase.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::tensor::{cis, kron_power, Matrix, StateVector, ONE};

/// Largest ensemble for which dense `2^N` matrices are built.
pub const DENSE_SPIN_LIMIT: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StereoLabel(Complex64);

impl StereoLabel {
    pub const ORIGIN: StereoLabel = StereoLabel(Complex64::new(0.0, 0.0));

    pub fn new(zeta: Complex64) -> Result<Self> {
        if !zeta.re.is_finite() || !zeta.im.is_finite() {
            return Err(invalid("stereographic label must be finite"));
        }
        Ok(StereoLabel(zeta))
    }

    pub fn real(v: f64) -> Self {
        StereoLabel(Complex64::new(v, 0.0))
    }

    pub fn imag(v: f64) -> Self {
        StereoLabel(Complex64::new(0.0, v))
    }

    /// `ζ = −e^{−iφ} tan(θ/2)` for the rotation `D_N(θ, φ)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        StereoLabel(-cis(-phi) * (theta / 2.0).tan())
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }
}

impl std::ops::Neg for StereoLabel {
    type Output = StereoLabel;

    fn neg(self) -> StereoLabel {
        StereoLabel(-self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnsembleSize(u64);

impl EnsembleSize {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(invalid("ensemble needs at least one spin"));
        }
        Ok(EnsembleSize(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

/// Single-spin factor `(I + ζσ₊ − ζ*σ₋)/√(1+|ζ|²)` in the `(|0⟩, |1⟩)` basis.
pub fn su2_displacement(z: StereoLabel) -> Matrix {
    let z = z.0;
    let n = 1.0 / (1.0 + z.norm_sqr()).sqrt();
    Matrix::from_rows(&[vec![ONE * n, z * n], vec![-z.conj() * n, ONE * n]])
}

/// Dense `D_N(ζ)` on `2^N` amplitudes.
pub fn dense_displacement(z: StereoLabel, n: EnsembleSize) -> Result<Matrix> {
    if n.get() > DENSE_SPIN_LIMIT {
        return Err(Error::ResourceLimit(format!("dense spin operators limited to N <= {DENSE_SPIN_LIMIT}")));
    }
    Ok(kron_power(&su2_displacement(z), n.get() as usize))
}

/// Dense `|ζ⟩_N = D_N(ζ)|1⟩^{⊗N}`.
pub fn dense_coherent_state(z: StereoLabel, n: EnsembleSize) -> Result<StateVector> {
    if n.get() > DENSE_SPIN_LIMIT {
        return Err(Error::ResourceLimit(format!("dense spin states limited to N <= {DENSE_SPIN_LIMIT}")));
    }
    let norm = 1.0 / (1.0 + z.0.norm_sqr()).sqrt();
    let single = [z.0 * norm, ONE * norm];
    let spins = n.get() as usize;
    Ok(StateVector::new((0..1usize << spins).map(|idx| (0..spins).map(|q| single[(idx >> (spins - 1 - q)) & 1]).product()).collect()))
}

/// One displacement applied to a coherent state: `D(z)|from⟩ = e^{iNφ}|label⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Composition {
    pub label: StereoLabel,
    /// `φ = Arg(1 − ζ_from ζ*)`, the phase acquired by each spin.
    pub phase_per_spin: f64,
}

impl Composition {
    pub fn phase(self, n: EnsembleSize) -> Complex64 {
        cis(n.as_f64() * self.phase_per_spin)
    }
}

/// Apply `D(z)` to the normalized coherent state `|from⟩`.
pub fn compose(from: StereoLabel, z: StereoLabel) -> Result<Composition> {
    let den = ONE - from.0 * z.0.conj();
    let num = from.0 + z.0;
    if den.norm() <= 1e-15 * (1.0 + num.norm()) {
        return Err(Error::SingularComposition);
    }
    Ok(Composition { label: StereoLabel::new(num / den)?, phase_per_spin: den.arg() })
}

/// `D(z2) D(z1) |0⟩_N = phase · |ζ_out⟩_N`.
pub fn compose_on_origin(z1: StereoLabel, z2: StereoLabel, n: EnsembleSize) -> Result<(StereoLabel, Complex64)> {
    // D(z1)|0⟩ = |z1⟩ exactly, with no phase
    let c = compose(z1, z2)?;
    Ok((c.label, c.phase(n)))
}

/// `⟨z1|z2⟩_N`, evaluated in the log domain.
pub fn coherent_overlap(z1: StereoLabel, z2: StereoLabel, n: EnsembleSize) -> Complex64 {
    let base = ONE + z1.0.conj() * z2.0;
    cis(n.as_f64() * base.arg()) * overlap_probability(z1, z2, n).sqrt()
}

/// `|⟨z1|z2⟩_N|²`.
pub fn overlap_probability(z1: StereoLabel, z2: StereoLabel, n: EnsembleSize) -> f64 {
    // (1+|z1|²)(1+|z2|²) − |1 + z1*z2|² = |z1 − z2|²
    let gap = (z1.0 - z2.0).norm_sqr() / ((1.0 + z1.0.norm_sqr()) * (1.0 + z2.0.norm_sqr()));
    (n.as_f64() * (-gap).ln_1p()).exp()
}

/// The square loop `D(−iη) D(−τ) D(iτ) D(η)` closed on the sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoopSolution {
    pub eta: f64,
    pub tau: f64,
    /// Geometric phase per spin; the loop phase is `N` times this.
    pub phi_per_spin: f64,
}

impl LoopSolution {
    pub fn phi_t(&self, n: EnsembleSize) -> f64 {
        n.as_f64() * self.phi_per_spin
    }

    /// Labels in application order.
    pub fn labels(&self) -> [StereoLabel; 4] {
        [StereoLabel::real(self.eta), StereoLabel::imag(self.tau), StereoLabel::real(-self.tau), StereoLabel::imag(-self.eta)]
    }
}

/// Largest `|η|` for which the loop can close.
pub const MAX_LOOP_ETA: f64 = SQRT_2 - 1.0;

pub fn loop_close(eta: f64) -> Result<LoopSolution> {
    if !eta.is_finite() || eta.abs() > MAX_LOOP_ETA * (1.0 + 1e-15) {
        return Err(Error::LoopUnclosable(eta));
    }
    let e2 = eta * eta;
    let disc = (e2 * e2 - 6.0 * e2 + 1.0).max(0.0);
    // rationalized form of (1 − η² − √disc)/(2η); finite at η = 0
    let tau = 2.0 * eta / (1.0 - e2 + disc.sqrt());
    let num = 2.0 * eta * tau + tau * tau - e2;
    let den = 1.0 + 2.0 * eta * tau - e2 * tau * tau;
    Ok(LoopSolution { eta, tau, phi_per_spin: num.atan2(den) })
}

/// Smallest positive `η` whose closed loop gives phase `target` at size `n`.
///
/// Bisection on `(0, √2−1]`; fails if the phase is not monotone there or the
/// target is out of reach.
pub fn eta_for_phase(target: f64, n: EnsembleSize) -> Result<f64> {
    let phase = |eta: f64| loop_close(eta).map(|s| s.phi_t(n));
    let samples: Vec<f64> = (1..=64).map(|k| phase(MAX_LOOP_ETA * k as f64 / 64.0)).collect::<Result<_>>()?;
    if samples.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("loop phase is not monotone in eta"));
    }
    if target <= 0.0 || target > phase(MAX_LOOP_ETA)? {
        return Err(invalid(format!("phase {target} unreachable with N = {}", n.get())));
    }
    let (mut lo, mut hi) = (0.0, MAX_LOOP_ETA);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phase(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
