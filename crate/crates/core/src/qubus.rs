//! Field-mode bus, tracked symbolically.
//!
//! A bus coherent state is a real phase-space point `(x, p)`; displacements
//! compose as `D(l₂)D(l₁) = e^{i(x₁p₂ − p₁x₂)/2} D(l₁ + l₂)`. No Fock space is
//! ever built, so closed loops are exact up to floating-point addition.

use std::ops::{Add, Neg};

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::report::GateReport;
use crate::tensor::{hermitian_eigenvalues, Matrix, StateVector};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FieldLabel {
    pub x: f64,
    pub p: f64,
}

impl FieldLabel {
    pub const ORIGIN: FieldLabel = FieldLabel { x: 0.0, p: 0.0 };

    pub fn new(x: f64, p: f64) -> Result<Self> {
        if !(x.is_finite() && p.is_finite()) {
            return Err(invalid(format!("non-finite field label ({x}, {p})")));
        }
        Ok(FieldLabel { x, p })
    }

    pub fn position(x: f64) -> Self {
        FieldLabel { x, p: 0.0 }
    }

    pub fn momentum(p: f64) -> Self {
        FieldLabel { x: 0.0, p }
    }

    pub fn norm_sqr(self) -> f64 {
        self.x * self.x + self.p * self.p
    }
}

impl Add for FieldLabel {
    type Output = FieldLabel;

    fn add(self, rhs: FieldLabel) -> FieldLabel {
        FieldLabel { x: self.x + rhs.x, p: self.p + rhs.p }
    }
}

impl Neg for FieldLabel {
    type Output = FieldLabel;

    fn neg(self) -> FieldLabel {
        FieldLabel { x: -self.x, p: -self.p }
    }
}

/// Label and phase of `D(l2)·D(l1)`.
pub fn compose_field(l1: FieldLabel, l2: FieldLabel) -> (FieldLabel, Complex64) {
    (l1 + l2, Complex64::from_polar(1.0, compose_angle(l1, l2)))
}

fn compose_angle(l1: FieldLabel, l2: FieldLabel) -> f64 {
    (l1.x * l2.p - l1.p * l2.x) / 2.0
}

/// `⟨l1|l2⟩` for `|l⟩ = D(l)|vac⟩`.
pub fn field_overlap(l1: FieldLabel, l2: FieldLabel) -> Complex64 {
    let (dx, dp) = (l2.x - l1.x, l2.p - l1.p);
    Complex64::from_polar((-(dx * dx + dp * dp) / 4.0).exp(), compose_angle(l1, l2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldBranch {
    pub label: FieldLabel,
    pub amplitude: Complex64,
    pub phase: f64,
}

impl FieldBranch {
    pub fn effective_amplitude(&self) -> Complex64 {
        self.amplitude * Complex64::from_polar(1.0, self.phase)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldBranchState {
    n_qubits: usize,
    branches: Vec<FieldBranch>,
}

impl FieldBranchState {
    /// `register ⊗ D(bus)|vac⟩`.
    pub fn new(register: &StateVector, bus: FieldLabel) -> Result<Self> {
        let dim = register.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(invalid(format!("register dimension {dim} is not 2^n")));
        }
        let branches = register.amplitudes().iter().map(|&amplitude| FieldBranch { label: bus, amplitude, phase: 0.0 }).collect();
        Ok(FieldBranchState { n_qubits: dim.trailing_zeros() as usize, branches })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn branches(&self) -> &[FieldBranch] {
        &self.branches
    }

    /// `|0⟩⟨0| ⊗ D(l) + |1⟩⟨1| ⊗ D(−l)` on `qubit`.
    pub fn apply_controlled(&mut self, qubit: usize, label: FieldLabel) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(invalid(format!("qubit {qubit} out of range for {} qubits", self.n_qubits)));
        }
        let shift = self.n_qubits - 1 - qubit;
        for (bits, branch) in self.branches.iter_mut().enumerate() {
            let step = if (bits >> shift) & 1 == 0 { label } else { -label };
            branch.phase += compose_angle(branch.label, step);
            branch.label = branch.label + step;
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.branches.iter().map(|b| b.amplitude.norm_sqr()).sum()
    }

    pub fn register_density(&self) -> Matrix {
        let dim = self.branches.len();
        Matrix::from_fn(dim, dim, |r, c| {
            let (br, bc) = (&self.branches[r], &self.branches[c]);
            br.effective_amplitude() * bc.effective_amplitude().conj() * field_overlap(bc.label, br.label)
        })
    }

    pub fn residual_entanglement(&self) -> Result<f64> {
        let rho = self.register_density();
        let top = *hermitian_eigenvalues(&rho)?.last().expect("non-empty");
        Ok((1.0 - top / rho.trace().re).max(0.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldInteraction {
    pub qubit: usize,
    pub label: FieldLabel,
}

/// Run `sequence` on every register bitstring with the bus starting at `bus`.
pub fn run_field_sequence(n_qubits: usize, bus: FieldLabel, sequence: &[FieldInteraction]) -> Result<(GateReport, FieldBranchState)> {
    if n_qubits == 0 {
        return Err(invalid("register needs at least one qubit"));
    }
    let mut state = FieldBranchState::new(&StateVector::uniform(1 << n_qubits), bus)?;
    for step in sequence {
        state.apply_controlled(step.qubit, step.label)?;
    }
    let worst = state.branches().iter().map(|b| field_overlap(bus, b.label).norm_sqr()).fold(1.0, f64::min);
    let residual = state.residual_entanglement()?;
    let clean = residual < GateReport::DISENTANGLED_TOL && worst > 1.0 - GateReport::DISENTANGLED_TOL;
    let unitary = clean.then(|| {
        let diag: Vec<Complex64> = state.branches().iter().map(|b| Complex64::from_polar(1.0, b.phase) * field_overlap(bus, b.label)).collect();
        Matrix::from_diag(&diag)
    });
    let report =
        GateReport { register_unitary: unitary, ancilla_return_fidelity: worst, residual_entanglement: residual, interaction_count: sequence.len() };
    Ok((report, state))
}

/// `D^k(0,−p) D^j(−x,0) D^k(0,p) D^j(x,0)` in application order.
pub fn field_two_qubit_sequence(j: usize, k: usize, x: f64, p: f64) -> Result<Vec<FieldInteraction>> {
    if j == k {
        return Err(invalid("control and target must differ"));
    }
    FieldLabel::new(x, p)?;
    Ok(vec![
        FieldInteraction { qubit: j, label: FieldLabel::position(x) },
        FieldInteraction { qubit: k, label: FieldLabel::momentum(p) },
        FieldInteraction { qubit: j, label: FieldLabel::position(-x) },
        FieldInteraction { qubit: k, label: FieldLabel::momentum(-p) },
    ])
}

/// `exp(ixp Z⊗Z)` on two qubits.
pub fn field_two_qubit(x: f64, p: f64) -> Result<GateReport> {
    Ok(run_field_sequence(2, FieldLabel::ORIGIN, &field_two_qubit_sequence(0, 1, x, p)?)?.0)
}

/// Controls `0..n` displaced in position by `xs`, targets `n..n+m` in
/// momentum by `ps`.
pub fn field_fan_sequence(xs: &[f64], ps: &[f64]) -> Result<Vec<FieldInteraction>> {
    if xs.is_empty() || ps.is_empty() {
        return Err(invalid("fan sequences need at least one control and one target"));
    }
    if xs.iter().chain(ps).any(|v| !v.is_finite()) {
        return Err(invalid("non-finite displacement"));
    }
    let n = xs.len();
    let mut seq = Vec::with_capacity(2 * (n + ps.len()));
    for sign in [1.0, -1.0] {
        seq.extend(xs.iter().enumerate().map(|(k, &x)| FieldInteraction { qubit: k, label: FieldLabel::position(sign * x) }));
        seq.extend(ps.iter().enumerate().map(|(j, &p)| FieldInteraction { qubit: n + j, label: FieldLabel::momentum(sign * p) }));
    }
    Ok(seq)
}

/// `∏_{k,j} exp(i x_k p_j Z_k⊗Z_j)` in `2(n+m)` interactions.
pub fn field_fan(xs: &[f64], ps: &[f64]) -> Result<GateReport> {
    Ok(run_field_sequence(xs.len() + ps.len(), FieldLabel::ORIGIN, &field_fan_sequence(xs, ps)?)?.0)
}

/// Dense `exp(iθ Z_a⊗Z_b)` on `n_qubits`.
pub fn zz_phase_on(n_qubits: usize, a: usize, b: usize, theta: f64) -> Matrix {
    let diag: Vec<Complex64> = (0..1usize << n_qubits)
        .map(|bits| {
            let za = if (bits >> (n_qubits - 1 - a)) & 1 == 0 { 1.0 } else { -1.0 };
            let zb = if (bits >> (n_qubits - 1 - b)) & 1 == 0 { 1.0 } else { -1.0 };
            Complex64::from_polar(1.0, theta * za * zb)
        })
        .collect();
    Matrix::from_diag(&diag)
}
