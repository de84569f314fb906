//! Register qubits coupled to a spin-ensemble ancilla.
//!
//! Every interaction is `|0⟩⟨0| ⊗ D_N(ζ) + |1⟩⟨1| ⊗ D_N(−ζ)`, diagonal in the
//! register basis, so each register bitstring carries its own coherent state
//! and phase. The cost is `O(2ⁿ)` per interaction and independent of `N`.

use num_complex::Complex64;

use super::algebra::{coherent_overlap, compose, dense_displacement, loop_close, overlap_probability, EnsembleSize, StereoLabel, DENSE_SPIN_LIMIT};
use crate::error::{invalid, Error, Result};
use crate::report::GateReport;
use crate::tensor::{embed_controlled, expm, gates, hermitian_eigenvalues, kron, kron_power, phase_distance, Matrix, StateVector, I};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinBranch {
    pub label: StereoLabel,
    /// Register amplitude the branch started with.
    pub amplitude: Complex64,
    /// Accumulated geometric phase (all `N` spins).
    pub phase: f64,
}

impl SpinBranch {
    pub fn effective_amplitude(&self) -> Complex64 {
        self.amplitude * Complex64::from_polar(1.0, self.phase)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinBranchState {
    n_qubits: usize,
    n_spins: EnsembleSize,
    branches: Vec<SpinBranch>,
}

impl SpinBranchState {
    /// `register ⊗ |0⟩_N`.
    pub fn new(register: &StateVector, n_spins: EnsembleSize) -> Result<Self> {
        let dim = register.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(invalid(format!("register dimension {dim} is not 2^n")));
        }
        let branches = register.amplitudes().iter().map(|&amplitude| SpinBranch { label: StereoLabel::ORIGIN, amplitude, phase: 0.0 }).collect();
        Ok(SpinBranchState { n_qubits: dim.trailing_zeros() as usize, n_spins, branches })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_spins(&self) -> EnsembleSize {
        self.n_spins
    }

    /// Branches indexed by register bitstring, qubit 0 most significant.
    pub fn branches(&self) -> &[SpinBranch] {
        &self.branches
    }

    /// `C^qubit(D_N(ζ), D_N(−ζ))`.
    pub fn apply_controlled_spin(&mut self, qubit: usize, z: StereoLabel) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(invalid(format!("qubit {qubit} out of range for {} qubits", self.n_qubits)));
        }
        let shift = self.n_qubits - 1 - qubit;
        let n = self.n_spins.as_f64();
        for (bits, branch) in self.branches.iter_mut().enumerate() {
            let step = if (bits >> shift) & 1 == 0 { z } else { -z };
            let c = compose(branch.label, step)?;
            branch.label = c.label;
            branch.phase += n * c.phase_per_spin;
        }
        Ok(())
    }

    /// Total norm. Distinct bitstrings are orthogonal, so only the diagonal
    /// of the ancilla Gram matrix contributes.
    pub fn norm_sqr(&self) -> f64 {
        self.branches.iter().map(|b| b.amplitude.norm_sqr() * coherent_overlap(b.label, b.label, self.n_spins).re).sum()
    }

    /// Reduced register state `ρ[b, b'] = a_b a_b'* ⟨ζ_b'|ζ_b⟩`.
    pub fn register_density(&self) -> Matrix {
        let dim = self.branches.len();
        Matrix::from_fn(dim, dim, |r, c| {
            let (br, bc) = (&self.branches[r], &self.branches[c]);
            br.effective_amplitude() * bc.effective_amplitude().conj() * coherent_overlap(bc.label, br.label, self.n_spins)
        })
    }

    /// `1 −` largest Schmidt weight of the register/ancilla split.
    pub fn residual_entanglement(&self) -> Result<f64> {
        let rho = self.register_density();
        let top = *hermitian_eigenvalues(&rho)?.last().expect("non-empty");
        Ok((1.0 - top / rho.trace().re).max(0.0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinInteraction {
    pub qubit: usize,
    pub label: StereoLabel,
}

/// Per-bitstring result of a spin sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchOutcome {
    pub bits: usize,
    pub label: StereoLabel,
    pub phase: f64,
    /// `|⟨0|ζ⟩_N|²`
    pub return_fidelity: f64,
}

#[derive(Clone, Debug)]
pub struct SpinRun {
    pub report: GateReport,
    pub branches: Vec<BranchOutcome>,
}

/// Run `sequence` (application order) on every register bitstring.
pub fn run_spin_sequence(n_qubits: usize, n_spins: EnsembleSize, sequence: &[SpinInteraction]) -> Result<SpinRun> {
    if n_qubits == 0 {
        return Err(invalid("register needs at least one qubit"));
    }
    let dim = 1usize << n_qubits;
    let mut state = SpinBranchState::new(&StateVector::uniform(dim), n_spins)?;
    for step in sequence {
        state.apply_controlled_spin(step.qubit, step.label)?;
    }
    let branches: Vec<BranchOutcome> = state
        .branches()
        .iter()
        .enumerate()
        .map(|(bits, b)| BranchOutcome {
            bits,
            label: b.label,
            phase: b.phase,
            return_fidelity: overlap_probability(StereoLabel::ORIGIN, b.label, n_spins),
        })
        .collect();
    let worst = branches.iter().map(|b| b.return_fidelity).fold(1.0, f64::min);
    let residual = state.residual_entanglement()?;
    let clean = residual < GateReport::DISENTANGLED_TOL && worst > 1.0 - GateReport::DISENTANGLED_TOL;
    let unitary = clean.then(|| {
        Matrix::from_diag(
            &state
                .branches()
                .iter()
                .map(|b| Complex64::from_polar(1.0, b.phase) * coherent_overlap(StereoLabel::ORIGIN, b.label, n_spins))
                .collect::<Vec<_>>(),
        )
    });
    Ok(SpinRun {
        report: GateReport {
            register_unitary: unitary,
            ancilla_return_fidelity: worst,
            residual_entanglement: residual,
            interaction_count: sequence.len(),
        },
        branches,
    })
}

/// `D^k(−iη) D^j(−τ) D^k(iτ) D^j(η)` with `τ = τ(η)`, in application order.
pub fn spin_two_qubit_sequence(j: usize, k: usize, eta: f64) -> Result<Vec<SpinInteraction>> {
    if j == k {
        return Err(invalid("control and target must differ"));
    }
    let sol = loop_close(eta)?;
    let [a, b, c, d] = sol.labels();
    Ok(vec![
        SpinInteraction { qubit: j, label: a },
        SpinInteraction { qubit: k, label: b },
        SpinInteraction { qubit: j, label: c },
        SpinInteraction { qubit: k, label: d },
    ])
}

/// Two-qubit gate `exp(iφ_t Z⊗Z)` from the closed spin loop.
pub fn spin_two_qubit_gate(eta: f64, n_spins: EnsembleSize) -> Result<GateReport> {
    Ok(run_spin_sequence(2, n_spins, &spin_two_qubit_sequence(0, 1, eta)?)?.report)
}

/// Field-mode fan sequence transplanted onto the sphere with
/// `ζ = (x + ip)/√(2N)`.
pub fn spin_fan_sequence(xs: &[f64], ps: &[f64], n_spins: EnsembleSize) -> Result<Vec<SpinInteraction>> {
    if xs.is_empty() || ps.is_empty() {
        return Err(invalid("fan sequences need at least one control and one target"));
    }
    let scale = 1.0 / (2.0 * n_spins.as_f64()).sqrt();
    let n = xs.len();
    let mut seq = Vec::with_capacity(2 * (n + ps.len()));
    for sign in [1.0, -1.0] {
        seq.extend(xs.iter().enumerate().map(|(k, &x)| SpinInteraction { qubit: k, label: StereoLabel::real(sign * x * scale) }));
        seq.extend(ps.iter().enumerate().map(|(j, &p)| SpinInteraction { qubit: n + j, label: StereoLabel::imag(sign * p * scale) }));
    }
    Ok(seq)
}

#[derive(Clone, Debug)]
pub struct FanSimulation {
    pub run: SpinRun,
    /// Target phase `Σ x_k p_j z_k z_j` per bitstring.
    pub target_phases: Vec<f64>,
    /// Largest `|phase − target|`, wrapped into `(−π, π]`.
    pub max_phase_error: f64,
    pub worst_infidelity: f64,
}

impl FanSimulation {
    /// Phase of the all-zeros bitstring.
    pub fn extremal_phase(&self) -> f64 {
        self.run.branches[0].phase
    }
}

/// Controls `0..n` with position displacements `xs`, targets `n..n+m` with
/// momentum displacements `ps`.
pub fn fan_sequence_simulate(xs: &[f64], ps: &[f64], n_spins: EnsembleSize) -> Result<FanSimulation> {
    let seq = spin_fan_sequence(xs, ps, n_spins)?;
    let n_qubits = xs.len() + ps.len();
    let run = run_spin_sequence(n_qubits, n_spins, &seq)?;
    let sign = |bits: usize, q: usize| if (bits >> (n_qubits - 1 - q)) & 1 == 0 { 1.0 } else { -1.0 };
    let target_phases: Vec<f64> = (0..1usize << n_qubits)
        .map(|bits| {
            let mut total = 0.0;
            for (k, &x) in xs.iter().enumerate() {
                for (j, &p) in ps.iter().enumerate() {
                    total += x * p * sign(bits, k) * sign(bits, xs.len() + j);
                }
            }
            total
        })
        .collect();
    let max_phase_error =
        run.branches.iter().zip(&target_phases).map(|(b, t)| Complex64::from_polar(1.0, b.phase - t).arg().abs()).fold(0.0, f64::max);
    let worst_infidelity = 1.0 - run.report.ancilla_return_fidelity;
    Ok(FanSimulation { run, target_phases, max_phase_error, worst_infidelity })
}

/// Single equivalent displacement for a run of same-quadrature steps.
///
/// Same-axis rotations add their angles, so the real labels `x_k/√(2N)`
/// compose to `tan(Σ atan(x_k/√(2N)))`; this returns that label rescaled by
/// `√(2N)`.
pub fn effective_quadrature(values: &[f64], n_spins: EnsembleSize) -> f64 {
    let scale = (2.0 * n_spins.as_f64()).sqrt();
    scale * values.iter().map(|v| (v / scale).atan()).sum::<f64>().tan()
}

/// Collective Pauli sum `Σ_j σ_j` on `n` spins.
fn collective(pauli: &Matrix, n: usize) -> Matrix {
    let id = Matrix::identity(2);
    let mut total = Matrix::zeros(1 << n, 1 << n);
    for j in 0..n {
        let mut term = Matrix::identity(1);
        for q in 0..n {
            term = kron(&term, if q == j { pauli } else { &id });
        }
        total = total.try_add(&term).expect("same shape");
    }
    total
}

/// Dense checks of the spin interaction generator.
///
/// Returns the larger of: the phase distance between
/// `exp(i(θ/2) Z ⊗ (sinφ J_x − cosφ J_y))` and `C(D_N(θ,φ), D_N(−θ,φ))`; and
/// the distance between `U† e^{iθJ_x} U` and `e^{iθJ_y}` for
/// `U = (R(π/2)H)^{⊗N}`.
pub fn spin_generator_check(theta: f64, phi: f64, n_spins: EnsembleSize) -> Result<f64> {
    if n_spins.get() > DENSE_SPIN_LIMIT {
        return Err(Error::ResourceLimit(format!("dense spin operators limited to N <= {DENSE_SPIN_LIMIT}")));
    }
    if theta.abs() >= std::f64::consts::PI {
        return Err(invalid("stereographic chart needs |theta| < pi"));
    }
    let n = n_spins.get() as usize;
    let jx = collective(&gates::pauli_x(), n);
    let jy = collective(&gates::pauli_y(), n);
    let generator = jx.scale(Complex64::new(phi.sin(), 0.0)).try_sub(&jy.scale(Complex64::new(phi.cos(), 0.0)))?;
    let hamiltonian = kron(&gates::pauli_z(), &generator);
    let exact = expm(&hamiltonian.scale(I * (theta / 2.0)));
    let z = StereoLabel::from_angles(theta, phi);
    let controlled = embed_controlled(0, 1, 1 << n, &dense_displacement(z, n_spins)?, &dense_displacement(-z, n_spins)?)?;
    let generator_gap = phase_distance(&exact, &controlled)?;

    let u = kron_power(&(&gates::phase(std::f64::consts::FRAC_PI_2) * &gates::hadamard()), n);
    let rotated = &(&u.adjoint() * &expm(&jx.scale(I * theta))) * &u;
    let conjugation_gap = phase_distance(&rotated, &expm(&jy.scale(I * theta)))?;
    Ok(generator_gap.max(conjugation_gap))
}
