//! Register qubits coupled to a qudit ancilla through controlled displacements.
//!
//! States are dense over `2ⁿ · d` amplitudes with the register in the high
//! bits (qubit 0 most significant) and the ancilla level as the fastest index.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::phase_space::{rotation, spin_z, QuditSpace};
use crate::report::GateReport;
use crate::tensor::{cis, embed_controlled, hermitian_eigenvalues, phase_distance, Matrix, StateVector, ZERO};

/// Which branch of the controlling qubit receives which displacement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// `|0⟩⟨0|⊗I + |1⟩⟨1|⊗D(x,p)`
    ApplyOnOne,
    /// `|0⟩⟨0|⊗D(x,p) + |1⟩⟨1|⊗D(−x,−p)`
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interaction {
    pub qubit: usize,
    pub x: i64,
    pub p: i64,
    pub polarity: Polarity,
}

impl Interaction {
    pub fn new(qubit: usize, x: i64, p: i64) -> Self {
        Interaction { qubit, x, p, polarity: Polarity::ApplyOnOne }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Displace(Interaction),
    /// Apply `gate` to register qubit `target` iff the ancilla is in `|level⟩_x`.
    ProjectedGate {
        level: usize,
        target: usize,
        gate: Matrix,
    },
    /// Apply `R_d(theta)` to the ancilla iff register qubit `control` is `|1⟩`.
    ControlledRotation {
        control: usize,
        theta: f64,
    },
}

impl Element {
    fn qubit(&self) -> usize {
        match self {
            Element::Displace(i) => i.qubit,
            Element::ProjectedGate { target, .. } => *target,
            Element::ControlledRotation { control, .. } => *control,
        }
    }
}

/// Ordered ancilla-register operations, in application order.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionSequence {
    space: QuditSpace,
    n_qubits: usize,
    elements: Vec<Element>,
}

impl InteractionSequence {
    pub fn new(space: QuditSpace, n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(invalid("register needs at least one qubit"));
        }
        Ok(InteractionSequence { space, n_qubits, elements: Vec::new() })
    }

    pub fn push(&mut self, element: Element) -> Result<&mut Self> {
        if element.qubit() >= self.n_qubits {
            return Err(invalid(format!("qubit {} out of range for {} qubits", element.qubit(), self.n_qubits)));
        }
        if let Element::ProjectedGate { level, gate, .. } = &element {
            if *level >= self.space.d() || gate.rows() != 2 || gate.cols() != 2 {
                return Err(invalid("projected gate needs a 2x2 gate and a level below d"));
            }
        }
        self.elements.push(element);
        Ok(self)
    }

    pub fn displace(&mut self, qubit: usize, x: i64, p: i64) -> Result<&mut Self> {
        self.push(Element::Displace(Interaction::new(qubit, x, p)))
    }

    /// Same sequence with every displacement switched to `polarity`.
    pub fn with_polarity(mut self, polarity: Polarity) -> Self {
        for e in &mut self.elements {
            if let Element::Displace(i) = e {
                i.polarity = polarity;
            }
        }
        self
    }

    pub fn space(&self) -> QuditSpace {
        self.space
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Every element couples one register qubit to the ancilla.
    pub fn interaction_count(&self) -> usize {
        self.elements.len()
    }

    pub fn displacement_count(&self) -> usize {
        self.elements.iter().filter(|e| matches!(e, Element::Displace(_))).count()
    }

    pub fn run(&self, state: &mut HybridState) -> Result<()> {
        if state.n_qubits != self.n_qubits || state.space != self.space {
            return Err(invalid("state does not match the sequence's register or ancilla"));
        }
        for e in &self.elements {
            state.apply(e)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HybridState {
    n_qubits: usize,
    space: QuditSpace,
    amplitudes: StateVector,
}

impl HybridState {
    /// `register ⊗ ancilla`, both given as amplitude vectors.
    pub fn product(space: QuditSpace, register: &StateVector, ancilla: &StateVector) -> Result<Self> {
        let reg_dim = register.dim();
        if !reg_dim.is_power_of_two() || reg_dim < 2 {
            return Err(invalid(format!("register dimension {reg_dim} is not 2^n")));
        }
        if ancilla.dim() != space.d() {
            return Err(invalid(format!("ancilla dimension {} does not match d = {}", ancilla.dim(), space.d())));
        }
        let mut amps = Vec::with_capacity(reg_dim * space.d());
        for r in register.amplitudes() {
            for a in ancilla.amplitudes() {
                amps.push(r * a);
            }
        }
        Ok(HybridState { n_qubits: reg_dim.trailing_zeros() as usize, space, amplitudes: StateVector::new(amps) })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &StateVector {
        &self.amplitudes
    }

    fn bit(&self, bits: usize, qubit: usize) -> usize {
        (bits >> (self.n_qubits - 1 - qubit)) & 1
    }

    /// Apply one controlled displacement.
    pub fn apply_interaction(&mut self, i: Interaction) -> Result<()> {
        if i.qubit >= self.n_qubits {
            return Err(invalid(format!("qubit {} out of range for {} qubits", i.qubit, self.n_qubits)));
        }
        let forward = self.space.displacement(i.x, i.p);
        let (on_zero, on_one) = match i.polarity {
            Polarity::ApplyOnOne => (None, Some(forward)),
            Polarity::Symmetric => (Some(forward), Some(self.space.displacement(-i.x, -i.p))),
        };
        self.apply_branchwise(i.qubit, on_zero.as_ref(), on_one.as_ref())
    }

    fn apply(&mut self, e: &Element) -> Result<()> {
        match e {
            Element::Displace(i) => self.apply_interaction(*i),
            Element::ControlledRotation { control, theta } => {
                let r = rotation(self.space.dim(), *theta);
                self.apply_branchwise(*control, None, Some(&r))
            }
            Element::ProjectedGate { level, target, gate } => {
                let d = self.space.d();
                let shift = self.n_qubits - 1 - target;
                let amps = self.amplitudes.amplitudes_mut();
                for bits in 0..(1usize << self.n_qubits) {
                    if (bits >> shift) & 1 == 1 {
                        continue;
                    }
                    let i0 = bits * d + level;
                    let i1 = (bits | (1 << shift)) * d + level;
                    let (a0, a1) = (amps[i0], amps[i1]);
                    amps[i0] = gate[(0, 0)] * a0 + gate[(0, 1)] * a1;
                    amps[i1] = gate[(1, 0)] * a0 + gate[(1, 1)] * a1;
                }
                Ok(())
            }
        }
    }

    fn apply_branchwise(&mut self, qubit: usize, on_zero: Option<&Matrix>, on_one: Option<&Matrix>) -> Result<()> {
        let d = self.space.d();
        for bits in 0..(1usize << self.n_qubits) {
            let op = if self.bit(bits, qubit) == 1 { on_one } else { on_zero };
            if let Some(op) = op {
                let block = &mut self.amplitudes.amplitudes_mut()[bits * d..(bits + 1) * d];
                let out = op.try_apply(block)?;
                block.copy_from_slice(&out);
            }
        }
        Ok(())
    }

    /// Amplitudes as a `2ⁿ × d` matrix.
    fn as_matrix(&self) -> Matrix {
        let d = self.space.d();
        let amps = self.amplitudes.amplitudes();
        Matrix::from_fn(1 << self.n_qubits, d, |r, a| amps[r * d + a])
    }

    /// Largest Schmidt weight of the register/ancilla bipartition.
    pub fn largest_schmidt_weight(&self) -> Result<f64> {
        let m = self.as_matrix();
        let gram = &m.adjoint() * &m;
        let ev = hermitian_eigenvalues(&gram)?;
        Ok(*ev.last().expect("non-empty spectrum") / self.amplitudes.norm_sqr())
    }

    /// `(I ⊗ ⟨anc|) |ψ⟩`
    pub fn project_ancilla(&self, anc: &StateVector) -> Vec<Complex64> {
        let d = self.space.d();
        self.amplitudes.amplitudes().chunks(d).map(|block| block.iter().zip(anc.amplitudes()).map(|(a, b)| b.conj() * a).sum()).collect()
    }
}

/// Run `seq` on every register basis state (and on the uniform register
/// superposition) with the ancilla starting in `anc_init`.
pub fn extract_register_gate(seq: &InteractionSequence, anc_init: &StateVector) -> Result<GateReport> {
    let space = seq.space();
    if anc_init.dim() != space.d() {
        return Err(invalid(format!("ancilla state has dimension {}, expected {}", anc_init.dim(), space.d())));
    }
    let anc = anc_init.clone().normalized();
    let reg_dim = 1usize << seq.n_qubits();
    let mut unitary = Matrix::zeros(reg_dim, reg_dim);
    let mut worst_fidelity = 1.0f64;
    let mut residual = 0.0f64;
    let mut superposed = vec![ZERO; reg_dim * space.d()];
    let amp = 1.0 / (reg_dim as f64).sqrt();

    for b in 0..reg_dim {
        let mut state = HybridState::product(space, &StateVector::basis(reg_dim, b), &anc)?;
        seq.run(&mut state)?;
        let column = state.project_ancilla(&anc);
        worst_fidelity = worst_fidelity.min(column.iter().map(|c| c.norm_sqr()).sum());
        residual = residual.max(1.0 - state.largest_schmidt_weight()?);
        for (r, c) in column.into_iter().enumerate() {
            unitary[(r, b)] = c;
        }
        for (s, a) in superposed.iter_mut().zip(state.amplitudes().amplitudes()) {
            *s += a * amp;
        }
    }
    let uniform = HybridState { n_qubits: seq.n_qubits(), space, amplitudes: StateVector::new(superposed) };
    residual = residual.max(1.0 - uniform.largest_schmidt_weight()?).max(0.0);

    let clean = residual < GateReport::DISENTANGLED_TOL && worst_fidelity > 1.0 - GateReport::DISENTANGLED_TOL;
    Ok(GateReport {
        register_unitary: clean.then_some(unitary),
        ancilla_return_fidelity: worst_fidelity,
        residual_entanglement: residual,
        interaction_count: seq.interaction_count(),
    })
}

/// `D^k(0,−p) D^j(−x,0) D^k(0,p) D^j(x,0)`: a controlled phase `2πxp/d`
/// between `j` and `k`.
pub fn two_qubit_sequence(space: QuditSpace, n_qubits: usize, j: usize, k: usize, x: i64, p: i64) -> Result<InteractionSequence> {
    if j == k {
        return Err(invalid("control and target must differ"));
    }
    let mut seq = InteractionSequence::new(space, n_qubits)?;
    seq.displace(j, x, 0)?.displace(k, 0, p)?.displace(j, -x, 0)?.displace(k, 0, -p)?;
    Ok(seq)
}

/// `n` controls (qubits `0..n`) each sharing one target (qubit `n`), in
/// `2(n+1)` interactions.
pub fn fan_one_target(space: QuditSpace, xs: &[i64], p: i64) -> Result<InteractionSequence> {
    fan_bipartite(space, xs, &[p])
}

/// `n` controls (qubits `0..n`) against `m` targets (qubits `n..n+m`), in
/// `2(n+m)` interactions; the pair `(k, j)` gets phase `2π x_k p_j / d`.
pub fn fan_bipartite(space: QuditSpace, xs: &[i64], ps: &[i64]) -> Result<InteractionSequence> {
    if xs.is_empty() || ps.is_empty() {
        return Err(invalid("fan sequences need at least one control and one target"));
    }
    let n = xs.len();
    let mut seq = InteractionSequence::new(space, n + ps.len())?;
    for sign in [1, -1] {
        for (k, &x) in xs.iter().enumerate() {
            seq.displace(k, sign * x, 0)?;
        }
        for (j, &p) in ps.iter().enumerate() {
            seq.displace(n + j, 0, sign * p)?;
        }
    }
    Ok(seq)
}

/// `u` on target qubit `n` iff all controls `0..n` are set. Requires the
/// ancilla to start in `|0⟩_x`.
pub fn generalized_toffoli(space: QuditSpace, n: usize, u: &Matrix) -> Result<InteractionSequence> {
    if n == 0 {
        return Err(invalid("need at least one control"));
    }
    if space.d() <= n {
        return Err(Error::DimensionTooSmall { d: space.d(), n });
    }
    if !u.is_unitary(1e-10) || u.rows() != 2 {
        return Err(invalid("target gate must be a 2x2 unitary"));
    }
    let mut seq = InteractionSequence::new(space, n + 1)?;
    for k in 0..n {
        seq.displace(k, 1, 0)?;
    }
    seq.push(Element::ProjectedGate { level: n, target: n, gate: u.clone() })?;
    for k in 0..n {
        seq.displace(k, -1, 0)?;
    }
    Ok(seq)
}

/// `|q⟩|q_t⟩ → e^{iθ((Σq) mod d) q_t}|q⟩|q_t⟩` with controls `0..n` and target
/// `n`. Requires the ancilla to start in `|0⟩_x`.
pub fn mod_d_phase_gate(space: QuditSpace, theta: f64, n: usize) -> Result<InteractionSequence> {
    if n == 0 {
        return Err(invalid("need at least one control"));
    }
    let mut seq = InteractionSequence::new(space, n + 1)?;
    for k in 0..n {
        seq.displace(k, 1, 0)?;
    }
    seq.push(Element::ControlledRotation { control: n, theta })?;
    for k in 0..n {
        seq.displace(k, -1, 0)?;
    }
    Ok(seq)
}

/// `C^0_1 R(θ)` for arbitrary real `θ`, using a controlled `R_d(θ)` in place
/// of the momentum displacement. Requires the ancilla to start in `|0⟩_x`.
pub fn single_pair_arbitrary_rotation(space: QuditSpace, theta: f64) -> Result<InteractionSequence> {
    let mut seq = InteractionSequence::new(space, 2)?;
    seq.displace(0, 1, 0)?;
    seq.push(Element::ControlledRotation { control: 1, theta })?;
    seq.displace(0, -1, 0)?;
    Ok(seq)
}

/// Checks that `Z ⊗ S_z` generates the symmetric controlled rotation.
///
/// Returns the larger of two phase distances:
/// `exp(−iθ Z⊗S_z)` against `(e^{−iθsZ} ⊗ I)·C(R_d(θ), R_d(−θ))`, and
/// `C(R_d(θ), R_d(−θ))·(I ⊗ R_d(−θ))` against `C(I, R_d(−2θ))`.
pub fn hamiltonian_generator_check(theta: f64, d: usize) -> Result<f64> {
    let dim = crate::phase_space::QuditDim::new(d)?;
    let sz = spin_z(dim);
    let s = (d as f64 - 1.0) / 2.0;
    // exp(−iθ Z⊗S_z) is diagonal in the product basis
    let generated =
        Matrix::from_diag(&[1.0, -1.0].iter().flat_map(|z| sz.diagonal().into_iter().map(move |m| cis(-theta * z * m.re))).collect::<Vec<_>>());
    let symmetric = embed_controlled(0, 1, d, &rotation(dim, theta), &rotation(dim, -theta))?;
    let local = Matrix::from_diag(&[cis(-theta * s), cis(theta * s)].iter().flat_map(|&c| std::iter::repeat_n(c, d)).collect::<Vec<_>>());
    let first = phase_distance(&generated, &(&local * &symmetric))?;

    let anc_correction = embed_controlled(0, 1, d, &rotation(dim, -theta), &rotation(dim, -theta))?;
    let reduced = embed_controlled(0, 1, d, &Matrix::identity(d), &rotation(dim, -2.0 * theta))?;
    let second = phase_distance(&(&symmetric * &anc_correction), &reduced)?;
    Ok(first.max(second))
}
