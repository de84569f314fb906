use crate::tensor::Matrix;

/// Outcome of running an interaction sequence over every register input.
#[derive(Clone, Debug)]
pub struct GateReport {
    /// Register unitary, present only when the ancilla ends disentangled and
    /// back in its initial state on every branch.
    pub register_unitary: Option<Matrix>,
    /// Worst-case probability of finding the ancilla back in its initial state.
    pub ancilla_return_fidelity: f64,
    /// `1 −` largest Schmidt weight of the register/ancilla split, maximized
    /// over the probed register inputs.
    pub residual_entanglement: f64,
    pub interaction_count: usize,
}

impl GateReport {
    /// Threshold below which the ancilla counts as returned and disentangled.
    pub const DISENTANGLED_TOL: f64 = 1e-10;

    pub fn is_clean(&self) -> bool {
        self.register_unitary.is_some()
    }
}
