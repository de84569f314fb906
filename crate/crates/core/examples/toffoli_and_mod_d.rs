//! Multi-controlled gates: count the set controls on the ancilla, act on the
//! target only when the count is full, then uncount.

use amqc::phase_space::{PhaseConvention, QuditSpace};
use amqc::qudit_model::{extract_register_gate, generalized_toffoli, mod_d_phase_gate};
use amqc::tensor::{gates, phase_distance, Matrix, StateVector};
use std::f64::consts::PI;

fn main() -> amqc::Result<()> {
    for n in 1..=3usize {
        let space = QuditSpace::new(n + 1, PhaseConvention::HalfRoot)?;
        let seq = generalized_toffoli(space, n, &gates::pauli_x())?;
        let u = extract_register_gate(&seq, &StateVector::basis(n + 1, 0))?.register_unitary.expect("closed");
        let dim = 1 << (n + 1);
        let mut oracle = Matrix::identity(dim);
        oracle[(dim - 2, dim - 2)] = 0.0.into();
        oracle[(dim - 1, dim - 1)] = 0.0.into();
        oracle[(dim - 2, dim - 1)] = 1.0.into();
        oracle[(dim - 1, dim - 2)] = 1.0.into();
        println!("{n}-controlled X with d = {}: {} elements, distance {:.1e}", n + 1, seq.interaction_count(), phase_distance(&u, &oracle)?);
    }
    println!("{}", generalized_toffoli(QuditSpace::new(3, PhaseConvention::HalfRoot)?, 3, &gates::pauli_x()).unwrap_err());

    // with d <= n the count wraps: the phase follows (sum of controls) mod d
    let theta = PI / 3.0;
    let space = QuditSpace::new(3, PhaseConvention::ModularInverse)?;
    let u = extract_register_gate(&mod_d_phase_gate(space, theta, 4)?, &StateVector::basis(3, 0))?.register_unitary.expect("closed");
    println!("mod-3 phase gate, 4 controls, target set:");
    for ones in 0..=4usize {
        let bits = ((1usize << ones) - 1) << (4 - ones) << 1 | 1;
        println!("  {ones} controls set -> phase / theta = {:.3}", u[(bits, bits)].arg() / theta);
    }
    Ok(())
}
