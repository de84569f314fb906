//! Two register qubits entangled only through a qudit: the displacement
//! rectangle returns the ancilla and leaves a controlled rotation behind.

use amqc::phase_space::{PhaseConvention, QuditSpace};
use amqc::qudit_model::{extract_register_gate, two_qubit_sequence, Polarity};
use amqc::tensor::{gates, kron, phase_distance, StateVector};
use std::f64::consts::PI;

fn main() -> amqc::Result<()> {
    let space = QuditSpace::new(2, PhaseConvention::HalfRoot)?;
    let seq = two_qubit_sequence(space, 2, 0, 1, 1, 1)?;
    let rep = extract_register_gate(&seq, &StateVector::uniform(2))?;
    let u = rep.register_unitary.expect("rectangle closes");
    println!("d = 2, (x,p) = (1,1): distance to CZ = {:.1e}", phase_distance(&u, &gates::controlled_phase(PI))?);
    println!("  ancilla return fidelity {:.12}, {} interactions", rep.ancilla_return_fidelity, rep.interaction_count);

    let space = QuditSpace::new(5, PhaseConvention::ModularInverse)?;
    for (x, p) in [(1, 1), (1, 2), (2, 4)] {
        let u = extract_register_gate(&two_qubit_sequence(space, 2, 0, 1, x, p)?, &StateVector::basis(5, 3))?.register_unitary.expect("closed");
        let theta = 2.0 * PI * (x * p) as f64 / 5.0;
        println!("d = 5, (x,p) = ({x},{p}): CR({theta:.4}) distance {:.1e}", phase_distance(&u, &gates::controlled_phase(theta))?);
    }

    // the symmetric coupling gives exp(i a Z x Z), locally a CR(4a)
    let sym = two_qubit_sequence(space, 2, 0, 1, 1, 1)?.with_polarity(Polarity::Symmetric);
    let u = extract_register_gate(&sym, &StateVector::basis(5, 0))?.register_unitary.expect("closed");
    let a = 2.0 * PI / 5.0;
    println!("symmetric polarity: distance to exp(i a ZZ) = {:.1e}", phase_distance(&u, &gates::zz_phase(a))?);
    let local = kron(&gates::phase(2.0 * a), &gates::phase(2.0 * a));
    println!("  after R(2a) on both qubits, distance to CR(4a) = {:.1e}", phase_distance(&(&local * &u), &gates::controlled_phase(4.0 * a))?);

    let one = two_qubit_sequence(space, 1, 0, 0, 1, 1);
    println!("same qubit twice: {:?}", one.err());
    Ok(())
}
