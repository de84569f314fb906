//! A spin-ensemble ancilla: displacements curve on the sphere, so the square
//! loop needs a corrected side to close. The closed loop gives exp(i phi Z x Z).

use amqc::spin::{eta_for_phase, loop_close, spin_two_qubit_gate, EnsembleSize, MAX_LOOP_ETA};
use amqc::tensor::{gates, kron, phase_distance};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

fn main() -> amqc::Result<()> {
    let n = EnsembleSize::new(6)?;
    for eta in [0.01, 0.1, 0.3, MAX_LOOP_ETA] {
        let sol = loop_close(eta)?;
        let rep = spin_two_qubit_gate(eta, n)?;
        let u = rep.register_unitary.expect("loop closes");
        println!(
            "eta {eta:.4}: tau {:.6}, phi_t {:.6}, gate distance {:.1e}, return fidelity {:.12}",
            sol.tau,
            sol.phi_t(n),
            phase_distance(&u, &gates::zz_phase(sol.phi_t(n)))?,
            rep.ancilla_return_fidelity
        );
    }
    println!("{}", loop_close(0.5).unwrap_err());

    let eta = eta_for_phase(FRAC_PI_4, n)?;
    let u = spin_two_qubit_gate(eta, n)?.register_unitary.expect("closed");
    let local = kron(&gates::phase(FRAC_PI_2), &gates::phase(FRAC_PI_2));
    println!(
        "eta = {eta:.6} gives phi_t = pi/4; distance to CZ after local phases {:.1e}",
        phase_distance(&(&local * &u), &gates::controlled_phase(PI))?
    );
    Ok(())
}
