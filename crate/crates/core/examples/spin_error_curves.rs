//! Intrinsic error of a spin-ensemble loop of side zeta_n: fractional phase
//! error and return infidelity against their leading-order series.

use amqc::spin::{effective_quadrature, fan_error, fan_sequence_simulate, EnsembleSize};

fn main() -> amqc::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "zeta_n", "N", "phi_E", "infidelity", "zeta^6/N^2");
    for zeta in [5.0, 10.0, 20.0, 40.0] {
        for n in [1e5, 1e7, 1e9] {
            let p = fan_error(zeta, EnsembleSize::new(n as u64)?);
            println!("{zeta:>6} {n:>12.0e} {:>12.4e} {:>12.4e} {:>12.4e}", p.phi_e, p.infidelity, p.infid_series);
        }
    }

    // the branch simulation reproduces the closed form on the extremal branch
    let size = EnsembleSize::new(10_000)?;
    let xs = [5.0, 5.0];
    let sim = fan_sequence_simulate(&xs, &xs, size)?;
    let side = effective_quadrature(&xs, size);
    let p = fan_error(side, size);
    println!(
        "2 x 2 fan, N = 1e4: extremal phase {:.12} vs closed form {:.12}; worst branch infidelity {:.3e}, max phase error {:.3e}",
        sim.extremal_phase(),
        p.phi_f,
        sim.worst_infidelity,
        sim.max_phase_error
    );
    Ok(())
}
