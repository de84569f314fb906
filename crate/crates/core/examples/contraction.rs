//! Large ensembles behave like a field mode: with zeta scaled by 1/sqrt(2N),
//! loop phases and vacuum overlaps approach their field values as 1/N.

use amqc::spin::{contraction_probe, doubling_sizes, loglog_slope};
use num_complex::Complex64;

fn main() -> amqc::Result<()> {
    let sizes = doubling_sizes(1000, 1_024_000)?;
    for zeta in [Complex64::new(2.0, 0.0), Complex64::new(1.0, 1.0)] {
        let rows = contraction_probe(zeta, &sizes)?;
        println!("zeta = {zeta}: field overlap {:.10}", (-zeta.norm_sqr() / 2.0).exp());
        for r in rows.iter().step_by(3) {
            println!(
                "  N {:>8}: phi_f {:.10}  |err| {:.3e}  overlap {:.10}  prefactor {:.10}",
                r.n_spins.get(),
                r.phi_f,
                r.abs_err_phi,
                r.overlap,
                r.prefactor
            );
        }
        let slope = loglog_slope(&rows.iter().map(|r| (r.n_spins.as_f64(), r.abs_err_phi)).collect::<Vec<_>>())?;
        println!("  log-log slope of the phase error: {slope:.4}");
    }
    Ok(())
}
