//! Displacements on a d-level phase space and the phase picked up by a
//! closed loop, under both phase conventions.

use amqc::phase_space::{fourier, generalized_pauli, PhaseConvention, QuditDim, QuditSpace};
use amqc::tensor::Matrix;
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> amqc::Result<()> {
    let d = 5;
    let dim = QuditDim::new(d)?;
    let (x, z) = generalized_pauli(dim);
    let f = fourier(dim);
    let conj = &(&f.adjoint() * &z) * &f;
    println!("d = {d}: |F^dag Z F - X| = {:.1e}", conj.max_abs_diff(&x)?);

    for conv in [PhaseConvention::ModularInverse, PhaseConvention::HalfRoot] {
        let space = QuditSpace::new(d, conv)?;
        let (label, phase) = space.compose_labels(space.label(1, 0), space.label(0, 2))?;
        println!("{conv:?}: D(0,2) D(1,0) = ({:.4}) D({}, {})", phase, label.x, label.p);
        for (lx, lp) in [(1, 1), (2, 3), (4, 4)] {
            let s = space.loop_phase(&space.rectangle(lx, lp))?;
            let expected = Complex64::from_polar(1.0, 2.0 * PI * (lx * lp) as f64 / d as f64).arg();
            println!("  rectangle ({lx},{lp}): loop phase arg {:+.4}, 2 pi x p / d wrapped {:+.4}", s.arg(), expected);
        }
    }

    let space = QuditSpace::new(4, PhaseConvention::HalfRoot)?;
    match space.loop_phase(&[space.label(1, 0), space.label(0, 1)]) {
        Err(e) => println!("open path: {e}"),
        Ok(_) => unreachable!(),
    }
    // ModularInverse needs an odd dimension
    println!("{:?}", QuditSpace::new(4, PhaseConvention::ModularInverse).err());
    let id = space.displacement(4, 0);
    println!("D(d, 0) is a multiple of I: {}", id.max_abs_diff(&Matrix::identity(4).scale(id[(0, 0)]))? < 1e-12);
    Ok(())
}
