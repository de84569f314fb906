//! The interactions as time evolutions: Z x S_z for the qudit, and a
//! collective spin rotation conditioned on Z for the ensemble.

use amqc::qudit_model::hamiltonian_generator_check;
use amqc::spin::{spin_generator_check, EnsembleSize};

fn main() -> amqc::Result<()> {
    for d in 2..=6 {
        let worst = [-2.0, -0.3, 0.5, 1.7].iter().map(|&t| hamiltonian_generator_check(t, d)).collect::<amqc::Result<Vec<_>>>()?;
        println!("qudit d = {d}: worst distance {:.1e}", worst.into_iter().fold(0.0, f64::max));
    }
    for n in 1..=4 {
        let gap = spin_generator_check(1.1, 0.4, EnsembleSize::new(n)?)?;
        println!("spin ensemble N = {n}: distance {gap:.1e}");
    }
    println!("{}", spin_generator_check(0.1, 0.0, EnsembleSize::new(12)?).unwrap_err());
    Ok(())
}
