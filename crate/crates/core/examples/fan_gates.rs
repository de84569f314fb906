//! Many controlled rotations from one ancilla loop: n controls onto one
//! target in 2(n+1) interactions, and n x m pairs in 2(n+m).

use amqc::phase_space::{PhaseConvention, QuditSpace};
use amqc::qudit_model::{extract_register_gate, fan_bipartite, fan_one_target};
use amqc::tensor::{gates, phase_distance, Matrix, StateVector};
use std::f64::consts::PI;

fn pairwise(n: usize, pairs: &[(usize, usize, f64)]) -> Matrix {
    gates::diagonal(n, |b| pairs.iter().map(|&(c, t, th)| th * (gates::bit(b, n, c) * gates::bit(b, n, t)) as f64).sum())
}

fn main() -> amqc::Result<()> {
    let d = 7;
    let space = QuditSpace::new(d, PhaseConvention::HalfRoot)?;
    let step = 2.0 * PI / d as f64;

    let xs = [1, 2, 3, 5];
    let seq = fan_one_target(space, &xs, 1)?;
    let u = extract_register_gate(&seq, &StateVector::basis(d, 0))?.register_unitary.expect("closed");
    let pairs: Vec<_> = xs.iter().enumerate().map(|(k, &x)| (k, 4, step * x as f64)).collect();
    println!(
        "one target, {} controls: {} interactions (pairwise: {}), distance {:.1e}",
        xs.len(),
        seq.interaction_count(),
        4 * xs.len(),
        phase_distance(&u, &pairwise(5, &pairs))?
    );

    let (xs, ps) = ([1, 2, 3], [1, 4]);
    let seq = fan_bipartite(space, &xs, &ps)?;
    let u = extract_register_gate(&seq, &StateVector::basis(d, 0))?.register_unitary.expect("closed");
    let mut pairs = Vec::new();
    for (k, &x) in xs.iter().enumerate() {
        for (j, &p) in ps.iter().enumerate() {
            pairs.push((k, 3 + j, step * (x * p) as f64));
        }
    }
    println!(
        "{} x {} bipartite: {} gates via {} interactions (pairwise: {}), distance {:.1e}",
        xs.len(),
        ps.len(),
        pairs.len(),
        seq.interaction_count(),
        4 * pairs.len(),
        phase_distance(&u, &pairwise(5, &pairs))?
    );
    Ok(())
}
