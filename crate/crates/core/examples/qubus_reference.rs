//! The field-mode bus, tracked symbolically, and its agreement with the
//! qudit model when the lattice spacing is sqrt(2 pi / d).

use amqc::phase_space::{PhaseConvention, QuditSpace};
use amqc::qubus::{compose_field, field_fan, field_two_qubit, FieldLabel};
use amqc::qudit_model::{extract_register_gate, fan_bipartite, Polarity};
use amqc::tensor::{gates, phase_distance, StateVector};
use std::f64::consts::PI;

fn main() -> amqc::Result<()> {
    let (x, p) = (0.8, 1.3);
    let mut label = FieldLabel::ORIGIN;
    let mut phase = num_complex::Complex64::new(1.0, 0.0);
    for step in [FieldLabel::position(x), FieldLabel::momentum(p), FieldLabel::position(-x), FieldLabel::momentum(-p)] {
        let (next, s) = compose_field(label, step);
        label = next;
        phase *= s;
    }
    println!("rectangle: back at {label:?}, phase arg {:.6} (x p = {:.6})", phase.arg(), x * p);

    let u = field_two_qubit(x, p)?.register_unitary.expect("closed");
    println!("two-qubit gate: distance to exp(i x p ZZ) {:.1e}", phase_distance(&u, &gates::zz_phase(x * p))?);

    let d = 5;
    let scale = (2.0 * PI / d as f64).sqrt();
    let (xs, ps) = ([1i64, 2], [3i64, 1]);
    let field = field_fan(&xs.map(|v| v as f64 * scale), &ps.map(|v| v as f64 * scale))?;
    let space = QuditSpace::new(d, PhaseConvention::HalfRoot)?;
    let qudit = extract_register_gate(&fan_bipartite(space, &xs, &ps)?.with_polarity(Polarity::Symmetric), &StateVector::basis(d, 0))?;
    println!(
        "2 x 2 fan: field vs qudit (d = {d}) distance {:.1e}, {} interactions each",
        phase_distance(&field.register_unitary.expect("closed"), &qudit.register_unitary.expect("closed"))?,
        field.interaction_count
    );
    Ok(())
}
