//! Identity suites behind `amqc verify`.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use super::demo::{fan_oracle, multi_controlled};
use crate::error::Result;
use crate::phase_space::{fourier, generalized_pauli, PhaseConvention, QuditDim, QuditSpace};
use crate::qubus::{field_fan, field_fan_sequence, field_two_qubit, run_field_sequence, zz_phase_on, FieldLabel};
use crate::qudit_model::{
    extract_register_gate, fan_bipartite, generalized_toffoli, hamiltonian_generator_check, mod_d_phase_gate, two_qubit_sequence, Polarity,
};
use crate::spin::{
    compose, compose_on_origin, dense_coherent_state, dense_displacement, doubling_sizes, effective_quadrature, fan_error, fan_sequence_simulate,
    loglog_slope, loop_close, spin_generator_check, spin_two_qubit_gate, EnsembleSize, StereoLabel, MAX_LOOP_ETA,
};
use crate::tensor::{gates, kron, phase_distance, Matrix, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Qudit,
    Spin,
    Qubus,
    Cross,
    All,
}

/// One identity, checked over `cases` inputs.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn run_count(&self) -> usize {
        self.checks.len()
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn worst_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }

    pub fn all_passed(&self) -> bool {
        self.passed_count() == self.run_count()
    }
}

type CheckFn = fn() -> Result<Vec<Check>>;

pub fn run(suite: Suite) -> Result<Vec<SuiteResult>> {
    let selected: &[(&'static str, CheckFn)] = &[("qudit", qudit_checks), ("spin", spin_checks), ("qubus", qubus_checks), ("cross", cross_checks)];
    let wanted = |name: &str| match suite {
        Suite::All => true,
        Suite::Qudit => name == "qudit",
        Suite::Spin => name == "spin",
        Suite::Qubus => name == "qubus",
        Suite::Cross => name == "cross",
    };
    selected
        .iter()
        .filter(|(name, _)| wanted(name))
        .map(|&(name, checks)| {
            let start = Instant::now();
            let checks = checks()?;
            Ok(SuiteResult { name, checks, elapsed: start.elapsed() })
        })
        .collect()
}

/// Running maximum over `(cases, deviation)`.
#[derive(Default)]
struct Worst {
    cases: usize,
    deviation: f64,
}

impl Worst {
    fn add(&mut self, deviation: f64) {
        self.cases += 1;
        // NaN must fail the check
        self.deviation = if deviation.is_nan() { f64::INFINITY } else { self.deviation.max(deviation) };
    }

    fn check(self, name: &'static str, tolerance: f64) -> Check {
        Check { name, cases: self.cases, deviation: self.deviation, tolerance }
    }
}

fn spaces(dims: &[usize]) -> Vec<QuditSpace> {
    let mut out = Vec::new();
    for &d in dims {
        let dim = QuditDim::new(d).expect("d >= 2");
        for &conv in PhaseConvention::valid_for(dim) {
            out.push(QuditSpace::new(d, conv).expect("valid convention"));
        }
    }
    out
}

fn unitary_of(seq: &crate::qudit_model::InteractionSequence, anc: &StateVector) -> Result<Option<Matrix>> {
    Ok(extract_register_gate(seq, anc)?.register_unitary)
}

/// Distance to `oracle`, or infinity if the ancilla did not come back clean.
fn gate_gap(u: Option<Matrix>, oracle: &Matrix) -> Result<f64> {
    match u {
        Some(u) => phase_distance(&u, oracle),
        None => Ok(f64::INFINITY),
    }
}

fn qudit_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mut w = Worst::default();
    for d in 2..=8 {
        let dim = QuditDim::new(d)?;
        let (x, z) = generalized_pauli(dim);
        let f = fourier(dim);
        w.add((&(&f.adjoint() * &z) * &f).max_abs_diff(&x)?);
    }
    checks.push(w.check("fourier maps Z to X", 1e-12));

    let mut w = Worst::default();
    for space in spaces(&[2, 3, 4, 5]) {
        let d = space.d() as i64;
        for x1 in 0..d {
            for p1 in 0..d {
                for x2 in 0..d {
                    for p2 in 0..d {
                        let (l, ph) = space.compose_labels(space.label(x1, p1), space.label(x2, p2))?;
                        let product = &space.displacement(x2, p2) * &space.displacement(x1, p1);
                        w.add(product.max_abs_diff(&space.displacement(l.x, l.p).scale(ph))?);
                    }
                }
            }
        }
    }
    checks.push(w.check("label composition matches matrices", 1e-12));

    let mut w = Worst::default();
    for space in spaces(&[2, 3, 4, 5, 8]) {
        let d = space.d();
        for x in 0..d as i64 {
            for p in 0..d as i64 {
                let seq = two_qubit_sequence(space, 2, 0, 1, x, p)?;
                let oracle = gates::controlled_phase(2.0 * PI * (x * p) as f64 / d as f64);
                for anc in [StateVector::basis(d, 0), StateVector::basis(d, d - 1), StateVector::uniform(d)] {
                    w.add(gate_gap(unitary_of(&seq, &anc)?, &oracle)?);
                }
            }
        }
    }
    checks.push(w.check("rectangle gives controlled rotation", 1e-10));

    let mut w = Worst::default();
    for space in spaces(&[3, 4, 5]) {
        for (xs, ps) in [(vec![1, 2, 3], vec![1]), (vec![1, 2], vec![2, 1])] {
            let n = xs.len() + ps.len();
            let seq = fan_bipartite(space, &xs, &ps)?;
            let oracle = fan_oracle(&xs, &ps, space.d());
            w.add(gate_gap(unitary_of(&seq, &StateVector::basis(space.d(), 0))?, &oracle)?);
            w.add((seq.interaction_count() as f64 - 2.0 * n as f64).abs());
        }
    }
    checks.push(w.check("fan sequences match pairwise products", 1e-10));

    let mut w = Worst::default();
    for n in 1..=3usize {
        let space = QuditSpace::new(n + 2, PhaseConvention::HalfRoot)?;
        for u in [gates::pauli_x(), gates::phase(PI / 3.0)] {
            let seq = generalized_toffoli(space, n, &u)?;
            w.add(gate_gap(unitary_of(&seq, &StateVector::basis(n + 2, 0))?, &multi_controlled(n, &u))?);
        }
    }
    checks.push(w.check("generalized toffoli", 1e-10));

    let mut w = Worst::default();
    let theta = PI / 5.0;
    let space = QuditSpace::new(3, PhaseConvention::ModularInverse)?;
    let u = unitary_of(&mod_d_phase_gate(space, theta, 4)?, &StateVector::basis(3, 0))?;
    if let Some(u) = u {
        for b in 0..32usize {
            let count = (0..4).map(|q| gates::bit(b, 5, q)).sum::<usize>() % 3;
            let expected = Complex64::from_polar(1.0, theta * (count * gates::bit(b, 5, 4)) as f64);
            w.add((u[(b, b)] - expected).norm());
        }
    } else {
        w.add(f64::INFINITY);
    }
    checks.push(w.check("mod-d phase gate on every basis state", 1e-12));

    let mut w = Worst::default();
    for d in 2..=6 {
        for k in 0..8 {
            w.add(hamiltonian_generator_check(-PI + 0.83 * k as f64, d)?);
        }
    }
    checks.push(w.check("Z x S_z generates controlled rotations", 1e-12));

    let mut w = Worst::default();
    for space in spaces(&[3, 4, 5, 8]) {
        let d = space.d();
        for (x, p) in [(1, 1), (1, 2), (2, 3)] {
            let sym = unitary_of(&two_qubit_sequence(space, 2, 0, 1, x, p)?.with_polarity(Polarity::Symmetric), &StateVector::basis(d, 0))?;
            let one = unitary_of(&two_qubit_sequence(space, 2, 0, 1, 2 * x, 2 * p)?, &StateVector::basis(d, 0))?;
            let alpha = 2.0 * PI * (x * p) as f64 / d as f64;
            let local = kron(&gates::phase(2.0 * alpha), &gates::phase(2.0 * alpha));
            match (sym, one) {
                (Some(sym), Some(one)) => w.add(phase_distance(&(&local * &sym), &one)?),
                _ => w.add(f64::INFINITY),
            }
        }
    }
    checks.push(w.check("polarities agree up to local rotations", 1e-10));
    Ok(checks)
}

fn spin_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let labels: Vec<StereoLabel> = [(0.0, 0.0), (0.3, 0.0), (-0.7, 0.2), (0.0, 1.5), (2.0, -1.0), (-0.1, -0.05), (4.0, 3.0)]
        .iter()
        .map(|&(re, im)| StereoLabel::new(Complex64::new(re, im)))
        .collect::<Result<_>>()?;

    let mut w = Worst::default();
    for k in [1, 3, 5, 8] {
        let n = EnsembleSize::new(k)?;
        let reference = dense_coherent_state(StereoLabel::ORIGIN, n)?;
        for &z1 in &labels {
            for &z2 in &labels {
                let (out, phase) = match compose_on_origin(z1, z2, n) {
                    Ok(r) => r,
                    Err(crate::Error::SingularComposition) => continue,
                    Err(e) => return Err(e),
                };
                let once = dense_displacement(z1, n)?.try_apply(reference.amplitudes())?;
                let lhs = dense_displacement(z2, n)?.try_apply(&once)?;
                let rhs = dense_coherent_state(out, n)?;
                w.add(lhs.iter().zip(rhs.amplitudes()).map(|(a, b)| (a - phase * b).norm()).fold(0.0, f64::max));
            }
        }
    }
    checks.push(w.check("composition law matches dense product", 1e-12));

    let mut w = Worst::default();
    for k in 1..=100 {
        let sol = loop_close(MAX_LOOP_ETA * k as f64 / 100.0)?;
        let mut label = StereoLabel::ORIGIN;
        let mut phase = 0.0;
        for step in sol.labels() {
            let c = compose(label, step)?;
            label = c.label;
            phase += c.phase_per_spin;
        }
        w.add(label.norm().max((phase - sol.phi_per_spin).abs()));
    }
    checks.push(w.check("square loop closes on the sphere", 1e-12));

    let mut w = Worst::default();
    let n6 = EnsembleSize::new(6)?;
    for eta in [0.01, 0.1, 0.25, MAX_LOOP_ETA] {
        let rep = spin_two_qubit_gate(eta, n6)?;
        let oracle = gates::zz_phase(loop_close(eta)?.phi_t(n6));
        w.add(gate_gap(rep.register_unitary, &oracle)?.max(1.0 - rep.ancilla_return_fidelity));
    }
    checks.push(w.check("closed loop gives exp(i phi Z x Z)", 1e-10));

    let mut w = Worst::default();
    for k in 1..=4 {
        for (theta, phi) in [(0.4, 0.0), (-1.2, 0.7), (2.5, -2.0)] {
            w.add(spin_generator_check(theta, phi, EnsembleSize::new(k)?)?);
        }
    }
    checks.push(w.check("collective generator matches displacement", 1e-10));

    let mut w = Worst::default();
    let point = fan_error(40.0, EnsembleSize::new(10_000_000)?);
    w.add((point.phi_e - 1.8e-4).abs() / 0.4e-4);
    w.add((point.infidelity / point.infid_series - 1.0).abs() / 0.1);
    checks.push(w.check("error endpoint at zeta_n = 40, N = 1e7 (scaled)", 1.0));
    Ok(checks)
}

fn qubus_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let grid = [-1.5, -0.5, 0.25, 1.0, 2.0];

    let mut w = Worst::default();
    let mut l = Worst::default();
    for &x in &grid {
        for &p in &grid {
            let u = field_two_qubit(x, p)?.register_unitary;
            w.add(gate_gap(u.clone(), &gates::zz_phase(x * p))?);
            let local = kron(&gates::phase(2.0 * x * p), &gates::phase(2.0 * x * p));
            l.add(match u {
                Some(u) => phase_distance(&(&local * &u), &gates::controlled_phase(4.0 * x * p))?,
                None => f64::INFINITY,
            });
        }
    }
    checks.push(w.check("rectangle gives exp(i x p Z x Z)", 1e-12));
    checks.push(l.check("local equivalence to CR(4xp)", 1e-12));

    let mut w = Worst::default();
    for (xs, ps) in [(vec![0.5, -1.0, 1.5], vec![0.75]), (vec![0.5, 1.0], vec![-0.25, 2.0]), (vec![1.0], vec![1.0, 0.5, 0.25])] {
        let n = xs.len() + ps.len();
        let mut oracle = Matrix::identity(1 << n);
        for (k, &x) in xs.iter().enumerate() {
            for (j, &p) in ps.iter().enumerate() {
                oracle = &oracle * &zz_phase_on(n, k, xs.len() + j, x * p);
            }
        }
        let seq = field_fan_sequence(&xs, &ps)?;
        for bus in [FieldLabel::ORIGIN, FieldLabel::new(1.5, -0.5)?] {
            let (rep, state) = run_field_sequence(n, bus, &seq)?;
            w.add(gate_gap(rep.register_unitary, &oracle)?);
            let closed = state.branches().iter().all(|b| (b.label.x - bus.x).abs() < 1e-15 && (b.label.p - bus.p).abs() < 1e-15);
            w.add(if closed { 0.0 } else { f64::INFINITY });
        }
    }
    checks.push(w.check("fans close and match pairwise products", 1e-12));
    Ok(checks)
}

fn cross_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mut w = Worst::default();
    for a in [0.5, 1.0, 2.0] {
        let mut points = Vec::new();
        for n in doubling_sizes(1000, 1_024_000)? {
            points.push((n.as_f64(), fan_sequence_simulate(&[a], &[a], n)?.max_phase_error));
        }
        w.add((loglog_slope(&points)? + 1.0).abs());
    }
    checks.push(w.check("spin phases approach field phases as 1/N", 0.05));

    let mut w = Worst::default();
    for (xs, ps, k) in [(vec![2.0, 2.0], vec![2.0, 2.0], 100u64), (vec![1.0], vec![1.0], 10), (vec![3.0, 3.0], vec![3.0, 3.0], 1_000_000)] {
        let n = EnsembleSize::new(k)?;
        let sim = fan_sequence_simulate(&xs, &ps, n)?;
        let point = fan_error(effective_quadrature(&xs, n), n);
        w.add((sim.extremal_phase() - point.phi_f).abs());
    }
    checks.push(w.check("extremal fan branch matches closed form", 1e-12));

    let mut w = Worst::default();
    for space in spaces(&[3, 4, 5]) {
        let d = space.d();
        let scale = (2.0 * PI / d as f64).sqrt();
        for (xs, ps) in [(vec![1i64, 2], vec![1i64, 2]), (vec![1, 1, 2], vec![1])] {
            let n = xs.len() + ps.len();
            let to_f = |v: &[i64], s: f64| v.iter().map(|&a| a as f64 * s).collect::<Vec<_>>();
            let anc = StateVector::basis(d, 0);
            let sym = unitary_of(&fan_bipartite(space, &xs, &ps)?.with_polarity(Polarity::Symmetric), &anc)?;
            let field = field_fan(&to_f(&xs, scale), &to_f(&ps, scale))?.register_unitary;
            match (&sym, &field) {
                (Some(a), Some(b)) => w.add(phase_distance(a, b)?),
                _ => w.add(f64::INFINITY),
            }
            // apply-on-one: half the spacing plus local phase corrections
            let one = unitary_of(&fan_bipartite(space, &xs, &ps)?, &anc)?;
            let (hx, hp) = (to_f(&xs, scale / 2.0), to_f(&ps, scale / 2.0));
            let field = field_fan(&hx, &hp)?.register_unitary;
            let local = gates::diagonal(n, |b| {
                let mut phase = 0.0;
                for (k, &x) in hx.iter().enumerate() {
                    for (j, &p) in hp.iter().enumerate() {
                        phase += 2.0 * x * p * (gates::bit(b, n, k) + gates::bit(b, n, xs.len() + j)) as f64;
                    }
                }
                phase
            });
            match (one, field) {
                (Some(a), Some(b)) => w.add(phase_distance(&a, &(&local * &b))?),
                _ => w.add(f64::INFINITY),
            }
        }
    }
    checks.push(w.check("qudit fans equal field fans", 1e-10));
    Ok(checks)
}
