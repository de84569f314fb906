use std::f64::consts::PI;
use std::io::Write;

use clap::Args;

use super::CliError;
use crate::phase_space::{PhaseConvention, QuditSpace};
use crate::qudit_model::{
    extract_register_gate, fan_bipartite, fan_one_target, generalized_toffoli, mod_d_phase_gate, two_qubit_sequence, Element, InteractionSequence,
};
use crate::tensor::{gates, phase_distance, Matrix, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoKind {
    TwoQubit,
    FanOne,
    FanBipartite,
    Toffoli,
    Modd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConventionArg {
    HalfRoot,
    ModularInverse,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(value_enum)]
    pub kind: DemoKind,
    /// Qudit dimension (default depends on the sequence).
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of controls.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Number of targets (fan-bipartite).
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub x: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub p: i64,
    /// Rotation angle (toffoli: target gate R(theta) instead of X; modd: phase).
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, value_enum, default_value_t = ConventionArg::HalfRoot)]
    pub convention: ConventionArg,
}

/// `∏_{k,j} C R(2π x_k p_j / d)` with controls first, then targets.
pub(crate) fn fan_oracle(xs: &[i64], ps: &[i64], d: usize) -> Matrix {
    let n = xs.len() + ps.len();
    gates::diagonal(n, |b| {
        let mut phase = 0.0;
        for (k, &x) in xs.iter().enumerate() {
            for (j, &p) in ps.iter().enumerate() {
                phase += (gates::bit(b, n, k) * gates::bit(b, n, xs.len() + j)) as f64 * 2.0 * PI * (x * p) as f64 / d as f64;
            }
        }
        phase
    })
}

/// `u` on the last qubit iff the first `controls` qubits are all set.
pub(crate) fn multi_controlled(controls: usize, u: &Matrix) -> Matrix {
    let mut m = Matrix::identity(1 << (controls + 1));
    let top = (1 << (controls + 1)) - 2;
    for r in 0..2 {
        for c in 0..2 {
            m[(top + r, top + c)] = u[(r, c)];
        }
    }
    m
}

/// `e^{iθ((Σ controls) mod d)·target}`.
pub(crate) fn mod_d_oracle(controls: usize, d: usize, theta: f64) -> Matrix {
    let n = controls + 1;
    gates::diagonal(n, |b| {
        let count = (0..controls).map(|q| gates::bit(b, n, q)).sum::<usize>() % d;
        theta * (count * gates::bit(b, n, controls)) as f64
    })
}

fn describe(e: &Element) -> String {
    match e {
        Element::Displace(i) => format!("C^{} D({}, {}) [{:?}]", i.qubit, i.x, i.p, i.polarity),
        Element::ProjectedGate { level, target, .. } => format!("U on qubit {target} if ancilla in |{level}>_x"),
        Element::ControlledRotation { control, theta } => format!("C^{control} R_d({theta:.6})"),
    }
}

pub(crate) fn cmd_demo(args: &DemoArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.n == 0 || args.m == 0 {
        return Err(CliError::Usage("--n and --m must be at least 1".into()));
    }
    let d = args.d.unwrap_or(match args.kind {
        DemoKind::Toffoli => args.n + 1,
        DemoKind::Modd => 3,
        _ => 2,
    });
    let convention = match args.convention {
        ConventionArg::HalfRoot => PhaseConvention::HalfRoot,
        ConventionArg::ModularInverse => PhaseConvention::ModularInverse,
    };
    let space = QuditSpace::new(d, convention)?;
    let (n, m) = (args.n, args.m);
    let theta = args.theta;

    let (seq, summary, oracle_name, oracle): (InteractionSequence, String, String, Matrix) = match args.kind {
        DemoKind::TwoQubit => {
            let angle = 2.0 * PI * (args.x * args.p) as f64 / d as f64;
            let seq = two_qubit_sequence(space, 2, 0, 1, args.x, args.p)?;
            let is_cz = ((angle / PI).rem_euclid(2.0) - 1.0).abs() < 1e-12;
            let name = format!("CR({:.6}){}", angle, if is_cz { " = CZ" } else { "" });
            let summary = format!("1 gate via {} interactions (naive: 4)", seq.interaction_count());
            (seq, summary, name, gates::controlled_phase(angle))
        }
        DemoKind::FanOne => {
            let xs = vec![args.x; n];
            let seq = fan_one_target(space, &xs, args.p)?;
            let summary = format!("{n} gates via {} interactions (naive: {})", seq.interaction_count(), 4 * n);
            (seq, summary, format!("{n} controlled rotations onto qubit {n}"), fan_oracle(&xs, &[args.p], d))
        }
        DemoKind::FanBipartite => {
            let (xs, ps) = (vec![args.x; n], vec![args.p; m]);
            let seq = fan_bipartite(space, &xs, &ps)?;
            let summary = format!("{} gates via {} interactions (naive: {})", n * m, seq.interaction_count(), 4 * n * m);
            (seq, summary, format!("{} pairwise controlled rotations", n * m), fan_oracle(&xs, &ps, d))
        }
        DemoKind::Toffoli => {
            let (u, u_name) = match theta {
                Some(t) => (gates::phase(t), format!("R({t:.6})")),
                None => (gates::pauli_x(), "X".to_string()),
            };
            let seq = generalized_toffoli(space, n, &u)?;
            let summary = format!("{} sequence elements ({} displacements + 1 projected gate)", seq.interaction_count(), seq.displacement_count());
            (seq, summary, format!("{n}-controlled {u_name}"), multi_controlled(n, &u))
        }
        DemoKind::Modd => {
            let t = theta.unwrap_or(PI / 3.0);
            let seq = mod_d_phase_gate(space, t, n)?;
            let summary =
                format!("{} sequence elements ({} displacements + 1 controlled rotation)", seq.interaction_count(), seq.displacement_count());
            (seq, summary, format!("exp(i {t:.6} ((sum of controls) mod {d}) target)"), mod_d_oracle(n, d, t))
        }
    };

    writeln!(out, "sequence on {} qubits, qudit d = {d} ({convention:?})", seq.n_qubits())?;
    for (k, e) in seq.elements().iter().enumerate() {
        writeln!(out, "  {:>3}. {}", k + 1, describe(e))?;
    }
    writeln!(out, "{summary}")?;
    let report = extract_register_gate(&seq, &StateVector::basis(d, 0))?;
    match report.register_unitary {
        Some(u) => {
            let gap = phase_distance(&u, &oracle)?;
            writeln!(out, "register gate: {oracle_name} (phase distance {gap:.3e})")?;
            if gap > 1e-10 {
                return Err(CliError::Failed(1));
            }
        }
        None => {
            writeln!(
                out,
                "ancilla did not return: fidelity {:.6}, residual entanglement {:.3e}",
                report.ancilla_return_fidelity, report.residual_entanglement
            )?;
            return Err(CliError::Failed(1));
        }
    }
    Ok(())
}
