//! Register qubits that never touch each other directly: every gate is built
//! from controlled displacements of a shared ancilla whose path through phase
//! space encloses a geometric phase.
//!
//! Three ancillas are modelled:
//!
//! * a `d`-level qudit on a discrete phase space ([`phase_space`],
//!   [`qudit_model`]), simulated densely;
//! * an ensemble of `N` spins in a collective coherent state ([`spin`]),
//!   tracked per register branch by a single stereographic label;
//! * a field mode ([`qubus`]), tracked symbolically.
//!
//! [`tensor`] holds the dense linear algebra the rest is checked against.

pub mod cli;
pub mod error;
pub mod phase_space;
pub mod qubus;
pub mod qudit_model;
pub mod report;
pub mod spin;
pub mod tensor;

pub use error::{Error, Result};
pub use report::GateReport;
