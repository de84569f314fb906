//! Spin-ensemble ancilla: `N` spin-½ particles in a collective coherent
//! state, labelled by a stereographic coordinate `ζ`.

mod algebra;
mod errors;
mod model;

pub use algebra::*;
pub use errors::*;
pub use model::*;
