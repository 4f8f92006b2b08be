//! Coulomb functions in spherical and parabolic coordinates, their
//! normalization constants, and the evaluation grid.

mod context;
mod functions;
mod grid;

pub use context::QuantumContext;
pub use functions::*;
pub use grid::{from_parabolic, linspace, to_parabolic, FieldGrid, GridNode};
