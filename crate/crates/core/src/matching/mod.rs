//! γ matrices, cutoff regularization, and the matched irregular solution.

mod cutoff;
mod field;
mod gamma;
mod figure;
mod plateau;

pub use cutoff::{CutoffShape, CutoffSpec, DEFAULT_POWER, DEFAULT_SCALE_OVER_N, MIN_POWER};
pub use field::*;
pub use figure::*;
pub use gamma::*;
pub use plateau::*;
