//! Transformation matrices A, Ǎ, B, the Ω function, and the two exact
//! expansions (regular parabolic → spherical, irregular spherical →
//! parabolic) used as self-consistency checks.

mod identities;
mod matrices;

pub use identities::*;
pub use matrices::*;
