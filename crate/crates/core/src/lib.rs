//! Local frame transformation between spherical and parabolic Coulomb
//! solutions for a hydrogenic atom in a static field.
//!
//! The crate builds the Stark channel set, the two regular-admixture
//! matrices γ (digamma form and Ω form), the matched irregular spherical
//! solution, and its comparison with the exact irregular solution.
//!
//! | module | contents |
//! |---|---|
//! | [`specfun`] | double-double, Γ/ψ, M, U, P_l^m |
//! | [`coulomb`] | spherical and parabolic Coulomb functions, normalizations |
//! | [`lft`] | A, Ǎ, B, Ω and the two expansion identities |
//! | [`stark`] | field-confined ξ channels |
//! | [`matching`] | cutoffs, γ matrices, matched field, statistics |
//! | [`cli`] | run configuration and subcommands behind the binary |
//!
//! Runnable walkthroughs live in `examples/`:
//! `cargo run --release --example stark_channels` and friends.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::suspicious_arithmetic_impl)]

pub mod cli;
pub mod coulomb;
pub mod error;
pub mod lft;
pub mod matching;
pub mod specfun;
pub mod stark;
pub mod table;

pub use error::{Error, Result};
