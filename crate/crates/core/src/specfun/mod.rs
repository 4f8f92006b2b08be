//! Special-function kernels: double-double arithmetic, Γ and ψ, Kummer and
//! Tricomi confluent hypergeometric functions, associated Legendre functions.

pub mod dd;
pub mod gamma;
pub mod kummer;
pub mod legendre;
pub mod signed_log;
pub mod sum;
pub mod tricomi;

pub use dd::Dd;
pub use gamma::{digamma, digamma_dd, falling, gamma, log_gamma_dd, log_gamma_signed};
pub use kummer::{kummer_m, kummer_m_dd, kummer_m_descending};
pub use legendre::{legendre_p, legendre_p_row, legendre_p_with_phase, LegendrePhase, DEFAULT_PHASE};
pub use signed_log::SignedLogValue;
pub use tricomi::{gamma_scaled_u, gamma_scaled_u_ascending, tricomi_u};
