//! Stark eigenchannels in the ξ coordinate at fixed energy and field.

mod basis;
mod channels;
mod shooting;

pub use basis::{eigen_f64, refine_eigenpair, stark_matrix, PentaMatrix};
pub use channels::{
    channel_match_c, default_window, solve_channels, ChannelTable, MatchFit, StarkChannel,
    WINDOW_FIT_LIMIT,
};
pub use shooting::{shoot_channel, ShootingChannel};
