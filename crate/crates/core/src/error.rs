use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("matching window: {0}")]
    Window(String),
    #[error("no cutoff plateau: {0}")]
    Plateau(String),
    #[error("outside the near-Coulomb region: {0}")]
    Region(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("oracle check failed: {0}")]
    Oracle(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
