use thiserror::Error;

/// Errors raised by the simulation, analysis and audio modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("number of spins {0} outside supported range 1..={max}", max = crate::quantum::MAX_SPINS)]
    SizeLimit(usize),
    #[error("equal bipartition requires an even number of spins, got {0}")]
    Bipartition(usize),
    #[error("oracle supports at most {max} spins, got {got}")]
    OracleScale { got: usize, max: usize },
    #[error("oracle input: {0}")]
    OracleInput(String),
    #[error("Husimi frame has no weight on the grid")]
    DegenerateFrame,
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("wav: {0}")]
    Wav(#[from] hound::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
