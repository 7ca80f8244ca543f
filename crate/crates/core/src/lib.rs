//! Ribbon graphs with basepoint: canonical forms, local moves, discrete
//! Morse theory on metric graphs, and the finite complexes built from them.

pub mod canon;
pub mod cli;
pub mod complexes;
pub mod format;
pub mod morse;
pub mod moves;
pub mod ribbon;

use thiserror::Error;

pub use canon::{canonical_code, CanonicalCode, Mode};
pub use format::{parse_graph_file, GraphFile, GraphValue};
pub use morse::MetricRibbonGraph;
pub use ribbon::{EdgeId, HalfEdge, PlainGraph, RibbonGraph, SurfaceType, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] format::ParseError),
    #[error(transparent)]
    Graph(#[from] ribbon::GraphError),
    #[error(transparent)]
    Move(#[from] moves::MoveError),
    #[error(transparent)]
    Morse(Box<morse::MorseError>),
    #[error(transparent)]
    Complex(#[from] complexes::ComplexError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Verification(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl From<morse::MorseError> for Error {
    fn from(e: morse::MorseError) -> Self {
        Error::Morse(Box::new(e))
    }
}

impl Error {
    /// Process exit code: 1 invalid input, 2 verification failure, 3 capacity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 2,
            Error::Complex(complexes::ComplexError::Capacity { .. }) => 3,
            _ => 1,
        }
    }

    pub fn category(&self) -> &'static str {
        match self.exit_code() {
            2 => "verification-failure",
            3 => "capacity-exceeded",
            _ => "invalid-input",
        }
    }
}
