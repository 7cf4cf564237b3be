use thiserror::Error;

use crate::algebroid::CohomologyReport;
use crate::calculus::{VectorField, VectorValuedForm};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("imaginary unit `i` used on a real chart")]
    ImaginaryOnRealChart,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression has a pole at the evaluation point")]
    Pole,
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("operation requires a complexified chart")]
    RealChart,
    #[error("derivation data inconsistent: {0}")]
    ReconstructionMismatch(String),
    #[error("derivation does not square to zero")]
    NotCohomology(Box<CohomologyReport>),
    #[error("anchor is singular")]
    SingularAnchor,
    #[error("endomorphism is not idempotent")]
    NotIdempotent,
    #[error("image is not involutive: (Id - N)[N e{}, N e{}] is nonzero", .pair.0 + 1, .pair.1 + 1)]
    ImageNotInvolutive { pair: (usize, usize), residual: VectorField },
    #[error("Nijenhuis torsion is nonzero")]
    TorsionNonzero { torsion: VectorValuedForm },
    #[error("endomorphism does not square to -eps^2 Id")]
    NotAlmostComplex,
    #[error("endomorphism does not square to eps^2 Id")]
    NotAlmostProduct,
    #[error("connection axiom fails: {0}")]
    ConnectionAxiom(String),
    #[error("vector field is not a semispray")]
    NotSemispray,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index out of range: {0}")]
    Index(String),
}
