use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("elements belong to different quaternion algebras")]
    AlgebraMismatch,
    #[error("no square slot in the current field for {0}")]
    NotSplitHere(String),
    #[error("tensor factors carry different symbols: {0} vs {1}")]
    SymbolMismatch(String, String),
    #[error("unknown line {0}")]
    UnknownLine(String),
    #[error("third_line needs two distinct lines")]
    EqualLines,
    #[error("line {0}: pairing unavailable ({1})")]
    PairingUnavailable(usize, String),
    #[error("labeling rejected: {0}")]
    LabelingRejected(String),
    #[error("intertwiner space {0} has dimension {1}, expected 1")]
    IntertwinerDimension(String, usize),
    #[error("ad is not semisimple over the field: eigenspaces fill {found} of {dim}")]
    NotSemisimpleOverField { found: usize, dim: usize },
    #[error("zero-weight space has dimension {zero_dim}, cartan has {rank}")]
    NotCartan { zero_dim: usize, rank: usize },
    #[error("not split: {0}")]
    NotSplit(String),
    #[error("root system not recognized: {0}")]
    Unrecognized(String),
    #[error("Killing form degenerate on the given subspace (rank {rank} of {dim})")]
    DegenerateOnS { rank: usize, dim: usize },
    #[error("subspace is not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("no solution for bracket constants; failing relations: {0:?}")]
    NoSolution(Vec<String>),
    #[error("point {0} has no matrix units over the current field")]
    CenterNotSplit(String),
    #[error("pairing on L1 has rank {0}, expected 32")]
    DegeneratePairing(usize),
    #[error("no gauge value satisfies the probe pair {0:?}")]
    NoConsistentGauge((usize, usize)),
    #[error("gauge t = {t} fails on pair {pair:?}")]
    GaugeInconsistent { t: String, pair: (usize, usize) },
    #[error("grading invariant violated: {0}")]
    BadGrading(String),
    #[error("schema error at {field}: {msg}")]
    Schema { field: String, msg: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
