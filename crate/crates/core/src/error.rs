use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value {0} is not a bit")]
    InvalidBit(i64),
    #[error("amplitude vector of length {len} is not 2^{qubits}")]
    DimensionMismatch { len: usize, qubits: usize },
    #[error("state has squared norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("direction ({x}, {y}, {z}) is not a unit vector")]
    NotUnitDirection { x: f64, y: f64, z: f64 },
    #[error("qubit {index} out of range for a {qubits}-qubit state")]
    QubitOutOfRange { index: usize, qubits: usize },
    #[error("qubit {0} appears more than once in a measurement setting")]
    DuplicateQubit(usize),
    #[error("requested outcome has zero probability")]
    ZeroProbabilityBranch,
    #[error("unsupported qubit count {0}")]
    UnsupportedQubitCount(usize),
    #[error("expected {expected} parties, got {got}")]
    PartyCountMismatch { expected: usize, got: usize },
    #[error("party {0} appears more than once")]
    DuplicateParty(usize),
    #[error("behavior table is malformed: {0}")]
    MalformedTable(String),
    #[error("behavior table is signaling")]
    Signaling,
    #[error("{name} = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("repetition count must be at least 1")]
    NoRepetitions,
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("device does not hold ancilla qubit {0}")]
    NoAncilla(usize),
    #[error("box {0} is not available to this party")]
    NoSuchBox(usize),
    #[error("box {0} was already queried")]
    BoxAlreadyQueried(usize),
    #[error("strategy is malformed: {0}")]
    MalformedStrategy(String),
    #[error("protocol message out of order: {0}")]
    OutOfOrder(&'static str),
    #[error("optimizer did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}
