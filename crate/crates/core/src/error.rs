use thiserror::Error;

/// Errors raised by the simulator and the protocols built on it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    IndexOutOfRange { index: usize, num_qubits: usize },

    #[error("gate wires overlap: qubit {0} appears more than once")]
    WireCollision(usize),

    #[error("explicit matrix is not unitary (max deviation {deviation:.3e})")]
    NonUnitary { deviation: f64 },

    #[error("gate `{name}` expects {expected}, got {got}")]
    GateArity {
        name: String,
        expected: String,
        got: String,
    },

    #[error("register size mismatch: expected {expected} qubits, got {got}")]
    RegisterMismatch { expected: usize, got: usize },

    #[error("size guard: {what} needs {requested} qubits, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigenvalue {eigenvalue:.3e} could not be classified: {reason}")]
    Classification { eigenvalue: f64, reason: String },

    #[error("amplitude amplification schedule exhausted after {iterations} iterations")]
    ScheduleExhausted { iterations: u64 },

    #[error("witness preparation exhausted all grid points and retries")]
    RetriesExhausted,

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// True for memory/size-guard violations (as opposed to malformed input).
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
