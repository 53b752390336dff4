use std::fmt;

/// Errors surfaced by the library. Variants map onto the CLI's stable
/// exit-code contract: input/schema problems, capacity overruns, model
/// misuse, and protocol violations are kept distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed argument (mismatched ground-set sizes, bad indices, ...).
    Argument(String),
    /// Instance file or inline spec failed validation.
    Schema(String),
    /// Enumeration or DP table would exceed the configured cap.
    Capacity(String),
    /// Policy run on a model it does not support (e.g. keep-style policy
    /// on a general-evolution stream).
    ModelMisuse(String),
    /// A set was not feasible at the named time step (1-based).
    Infeasible { step: usize, detail: String },
    /// Game-loop contract broken (lookahead mismatch, inconsistent history).
    Protocol(String),
    /// Horizon too short for the requested policy.
    DegenerateHorizon(String),
    /// Requested rational approximation not reachable under the bound.
    Precision(String),
    /// Structural assumption (downward closure / submodularity) violated.
    AssumptionViolation(String),
    /// Internal invariant failed; indicates a bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Argument(m) => write!(f, "argument error: {m}"),
            Error::Schema(m) => write!(f, "schema error: {m}"),
            Error::Capacity(m) => write!(f, "capacity error: {m}"),
            Error::ModelMisuse(m) => write!(f, "model misuse: {m}"),
            Error::Infeasible { step, detail } => {
                write!(f, "infeasible solution at step {step}: {detail}")
            }
            Error::Protocol(m) => write!(f, "protocol error: {m}"),
            Error::DegenerateHorizon(m) => write!(f, "degenerate horizon: {m}"),
            Error::Precision(m) => write!(f, "precision error: {m}"),
            Error::AssumptionViolation(m) => write!(f, "assumption violation: {m}"),
            Error::Internal(m) => write!(f, "internal assertion: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
