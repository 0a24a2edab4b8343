use thiserror::Error;

/// Errors raised by the algebraic routines.
///
/// Variants fall in three groups: malformed input (dimension mismatches,
/// bad structure constants), failed validation (Jacobi, nilpotency,
/// `J² = −I`), and violated computational preconditions (non-abelian base
/// structure, degenerate deformations).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("system is not solvable: right-hand side is not in the image")]
    NotSolvable,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("antisymmetry violated: [e{i}, e{j}] != -[e{j}, e{i}]")]
    Antisymmetry { i: usize, j: usize },

    #[error("jacobi violated at (e{i}, e{j}, e{k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("not nilpotent: ascending series stalls at dimension {stalled_at} of {dim}")]
    NotNilpotent { stalled_at: usize, dim: usize },

    #[error("not an ideal")]
    NotIdeal,

    #[error("invalid almost complex structure: {0}")]
    InvalidStructure(String),

    #[error("J does not preserve ascending series at step {0}")]
    SeriesNotInvariant(usize),

    #[error("nonzero {0} part: complex structure is not abelian")]
    NotAbelian(&'static str),

    #[error("parameter too large: deformed (0,1)-space degenerate")]
    DegenerateDeformation,

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
