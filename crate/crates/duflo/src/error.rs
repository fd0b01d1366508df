//! Error types shared across the library.

use thiserror::Error;

use crate::rat::Rat;

/// Everything that can go wrong below the CLI layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Structure constants fail antisymmetry at the given indices (1-based).
    #[error("antisymmetry violated: c^{k}_({i},{j}) + c^{k}_({j},{i}) = {residue}, expected 0")]
    AntisymmetryViolation {
        i: usize,
        j: usize,
        k: usize,
        residue: Rat,
    },
    /// Structure constants fail the Jacobi identity at the given indices (1-based).
    #[error("Jacobi identity violated at (i,j,k; l) = ({i},{j},{k}; {l}): residue {residue}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residue: Rat,
    },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("trace power requires an even exponent >= 2, got {0}")]
    OddPower(usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// Elements fed to an enveloping-algebra operation do not live over its algebra.
    #[error("operands do not belong to the same underlying Lie algebra")]
    AlgebraMismatch,
    #[error("jet has constant term {found}, expected {expected}")]
    BadConstantTerm { expected: i64, found: String },
    #[error("series must have leading coefficient 1, got {0}")]
    BadLeadingCoefficient(String),
    #[error("truncation too low: need degree {needed}, have {available}")]
    TruncationTooLow { needed: usize, available: usize },
    /// The operator ansatz admits no exact solution at the given bounds.
    #[error("operator ansatz infeasible at order {order}, coefficient degree {coeff_degree}: first obstruction at test monomial {witness}")]
    AnsatzInfeasible {
        order: usize,
        coeff_degree: usize,
        witness: String,
    },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for syntax-level errors (as opposed to semantic validation failures).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }

    /// True for Lie-axiom validation failures (antisymmetry / Jacobi).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::AntisymmetryViolation { .. } | Error::JacobiViolation { .. }
        )
    }
}
