//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the exact solvers and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A square matrix was required.
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    /// Two operands have incompatible shapes.
    #[error("dimension mismatch: {context} ({left} vs {right})")]
    DimMismatch {
        context: &'static str,
        left: String,
        right: String,
    },

    /// Matrix rows of unequal length, or an empty row set where one is needed.
    #[error("ragged or empty matrix data: {0}")]
    BadShape(String),

    /// The characteristic polynomial does not split over the rationals,
    /// so the requested decomposition cannot be computed exactly.
    #[error("irrational spectrum: only {found} of {needed} eigenvalues (with multiplicity) are rational")]
    IrrationalSpectrum { found: usize, needed: usize },

    /// A truncated operator was applied to a monomial beyond its truncation order.
    #[error("degree {degree} exceeds truncation order {truncation}")]
    TruncationExceeded { degree: usize, truncation: usize },

    /// The operator family is only defined on polynomials without constant term.
    #[error("constant term not allowed for this operator family")]
    ConstantTermNotAllowed,

    /// A Rota-Baxter weight must be nonzero.
    #[error("weight must be nonzero")]
    ZeroWeight,

    /// The operator family requires (or forbids) the scalar parameter `b`.
    #[error("bad operator parameter: {0}")]
    BadOperatorParameter(String),

    /// The module flavor does not match the operator family.
    #[error("flavor {flavor} does not match operator family {family}")]
    FlavorMismatch { flavor: String, family: String },

    /// `B` must satisfy `B^2 = -B` for this classification.
    #[error("matrix is not quasi-idempotent (B^2 != -B)")]
    NotQuasiIdempotent,

    /// The pair `(A, B)` does not satisfy its defining module equation.
    #[error("pair does not satisfy the module equation for its flavor")]
    NotAModule,

    /// Block solver parameters out of range.
    #[error("invalid block parameters: {0}")]
    InvalidBlockParams(String),

    /// Catalog or family constructor called outside its supported range.
    #[error("unsupported dimension {0} for this catalog")]
    UnsupportedDimension(usize),

    /// Malformed textual input (rational literal, matrix JSON, ...).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
