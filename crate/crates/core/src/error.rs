//! Crate-wide error type for the representation-theoretic layers.
//!
//! The low-level linear algebra reports [`GfError`](crate::gf::GfError); the
//! higher layers (Jordan types, symplectic classification, module
//! constructions, chopping, weight planning) wrap it in [`Error`] together
//! with their own failure modes.

use crate::gf::GfError;
use thiserror::Error;

/// Errors produced by the representation-theoretic layers of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Underlying linear-algebra failure.
    #[error(transparent)]
    Gf(#[from] GfError),
    /// An operation that requires a square matrix received a rectangular one.
    #[error("matrix is not square ({nrows}x{ncols})")]
    NotSquare { nrows: usize, ncols: usize },
    /// The matrix is not unipotent (m - I is not nilpotent).
    #[error("matrix is not unipotent")]
    NotUnipotent,
    /// The matrix does not preserve the given bilinear form.
    #[error("matrix is not an isometry of the form")]
    NotIsometry,
    /// The Gram matrix fails the alternating-form requirements.
    #[error("invalid symplectic form: {0}")]
    InvalidForm(String),
    /// Block data that does not describe a valid Jordan type.
    #[error("invalid Jordan type: {0}")]
    InvalidJordanType(String),
    /// A word references a generator symbol the representation does not have.
    #[error("unknown generator symbol '{0}'")]
    UnknownSymbol(char),
    /// Two representations that must share generator symbols do not.
    #[error("generator symbol mismatch: [{0}] vs [{1}]")]
    SymbolMismatch(String, String),
    /// Exterior-power index outside 1..=dim.
    #[error("exterior power index {i} out of range 1..={dim}")]
    ExteriorIndex { i: usize, dim: usize },
    /// A claimed invariant subspace is not closed under the generators.
    #[error("subspace basis is not invariant under the generators")]
    NotInvariant,
    /// A subspace basis contained linearly dependent vectors.
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    /// Malformed textual input (words, matrix files, expressions, configs).
    #[error("parse error: {0}")]
    Parse(String),
    /// A randomized search exhausted its configured limits before deciding.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// No composition factor of the requested dimension exists.
    #[error("no composition factor of dimension {0}")]
    NoFactorOfDim(usize),
    /// More than one composition factor of the requested dimension exists.
    #[error("multiple composition factors of dimension {0}")]
    MultipleFactorsOfDim(usize),
    /// Two same-dimension factors could not be told apart or merged safely.
    #[error("fingerprint ambiguity between composition factors of dimension {0}")]
    FingerprintAmbiguity(usize),
    /// The dimension table has no entry for the requested weight.
    #[error("weight {0} not covered by the dimension table")]
    WeightNotInTable(String),
    /// No construction plan covers the requested weight.
    #[error("no construction plan for weight {0}: {1}")]
    NoPlan(String, String),
    /// Realizing the weight would need an intermediate above the budget.
    #[error("dimension budget exceeded: construction needs {needed}, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    /// A block-size predictor was applied where order does not divide dim.
    #[error("element order {order} does not divide dimension {dim}")]
    Divisibility { order: u64, dim: usize },
    /// The pre-Steinberg predictor requires element order strictly above 2.
    #[error("predictor requires element order greater than 2, got {0}")]
    OrderTooSmall(u64),
    /// Filesystem failure while reading or writing artifacts.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
