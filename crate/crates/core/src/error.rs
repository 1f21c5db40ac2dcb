use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// The stage at which a unit factorization failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotAUnitReason {
    /// The skew part has support outside x-degree 0.
    NonScalarDegree,
    /// The degree-0 symbol is not a constant times a product of `(H+j)^e`.
    BadBaseSymbol,
    /// After dividing out the symbol, the remainder is not `1 + f` with `f` finite.
    ResidueNotInF,
    /// The finite matrix part has `det(1 + f) = 0`.
    SingularMatrix,
}

impl std::fmt::Display for NotAUnitReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NotAUnitReason::NonScalarDegree => "skew part has support outside degree 0",
            NotAUnitReason::BadBaseSymbol => {
                "degree-0 symbol is not a constant times a product of integer shifts of H"
            }
            NotAUnitReason::ResidueNotInF => "residue after removing the symbol is not in 1 + F",
            NotAUnitReason::SingularMatrix => "det(1 + f) = 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("regularized evaluation requested at pole H = {0} (non-positive)")]
    PoleAtNonPositive(i64),
    #[error("matrix index arity mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("det(1 + f) = 0, matrix is singular")]
    Singular,
    #[error("transvection requires distinct indices")]
    DegenerateTransvection,
    #[error("bad generator index: {0}")]
    BadIndex(String),
    #[error("not a unit: {0}")]
    NotAUnit(NotAUnitReason),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("operation undefined for the full ring")]
    FullRing,
    #[error("arity {0} too large for enumeration (max {1})")]
    TooLarge(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}
