use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants fall in two groups: usage errors (bad text, wrong characteristic
/// for an operation) and domain errors (a mathematical precondition failed).
/// [`Error::is_usage`] tells them apart for callers that map errors to exit
/// codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    NotPrime(u64),
    #[error("operands live over different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("quotient ring elements come from different (P, Q) contexts")]
    ContextMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact: nonzero remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("{0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("parameters are not coprime: gcd(P, Q) = {gcd}")]
    NotRegular { gcd: String },
    #[error("both P and Q are constant; the classification needs one of positive degree")]
    HypothesisViolated,
    #[error("the sequence is degenerate: U_{index} = 0")]
    DegenerateTerm { index: usize },
    #[error("m = {m} must exceed n = {n}")]
    IndexOrder { m: usize, n: usize },
    #[error("{operation} requires {required}")]
    Characteristic {
        operation: &'static str,
        required: &'static str,
    },
    #[error("expected a scalar but the x-component is {x_component}")]
    NonScalarResult { x_component: String },
    #[error("index {0} is not supported here")]
    UnsupportedIndex(usize),
    #[error("rank of appearance is not finite")]
    RankNotFinite,
    #[error("the polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("the polynomial must have positive degree")]
    ConstantPolynomial,
    #[error("{poly} is not irreducible")]
    Reducible { poly: String },
    #[error("the discriminant is zero")]
    ZeroDiscriminant,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    /// True for errors caused by malformed input rather than by mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::NotPrime(_) | Error::Characteristic { .. } | Error::UnsupportedIndex(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
