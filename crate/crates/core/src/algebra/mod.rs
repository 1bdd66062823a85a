//! Exact coefficient fields, dense polynomials over them, and the quadratic
//! quotient ring used to evaluate expressions in the roots `a, b`.

pub(crate) mod dense;
mod field;
mod irreducible;
mod modgcd;
mod poly;
mod quot;
mod text;

pub use field::{is_prime_u64, Coef, FieldSpec};
pub use irreducible::{valuation, Certificate, Irreducible, Valuation};
pub use poly::Poly;
pub use quot::{QuotElem, QuotRing};

pub(crate) use field::PrimeField;

/// The four ring operations as a value, for callers that pick one at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Apply `op` to `f` and `g` (`g` is ignored for negation).
pub fn ring_op(op: RingOp, f: &Poly, g: &Poly) -> crate::Result<Poly> {
    match op {
        RingOp::Add => f.checked_add(g),
        RingOp::Sub => f.checked_sub(g),
        RingOp::Mul => f.checked_mul(g),
        RingOp::Neg => {
            f.ensure_same_field(g)?;
            Ok(-f)
        }
    }
}
