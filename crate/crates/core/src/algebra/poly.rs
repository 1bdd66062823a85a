use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{dense, modgcd};
use super::field::{Coef, FieldSpec, PrimeField, Rationals};
use crate::error::{Error, Result};

/// A dense polynomial in K[T].
///
/// Coefficients are kept in ascending order with no trailing zeros, so
/// structural equality is polynomial equality. The zero polynomial has no
/// stored coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Rational(Vec<BigRational>),
    Residue(Vec<u64>),
}

pub(crate) trait IntoRepr {
    fn into_repr(self) -> Repr;
}

impl IntoRepr for Vec<BigRational> {
    fn into_repr(self) -> Repr {
        Repr::Rational(self)
    }
}

impl IntoRepr for Vec<u64> {
    fn into_repr(self) -> Repr {
        Repr::Residue(self)
    }
}

/// Run `$body` with `$k` bound to the field arithmetic and `$c` to the raw
/// coefficient slice.
macro_rules! with_field {
    ($poly:expr, |$k:ident, $c:ident| $body:expr) => {
        match &$poly.repr {
            Repr::Rational($c) => {
                let $k = Rationals;
                $body
            }
            Repr::Residue($c) => {
                let $k = PrimeField {
                    p: $poly.field.characteristic(),
                };
                $body
            }
        }
    };
}

/// Binary version of [`with_field`]; the caller has already checked that
/// both operands share a field.
macro_rules! with_field2 {
    ($a:expr, $b:expr, |$k:ident, $x:ident, $y:ident| $body:expr) => {
        match (&$a.repr, &$b.repr) {
            (Repr::Rational($x), Repr::Rational($y)) => {
                let $k = Rationals;
                $body
            }
            (Repr::Residue($x), Repr::Residue($y)) => {
                let $k = PrimeField {
                    p: $a.field.characteristic(),
                };
                $body
            }
            _ => unreachable!("operands checked to share a field"),
        }
    };
}

impl Poly {
    pub(crate) fn wrap<V: IntoRepr>(field: FieldSpec, v: V) -> Poly {
        Poly {
            field,
            repr: v.into_repr(),
        }
    }

    pub fn zero(field: FieldSpec) -> Poly {
        if field.is_rational() {
            Poly::wrap(field, Vec::<BigRational>::new())
        } else {
            Poly::wrap(field, Vec::<u64>::new())
        }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly::from_i64s(field, &[1])
    }

    /// The indeterminate T.
    pub fn t(field: FieldSpec) -> Poly {
        Poly::from_i64s(field, &[0, 1])
    }

    /// Build from ascending integer coefficients, reduced into the field.
    pub fn from_i64s(field: FieldSpec, coeffs: &[i64]) -> Poly {
        let ints: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Poly::from_ints(field, &ints)
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[BigInt]) -> Poly {
        let coefs = coeffs.iter().map(|c| field.coef_from_int(c)).collect();
        Poly::from_coefs(field, coefs).expect("integers embed in every field")
    }

    /// Build from ascending coefficients. Every coefficient must belong to
    /// `field`.
    pub fn from_coefs(field: FieldSpec, coeffs: Vec<Coef>) -> Result<Poly> {
        if let Some(bad) = coeffs.iter().find(|c| !field.check(c)) {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: format!("coefficient {bad:?}"),
            });
        }
        Ok(if field.is_rational() {
            let v = coeffs
                .into_iter()
                .map(|c| match c {
                    Coef::Rational(r) => r,
                    Coef::Residue(_) => unreachable!(),
                })
                .collect();
            Poly::wrap(field, dense::trim(&Rationals, v))
        } else {
            let k = PrimeField {
                p: field.characteristic(),
            };
            let v = coeffs
                .into_iter()
                .map(|c| match c {
                    Coef::Residue(r) => r,
                    Coef::Rational(_) => unreachable!(),
                })
                .collect();
            Poly::wrap(field, dense::trim(&k, v))
        })
    }

    pub fn constant(field: FieldSpec, c: Coef) -> Result<Poly> {
        Poly::from_coefs(field, vec![c])
    }

    /// `c * T^deg`.
    pub fn monomial(field: FieldSpec, c: Coef, deg: usize) -> Result<Poly> {
        let mut coeffs = vec![field.coef_from_i64(0); deg];
        coeffs.push(c);
        Poly::from_coefs(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn len(&self) -> usize {
        match &self.repr {
            Repr::Rational(v) => v.len(),
            Repr::Residue(v) => v.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    /// Nonzero constant, i.e. a unit of K[T].
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.coeff(0).is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Coef {
        match &self.repr {
            Repr::Rational(v) => Coef::Rational(v.get(i).cloned().unwrap_or_default()),
            Repr::Residue(v) => Coef::Residue(v.get(i).copied().unwrap_or(0)),
        }
    }

    pub fn coeffs(&self) -> Vec<Coef> {
        (0..self.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading(&self) -> Option<Coef> {
        self.degree().map(|d| self.coeff(d))
    }

    /// Residues in ascending order; `None` over the rationals.
    pub fn residues(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Residue(v) => Some(v),
            Repr::Rational(_) => None,
        }
    }

    pub(crate) fn ensure_same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.ensure_same_field(other)?;
        Ok(with_field2!(self, other, |k, a, b| Poly::wrap(
            self.field,
            dense::add(&k, a, b)
        )))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.ensure_same_field(other)?;
        Ok(with_field2!(self, other, |k, a, b| Poly::wrap(
            self.field,
            dense::sub(&k, a, b)
        )))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.ensure_same_field(other)?;
        Ok(with_field2!(self, other, |k, a, b| Poly::wrap(
            self.field,
            dense::mul(&k, a, b)
        )))
    }

    pub fn scale(&self, c: &Coef) -> Result<Poly> {
        let c = Poly::constant(self.field, c.clone())?;
        self.checked_mul(&c)
    }

    pub fn scale_i64(&self, c: i64) -> Poly {
        self * &Poly::from_i64s(self.field, &[c])
    }

    pub fn pow(&self, e: u64) -> Poly {
        with_field!(self, |k, a| Poly::wrap(self.field, dense::pow(&k, a, e)))
    }

    pub fn derivative(&self) -> Poly {
        with_field!(self, |k, a| Poly::wrap(self.field, dense::derivative(&k, a)))
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        with_field!(self, |k, a| Poly::wrap(self.field, dense::monic(&k, a)))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.ensure_same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(with_field2!(self, divisor, |k, a, b| {
            let (q, r) = dense::divrem(&k, a, b);
            (Poly::wrap(self.field, q), Poly::wrap(self.field, r))
        }))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Quotient of an exact division; fails with `InexactDivision` when the
    /// remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision {
                remainder: r.to_string(),
            })
        }
    }

    /// Does `divisor` divide `self`? The zero polynomial divides only zero.
    pub fn divisible_by(&self, divisor: &Poly) -> Result<bool> {
        if divisor.is_zero() {
            self.ensure_same_field(divisor)?;
            return Ok(self.is_zero());
        }
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0` and `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.ensure_same_field(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Poly::wrap(self.field, modgcd::gcd_rational(a, b)),
            _ => with_field2!(self, other, |k, a, b| Poly::wrap(self.field, dense::gcd(&k, a, b))),
        })
    }

    pub(crate) fn mulmod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus).expect("nonzero modulus")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial addition across fields")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial subtraction across fields")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial multiplication across fields")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        with_field!(self, |k, a| Poly::wrap(self.field, dense::neg(&k, a)))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
