use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};

/// How an [`Irreducible`] came to be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Checked by the deterministic test over F_p.
    FiniteFieldTest,
    /// Supplied by the caller without proof (the only option over Q).
    AssertedByCaller,
}

/// A prime of K[T]: a monic irreducible polynomial of positive degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Irreducible {
    poly: Poly,
    certificate: Certificate,
}

impl Irreducible {
    /// Certify `poly` over F_p. The input is made monic first.
    pub fn certify(poly: &Poly) -> Result<Irreducible> {
        let monic = Self::normalize(poly)?;
        if crate::factor::is_irreducible(&monic)? {
            Ok(Irreducible {
                poly: monic,
                certificate: Certificate::FiniteFieldTest,
            })
        } else {
            Err(Error::Reducible {
                poly: poly.to_string(),
            })
        }
    }

    /// Trust the caller. Over F_p prefer [`Irreducible::certify`].
    pub fn assume(poly: &Poly) -> Result<Irreducible> {
        Ok(Irreducible {
            poly: Self::normalize(poly)?,
            certificate: Certificate::AssertedByCaller,
        })
    }

    /// Over F_p run the test, over Q trust the caller.
    pub fn from_poly(poly: &Poly) -> Result<Irreducible> {
        if poly.field().is_rational() {
            Self::assume(poly)
        } else {
            Self::certify(poly)
        }
    }

    pub(crate) fn certified_unchecked(poly: Poly) -> Irreducible {
        debug_assert!(poly.is_monic() && poly.degree() >= Some(1));
        Irreducible {
            poly,
            certificate: Certificate::FiniteFieldTest,
        }
    }

    fn normalize(poly: &Poly) -> Result<Poly> {
        match poly.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::ConstantPolynomial),
            Some(_) => Ok(poly.monic()),
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("positive degree")
    }

    pub fn divides(&self, f: &Poly) -> Result<bool> {
        f.divisible_by(&self.poly)
    }
}

impl fmt::Display for Irreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// A 𝔭-adic valuation. The zero polynomial is divisible by every power of
/// 𝔭 and gets [`Valuation::Infinite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest `e` with `prime^e | f`, by repeated exact division.
pub fn valuation(f: &Poly, prime: &Irreducible) -> Result<Valuation> {
    f.ensure_same_field(prime.poly())?;
    if f.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut e = 0;
    let mut rest = f.clone();
    loop {
        let (q, r) = rest.divrem(prime.poly())?;
        if !r.is_zero() {
            return Ok(Valuation::Finite(e));
        }
        e += 1;
        rest = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    #[test]
    fn valuation_examples() {
        let q = FieldSpec::rationals();
        let t_minus_1 = Irreducible::assume(&Poly::from_i64s(q, &[-1, 1])).unwrap();
        assert_eq!(valuation(&Poly::zero(q), &t_minus_1), Ok(Valuation::Infinite));
        // (T-1)^2 (T+1) = T^3 - T^2 - T + 1
        let f = Poly::from_i64s(q, &[1, -1, -1, 1]);
        assert_eq!(valuation(&f, &t_minus_1), Ok(Valuation::Finite(2)));
        let g = Poly::from_i64s(q, &[1, 0, 1]);
        assert_eq!(valuation(&g, &t_minus_1), Ok(Valuation::Finite(0)));
    }

    #[test]
    fn normalization_and_rejection() {
        let f5 = FieldSpec::prime(5).unwrap();
        let p = Irreducible::certify(&Poly::from_i64s(f5, &[1, 2])).unwrap();
        assert!(p.poly().is_monic());
        assert_eq!(p.certificate(), Certificate::FiniteFieldTest);
        assert!(matches!(
            Irreducible::certify(&Poly::from_i64s(f5, &[1, 0, 1])),
            Err(Error::Reducible { .. })
        ));
        assert_eq!(
            Irreducible::assume(&Poly::from_i64s(f5, &[3])),
            Err(Error::ConstantPolynomial)
        );
    }
}
