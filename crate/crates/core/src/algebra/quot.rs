//! The ring K[T][x] / (x^2 - P x + Q).
//!
//! The class of `x` is a root `a` of the characteristic polynomial and
//! `P - x` is the other root `b`, so symmetric expressions in `a, b` can be
//! evaluated without ever adjoining a square root.

use std::sync::Arc;

use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct Modulus {
    p: Poly,
    q: Poly,
}

/// Factory for elements of one quotient ring.
#[derive(Clone, Debug)]
pub struct QuotRing {
    modulus: Arc<Modulus>,
}

/// `c0 + c1 * x` reduced modulo `x^2 - P x + Q`.
#[derive(Clone, Debug)]
pub struct QuotElem {
    c0: Poly,
    c1: Poly,
    modulus: Arc<Modulus>,
}

impl QuotRing {
    pub fn new(p: &Poly, q: &Poly) -> Result<QuotRing> {
        p.ensure_same_field(q)?;
        Ok(QuotRing {
            modulus: Arc::new(Modulus {
                p: p.clone(),
                q: q.clone(),
            }),
        })
    }

    pub fn p(&self) -> &Poly {
        &self.modulus.p
    }

    pub fn q(&self) -> &Poly {
        &self.modulus.q
    }

    pub fn elem(&self, c0: Poly, c1: Poly) -> Result<QuotElem> {
        c0.ensure_same_field(&self.modulus.p)?;
        c1.ensure_same_field(&self.modulus.p)?;
        Ok(QuotElem {
            c0,
            c1,
            modulus: self.modulus.clone(),
        })
    }

    pub fn scalar(&self, c: Poly) -> Result<QuotElem> {
        let zero = Poly::zero(c.field());
        self.elem(c, zero)
    }

    pub fn one(&self) -> QuotElem {
        self.scalar(Poly::one(self.p().field())).expect("same field")
    }

    /// The root `a`, represented by `x`.
    pub fn root_a(&self) -> QuotElem {
        let field = self.p().field();
        self.elem(Poly::zero(field), Poly::one(field)).expect("same field")
    }

    /// The conjugate root `b = P - x`.
    pub fn root_b(&self) -> QuotElem {
        let field = self.p().field();
        self.elem(self.p().clone(), -Poly::one(field)).expect("same field")
    }
}

impl QuotElem {
    pub fn c0(&self) -> &Poly {
        &self.c0
    }

    pub fn c1(&self) -> &Poly {
        &self.c1
    }

    /// The K[T] value when the `x` component vanishes.
    pub fn as_scalar(&self) -> Option<&Poly> {
        self.c1.is_zero().then_some(&self.c0)
    }

    fn same_ring(&self, other: &QuotElem) -> Result<()> {
        if Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &QuotElem) -> Result<QuotElem> {
        self.same_ring(other)?;
        Ok(QuotElem {
            c0: &self.c0 + &other.c0,
            c1: &self.c1 + &other.c1,
            modulus: self.modulus.clone(),
        })
    }

    pub fn sub(&self, other: &QuotElem) -> Result<QuotElem> {
        self.same_ring(other)?;
        Ok(QuotElem {
            c0: &self.c0 - &other.c0,
            c1: &self.c1 - &other.c1,
            modulus: self.modulus.clone(),
        })
    }

    /// Product with `x^2` rewritten as `P x - Q`.
    pub fn mul(&self, other: &QuotElem) -> Result<QuotElem> {
        self.same_ring(other)?;
        let Modulus { p, q } = &*self.modulus;
        let top = &self.c1 * &other.c1;
        let c0 = &(&self.c0 * &other.c0) - &(q * &top);
        let cross = &(&self.c0 * &other.c1) + &(&self.c1 * &other.c0);
        let c1 = &cross + &(p * &top);
        Ok(QuotElem {
            c0,
            c1,
            modulus: self.modulus.clone(),
        })
    }

    pub fn scale(&self, c: &Poly) -> Result<QuotElem> {
        c.ensure_same_field(&self.c0)?;
        Ok(QuotElem {
            c0: &self.c0 * c,
            c1: &self.c1 * c,
            modulus: self.modulus.clone(),
        })
    }

    /// Square-and-multiply; `u^0 = 1`.
    pub fn pow(&self, mut e: u64) -> QuotElem {
        let field = self.c0.field();
        let mut acc = QuotElem {
            c0: Poly::one(field),
            c1: Poly::zero(field),
            modulus: self.modulus.clone(),
        };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }
}

impl PartialEq for QuotElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other).is_ok() && self.c0 == other.c0 && self.c1 == other.c1
    }
}
