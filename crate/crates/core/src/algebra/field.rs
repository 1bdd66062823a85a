//! Coefficient fields: the rationals and the prime fields F_p.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field K, identified by its characteristic.
///
/// Characteristic 0 means the rationals; any other value is a prime p and
/// means F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// F_p. Fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(FieldSpec { characteristic: p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 gives the rationals, anything else must be prime.
    pub fn with_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(Self::RATIONALS)
        } else {
            Self::prime(c)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    /// True when `n` is divisible by the characteristic (never in char 0).
    pub fn char_divides(&self, n: u64) -> bool {
        self.characteristic != 0 && n % self.characteristic == 0
    }

    /// Reduce an integer into the field.
    pub fn coef_from_int(&self, v: &BigInt) -> Coef {
        match self.characteristic {
            0 => Coef::Rational(BigRational::from_integer(v.clone())),
            p => Coef::Residue(reduce_bigint(v, p)),
        }
    }

    pub fn coef_from_i64(&self, v: i64) -> Coef {
        self.coef_from_int(&BigInt::from(v))
    }

    pub(crate) fn check(&self, c: &Coef) -> bool {
        match (self.characteristic, c) {
            (0, Coef::Rational(_)) => true,
            (p, Coef::Residue(r)) if p != 0 => *r < p,
            _ => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

/// A single field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coef {
    /// Reduced fraction with positive denominator.
    Rational(BigRational),
    /// Residue in `[0, p)`.
    Residue(u64),
}

impl Coef {
    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Rational(r) => r.is_zero(),
            Coef::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coef::Rational(r) => r.is_one(),
            Coef::Residue(r) => *r == 1,
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Coef::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Coef::Residue(v) => write!(f, "{v}"),
        }
    }
}

/// Field arithmetic used by the dense polynomial routines.
pub(crate) trait Arith: Clone + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn embed_u64(&self, v: u64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Product of two nonzero dense polynomials, untrimmed.
    fn poly_mul(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        super::dense::schoolbook(self, a, b)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Rationals;

impl Arith for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn embed_u64(&self, v: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    // multiply in Z[T] after clearing denominators
    fn poly_mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let (x, dx) = clear_denominators(a);
        let (y, dy) = clear_denominators(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                out[i + j] += xi * yj;
            }
        }
        let den = dx * dy;
        if den.is_one() {
            out.into_iter().map(BigRational::from_integer).collect()
        } else {
            out.into_iter().map(|c| BigRational::new(c, den.clone())).collect()
        }
    }
}

fn clear_denominators(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |acc, c| {
        if c.denom().is_one() {
            acc
        } else {
            acc.lcm(c.denom())
        }
    });
    let ints = a
        .iter()
        .map(|c| {
            if den.is_one() {
                c.numer().clone()
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (ints, den)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField {
    pub p: u64,
}

impl Arith for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let (a, b) = (*a, *b);
        if a >= self.p - b {
            a - (self.p - b)
        } else {
            a + b
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let (a, b) = (*a, *b);
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        pow_mod(*a, self.p - 2, self.p)
    }
    fn embed_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    // for p < 2^32 every product fits in u64, so sums can be reduced once
    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if self.p >> 32 != 0 {
            return super::dense::schoolbook(self, a, b);
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        let p = self.p as u128;
        acc.into_iter().map(|c| (c % p) as u64).collect()
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
