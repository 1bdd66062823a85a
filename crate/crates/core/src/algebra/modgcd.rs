//! Multi-modular gcd in Q[T].
//!
//! Euclid over Q suffers coefficient blow-up on the long remainder
//! sequences of high Lucas terms. Here both inputs are cleared to primitive
//! integer polynomials, their gcds modulo word-size primes are combined by
//! CRT, and the candidate is accepted once it divides both inputs over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense;
use super::field::{is_prime_u64, mul_mod, pow_mod, reduce_bigint, PrimeField};

/// Primitive integer polynomial with the same roots as `a`.
fn primitive_part(a: &[BigRational]) -> Vec<BigInt> {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| (c * &den).to_integer()).collect();
    make_primitive(ints)
}

fn make_primitive(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_one() && !content.is_zero() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    ints
}

/// Does `h` divide `a` in Z[T]? `h` must be nonzero.
fn divides_z(a: &[BigInt], h: &[BigInt]) -> bool {
    let dh = h.len() - 1;
    if a.len() < h.len() {
        return a.iter().all(Zero::is_zero);
    }
    let lead = &h[dh];
    let mut r = a.to_vec();
    for i in (0..=a.len() - h.len()).rev() {
        let c = &r[i + dh];
        if c.is_zero() {
            continue;
        }
        let (q, rem) = c.div_rem(lead);
        if !rem.is_zero() {
            return false;
        }
        for (j, hj) in h.iter().enumerate() {
            r[i + j] -= &q * hj;
        }
    }
    r.iter().all(Zero::is_zero)
}

/// Descending primes below 2^62.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 2;
            if is_prime_u64(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    if c > half {
        c - m
    } else {
        c.clone()
    }
}

/// Monic gcd of two rational polynomials; `gcd(0, 0) = 0`.
pub(crate) fn gcd_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let k = super::field::Rationals;
    if a.is_empty() || b.is_empty() {
        return dense::monic(&k, if a.is_empty() { b } else { a });
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![BigRational::one()];
    }
    let x = primitive_part(a);
    let y = primitive_part(b);
    let (lx, ly) = (x.last().unwrap(), y.last().unwrap());
    let gamma = lx.gcd(ly);

    let mut image: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut deg = usize::MAX;
    let mut last_lift: Vec<BigInt> = Vec::new();
    for p in Primes((1u64 << 62) + 1) {
        if reduce_bigint(lx, p) == 0 || reduce_bigint(ly, p) == 0 {
            continue;
        }
        let field = PrimeField { p };
        let xp: Vec<u64> = x.iter().map(|c| reduce_bigint(c, p)).collect();
        let yp: Vec<u64> = y.iter().map(|c| reduce_bigint(c, p)).collect();
        let g = dense::gcd(&field, &xp, &yp);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigRational::one()];
        }
        if d > deg {
            continue;
        }
        let gm = reduce_bigint(&gamma, p);
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, gm, p)).collect();
        if d < deg {
            deg = d;
            image = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            last_lift.clear();
            continue;
        }
        // CRT: new = old + M * ((g - old) / M mod p)
        let m_inv = pow_mod(reduce_bigint(&modulus, p), p - 2, p);
        for (c, &gi) in image.iter_mut().zip(&g) {
            let old = reduce_bigint(c, p);
            let t = mul_mod((gi + p - old) % p, m_inv, p);
            *c += &modulus * t;
        }
        modulus *= p;
        let half = &modulus >> 1;
        let lift: Vec<BigInt> = image.iter().map(|c| symmetric(c, &modulus, &half)).collect();
        if lift == last_lift {
            let h = make_primitive(lift.clone());
            if divides_z(&x, &h) && divides_z(&y, &h) {
                let lead = BigRational::from_integer(h[deg].clone());
                let sign = if lead.is_negative() { -BigRational::one() } else { BigRational::one() };
                let lead = lead * &sign;
                return h
                    .into_iter()
                    .map(|c| BigRational::from_integer(c) * &sign / &lead)
                    .collect();
            }
        }
        last_lift = lift;
    }
    unreachable!("the prime iterator is unbounded")
}
