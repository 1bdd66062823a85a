//! Arithmetic functions, integer cyclotomic polynomials, and the cyclotomic
//! factor terms `Q_n = Phi_n(a, b)` of a Lucas sequence.
//!
//! `Q_n` is computed two ways. [`q_term`] inverts `U_n = prod_{d|n} Q_d` with
//! the Möbius function; [`q_term_oracle`] evaluates the homogeneous
//! cyclotomic polynomial at the roots inside the quotient ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Poly, QuotRing};
use crate::error::{Error, Result};
use crate::lucas::LucasSequence;

/// Prime factorization of `n` by trial division, primes ascending.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn positive(n: u64) -> Result<u64> {
    if n == 0 {
        Err(Error::UnsupportedIndex(0))
    } else {
        Ok(n)
    }
}

pub fn mobius(n: u64) -> Result<i32> {
    let factors = prime_factors(positive(n)?);
    if factors.iter().any(|&(_, e)| e > 1) {
        Ok(0)
    } else if factors.len() % 2 == 0 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let n = positive(n)?;
    Ok(prime_factors(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// Divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let n = positive(n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Coefficients of `Phi_n(x)`, ascending. The homogeneous form is
/// `Phi_n(X, Y) = sum_i coeffs[i] X^i Y^(phi(n) - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoeffs {
    pub n: u64,
    pub coeffs: Vec<BigInt>,
}

impl CyclotomicCoeffs {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Quotient of integer polynomials by a monic divisor; exact by construction.
fn div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for the proper divisors `d`.
pub fn cyclotomic_coeffs(n: u64) -> Result<CyclotomicCoeffs> {
    let divs = divisors(n)?;
    let mut table: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for &d in &divs {
        let mut acc = vec![BigInt::zero(); d as usize + 1];
        acc[0] = BigInt::from(-1);
        acc[d as usize] = BigInt::one();
        for e in divs.iter().take_while(|&&e| e < d).filter(|&&e| d % e == 0) {
            acc = div_monic(&acc, &table[e]);
        }
        table.insert(d, acc);
    }
    Ok(CyclotomicCoeffs {
        n,
        coeffs: table.remove(&n).expect("n divides n"),
    })
}

/// `Q_n` as the Möbius quotient `prod_{d|n} U_(n/d)^mu(d)`.
///
/// All `mu = +1` factors and all `mu = -1` factors are multiplied first and
/// divided once, since partial quotients need not be polynomials.
/// `Q_0 = Q_1 = 1`.
pub fn q_term(s: &LucasSequence, n: usize) -> Result<Poly> {
    let field = s.field();
    if n <= 1 {
        return Ok(Poly::one(field));
    }
    s.ensure_nondegenerate(n)?;
    let mut numer = Poly::one(field);
    let mut denom = Poly::one(field);
    for d in divisors(n as u64)? {
        let u = s.term(n / d as usize);
        match mobius(d)? {
            1 => numer = &numer * &u,
            -1 => denom = &denom * &u,
            _ => {}
        }
    }
    numer.exact_div(&denom)
}

/// `Q_n = Phi_n(a, b)` evaluated in K[T][x]/(x^2 - P x + Q) with `a = x`,
/// `b = P - x`. The result must be a scalar.
pub fn q_term_oracle(s: &LucasSequence, n: usize) -> Result<Poly> {
    if n < 2 {
        return Err(Error::UnsupportedIndex(n));
    }
    if s.delta().is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let field = s.field();
    let phi = cyclotomic_coeffs(n as u64)?;
    let deg = phi.degree();
    let ring = QuotRing::new(s.p(), s.q())?;
    let powers = |root: crate::QuotElem| {
        let mut out = vec![ring.one()];
        for i in 0..deg {
            let next = out[i].mul(&root).expect("same ring");
            out.push(next);
        }
        out
    };
    let a_pows = powers(ring.root_a());
    let b_pows = powers(ring.root_b());
    let mut acc = ring.scalar(Poly::zero(field))?;
    for (i, c) in phi.coeffs.iter().enumerate() {
        let c = Poly::from_ints(field, std::slice::from_ref(c));
        if c.is_zero() {
            continue;
        }
        let term = a_pows[i].mul(&b_pows[deg - i])?.scale(&c)?;
        acc = acc.add(&term)?;
    }
    match acc.as_scalar() {
        Some(v) => Ok(v.clone()),
        None => Err(Error::NonScalarResult {
            x_component: acc.c1().to_string(),
        }),
    }
}

/// `Q_n` for the indices with `phi(n) <= 2`: `P`, `P^2 - Q`, `P^2 - 2Q`,
/// `P^2 - 3Q` for `n = 2, 3, 4, 6`.
pub fn closed_form_q(s: &LucasSequence, n: usize) -> Result<Poly> {
    let multiple = match n {
        2 => return Ok(s.p().clone()),
        3 => 1,
        4 => 2,
        6 => 3,
        _ => return Err(Error::UnsupportedIndex(n)),
    };
    Ok(&s.p().pow(2) - &s.q().scale_i64(multiple))
}
