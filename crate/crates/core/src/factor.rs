//! Factorization over prime fields.
//!
//! Pipeline: square-free decomposition, distinct-degree splitting, then
//! randomized equal-degree splitting (Cantor-Zassenhaus for odd p, the
//! additive trace map for p = 2). Randomness comes from a ChaCha8 stream
//! seeded with [`RandomSeed`]; the generator is created per call, so equal
//! seeds give identical runs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::dense;
use crate::algebra::{Coef, FieldSpec, Irreducible, Poly, PrimeField};
use crate::cyclotomic::prime_factors;
use crate::error::{Error, Result};

/// Seed for the equal-degree splitting stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RandomSeed(pub u64);

impl From<u64> for RandomSeed {
    fn from(v: u64) -> Self {
        RandomSeed(v)
    }
}

/// `unit * prod factor^mult`, factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    unit: Coef,
    factors: Vec<(Irreducible, u32)>,
}

impl Factorization {
    pub fn unit(&self) -> &Coef {
        &self.unit
    }

    pub fn factors(&self) -> &[(Irreducible, u32)] {
        &self.factors
    }

    /// Multiply everything back together.
    pub fn expand(&self, field: FieldSpec) -> Poly {
        let unit = Poly::constant(field, self.unit.clone()).expect("unit in field");
        self.factors
            .iter()
            .fold(unit, |acc, (g, e)| &acc * &g.poly().pow(*e as u64))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "unit": self.unit.to_string(),
            "factors": self
                .factors
                .iter()
                .map(|(g, e)| json!({ "poly": g.to_string(), "mult": e }))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (g, e) in &self.factors {
            write!(f, " * ({g})^{e}")?;
        }
        Ok(())
    }
}

/// Canonical factor order: degree first, then coefficients from the top
/// down, residues ascending.
pub fn canonical_cmp(a: &Poly, b: &Poly) -> Ordering {
    let (ra, rb) = (a.residues().unwrap_or(&[]), b.residues().unwrap_or(&[]));
    ra.len()
        .cmp(&rb.len())
        .then_with(|| ra.iter().rev().cmp(rb.iter().rev()))
}

fn prime_field(f: &Poly, operation: &'static str) -> Result<PrimeField> {
    match f.field().characteristic() {
        0 => Err(Error::Characteristic {
            operation,
            required: "a prime field F_p",
        }),
        p => Ok(PrimeField { p }),
    }
}

/// Square-free decomposition `f = unit * prod g_i^e_i` over F_p.
///
/// The `g_i` are monic, square-free and pairwise coprime; the list is
/// sorted by exponent. Characteristic 0 is rejected.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let k = prime_field(f, "square-free decomposition")?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let raw = f.residues().expect("F_p polynomial");
    let mut parts = sqf_raw(&k, &dense::monic(&k, raw));
    parts.sort_by(|(a, ea), (b, eb)| ea.cmp(eb).then_with(|| raw_cmp(a, b)));
    Ok(parts
        .into_iter()
        .map(|(g, e)| (Poly::from_residues(f.field(), g), e))
        .collect())
}

fn sqf_raw(k: &PrimeField, f: &[u64]) -> Vec<(Vec<u64>, u32)> {
    let p = k.p;
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let df = dense::derivative(k, f);
    if df.is_empty() {
        for (g, e) in sqf_raw(k, &pth_root(p, f)) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = dense::gcd(k, f, &df);
    let mut w = dense::divrem(k, f, &c).0;
    let mut i = 1u32;
    while w.len() > 1 {
        let y = dense::gcd(k, &w, &c);
        let fac = dense::divrem(k, &w, &y).0;
        if fac.len() > 1 {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = dense::divrem(k, &c, &w).0;
    }
    if c.len() > 1 {
        for (g, e) in sqf_raw(k, &pth_root(p, &c)) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// `g` with `g^p = f`, for `f` whose exponents are all multiples of `p`.
/// Frobenius fixes F_p, so coefficients carry over unchanged.
fn pth_root(p: u64, f: &[u64]) -> Vec<u64> {
    f.iter().step_by(p as usize).copied().collect()
}

fn raw_cmp(a: &[u64], b: &[u64]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Complete factorization over F_p.
pub fn factor(f: &Poly, seed: RandomSeed) -> Result<Factorization> {
    let k = prime_field(f, "factorization")?;
    let raw = f.residues().ok_or(Error::ZeroPolynomial)?;
    let Some(&lead) = raw.last() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let mut found: Vec<(Vec<u64>, u32)> = Vec::new();
    for (g, e) in sqf_raw(&k, &dense::monic(&k, raw)) {
        for (part, d) in distinct_degree(&k, &g) {
            for irr in equal_degree(&k, &part, d, &mut rng) {
                found.push((irr, e));
            }
        }
    }
    found.sort_by(|(a, _), (b, _)| raw_cmp(a, b));
    let field = f.field();
    Ok(Factorization {
        unit: Coef::Residue(lead),
        factors: found
            .into_iter()
            .map(|(g, e)| (Irreducible::certified_unchecked(Poly::from_residues(field, g)), e))
            .collect(),
    })
}

/// Split a monic square-free `f` into `(product of all degree-d factors, d)`.
fn distinct_degree(k: &PrimeField, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
    let x = vec![0, 1];
    let p = BigUint::from(k.p);
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut h = dense::rem(k, &x, &rest);
    let mut d = 1;
    while rest.len() > 2 * d {
        h = dense::powmod(k, &h, &p, &rest);
        let g = dense::gcd(k, &dense::sub(k, &h, &x), &rest);
        if g.len() > 1 {
            rest = dense::divrem(k, &rest, &g).0;
            h = dense::rem(k, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

/// Split a monic product of distinct degree-`d` irreducibles.
fn equal_degree(k: &PrimeField, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let half_order = (BigUint::from(k.p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Vec<u64> = (0..n).map(|_| rng.random_range(0..k.p)).collect();
        let a = dense::trim(k, a);
        if a.len() <= 1 {
            continue;
        }
        let b = if k.p == 2 {
            trace_map(k, &a, d, f)
        } else {
            let s = dense::powmod(k, &a, &half_order, f);
            dense::sub(k, &s, &[1])
        };
        let g = dense::gcd(k, &b, f);
        if g.len() > 1 && g.len() < f.len() {
            let h = dense::divrem(k, f, &g).0;
            let mut out = equal_degree(k, &g, d, rng);
            out.extend(equal_degree(k, &h, d, rng));
            return out;
        }
    }
}

/// `a + a^2 + a^4 + ... + a^(2^(d-1)) mod f`.
fn trace_map(k: &PrimeField, a: &[u64], d: usize, f: &[u64]) -> Vec<u64> {
    let mut term = dense::rem(k, a, f);
    let mut acc = term.clone();
    for _ in 1..d {
        term = dense::mulmod(k, &term, &term, f);
        acc = dense::add(k, &acc, &term);
    }
    acc
}

/// Rabin's test: `T^(p^n) = T mod f` and `gcd(T^(p^(n/q)) - T, f) = 1` for
/// every prime `q | n`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let k = prime_field(f, "irreducibility test")?;
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let m = dense::monic(&k, f.residues().expect("F_p polynomial"));
    let x = vec![0u64, 1];
    let p = BigUint::from(k.p);
    // frob[i] = T^(p^i) mod m
    let mut frob = vec![dense::rem(&k, &x, &m)];
    for i in 1..=n {
        let next = dense::powmod(&k, &frob[i - 1], &p, &m);
        frob.push(next);
    }
    if frob[n] != dense::rem(&k, &x, &m) {
        return Ok(false);
    }
    for (q, _) in prime_factors(n as u64) {
        let h = dense::sub(&k, &frob[n / q as usize], &x);
        if dense::gcd(&k, &h, &m).len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Poly {
    pub(crate) fn from_residues(field: FieldSpec, v: Vec<u64>) -> Poly {
        let k = PrimeField {
            p: field.characteristic(),
        };
        debug_assert!(v.iter().all(|&c| c < k.p));
        Poly::wrap(field, dense::trim(&k, v))
    }
}
