//! Seeded random polynomials and Lucas sequences for the verification
//! suites and benchmarks.
//!
//! Rational coefficients are small integers so that exact arithmetic stays
//! cheap. A corpus mixes plain random parameters with planted families that
//! are exceptional at n = 2, 3, 4 or 6, so that both branches of the
//! classification get exercised.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Coef, FieldSpec, Poly};
use crate::lucas::{Degeneracy, LucasParams, LucasSequence};
use crate::primdiv::DEFAULT_ORACLE_HORIZON;

/// Largest absolute value of a random rational coefficient.
pub const RATIONAL_COEF_BOUND: i64 = 4;

/// Degree bound for random `P` and `Q`.
pub const MAX_PARAM_DEGREE: usize = 3;

/// Every `PLANT_PERIOD`-th corpus entry is drawn from a planted family.
pub const PLANT_PERIOD: usize = 4;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_coef<R: Rng>(rng: &mut R, field: FieldSpec, nonzero: bool) -> Coef {
    let p = field.characteristic();
    loop {
        let c = if p == 0 {
            field.coef_from_i64(rng.random_range(-RATIONAL_COEF_BOUND..=RATIONAL_COEF_BOUND))
        } else {
            Coef::Residue(rng.random_range(0..p))
        };
        if !nonzero || !c.is_zero() {
            return c;
        }
    }
}

/// A nonzero constant.
pub fn random_unit<R: Rng>(rng: &mut R, field: FieldSpec) -> Coef {
    random_coef(rng, field, true)
}

/// A polynomial of exactly degree `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, field: FieldSpec, deg: usize) -> Poly {
    let mut coefs: Vec<Coef> = (0..deg).map(|_| random_coef(rng, field, false)).collect();
    coefs.push(random_unit(rng, field));
    Poly::from_coefs(field, coefs).expect("coefficients drawn from the field")
}

/// A polynomial of degree at most `max_deg`, possibly zero.
pub fn random_poly_upto<R: Rng>(rng: &mut R, field: FieldSpec, max_deg: usize) -> Poly {
    let coefs = (0..=max_deg).map(|_| random_coef(rng, field, false)).collect();
    Poly::from_coefs(field, coefs).expect("coefficients drawn from the field")
}

/// Regular, non-degenerate, with `max(deg P, deg Q) >= 1`.
///
/// A vanishing term with `Delta != 0` needs `P^2 = c Q` for a constant `c`,
/// which for coprime `P`, `Q` forces both to be constant, so the degeneracy
/// scan below is only a cheap cross-check.
fn accept(params: LucasParams) -> Option<LucasSequence> {
    if !params.in_theorem_scope() {
        return None;
    }
    let s = LucasSequence::new(params);
    match s.degeneracy_check(DEFAULT_ORACLE_HORIZON) {
        Degeneracy::NonDegenerateUpTo(_) => Some(s),
        Degeneracy::DegenerateAt(_) => None,
    }
}

/// Random `P`, `Q` of degree at most [`MAX_PARAM_DEGREE`].
pub fn random_sequence<R: Rng>(rng: &mut R, field: FieldSpec) -> LucasSequence {
    loop {
        let p = random_poly_upto(rng, field, MAX_PARAM_DEGREE);
        let q = random_poly_upto(rng, field, MAX_PARAM_DEGREE);
        if let Some(s) = LucasParams::new(p, q).ok().and_then(accept) {
            return s;
        }
    }
}

/// A sequence with `U_2`, `U_3`, `U_4` or `U_6` lacking a primitive divisor:
/// `P` constant, or `Q = (P^2 - lambda) / c` for `c` in {1, 2, 3}.
pub fn planted_sequence<R: Rng>(rng: &mut R, field: FieldSpec) -> LucasSequence {
    loop {
        let family = rng.random_range(0..4u64);
        let params = if family == 0 {
            let p = Poly::constant(field, random_unit(rng, field)).expect("same field");
            let deg = rng.random_range(1..=MAX_PARAM_DEGREE);
            LucasParams::new(p, random_poly(rng, field, deg))
        } else {
            if field.char_divides(family) {
                continue;
            }
            let p = random_poly(rng, field, 1);
            let lambda = Poly::constant(field, random_unit(rng, field)).expect("same field");
            let numer = &p.pow(2) - &lambda;
            let inv = Poly::one(field).scale_i64(family as i64);
            LucasParams::new(p, numer.exact_div(&inv).expect("unit divisor"))
        };
        if let Some(s) = params.ok().and_then(accept) {
            return s;
        }
    }
}

/// `count` sequences over `field`, reproducible from `seed`.
pub fn sequence_corpus(field: FieldSpec, count: usize, seed: u64) -> Vec<LucasSequence> {
    let mut rng = rng_from_seed(seed ^ field.characteristic().wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..count)
        .map(|i| {
            if i % PLANT_PERIOD == PLANT_PERIOD - 1 {
                planted_sequence(&mut rng, field)
            } else {
                random_sequence(&mut rng, field)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primdiv::classify;

    #[test]
    fn corpus_is_reproducible() {
        let f5 = FieldSpec::prime(5).unwrap();
        let a = sequence_corpus(f5, 12, 7);
        let b = sequence_corpus(f5, 12, 7);
        let key = |v: &[LucasSequence]| {
            v.iter()
                .map(|s| (s.p().to_string(), s.q().to_string()))
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&a), key(&b));
        assert_ne!(key(&a), key(&sequence_corpus(f5, 12, 8)));
    }

    #[test]
    fn corpus_members_are_classifiable() {
        for field in [FieldSpec::rationals(), FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()] {
            for s in sequence_corpus(field, 16, 1) {
                assert!(classify(&s).is_ok(), "{} {}", s.p(), s.q());
            }
        }
    }

    #[test]
    fn planted_sequences_are_exceptional() {
        let mut rng = rng_from_seed(3);
        let q = FieldSpec::rationals();
        for _ in 0..20 {
            let s = planted_sequence(&mut rng, q);
            assert!(classify(&s).unwrap().exceptional().is_some());
        }
    }

    #[test]
    fn random_poly_has_requested_degree() {
        let mut rng = rng_from_seed(0);
        for deg in 0..6 {
            assert_eq!(random_poly(&mut rng, FieldSpec::prime(2).unwrap(), deg).degree(), Some(deg));
        }
    }
}
