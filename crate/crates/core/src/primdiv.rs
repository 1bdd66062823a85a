//! Primitive prime divisors, ranks of appearance and valuations of terms.
//!
//! Ground truth is [`has_primitive_divisor`], which strips from `U_n` every
//! factor shared with an earlier term and checks whether anything of
//! positive degree survives. [`classify`] predicts the same answers from
//! `P` and `Q` alone.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{valuation, Coef, Irreducible, Poly, Valuation};
use crate::cyclotomic::closed_form_q;
use crate::error::{Error, Result};
use crate::factor::{factor, RandomSeed};
use crate::lucas::LucasSequence;

/// Scan limit for [`rank_of_appearance`] when the caller has no better one.
pub const DEFAULT_RANK_BOUND: usize = 5000;

/// Largest index the oracle suites check by default.
pub const DEFAULT_ORACLE_HORIZON: usize = 24;

/// Indices at which a term can lack a primitive divisor.
pub const CANDIDATE_INDICES: [usize; 5] = [1, 2, 3, 4, 6];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfiniteReason {
    /// 𝔭 divides Q, so for coprime parameters it divides no term.
    DividesQ,
}

/// Rank of appearance of a prime: the least `n >= 1` with 𝔭 | U_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankResult {
    Finite(usize),
    Infinite(InfiniteReason),
    /// No term up to this index is divisible by 𝔭.
    UnknownBeyond(usize),
}

impl RankResult {
    pub fn finite(self) -> Option<usize> {
        match self {
            RankResult::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for RankResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankResult::Finite(r) => write!(f, "{r}"),
            RankResult::Infinite(InfiniteReason::DividesQ) => write!(f, "infinite (divides Q)"),
            RankResult::UnknownBeyond(b) => write!(f, "unknown (none up to {b})"),
        }
    }
}

/// Does `U_n` have a primitive prime divisor? Brute force via gcd stripping,
/// valid for every `n >= 1` including multiples of the characteristic.
pub fn has_primitive_divisor(s: &LucasSequence, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::UnsupportedIndex(0));
    }
    s.ensure_nondegenerate(n)?;
    let mut rest = s.term(n);
    for k in 1..n {
        if rest.is_constant() {
            break;
        }
        let uk = s.term(k);
        loop {
            let g = rest.gcd(&uk)?;
            if g.is_constant() {
                break;
            }
            rest = rest.exact_div(&g)?;
        }
    }
    Ok(!rest.is_constant())
}

/// Verdict for one candidate index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexStatus {
    /// `n = 1`: `U_1 = 1` never has a prime divisor.
    TrivialException,
    /// No primitive divisor; `lambda` is the nonzero constant witness.
    Exceptional(Coef),
    HasPrimitiveDivisor,
    /// The characteristic divides `n`, where no prediction is made.
    SkippedCharDividesN,
}

/// Verdicts for `n` in {1, 2, 3, 4, 6}. Every other index not divisible by
/// the characteristic has a primitive divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    statuses: Vec<(usize, IndexStatus)>,
    uniqueness: bool,
}

impl ClassificationReport {
    pub fn statuses(&self) -> &[(usize, IndexStatus)] {
        &self.statuses
    }

    pub fn status(&self, n: usize) -> Option<&IndexStatus> {
        self.statuses.iter().find(|(m, _)| *m == n).map(|(_, st)| st)
    }

    /// The exceptional index and its witness, if any.
    pub fn exceptional(&self) -> Option<(usize, &Coef)> {
        self.statuses.iter().find_map(|(n, st)| match st {
            IndexStatus::Exceptional(l) => Some((*n, l)),
            _ => None,
        })
    }

    pub fn is_exceptional(&self, n: usize) -> bool {
        matches!(self.status(n), Some(IndexStatus::Exceptional(_)))
    }

    pub fn skipped(&self) -> Vec<usize> {
        self.statuses
            .iter()
            .filter(|(_, st)| *st == IndexStatus::SkippedCharDividesN)
            .map(|(n, _)| *n)
            .collect()
    }

    /// At most one index is exceptional.
    pub fn uniqueness(&self) -> bool {
        self.uniqueness
    }

    pub fn to_json(&self) -> Value {
        let exceptional = match self.exceptional() {
            Some((n, l)) => json!({ "n": n, "lambda": l.to_string() }),
            None => Value::Null,
        };
        json!({
            "exceptional": exceptional,
            "skipped": self.skipped(),
            "trivial": [1],
        })
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, st) in &self.statuses {
            let verdict = match st {
                IndexStatus::TrivialException => "no primitive divisor (U_1 = 1)".to_string(),
                IndexStatus::Exceptional(l) => format!("no primitive divisor (lambda = {l})"),
                IndexStatus::HasPrimitiveDivisor => "has a primitive divisor".to_string(),
                IndexStatus::SkippedCharDividesN => "skipped (characteristic divides n)".to_string(),
            };
            writeln!(f, "n = {n}: {verdict}")?;
        }
        write!(f, "all other n coprime to the characteristic: has a primitive divisor")
    }
}

/// Predict which `U_n` lack a primitive divisor from `P` and `Q`.
///
/// For `n` not divisible by the characteristic, `U_n` (n >= 2) has none
/// exactly when, for a nonzero constant lambda:
/// n = 2 and P = lambda; n = 3 and P^2 - Q = lambda; n = 4 and
/// P^2 - 2Q = lambda; n = 6 and P^2 - 3Q = lambda.
pub fn classify(s: &LucasSequence) -> Result<ClassificationReport> {
    let params = s.params();
    params.ensure_regular()?;
    if !params.in_theorem_scope() {
        return Err(Error::HypothesisViolated);
    }
    s.ensure_nondegenerate(6)?;
    let field = s.field();
    let mut statuses = Vec::with_capacity(CANDIDATE_INDICES.len());
    for n in CANDIDATE_INDICES {
        let status = if n == 1 {
            IndexStatus::TrivialException
        } else if field.char_divides(n as u64) {
            IndexStatus::SkippedCharDividesN
        } else {
            let q_n = closed_form_q(s, n)?;
            if q_n.is_unit() {
                IndexStatus::Exceptional(q_n.coeff(0))
            } else {
                IndexStatus::HasPrimitiveDivisor
            }
        };
        statuses.push((n, status));
    }
    let exceptional = statuses
        .iter()
        .filter(|(_, st)| matches!(st, IndexStatus::Exceptional(_)))
        .count();
    Ok(ClassificationReport {
        statuses,
        uniqueness: exceptional <= 1,
    })
}

/// First `n` in `1..=bound` with `prime | U_n`, iterating the recurrence
/// modulo the prime.
fn first_divisible_index(s: &LucasSequence, prime: &Irreducible, bound: usize) -> Result<Option<usize>> {
    let m = prime.poly();
    let p = s.p().rem(m)?;
    let q = s.q().rem(m)?;
    let mut prev = Poly::zero(s.field());
    let mut cur = Poly::one(s.field());
    for n in 1..=bound {
        if cur.is_zero() {
            return Ok(Some(n));
        }
        let next = &p.mulmod(&cur, m) - &q.mulmod(&prev, m);
        prev = cur;
        cur = next;
    }
    Ok(None)
}

/// Least `n` with `prime | U_n`, scanning up to `bound`.
///
/// Over F_p a prime not dividing Q always has a finite rank, reached within
/// the period of `(U_n, U_(n+1))` modulo the prime. Over Q no effective bound
/// is known, hence `UnknownBeyond`.
pub fn rank_of_appearance(s: &LucasSequence, prime: &Irreducible, bound: usize) -> Result<RankResult> {
    s.params().ensure_regular()?;
    if prime.divides(s.q())? {
        return Ok(RankResult::Infinite(InfiniteReason::DividesQ));
    }
    Ok(match first_divisible_index(s, prime, bound)? {
        Some(n) => RankResult::Finite(n),
        None => RankResult::UnknownBeyond(bound),
    })
}

/// `(prime | U_n) == (rank | n)`; always true for coprime parameters.
pub fn rank_divisibility_check(
    s: &LucasSequence,
    prime: &Irreducible,
    rank: RankResult,
    n: usize,
) -> Result<bool> {
    let rho = rank.finite().ok_or(Error::RankNotFinite)?;
    Ok(prime.divides(&s.term(n))? == (n % rho == 0))
}

/// Predicted `v_𝔭(U_(rho n))` for a prime of finite rank `rho`.
///
/// Characteristic p: `p^v_p(n) * v(U_rho) + (p^v_p(n) - 1) * v(Delta) / 2`.
/// Characteristic 0: `v(U_rho)`.
pub fn expected_valuation(
    s: &LucasSequence,
    prime: &Irreducible,
    rank: RankResult,
    n: usize,
) -> Result<u64> {
    let rho = rank.finite().ok_or(Error::RankNotFinite)?;
    if n == 0 {
        return Err(Error::UnsupportedIndex(0));
    }
    let base = finite_valuation(&s.term(rho), prime, rho)?;
    let p = s.field().characteristic();
    if p == 0 {
        return Ok(base);
    }
    let mut p_part = 1u64;
    let mut rest = n as u64;
    while rest % p == 0 {
        rest /= p;
        p_part *= p;
    }
    if p_part == 1 {
        return Ok(base);
    }
    let v_delta = match valuation(s.delta(), prime)? {
        Valuation::Finite(v) => v,
        Valuation::Infinite => return Err(Error::ZeroDiscriminant),
    };
    // p odd: p_part - 1 is even; p = 2: Delta = P^2 has even valuation
    let twice_extra = (p_part - 1) * v_delta;
    debug_assert!(twice_extra % 2 == 0);
    Ok(p_part * base + twice_extra / 2)
}

fn finite_valuation(f: &Poly, prime: &Irreducible, index: usize) -> Result<u64> {
    match valuation(f, prime)? {
        Valuation::Finite(v) => Ok(v),
        Valuation::Infinite => Err(Error::DegenerateTerm { index }),
    }
}

/// An irreducible factor of `U_n` that divides no earlier term, smallest in
/// canonical factor order. Characteristic p only.
pub fn find_primitive_divisor(
    s: &LucasSequence,
    n: usize,
    seed: RandomSeed,
) -> Result<Option<Irreducible>> {
    if s.field().is_rational() {
        return Err(Error::Characteristic {
            operation: "find_primitive_divisor",
            required: "positive characteristic",
        });
    }
    if n == 0 {
        return Err(Error::UnsupportedIndex(0));
    }
    s.ensure_nondegenerate(n)?;
    if n == 1 {
        return Ok(None);
    }
    let factorization = factor(&s.term(n), seed)?;
    for (prime, _) in factorization.factors() {
        if first_divisible_index(s, prime, n)? == Some(n) {
            return Ok(Some(prime.clone()));
        }
    }
    Ok(None)
}
