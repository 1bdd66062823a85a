//! Seeded invariant suite covering every module.
//!
//! Each check runs `trials` random instances per field. Checks fan out over
//! threads, but rows come back in a fixed order and every trial derives its
//! generator from the seed alone, so the report is reproducible.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{valuation, FieldSpec, Irreducible, Poly, QuotRing, Valuation};
use crate::corpus::{random_poly, random_poly_upto, random_sequence, sequence_corpus};
use crate::cyclotomic::{divisors, q_term, q_term_oracle};
use crate::factor::{factor, is_irreducible, RandomSeed};
use crate::lucas::LucasSequence;
use crate::primdiv::{classify, has_primitive_divisor, rank_divisibility_check, rank_of_appearance};

type Outcome = std::result::Result<(), String>;
type Check = fn(&mut ChaCha8Rng, FieldSpec, &VerifyConfig) -> Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    /// Largest index used by the sequence checks.
    pub horizon: usize,
}

impl VerifyConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        VerifyConfig {
            seed,
            trials,
            horizon: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub module: &'static str,
    pub check: &'static str,
    pub field: FieldSpec,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckRow {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(CheckRow::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<6} {:<11} {:<26} {:<6} {:>6} {:>8}", "status", "module", "check", "field", "trials", "failures")?;
        for r in &self.rows {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{:<6} {:<11} {:<26} {:<6} {:>6} {:>8}",
                status,
                r.module,
                r.check,
                r.field.to_string(),
                r.trials,
                r.failures
            )?;
            if let Some(msg) = &r.first_failure {
                writeln!(f, "       first failure: {msg}")?;
            }
        }
        let passed = self.rows.iter().filter(|r| r.passed()).count();
        write!(f, "{passed}/{} checks passed", self.rows.len())
    }
}

const CHECKS: &[(&str, &str, Check)] = &[
    ("algebra", "divrem reconstruction", check_divrem),
    ("algebra", "gcd properties", check_gcd),
    ("algebra", "coprime multiplier", check_coprime_multiplier),
    ("algebra", "parse/print round trip", check_round_trip),
    ("algebra", "quotient ring", check_quot_ring),
    ("algebra", "valuation additivity", check_valuation_additivity),
    ("factor", "reassembly", check_factor),
    ("lucas", "split identity", check_split),
    ("lucas", "strong divisibility", check_strong_divisibility),
    ("lucas", "companion identity", check_companion),
    ("lucas", "frobenius identity", check_frobenius),
    ("lucas", "multiplication formula", check_multiplication),
    ("cyclotomic", "product identity", check_product),
    ("cyclotomic", "oracle agreement", check_q_oracle),
    ("primdiv", "classifier agreement", check_classifier),
    ("primdiv", "rank divisibility", check_rank),
];

pub fn fields() -> Vec<FieldSpec> {
    let mut out = vec![FieldSpec::rationals()];
    out.extend([2, 3, 5, 7].map(|p| FieldSpec::prime(p).expect("prime")));
    out
}

fn trial_seed(seed: u64, check: usize, field: FieldSpec, trial: usize) -> u64 {
    let mut x = seed ^ 0x243f_6a88_85a3_08d3;
    for v in [check as u64, field.characteristic(), trial as u64] {
        x = (x ^ v).wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(29);
    }
    x
}

/// Run every check over every field.
pub fn run(config: &VerifyConfig) -> VerifyReport {
    let jobs: Vec<(usize, FieldSpec)> = (0..CHECKS.len())
        .flat_map(|c| fields().into_iter().map(move |f| (c, f)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(c, field)| {
            let (module, check, run_one) = CHECKS[c];
            let mut failures = 0;
            let mut first_failure = None;
            for t in 0..config.trials {
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, c, field, t));
                if let Err(msg) = run_one(&mut rng, field, config) {
                    failures += 1;
                    first_failure.get_or_insert(format!("trial {t}: {msg}"));
                }
            }
            CheckRow {
                module,
                check,
                field,
                trials: config.trials,
                failures,
                first_failure,
            }
        })
        .collect();
    VerifyReport { rows }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn nonzero<R: Rng>(rng: &mut R, field: FieldSpec, max_deg: usize) -> Poly {
    let deg = rng.random_range(0..=max_deg);
    random_poly(rng, field, deg)
}

fn check_divrem(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    let f = random_poly_upto(rng, field, 12);
    let g = nonzero(rng, field, 6);
    let (q, r) = f.divrem(&g).map_err(err)?;
    ensure(&(&q * &g) + &r == f, || format!("{f} != q*({g}) + r"))?;
    ensure(r.is_zero() || r.degree() < g.degree(), || format!("remainder {r} too large for {g}"))
}

fn check_gcd(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    let c = nonzero(rng, field, 3);
    let f = &random_poly_upto(rng, field, 5) * &c;
    let g = &random_poly_upto(rng, field, 5) * &c;
    let d = f.gcd(&g).map_err(err)?;
    if f.is_zero() && g.is_zero() {
        return ensure(d.is_zero(), || "gcd(0, 0) != 0".into());
    }
    ensure(d.is_monic(), || format!("gcd {d} not monic"))?;
    ensure(f.divisible_by(&d).map_err(err)? && g.divisible_by(&d).map_err(err)?, || {
        format!("gcd {d} does not divide {f}, {g}")
    })?;
    ensure(d.divisible_by(&c).map_err(err)?, || format!("common divisor {c} does not divide gcd {d}"))
}

fn check_coprime_multiplier(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    let x = random_poly_upto(rng, field, 5);
    let z = nonzero(rng, field, 5);
    let y = loop {
        let y = nonzero(rng, field, 5);
        if y.gcd(&z).map_err(err)?.is_one() {
            break y;
        }
    };
    let lhs = (&x * &y).gcd(&z).map_err(err)?;
    let rhs = x.gcd(&z).map_err(err)?;
    ensure(lhs == rhs, || format!("gcd(xy, z) = {lhs} but gcd(x, z) = {rhs}"))
}

fn check_round_trip(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    let mut f = random_poly_upto(rng, field, 8);
    if field.is_rational() {
        let d = Poly::one(field).scale_i64(rng.random_range(1..=9));
        f = f.exact_div(&d).map_err(err)?;
    }
    let text = f.to_string();
    let back = Poly::parse(&text, field).map_err(err)?;
    ensure(back == f, || format!("{text} parsed as {back}"))
}

fn check_quot_ring(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    let s = random_sequence(rng, field);
    let ring = QuotRing::new(s.p(), s.q()).map_err(err)?;
    let mut elem = || {
        ring.elem(random_poly_upto(rng, field, 3), random_poly_upto(rng, field, 3))
            .expect("same field")
    };
    let (u, v, w) = (elem(), elem(), elem());
    let uv = u.mul(&v).map_err(err)?;
    ensure(uv == v.mul(&u).map_err(err)?, || "multiplication not commutative".into())?;
    let left = uv.mul(&w).map_err(err)?;
    let right = u.mul(&v.mul(&w).map_err(err)?).map_err(err)?;
    ensure(left == right, || "multiplication not associative".into())?;
    let diff = ring.root_a().sub(&ring.root_b()).map_err(err)?.pow(2);
    ensure(diff.as_scalar() == Some(s.delta()), || format!("(a-b)^2 != {}", s.delta()))
}

fn random_prime<R: Rng>(rng: &mut R, field: FieldSpec) -> Irreducible {
    // every monic linear polynomial is irreducible
    let c = random_poly_upto(rng, field, 0);
    Irreducible::assume(&(&Poly::t(field) + &c)).expect("linear")
}

fn check_valuation_additivity(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    let prime = random_prime(rng, field);
    let f = &nonzero(rng, field, 4) * &prime.poly().pow(rng.random_range(0..3));
    let g = &nonzero(rng, field, 4) * &prime.poly().pow(rng.random_range(0..3));
    let vf = valuation(&f, &prime).map_err(err)?;
    let vg = valuation(&g, &prime).map_err(err)?;
    let vfg = valuation(&(&f * &g), &prime).map_err(err)?;
    let sum = vf.finite().zip(vg.finite()).map(|(a, b)| Valuation::Finite(a + b));
    ensure(Some(vfg) == sum, || format!("v({f} * {g}) = {vfg}"))
}

fn check_factor(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    if field.is_rational() {
        return Ok(());
    }
    let f = nonzero(rng, field, 24);
    let seed = RandomSeed(rng.random());
    let fac = factor(&f, seed).map_err(err)?;
    ensure(fac.expand(field) == f, || format!("factorization of {f} reassembles wrongly"))?;
    for (g, _) in fac.factors() {
        ensure(is_irreducible(g.poly()).map_err(err)?, || format!("factor {g} of {f} is reducible"))?;
    }
    ensure(factor(&f, seed).map_err(err)? == fac, || format!("factoring {f} is not deterministic"))
}

fn index<R: Rng>(rng: &mut R, config: &VerifyConfig) -> usize {
    rng.random_range(1..=config.horizon)
}

fn check_split(rng: &mut ChaCha8Rng, field: FieldSpec, config: &VerifyConfig) -> Outcome {
    let s = random_sequence(rng, field);
    let m = index(rng, config) + 1;
    let n = rng.random_range(0..m);
    ensure(s.split_identity(m, n).map_err(err)?, || format!("split({m}, {n}) fails for {}", label(&s)))
}

fn check_strong_divisibility(rng: &mut ChaCha8Rng, field: FieldSpec, config: &VerifyConfig) -> Outcome {
    let s = random_sequence(rng, field);
    let (m, n) = (index(rng, config), index(rng, config));
    let g = s.term(m).gcd(&s.term(n)).map_err(err)?;
    let d = num_integer::gcd(m, n);
    ensure(g == s.term(d).monic(), || format!("gcd(U_{m}, U_{n}) != U_{d} for {}", label(&s)))
}

fn check_companion(rng: &mut ChaCha8Rng, field: FieldSpec, config: &VerifyConfig) -> Outcome {
    let s = random_sequence(rng, field);
    let n = index(rng, config);
    ensure(s.companion_identity(n), || format!("companion identity fails at {n} for {}", label(&s)))
}

fn check_frobenius(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    if field.is_rational() {
        return Ok(());
    }
    let s = random_sequence(rng, field);
    let n = rng.random_range(1..=6);
    let i = if field.characteristic() <= 3 { rng.random_range(0..=2) } else { rng.random_range(0..=1) };
    let index = field.characteristic().pow(i) as usize * n;
    ensure(s.frobenius_term(n, i).map_err(err)? == s.term(index), || {
        format!("frobenius({n}, {i}) != U_{index} for {}", label(&s))
    })
}

fn check_multiplication(rng: &mut ChaCha8Rng, field: FieldSpec, _: &VerifyConfig) -> Outcome {
    if field.characteristic() == 2 {
        return Ok(());
    }
    let s = random_sequence(rng, field);
    let (k, n) = (rng.random_range(1..=6), rng.random_range(1..=6));
    ensure(s.multiplication_formula(k, n).map_err(err)?, || {
        format!("multiplication formula ({k}, {n}) fails for {}", label(&s))
    })
}

fn check_product(rng: &mut ChaCha8Rng, field: FieldSpec, config: &VerifyConfig) -> Outcome {
    let s = random_sequence(rng, field);
    let n = rng.random_range(2..=config.horizon);
    let mut prod = Poly::one(field);
    for d in divisors(n as u64).map_err(err)? {
        prod = &prod * &q_term(&s, d as usize).map_err(err)?;
    }
    ensure(prod == s.term(n), || format!("prod Q_d != U_{n} for {}", label(&s)))
}

fn check_q_oracle(rng: &mut ChaCha8Rng, field: FieldSpec, config: &VerifyConfig) -> Outcome {
    let s = random_sequence(rng, field);
    let n = rng.random_range(2..=config.horizon);
    let a = q_term(&s, n).map_err(err)?;
    let b = q_term_oracle(&s, n).map_err(err)?;
    ensure(a == b, || format!("Q_{n}: {a} != {b} for {}", label(&s)))
}

fn check_classifier(rng: &mut ChaCha8Rng, field: FieldSpec, config: &VerifyConfig) -> Outcome {
    let s = sequence_corpus(field, 4, rng.random()).swap_remove(rng.random_range(0..4));
    let report = classify(&s).map_err(err)?;
    for n in 1..=config.horizon {
        if field.char_divides(n as u64) {
            continue;
        }
        let oracle = has_primitive_divisor(&s, n).map_err(err)?;
        let predicted = !(n == 1 || report.is_exceptional(n));
        ensure(oracle == predicted, || {
            format!("n = {n}: oracle {oracle}, classifier {predicted} for {}", label(&s))
        })?;
    }
    ensure(report.uniqueness(), || format!("two exceptional indices for {}", label(&s)))
}

fn check_rank(rng: &mut ChaCha8Rng, field: FieldSpec, config: &VerifyConfig) -> Outcome {
    let s = random_sequence(rng, field);
    let prime = random_prime(rng, field);
    let rank = rank_of_appearance(&s, &prime, 4 * config.horizon).map_err(err)?;
    if prime.divides(s.q()).map_err(err)? {
        return ensure(rank.finite().is_none(), || format!("{prime} | Q but rank {rank}"));
    }
    if rank.finite().is_none() {
        return Ok(());
    }
    for n in 1..=config.horizon {
        ensure(rank_divisibility_check(&s, &prime, rank, n).map_err(err)?, || {
            format!("rank {rank} of {prime} inconsistent at {n} for {}", label(&s))
        })?;
    }
    Ok(())
}

fn label(s: &LucasSequence) -> String {
    format!("P = {}, Q = {} over {}", s.p(), s.q(), s.field())
}
