//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time limit.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use lucaspoly::corpus::{random_poly, random_unit, rng_from_seed, sequence_corpus};
use lucaspoly::cyclotomic::{closed_form_q, divisors, q_term, q_term_oracle};
use lucaspoly::factor::is_irreducible;
use lucaspoly::primdiv::{
    classify, expected_valuation, has_primitive_divisor, rank_divisibility_check, rank_of_appearance,
};
use lucaspoly::{
    factor, valuation, Coef, FieldSpec, Irreducible, LucasParams, LucasSequence, Poly, RandomSeed,
    RankResult, Valuation,
};

const SEED: u64 = 0x5eed_2024;
const CORPUS_SIZE: usize = 50;

type Check = Result<String, String>;
type Criterion = (&'static str, f64, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn label(s: &LucasSequence) -> String {
    format!("P = {}, Q = {} over {}", s.p(), s.q(), s.field())
}

fn corpus(field: FieldSpec) -> Vec<LucasSequence> {
    sequence_corpus(field, CORPUS_SIZE, SEED)
}

fn all_fields() -> Vec<FieldSpec> {
    vec![q(), fp(3), fp(5), fp(7)]
}

/// Run `f` over every element in parallel, keeping the first error in order.
fn each<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<usize, String> + Sync + Send) -> Result<usize, String> {
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .try_fold(0, |acc, r| r.map(|k| acc + k))
}

fn seq(field: FieldSpec, p: &str, q: &str) -> LucasSequence {
    LucasSequence::new(LucasParams::parse(p, q, field).unwrap())
}

fn criterion_1() -> Check {
    let s = seq(fp(7), "4*T", "3*T^2-1");
    let three = Poly::from_i64s(s.field(), &[3]);
    let rhs = &(&three * &s.term(2)) * &s.term(3);
    ensure(s.term(6) == rhs, || format!("U_6 = {} but 3 U_2 U_3 = {rhs}", s.term(6)))?;
    for (name, v) in [
        ("q_term", q_term(&s, 6)),
        ("q_term_oracle", q_term_oracle(&s, 6)),
        ("closed_form_q", closed_form_q(&s, 6)),
    ] {
        let v = v.map_err(fail)?;
        ensure(v == three, || format!("{name}(6) = {v}"))?;
    }
    ensure(!has_primitive_divisor(&s, 6).map_err(fail)?, || "U_6 has a primitive divisor".into())?;
    let report = classify(&s).map_err(fail)?;
    ensure(report.exceptional() == Some((6, &Coef::Residue(3))), || {
        format!("classify gave {:?}", report.exceptional())
    })?;
    Ok(format!("U_6 = {} = 3 U_2 U_3", s.term(6)))
}

fn criterion_2() -> Check {
    let mut rng = rng_from_seed(SEED);
    let mut checked = 0;
    for field in [q(), fp(5)] {
        for _ in 0..20 {
            let deg = rng.random_range(1..=4);
            let p = random_poly(&mut rng, field, deg);
            let lambda = if field.is_rational() {
                let num = rng.random_range(1..=9i64) * if rng.random() { 1 } else { -1 };
                let den = rng.random_range(1..=9i64);
                Coef::Rational(BigRational::new(num.into(), den.into()))
            } else {
                random_unit(&mut rng, field)
            };
            let lam = Poly::constant(field, lambda.clone()).unwrap();
            let s = LucasSequence::new(LucasParams::new(p.clone(), &p.pow(2) - &lam).map_err(fail)?);
            ensure(s.term(3) == lam, || format!("U_3 = {} != {lambda} for {}", s.term(3), label(&s)))?;
            let report = classify(&s).map_err(fail)?;
            ensure(report.exceptional() == Some((3, &lambda)), || {
                format!("classify gave {:?} for {}", report.exceptional(), label(&s))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} planted sequences"))
}

fn criterion_3() -> Check {
    let mut total = 0;
    for field in all_fields() {
        total += each(&corpus(field), |s| {
            for n in 2..=24 {
                let mut prod = Poly::one(s.field());
                for d in divisors(n as u64).map_err(fail)? {
                    prod = &prod * &q_term(s, d as usize).map_err(fail)?;
                }
                ensure(prod == s.term(n), || format!("prod Q_d != U_{n} for {}", label(s)))?;
            }
            Ok(23)
        })?;
    }
    Ok(format!("{total} (sequence, n) pairs"))
}

fn criterion_4() -> Check {
    let mut total = 0;
    let mut exceptional = 0;
    for field in all_fields() {
        let counts = corpus(field)
            .par_iter()
            .map(|s| {
                let report = classify(s).map_err(fail)?;
                let mut k = 0;
                for n in 1..=24 {
                    if field.char_divides(n as u64) {
                        continue;
                    }
                    let oracle = has_primitive_divisor(s, n).map_err(fail)?;
                    let predicted = !(n == 1 || report.is_exceptional(n));
                    ensure(oracle == predicted, || {
                        format!("n = {n}: oracle {oracle}, classifier {predicted} for {}", label(s))
                    })?;
                    k += 1;
                }
                Ok((k, usize::from(report.exceptional().is_some())))
            })
            .collect::<Vec<Result<_, String>>>();
        for c in counts {
            let (k, e) = c?;
            total += k;
            exceptional += e;
        }
    }
    Ok(format!("{total} indices, {exceptional} exceptional sequences"))
}

fn criterion_5() -> Check {
    let mut total = 0;
    for field in all_fields() {
        let seqs = corpus(field);
        let mut rng = rng_from_seed(SEED ^ field.characteristic());
        let pairs: Vec<(usize, usize)> = (0..100)
            .map(|_| (rng.random_range(1..=40), rng.random_range(1..=40)))
            .collect();
        total += each(&seqs, |s| {
            for &(m, n) in &pairs {
                let g = s.term(m).gcd(&s.term(n)).map_err(fail)?;
                let d = m.gcd(&n);
                ensure(g.monic() == s.term(d).monic(), || {
                    format!("gcd(U_{m}, U_{n}) != U_{d} for {}", label(s))
                })?;
            }
            Ok(pairs.len())
        })?;
    }
    Ok(format!("{total} (sequence, m, n) triples"))
}

fn v_finite(f: &Poly, prime: &Irreducible) -> Result<u64, String> {
    match valuation(f, prime).map_err(fail)? {
        Valuation::Finite(v) => Ok(v),
        Valuation::Infinite => Err(format!("valuation of zero at {prime}")),
    }
}

fn p_part(n: usize, p: usize) -> usize {
    let mut out = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

fn distinct_factors(f: &Poly, out: &mut Vec<Irreducible>) -> Result<(), String> {
    for (g, _) in factor(f, RandomSeed(SEED)).map_err(fail)?.factors() {
        if !out.contains(g) {
            out.push(g.clone());
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    // F_5, P = T, Q = -1: U_5 = Delta^2 and U_25 = Delta^12 with Delta = (T-1)(T+1)
    let s = seq(fp(5), "T", "-1");
    let prime = Irreducible::certify(&Poly::parse("T-1", fp(5)).unwrap()).map_err(fail)?;
    let v = v_finite(&s.term(25), &prime)?;
    ensure(v == 12, || format!("v(U_25) = {v}"))?;
    let e = expected_valuation(&s, &prime, RankResult::Finite(5), 5).map_err(fail)?;
    ensure(e == 12, || format!("expected_valuation = {e}"))?;

    let mut total = 0;
    for p in [3usize, 5, 7] {
        let field = fp(p as u64);
        let mut ns: Vec<usize> = (1..=6).collect();
        ns.extend([p, 2 * p, p * p]);
        total += each(&corpus(field), |s| {
            let mut primes = Vec::new();
            for rho in 2..=8 {
                distinct_factors(&s.term(rho), &mut primes)?;
            }
            let v_delta = |prime: &Irreducible| v_finite(s.delta(), prime);
            let mut k = 0;
            for prime in &primes {
                if prime.divides(s.q()).map_err(fail)? {
                    continue;
                }
                let rank = rank_of_appearance(s, prime, 8).map_err(fail)?;
                let rho = rank.finite().ok_or_else(|| format!("rank of {prime} not found by 8"))?;
                let base = v_finite(&s.term(rho), prime)?;
                for &n in &ns {
                    let actual = v_finite(&s.term(rho * n), prime)?;
                    let pe = p_part(n, p) as u64;
                    let formula = pe * base + (pe - 1) * v_delta(prime)? / 2;
                    let predicted = expected_valuation(s, prime, rank, n).map_err(fail)?;
                    ensure(actual == formula && actual == predicted, || {
                        format!(
                            "v_{prime}(U_{}) = {actual}, formula {formula}, expected_valuation {predicted} for {}",
                            rho * n,
                            label(s)
                        )
                    })?;
                    k += 1;
                }
            }
            Ok(k)
        })?;
    }
    Ok(format!("{total} (prime, n) pairs plus v(U_25) = 12"))
}

/// `f` scaled to a primitive integer polynomial.
fn integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let coefs: Vec<BigRational> = f
        .coeffs()
        .into_iter()
        .map(|c| match c {
            Coef::Rational(r) => r,
            Coef::Residue(_) => unreachable!("rational polynomial"),
        })
        .collect();
    let den = coefs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coefs.iter().map(|c| (c * &den).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn small_divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_i64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    Some(out)
}

/// Irreducible factors of a rational polynomial found without a general
/// factorizer: linear factors from the rational root test, then any
/// remaining square-free piece of degree 2 or 3, which has no root and is
/// therefore irreducible.
fn known_rational_factors(f: &Poly) -> Vec<Irreducible> {
    let field = f.field();
    let mut found = Vec::new();
    let mut rest = f.clone();
    if rest.degree().unwrap_or(0) == 0 {
        return found;
    }
    let t = Poly::t(field);
    if rest.coeff(0).is_zero() {
        found.push(Irreducible::assume(&t).unwrap());
        while rest.coeff(0).is_zero() {
            rest = rest.exact_div(&t).unwrap();
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let ints = integer_coeffs(&rest);
        let (Some(nums), Some(dens)) = (small_divisors(&ints[0]), small_divisors(ints.last().unwrap()))
        else {
            return found;
        };
        for a in &nums {
            for b in &dens {
                for sign in [1, -1] {
                    let root = BigRational::new((sign * a).into(), (*b).into());
                    let linear = &t - &Poly::constant(field, Coef::Rational(root)).unwrap();
                    if rest.divisible_by(&linear).unwrap() {
                        while rest.divisible_by(&linear).unwrap() {
                            rest = rest.exact_div(&linear).unwrap();
                        }
                        found.push(Irreducible::assume(&linear).unwrap());
                    }
                }
            }
        }
    }
    // square-free pieces: rest / gcd(rest, rest')
    let mut piece = rest.clone();
    while piece.degree().unwrap_or(0) > 0 {
        let g = piece.gcd(&piece.derivative()).unwrap();
        let radical = piece.exact_div(&g).unwrap();
        if matches!(radical.degree(), Some(2 | 3)) {
            let candidate = Irreducible::assume(&radical).unwrap();
            if !found.contains(&candidate) {
                found.push(candidate);
            }
        }
        piece = g;
    }
    found
}

fn criterion_7() -> Check {
    let total = each(&corpus(q()), |s| {
        let mut primes = Vec::new();
        for rho in 2..=6 {
            for prime in known_rational_factors(&s.term(rho)) {
                if !primes.contains(&prime) {
                    primes.push(prime);
                }
            }
        }
        let mut k = 0;
        for prime in &primes {
            if prime.divides(s.q()).map_err(fail)? {
                continue;
            }
            let rho = rank_of_appearance(s, prime, 6)
                .map_err(fail)?
                .finite()
                .ok_or_else(|| format!("rank of {prime} not found by 6"))?;
            let base = v_finite(&s.term(rho), prime)?;
            for n in 1..=10 {
                let v = v_finite(&s.term(rho * n), prime)?;
                ensure(v == base, || {
                    format!("v_{prime}(U_{}) = {v} != {base} for {}", rho * n, label(s))
                })?;
                k += 1;
            }
        }
        Ok(k)
    })?;
    ensure(total > 0, || "no factors supplied".into())?;
    Ok(format!("{total} (prime, n) pairs"))
}

fn criterion_8() -> Check {
    let mut frob = 0;
    for p in [2u64, 3, 5, 7] {
        frob += each(&corpus(fp(p)), |s| {
            let mut k = 0;
            for n in 1..=8 {
                for i in 0..=2u32 {
                    let idx = p.pow(i) as usize * n;
                    ensure(s.frobenius_term(n, i).map_err(fail)? == s.term(idx), || {
                        format!("frobenius_term({n}, {i}) != U_{idx} for {}", label(s))
                    })?;
                    k += 1;
                }
            }
            Ok(k)
        })?;
    }
    let mut identities = 0;
    for field in [q(), fp(2), fp(3), fp(5), fp(7)] {
        identities += each(&corpus(field), |s| {
            let mut k = 0;
            for n in 0..=6 {
                ensure(s.companion_identity(n), || format!("companion identity at {n} for {}", label(s)))?;
                k += 1;
                if field.characteristic() == 2 {
                    continue;
                }
                for kk in 1..=6 {
                    if n == 0 {
                        continue;
                    }
                    ensure(s.multiplication_formula(kk, n).map_err(fail)?, || {
                        format!("multiplication formula ({kk}, {n}) for {}", label(s))
                    })?;
                    k += 1;
                }
            }
            Ok(k)
        })?;
    }
    Ok(format!("{frob} Frobenius and {identities} companion/multiplication checks"))
}

fn criterion_9() -> Check {
    let mut total = 0;
    for p in [2u64, 3, 5, 7] {
        let field = fp(p);
        total += each(&corpus(field), |s| {
            let mut k = 0;
            let mut tested = Vec::new();
            // primes dividing Delta have rank p
            let mut delta_primes = Vec::new();
            distinct_factors(s.delta(), &mut delta_primes)?;
            for prime in &delta_primes {
                let rank = rank_of_appearance(s, prime, lucaspoly::primdiv::DEFAULT_RANK_BOUND).map_err(fail)?;
                if let Some(r) = rank.finite() {
                    ensure(r == p as usize, || format!("{prime} | Delta has rank {r} for {}", label(s)))?;
                    tested.push((prime.clone(), rank));
                }
                k += 1;
            }
            // primes of rank p divide Delta
            let mut up = Vec::new();
            distinct_factors(&s.term(p as usize), &mut up)?;
            for prime in &up {
                let rank = rank_of_appearance(s, prime, p as usize).map_err(fail)?;
                if rank == RankResult::Finite(p as usize) {
                    ensure(prime.divides(s.delta()).map_err(fail)?, || {
                        format!("{prime} has rank {p} but does not divide Delta for {}", label(s))
                    })?;
                    k += 1;
                }
            }
            // primes dividing Q never appear
            let mut q_primes = Vec::new();
            distinct_factors(s.q(), &mut q_primes)?;
            for prime in &q_primes {
                let rank = rank_of_appearance(s, prime, 200).map_err(fail)?;
                ensure(matches!(rank, RankResult::Infinite(_)), || {
                    format!("{prime} | Q has rank {rank} for {}", label(s))
                })?;
                k += 1;
            }
            // rank divisibility on factors of early terms
            let mut early = Vec::new();
            for rho in 2..=8 {
                distinct_factors(&s.term(rho), &mut early)?;
            }
            for prime in early {
                let rank = rank_of_appearance(s, &prime, 8).map_err(fail)?;
                if rank.finite().is_some() {
                    tested.push((prime, rank));
                }
            }
            for (prime, rank) in &tested {
                for n in 1..=24 {
                    ensure(rank_divisibility_check(s, prime, *rank, n).map_err(fail)?, || {
                        format!("rank {rank} of {prime} fails at {n} for {}", label(s))
                    })?;
                    k += 1;
                }
            }
            Ok(k)
        })?;
    }
    Ok(format!("{total} rank checks"))
}

fn criterion_10() -> Check {
    let primes = [2u64, 3, 5, 7, 101];
    let jobs: Vec<(u64, u64)> = (0..500u64).map(|i| (primes[(i % 5) as usize], i)).collect();
    let n = each(&jobs, |&(p, i)| {
        let field = fp(p);
        let mut rng = rng_from_seed(SEED.wrapping_add(i));
        let deg = rng.random_range(0..=64);
        let f = random_poly(&mut rng, field, deg);
        let seed = RandomSeed(rng.random());
        let fac = factor(&f, seed).map_err(fail)?;
        ensure(fac.expand(field) == f, || format!("reassembly fails for {f} over {field}"))?;
        for (g, _) in fac.factors() {
            ensure(is_irreducible(g.poly()).map_err(fail)?, || format!("{g} is reducible over {field}"))?;
        }
        ensure(factor(&f, seed).map_err(fail)? == fac, || format!("nondeterministic on {f}"))?;
        Ok(1)
    })?;
    Ok(format!("{n} polynomials"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("counterexample regression over F_7", 0.1, criterion_1),
        ("P^2 - lambda family regression", 1.0, criterion_2),
        ("product identity", 30.0, criterion_3),
        ("oracle and classifier agree", 60.0, criterion_4),
        ("strong divisibility", 60.0, criterion_5),
        ("valuations in characteristic p", 120.0, criterion_6),
        ("valuation stability over Q", 60.0, criterion_7),
        ("Frobenius, companion and multiplication identities", 30.0, criterion_8),
        ("rank laws", 60.0, criterion_9),
        ("factorization soundness", 60.0, criterion_10),
    ];
    // warm the thread pool outside the timed region
    rayon::join(|| (), || ());
    let mut failures = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs_f64(*limit) => {
                Err(format!("exceeded the {limit} s limit"))
            }
            other => other,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {status}  {title}  [{:.3} s / {limit} s]  {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
