//! Dense univariate arithmetic over a field, on raw ascending coefficient
//! vectors. Every routine takes and returns normalized vectors (no trailing
//! zeros; the zero polynomial is empty).

use num_bigint::BigUint;

use super::field::Arith;

pub(crate) fn trim<F: Arith>(k: &F, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    while v.last().is_some_and(|c| k.is_zero(c)) {
        v.pop();
    }
    v
}

pub(crate) fn add<F: Arith>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = k.add(o, s);
    }
    trim(k, out)
}

pub(crate) fn sub<F: Arith>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), k.zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o = k.sub(o, s);
    }
    trim(k, out)
}

pub(crate) fn neg<F: Arith>(k: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|c| k.neg(c)).collect()
}

pub(crate) fn scale<F: Arith>(k: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    if k.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| k.mul(x, c)).collect()
}

pub(crate) fn mul<F: Arith>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    trim(k, k.poly_mul(a, b))
}

pub(crate) fn schoolbook<F: Arith>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    out
}

/// `(q, r)` with `a = q b + r` and `deg r < deg b`. `b` must be nonzero.
pub(crate) fn divrem<F: Arith>(
    k: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let lead_inv = k.inv(&b[db]);
    let mut r = a.to_vec();
    let mut q = vec![k.zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = k.mul(&r[i + db], &lead_inv);
        if k.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = k.sub(&r[i + j], &k.mul(&c, bj));
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(k, q), trim(k, r))
}

pub(crate) fn rem<F: Arith>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(k, a, b).1
}

pub(crate) fn monic<F: Arith>(k: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) if k.is_one(lead) => a.to_vec(),
        Some(lead) => scale(k, a, &k.inv(lead)),
    }
}

/// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
pub(crate) fn gcd<F: Arith>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = monic(k, a);
    let mut y = monic(k, b);
    while !y.is_empty() {
        let r = rem(k, &x, &y);
        x = y;
        y = monic(k, &r);
    }
    monic(k, &x)
}

pub(crate) fn derivative<F: Arith>(k: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(c, &k.embed_u64(i as u64)))
        .collect();
    trim(k, out)
}

pub(crate) fn pow<F: Arith>(k: &F, a: &[F::Elem], mut e: u64) -> Vec<F::Elem> {
    let mut acc = vec![k.one()];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(k, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(k, &base, &base);
        }
    }
    acc
}

pub(crate) fn mulmod<F: Arith>(
    k: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    m: &[F::Elem],
) -> Vec<F::Elem> {
    rem(k, &mul(k, a, b), m)
}

/// `base^e mod m`, exponent given as a big integer.
pub(crate) fn powmod<F: Arith>(
    k: &F,
    base: &[F::Elem],
    e: &BigUint,
    m: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = rem(k, &[k.one()], m);
    let base = rem(k, base, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(k, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(k, &acc, &base, m);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    const F7: PrimeField = PrimeField { p: 7 };

    #[test]
    fn divrem_by_linear() {
        // T^2 - 1 = (T + 1)(T - 1)
        let (q, r) = divrem(&F7, &[6, 0, 1], &[6, 1]);
        assert_eq!(q, vec![1, 1]);
        assert!(r.is_empty());
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let m = [3u64, 0, 1, 1];
        let base = [1u64, 2];
        let mut expect = vec![1u64];
        for _ in 0..20 {
            expect = mulmod(&F7, &expect, &base, &m);
        }
        assert_eq!(powmod(&F7, &base, &BigUint::from(20u32), &m), expect);
    }

    #[test]
    fn derivative_vanishes_on_pth_powers() {
        // T^7 + 3 over F_7
        let mut f = vec![0u64; 8];
        f[0] = 3;
        f[7] = 1;
        assert!(derivative(&F7, &f).is_empty());
    }
}
