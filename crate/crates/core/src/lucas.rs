//! Lucas sequences `U(P, Q)` and their companions `V(P, Q)` over K[T].

use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::algebra::{FieldSpec, Poly};
use crate::error::{Error, Result};

/// In characteristic 0 a quadratic extension of K(T) only contains roots of
/// unity of order 1, 2, 3, 4 or 6, so a degenerate sequence already vanishes
/// at some index up to this bound.
pub const CHAR0_DEGENERACY_BOUND: usize = 6;

/// Parameters `P, Q` with the derived regularity flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LucasParams {
    p: Poly,
    q: Poly,
    /// Monic gcd(P, Q), the generator of (P) + (Q).
    d: Poly,
}

impl LucasParams {
    pub fn new(p: Poly, q: Poly) -> Result<LucasParams> {
        p.ensure_same_field(&q)?;
        if p.is_zero() {
            return Err(Error::ZeroParameter("P"));
        }
        if q.is_zero() {
            return Err(Error::ZeroParameter("Q"));
        }
        let d = p.gcd(&q)?;
        Ok(LucasParams { p, q, d })
    }

    /// Parse both parameters from text.
    pub fn parse(p: &str, q: &str, field: FieldSpec) -> Result<LucasParams> {
        LucasParams::new(Poly::parse(p, field)?, Poly::parse(q, field)?)
    }

    pub fn field(&self) -> FieldSpec {
        self.p.field()
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn gcd(&self) -> &Poly {
        &self.d
    }

    /// gcd(P, Q) is a unit.
    pub fn is_regular(&self) -> bool {
        self.d.is_unit()
    }

    /// Regular, and at least one of `P, Q` has positive degree.
    pub fn in_theorem_scope(&self) -> bool {
        self.is_regular() && !(self.p.is_constant() && self.q.is_constant())
    }

    pub fn ensure_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::NotRegular {
                gcd: self.d.to_string(),
            })
        }
    }
}

/// Outcome of scanning for a vanishing term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    NonDegenerateUpTo(usize),
    DegenerateAt(usize),
}

/// A Lucas sequence with memoized terms.
///
/// The memo tables sit behind locks, so one instance can be shared across
/// threads; readers always see a consistent prefix.
#[derive(Debug)]
pub struct LucasSequence {
    params: LucasParams,
    delta: Poly,
    u: RwLock<Vec<Poly>>,
    v: RwLock<Vec<Poly>>,
}

impl Clone for LucasSequence {
    fn clone(&self) -> Self {
        LucasSequence {
            params: self.params.clone(),
            delta: self.delta.clone(),
            u: RwLock::new(self.u.read().expect("memo lock").clone()),
            v: RwLock::new(self.v.read().expect("memo lock").clone()),
        }
    }
}

impl LucasSequence {
    pub fn new(params: LucasParams) -> LucasSequence {
        let field = params.field();
        let p2 = params.p.pow(2);
        // char 2: a - b = a + b = P, so the discriminant is taken to be P^2
        let delta = if field.characteristic() == 2 {
            p2
        } else {
            &p2 - &params.q.scale_i64(4)
        };
        let u = vec![Poly::zero(field), Poly::one(field)];
        let v = vec![Poly::from_i64s(field, &[2]), params.p.clone()];
        LucasSequence {
            params,
            delta,
            u: RwLock::new(u),
            v: RwLock::new(v),
        }
    }

    pub fn params(&self) -> &LucasParams {
        &self.params
    }

    pub fn field(&self) -> FieldSpec {
        self.params.field()
    }

    pub fn p(&self) -> &Poly {
        &self.params.p
    }

    pub fn q(&self) -> &Poly {
        &self.params.q
    }

    pub fn delta(&self) -> &Poly {
        &self.delta
    }

    fn memo_term(&self, table: &RwLock<Vec<Poly>>, n: usize) -> Poly {
        if let Some(t) = table.read().expect("memo lock").get(n) {
            return t.clone();
        }
        let mut terms = table.write().expect("memo lock");
        while terms.len() <= n {
            let k = terms.len();
            let next = &(&self.params.p * &terms[k - 1]) - &(&self.params.q * &terms[k - 2]);
            terms.push(next);
        }
        terms[n].clone()
    }

    /// `U_n`. Zero terms of degenerate sequences are returned as-is.
    pub fn term(&self, n: usize) -> Poly {
        self.memo_term(&self.u, n)
    }

    /// `V_n`.
    pub fn companion_term(&self, n: usize) -> Poly {
        self.memo_term(&self.v, n)
    }

    /// Fail with `DegenerateTerm` if any of `U_1..=U_n` vanishes.
    pub fn ensure_nondegenerate(&self, n: usize) -> Result<()> {
        match self.degeneracy_check(n) {
            Degeneracy::NonDegenerateUpTo(_) => Ok(()),
            Degeneracy::DegenerateAt(index) => Err(Error::DegenerateTerm { index }),
        }
    }

    /// Scan `U_1..=U_bound` for a zero term. In characteristic 0 a bound of
    /// [`CHAR0_DEGENERACY_BOUND`] settles degeneracy for good; in
    /// characteristic p the answer only covers the scanned range.
    pub fn degeneracy_check(&self, bound: usize) -> Degeneracy {
        self.term(bound);
        let terms = self.u.read().expect("memo lock");
        match (1..=bound).find(|&n| terms[n].is_zero()) {
            Some(n) => Degeneracy::DegenerateAt(n),
            None => Degeneracy::NonDegenerateUpTo(bound),
        }
    }

    /// `U_m = U_(n+1) U_(m-n) - Q U_n U_(m-n-1)` for `m > n`.
    pub fn split_identity(&self, m: usize, n: usize) -> Result<bool> {
        if m <= n {
            return Err(Error::IndexOrder { m, n });
        }
        let rhs = &(&self.term(n + 1) * &self.term(m - n))
            - &(&(self.q() * &self.term(n)) * &self.term(m - n - 1));
        Ok(self.term(m) == rhs)
    }

    /// Monic gcd(U_m, U_n); for regular parameters this is monic(U_gcd(m,n)).
    pub fn gcd_terms(&self, m: usize, n: usize) -> Result<Poly> {
        self.params.ensure_regular()?;
        self.term(m).gcd(&self.term(n))
    }

    /// `(a - b)^e` for even `e`, or any `e` in characteristic 2 where
    /// `a - b = P`.
    fn root_difference_pow(&self, e: u64) -> Poly {
        if self.field().characteristic() == 2 {
            self.p().pow(e)
        } else {
            debug_assert!(e % 2 == 0);
            self.delta.pow(e / 2)
        }
    }

    /// `Delta^((p^i - 1)/2) * U_n^(p^i)` (char 2: `P^(2^i - 1) * U_n^(2^i)`),
    /// which equals `U_(p^i n)`.
    pub fn frobenius_term(&self, n: usize, i: u32) -> Result<Poly> {
        let p = self.field().characteristic();
        if p == 0 {
            return Err(Error::Characteristic {
                operation: "frobenius_term",
                required: "positive characteristic",
            });
        }
        let q = p.checked_pow(i).ok_or(Error::UnsupportedIndex(n))?;
        Ok(&self.root_difference_pow(q - 1) * &self.term(n).pow(q))
    }

    /// `V_n^2 - Delta U_n^2 == 4 Q^n`.
    pub fn companion_identity(&self, n: usize) -> bool {
        let (u, v) = (self.term(n), self.companion_term(n));
        let lhs = &v.pow(2) - &(&self.delta * &u.pow(2));
        lhs == self.q().pow(n as u64).scale_i64(4)
    }

    /// `2^(n-1) U_(kn) == sum_i C(n, 2i+1) Delta^i U_k^(2i+1) V_k^(n-2i-1)`.
    pub fn multiplication_formula(&self, k: usize, n: usize) -> Result<bool> {
        let field = self.field();
        if field.characteristic() == 2 {
            return Err(Error::Characteristic {
                operation: "multiplication_formula",
                required: "characteristic other than 2",
            });
        }
        if k == 0 || n == 0 {
            return Err(Error::UnsupportedIndex(0));
        }
        let (uk, vk) = (self.term(k), self.companion_term(k));
        let two_pow = Poly::from_ints(field, &[BigInt::from(2).pow(n as u32 - 1)]);
        let lhs = &two_pow * &self.term(k * n);
        let mut rhs = Poly::zero(field);
        for i in 0..=(n - 1) / 2 {
            let c = Poly::from_ints(field, &[binomial(BigInt::from(n), BigInt::from(2 * i + 1))]);
            let term = &(&c * &self.delta.pow(i as u64))
                * &(&uk.pow(2 * i as u64 + 1) * &vk.pow((n - 2 * i - 1) as u64));
            rhs = &rhs + &term;
        }
        Ok(lhs == rhs)
    }
}
