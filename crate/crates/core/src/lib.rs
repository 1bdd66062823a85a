//! Lucas sequences over K[T] with K = Q or F_p.
//!
//! The crate computes the terms `U_n` and `V_n`, the cyclotomic factor terms
//! `Q_n`, ranks of appearance and 𝔭-adic valuations, and decides which terms
//! have a primitive prime divisor in two independent ways: a brute-force
//! gcd-stripping oracle ([`primdiv::has_primitive_divisor`]) and the
//! closed-form classification ([`primdiv::classify`]).
//!
//! ```
//! use lucaspoly::{FieldSpec, LucasParams, LucasSequence, Poly};
//!
//! let f7 = FieldSpec::prime(7).unwrap();
//! let p = Poly::parse("4*T", f7).unwrap();
//! let q = Poly::parse("3*T^2-1", f7).unwrap();
//! let seq = LucasSequence::new(LucasParams::new(p, q).unwrap());
//! let report = lucaspoly::primdiv::classify(&seq).unwrap();
//! assert_eq!(report.exceptional().map(|(n, _)| n), Some(6));
//! ```

pub mod algebra;
pub mod corpus;
pub mod cyclotomic;
mod error;
pub mod factor;
pub mod lucas;
pub mod primdiv;
pub mod verify;

pub use algebra::{valuation, Coef, FieldSpec, Irreducible, Poly, QuotElem, QuotRing, Valuation};
pub use error::{Error, Result};
pub use factor::{factor, Factorization, RandomSeed};
pub use lucas::{LucasParams, LucasSequence};
pub use primdiv::{ClassificationReport, RankResult};
