//! Fixed inputs shared by the benchmarks.

use lucaspoly::corpus::{random_poly, rng_from_seed, sequence_corpus};
use lucaspoly::{FieldSpec, LucasParams, LucasSequence, Poly};

pub const SEED: u64 = 7;

/// The F_7 sequence with `U_6 = 3 U_2 U_3`.
pub fn counterexample() -> LucasSequence {
    let f7 = FieldSpec::prime(7).expect("prime");
    LucasSequence::new(LucasParams::parse("4*T", "3*T^2-1", f7).expect("valid parameters"))
}

/// A generic cubic-parameter sequence over `field`.
pub fn sample_sequence(field: FieldSpec) -> LucasSequence {
    sequence_corpus(field, 1, SEED).remove(0)
}

/// A random polynomial of degree `deg` over F_p.
pub fn sample_poly(p: u64, deg: usize) -> Poly {
    let field = FieldSpec::prime(p).expect("prime");
    random_poly(&mut rng_from_seed(SEED ^ deg as u64), field, deg)
}
