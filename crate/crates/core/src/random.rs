//! Seeded random inputs for the verification suites and property tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::algebras::GUARD_ORDER;
use crate::coeffs::{check_q_admissible, Exponents, Point, Poly, RatFunc, NUM_VARS};
use crate::freealg::{Alphabet, Letter, NCPoly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    /// Nonzero integers in `[-5, 5]`.
    Integer,
    /// Integer multiples of monomials in `q`, `r`, `s` of degree at most 2
    /// in each variable, sometimes a sum of two such terms.
    Polynomial,
}

pub fn random_int<R: Rng + ?Sized>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

fn random_monomial<R: Rng + ?Sized>(rng: &mut R) -> Poly {
    let mut e: Exponents = [0; NUM_VARS];
    for slot in e.iter_mut().take(3) {
        *slot = rng.gen_range(0..=2);
    }
    Poly::monomial(e, BigRational::from_integer(BigInt::from(random_int(rng))))
}

pub fn random_coeff<R: Rng + ?Sized>(rng: &mut R, kind: CoeffKind) -> RatFunc {
    match kind {
        CoeffKind::Integer => RatFunc::from_int(random_int(rng)),
        CoeffKind::Polynomial => {
            let mut p = random_monomial(rng);
            if rng.gen_bool(0.3) {
                p = p.add(&random_monomial(rng));
            }
            if p.is_zero() {
                RatFunc::one()
            } else {
                RatFunc::from_poly(p)
            }
        }
    }
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, len: usize) -> Word {
    let n = alphabet.len() as u8;
    Word((0..len).map(|_| Letter(rng.gen_range(0..n))).collect())
}

/// A polynomial with `1..=max_terms` terms of degree at most `max_deg`.
pub fn random_poly<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_deg: usize,
    max_terms: usize,
    kind: CoeffKind,
) -> NCPoly {
    let mut p = NCPoly::zero(alphabet);
    let terms = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_deg);
        p.add_term(random_word(rng, alphabet, len), &random_coeff(rng, kind));
    }
    p
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=9);
    BigRational::new(n.into(), d.into())
}

/// A point whose `q` passes the root-of-unity guard.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R) -> Point {
    let q = loop {
        let q = random_rational(rng);
        if check_q_admissible(&q, GUARD_ORDER).is_ok() {
            break q;
        }
    };
    Point::new(q, random_rational(rng), random_rational(rng))
}
