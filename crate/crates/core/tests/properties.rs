use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use qlie_core::algebras::AlgebraModel;
use qlie_core::coeffs::{gcd, q_bracket, Exponents, Poly, NUM_VARS};
use qlie_core::{Alphabet, Letter, NCPoly, RatFunc, Strategy as Rewrite, Word};

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform3(0u16..3), -4i64..=4), 1..4).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(e3, c)| {
            let mut e: Exponents = [0; NUM_VARS];
            e[..3].copy_from_slice(&e3);
            (e, BigRational::from_integer(BigInt::from(c)))
        }))
    })
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), poly_strategy()).prop_map(|(n, d)| {
        if d.is_zero() {
            RatFunc::from_poly(n)
        } else {
            RatFunc::new(n, d).unwrap()
        }
    })
}

fn ncpoly_strategy(alphabet: Alphabet, max_len: usize) -> impl Strategy<Value = NCPoly> {
    let n = alphabet.len() as u8;
    prop::collection::vec((prop::collection::vec(0..n, 0..=max_len), -3i64..=3), 1..4).prop_map(
        move |terms| {
            let mut p = NCPoly::zero(&alphabet);
            for (letters, c) in terms {
                let w = Word(letters.into_iter().map(Letter).collect());
                p.add_term(w, &RatFunc::from_int(c));
            }
            p
        },
    )
}

fn abc_poly() -> impl Strategy<Value = NCPoly> {
    ncpoly_strategy(Alphabet::abc(), 4)
}

fn model() -> AlgebraModel {
    AlgebraModel::uqrs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form(a in ratfunc_strategy(), b in ratfunc_strategy()) {
        let x = &a * &b;
        prop_assert!(gcd(x.numer(), x.denom()).is_one());
        prop_assert!(x.denom().leading_coeff().unwrap().is_one());
        prop_assert_eq!(x.recanonicalize(), x);
    }

    #[test]
    fn q_bracket_telescopes(n in 0i64..12) {
        let q = RatFunc::q();
        let lhs = &q_bracket(n) * &(&RatFunc::one() - &q);
        prop_assert_eq!(lhs, &RatFunc::one() - &q.pow(n as u32));
    }

    #[test]
    fn jacobi_in_free_algebra(x in abc_poly(), y in abc_poly(), z in abc_poly()) {
        let br = |u: &NCPoly, v: &NCPoly| u.bracket(v).unwrap();
        let sum = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn normal_form_idempotent(p in abc_poly()) {
        let m = model();
        let nf = m.three_gen_normal_form(&p).unwrap();
        prop_assert_eq!(m.three_gen_normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(nf.support().all(|w| m.system().is_irreducible(w)));
    }

    #[test]
    fn normal_form_linear(p in abc_poly(), r in abc_poly(), a in ratfunc_strategy(), b in ratfunc_strategy()) {
        let m = model();
        let nf = |x: &NCPoly| m.three_gen_normal_form(x).unwrap();
        let lhs = nf(&(&p.scale(&a) + &r.scale(&b)));
        let rhs = &nf(&p).scale(&a) + &nf(&r).scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_congruence(p in abc_poly(), u in ncpoly_strategy(Alphabet::abc(), 2), v in ncpoly_strategy(Alphabet::abc(), 2)) {
        let m = model();
        let nf = |x: &NCPoly| m.three_gen_normal_form(x).unwrap();
        let inner = nf(&p);
        prop_assert_eq!(nf(&(&(&u * &p) * &v)), nf(&(&(&u * &inner) * &v)));
    }

    #[test]
    fn strategies_agree(p in abc_poly()) {
        let m = model();
        let sys = m.system();
        let left = sys.normal_form_with(&p, Rewrite::Leftmost, None).unwrap();
        let right = sys.normal_form_with(&p, Rewrite::Rightmost, None).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn support_is_basis_words(p in abc_poly()) {
        let m = model();
        let nf = m.three_gen_normal_form(&p).unwrap();
        for w in nf.support() {
            prop_assert!(m.classify(w).is_ok(), "word {} is not a basis word", w.display(m.abc()));
        }
    }

    #[test]
    fn matches_two_generator_oracle(p in ncpoly_strategy(Alphabet::abc(), 3)) {
        prop_assert!(model().cross_validate(&p).unwrap());
    }

    #[test]
    fn relations_vanish_in_context(u in ncpoly_strategy(Alphabet::abc(), 2), v in ncpoly_strategy(Alphabet::abc(), 2), i in 1usize..=4) {
        let m = model();
        let rel = m.xi(i);
        prop_assert!(m.three_gen_normal_form(&(&(&u * &rel) * &v)).unwrap().is_zero());
    }
}
