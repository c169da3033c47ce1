use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qlie_core::algebras::AlgebraModel;
use qlie_core::coeffs::{gcd, Poly};
use qlie_core::{RatFunc, Strategy};

fn normal_forms(c: &mut Criterion) {
    let m = AlgebraModel::uqrs();
    let mut group = c.benchmark_group("normal_form");
    for n in [2usize, 4, 6] {
        let input = &m.mono(&"A".repeat(n)) * &m.mono(&"B".repeat(n));
        group.bench_with_input(BenchmarkId::new("AnBn", n), &input, |b, p| {
            b.iter(|| {
                m.system()
                    .normal_form_with(black_box(p), Strategy::Leftmost, None)
                    .unwrap()
            })
        });
    }
    let word = m.mono("BACBACBA");
    group.bench_function("BACBACBA_oracle", |b| {
        b.iter(|| m.cross_validate(black_box(&word)).unwrap())
    });
    group.finish();
}

fn ambiguities(c: &mut Criterion) {
    let m = AlgebraModel::uqrs();
    c.bench_function("ambiguities_kmax4", |b| {
        b.iter(|| {
            let sys = m.system();
            for a in sys.enumerate_ambiguities(4).unwrap() {
                assert!(sys.check_resolvable(&a).unwrap().resolved);
            }
        })
    });
}

fn coefficient_gcd(c: &mut Criterion) {
    let q = RatFunc::q();
    let r = RatFunc::r();
    let f = (&(&q - &r).pow(6) * &(&q + &RatFunc::one()).pow(3))
        .numer()
        .clone();
    let g = (&(&q - &r).pow(4) * &(&r + &RatFunc::from_int(2)).pow(3))
        .numer()
        .clone();
    c.bench_function("gcd_bivariate", |b| {
        b.iter(|| gcd(black_box(&f), black_box(&g)))
    });
    let one = Poly::one();
    c.bench_function("ratfunc_sum", |b| {
        let x = RatFunc::new(one.clone(), (&RatFunc::one() - &q).pow(3).numer().clone()).unwrap();
        let y = RatFunc::new(
            one.clone(),
            (&RatFunc::one() - &q.pow(2)).pow(2).numer().clone(),
        )
        .unwrap();
        b.iter(|| black_box(&x) + black_box(&y))
    });
}

criterion_group!(benches, normal_forms, ambiguities, coefficient_gcd);
criterion_main!(benches);
