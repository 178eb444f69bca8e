//! Benchmarks for the hot paths: windowed series arithmetic, the binomial
//! power kernel, the full table pipeline and the degree-2 verifier.

use std::collections::BTreeMap;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;

use localp2_core::correspond::{crosscheck_unrefined, ztpt_refined, ExpansionWindow};
use localp2_core::invariants::{gv_solve, hilb_p2_euler, RefinedTable};
use localp2_core::monodromy::verify_deg2;
use localp2_core::LaurentSeries;

fn bench_series_kernel(c: &mut Criterion) {
    c.bench_function("point_count_product_order_40", |b| {
        b.iter(|| hilb_p2_euler(std::hint::black_box(40)))
    });

    c.bench_function("binom_pow_two_variables", |b| {
        let base = LaurentSeries::from_terms(
            &["q", "Q"],
            &[
                (vec![0, 0], BigInt::from(1)),
                (vec![1, 1], BigInt::from(1)),
                (vec![3, 2], BigInt::from(-2)),
            ],
        )
        .with_window("q", 0, 24)
        .unwrap()
        .with_window("Q", 0, 12)
        .unwrap();
        b.iter(|| std::hint::black_box(&base).binom_pow(-7).unwrap())
    });
}

fn bench_pipelines(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipelines");
    group
        .sample_size(20)
        .measurement_time(Duration::from_secs(8));
    group.bench_function("gv_solve_all_degrees", |b| {
        b.iter(|| {
            for d in 1..=5 {
                std::hint::black_box(gv_solve(std::hint::black_box(d)).unwrap());
            }
        })
    });
    group.bench_function("crosscheck_unrefined_d5", |b| {
        b.iter(|| crosscheck_unrefined(std::hint::black_box(5)).unwrap())
    });
    group.bench_function("refined_product_window_q8", |b| {
        let tables = BTreeMap::from([(1, RefinedTable::from_pairs(&[((2, 0), 1), ((0, 2), 3)]))]);
        let window = ExpansionWindow::new(2, -8, 8);
        b.iter(|| ztpt_refined(std::hint::black_box(&tables), &window).unwrap())
    });
    group.finish();
}

fn bench_deg2(c: &mut Criterion) {
    let mut group = c.benchmark_group("deg2");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(10));
    group.bench_function("verify_deg2_k60", |b| {
        b.iter(|| verify_deg2(std::hint::black_box(60)))
    });
    group.finish();
}

criterion_group!(benches, bench_series_kernel, bench_pipelines, bench_deg2);
criterion_main!(benches);
