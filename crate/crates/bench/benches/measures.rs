use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use sepfid_bench::{ghz, random_two_qubit, w_state};
use sepfid_core::{
    concurrence, f_sep_mixed, fidelity, lambda_max, uhlmann_fidelity, LambdaOptions, RoofOptions,
};

fn bench_lambda_max(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda_max");
    let opts = LambdaOptions::default();
    for parties in [3, 4, 5] {
        let psi = w_state(parties);
        group.bench_with_input(BenchmarkId::new("w", parties), &psi, |b, psi| {
            b.iter(|| lambda_max(black_box(psi), &opts))
        });
    }
    let g = ghz(3);
    group.bench_function("ghz3", |b| b.iter(|| lambda_max(black_box(&g), &opts)));
    group.finish();
}

fn bench_fidelity(c: &mut Criterion) {
    let rho = random_two_qubit(4, 1);
    let sigma = random_two_qubit(3, 2);
    c.bench_function("fidelity_trace", |b| {
        b.iter(|| fidelity(black_box(&rho), black_box(&sigma)))
    });
    c.bench_function("fidelity_uhlmann", |b| {
        b.iter(|| uhlmann_fidelity(black_box(&rho), black_box(&sigma)))
    });
    c.bench_function("concurrence", |b| b.iter(|| concurrence(black_box(&rho))));
}

fn bench_convex_roof(c: &mut Criterion) {
    let mut group = c.benchmark_group("f_sep_mixed");
    group.sample_size(10);
    let opts = RoofOptions::default();
    for rank in [2, 4] {
        let rho = random_two_qubit(rank, 7);
        group.bench_with_input(BenchmarkId::new("two_qubit_rank", rank), &rho, |b, rho| {
            b.iter(|| f_sep_mixed(black_box(rho), &opts))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_lambda_max, bench_fidelity, bench_convex_roof);
criterion_main!(benches);
