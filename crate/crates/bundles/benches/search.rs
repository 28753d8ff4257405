use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pdc_algebra::{random_unimodular, IntMatrix};
use pdc_bundles::{achievable_lambdas, admissible_residues, AchievableOptions, Exec, Limits};
use pdc_manifold::{change_basis, ManifoldPresentation};

fn odd_form(k: usize) -> ManifoldPresentation {
    let signs: Vec<i64> = (0..k).map(|i| if i % 3 == 2 { -1 } else { 1 }).collect();
    let l: Vec<i64> = (0..k as i64).map(|i| (5 * i + 1) % 12).collect();
    let base = ManifoldPresentation::from_gram(&IntMatrix::diagonal(&signs), &l).unwrap();
    change_basis(&base, &random_unimodular(k, 7, 3 * k)).unwrap()
}

fn residue_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("admissible_residues");
    group.sample_size(10);
    for k in [5usize, 6, 7] {
        let m = odd_form(k);
        for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            let limits = Limits { exec, ..Limits::default() };
            group.bench_with_input(BenchmarkId::new(name, k), &m, |b, m| {
                b.iter(|| admissible_residues(black_box(m), &limits).unwrap())
            });
        }
    }
    group.finish();
}

fn lambda_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("achievable_lambdas");
    group.sample_size(10);
    let m = odd_form(6);
    let options = AchievableOptions::default();
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        let limits = Limits { exec, ..Limits::default() };
        group.bench_function(name, |b| {
            b.iter(|| achievable_lambdas(black_box(&m), &options, &limits).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, residue_search, lambda_sets);
criterion_main!(benches);
