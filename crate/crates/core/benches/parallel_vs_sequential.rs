use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use stablewitt::field::FqField;
use stablewitt::mpoly::MPoly;
use stablewitt::par::ExecMode;
use stablewitt::pointcount::{count_points_with, has_singular_point_over, VarietySystem, DEFAULT_BUDGET};

fn quartic() -> MPoly {
    let k = FqField::shared(3, 1).unwrap();
    MPoly::parse(&k, &["x", "y", "z"], "x^4 + y^4 + z^4 + x*y*z^2").unwrap()
}

fn point_counts(c: &mut Criterion) {
    let f = quartic();
    let v = VarietySystem::projective(&f).unwrap();
    let mut g = c.benchmark_group("count_points");
    g.sample_size(10);
    for r in [4u32, 6] {
        for (label, mode) in [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)] {
            g.bench_with_input(BenchmarkId::new(label, r), &r, |b, &r| {
                b.iter(|| count_points_with(black_box(&v), r, DEFAULT_BUDGET, mode).unwrap())
            });
        }
    }
    g.finish();
}

fn singular_search(c: &mut Criterion) {
    let f = quartic();
    let mut g = c.benchmark_group("singular_point_search");
    g.sample_size(10);
    for (label, mode) in [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)] {
        g.bench_function(label, |b| b.iter(|| has_singular_point_over(black_box(&f), 5, DEFAULT_BUDGET, mode).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, point_counts, singular_search);
criterion_main!(benches);
