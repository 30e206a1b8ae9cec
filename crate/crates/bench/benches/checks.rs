use cbsemi::{apery_intersection, check_cm, check_gorenstein, enumerate, CheckOptions, LatticeBox, LatticePoint};
use cbsemi_bench::{family, samples};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_cm");
    for (name, s) in samples() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| {
            b.iter(|| check_cm(black_box(s), CheckOptions::default()).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("check_gorenstein_family");
    for k in [2u64, 5, 10, 20] {
        let s = family(k);
        g.bench_with_input(BenchmarkId::from_parameter(k), &s, |b, s| {
            b.iter(|| check_gorenstein(black_box(s), CheckOptions::default()).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("apery");
    for (name, s) in samples() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| {
            b.iter(|| apery_intersection(black_box(s), CheckOptions::default()).unwrap())
        });
    }
    g.finish();
}

fn membership(c: &mut Criterion) {
    let mut g = c.benchmark_group("membership");
    for (name, s) in samples() {
        let bx = LatticeBox::new(60, 60);
        g.bench_with_input(BenchmarkId::new("ray_test", name), &s, |b, s| {
            b.iter(|| bx.points().filter(|p| s.is_member(p)).count())
        });
        g.bench_with_input(BenchmarkId::new("enumerate", name), &s, |b, s| {
            b.iter(|| enumerate(black_box(s.body()), bx).len())
        });
    }
    g.bench_function("single_point_far", |b| {
        let s = family(3);
        b.iter(|| s.is_member(black_box(&LatticePoint::new(100_003, 29_999))))
    });
    g.finish();
}

criterion_group!(benches, checks, membership);
criterion_main!(benches);
