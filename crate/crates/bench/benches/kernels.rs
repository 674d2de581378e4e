use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use minorlift::algebra::graded_component_dim;
use minorlift::cohomology::annihilator;
use minorlift::complexes::{check_full_lift, LiftContext};
use minorlift::determinantal::{generalized_permanents, IndexSet, Minors};
use minorlift::weyl::minor_power_class;
use minorlift::Shape;

fn poly_mul(c: &mut Criterion) {
    let minors = Minors::new(Shape::hilbert_burch(4).unwrap());
    let d1 = minors.maximal_minor(1).unwrap();
    let d2 = minors.maximal_minor(2).unwrap();
    let big = &d1.pow(2) * &d2;
    c.bench_function("mul d1^2 d2 * d2 (n=4)", |b| b.iter(|| black_box(&big) * black_box(&d2)));
}

fn phi(c: &mut Criterion) {
    let mut group = c.benchmark_group("phi top");
    for (n, t) in [(3, 3), (3, 4), (4, 3)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}t{t}")), &(n, t), |b, &(n, t)| {
            b.iter(|| {
                let ctx = LiftContext::new(n).unwrap();
                ctx.phi(t, &IndexSet::range(n)).unwrap()
            })
        });
    }
    group.finish();
}

fn lift(c: &mut Criterion) {
    let mut group = c.benchmark_group("full lift");
    group.sample_size(10);
    for (n, t) in [(3, 3), (4, 3)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}t{t}")), &(n, t), |b, &(n, t)| {
            b.iter(|| check_full_lift(n, t).unwrap())
        });
    }
    group.finish();
}

fn graded(c: &mut Criterion) {
    let s = Shape::new(4, 3).unwrap();
    let gens = generalized_permanents(s, 2).unwrap();
    c.bench_function("graded dim 4x3 perms r=4", |b| {
        b.iter(|| graded_component_dim(&s, black_box(&gens), 4).unwrap())
    });
}

fn laurent(c: &mut Criterion) {
    let minors = Minors::new(Shape::hilbert_burch(3).unwrap());
    c.bench_function("minor power class (1,1,1)", |b| {
        b.iter(|| minor_power_class(&minors, black_box(&[1, 1, 1])).unwrap())
    });
    let mut group = c.benchmark_group("annihilator");
    group.sample_size(10);
    group.bench_function("n3t4", |b| b.iter(|| annihilator(3, 4).unwrap()));
    group.finish();
}

criterion_group!(benches, poly_mul, phi, lift, graded, laurent);
criterion_main!(benches);
