use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use quadzeta::exec::Exec;
use quadzeta::genfun::modular_gf;
use quadzeta::oracle::{count_exhaustive, zeta_series_oracle};
use quadzeta::padic::FieldDesc;
use quadzeta::quadform::QuadPoly;

fn modes() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn bench(c: &mut Criterion) {
    let z3 = FieldDesc::new(3, 1).unwrap();
    // cross terms keep the three variables in one dense block
    let tangled = QuadPoly::from_ints(&z3, &[vec![1, 1, 0], vec![1, 2, 1], vec![0, 1, 3]], &[3, 0, 1], 2).unwrap();
    let z5 = FieldDesc::new(5, 1).unwrap();
    let plane = QuadPoly::from_ints(&z5, &[vec![1, 2], vec![2, 3]], &[5, 0], 0).unwrap();

    let mut g = c.benchmark_group("count_exhaustive");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new(name, "Z3 n=3 k=4"), &exec, |b, &e| {
            b.iter(|| count_exhaustive(black_box(&tangled), 4, e).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("modular_gf");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new(name, "Z5 n=2 k=3"), &exec, |b, &e| {
            b.iter(|| modular_gf(black_box(&plane), 3, e).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("zeta_series_oracle");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new(name, "Z3 n=3 K=5"), &exec, |b, &e| {
            b.iter(|| zeta_series_oracle(black_box(&tangled), 5, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
