use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qe_polytope::{brion_sum, brute_sum, rectangle, ComplexExp, Inequality, LatticePolytope};
use std::hint::black_box;

fn hexagon(m: i64) -> LatticePolytope {
    LatticePolytope::new(
        2,
        vec![
            Inequality::int(&[-1, 0], 0),
            Inequality::int(&[0, -1], 0),
            Inequality::int(&[2, 1], 6 * m),
            Inequality::int(&[1, 2], 6 * m),
        ],
    )
    .unwrap()
}

fn bench_sums(c: &mut Criterion) {
    let w = ComplexExp::real(2.0, &[-0.013, -0.021]);
    let mut g = c.benchmark_group("brute_sum");
    for threads in [1usize, qe_par::current_threads()] {
        let label = if threads == 1 { "sequential" } else { "parallel" };
        g.bench_with_input(BenchmarkId::new(label, 400), &threads, |b, &t| {
            let h = hexagon(400);
            b.iter(|| qe_par::with_threads(t, || brute_sum(black_box(&h), &w).unwrap()))
        });
    }
    g.finish();
    c.bench_function("brion_sum/hexagon_400", |b| {
        let h = hexagon(400);
        b.iter(|| brion_sum(black_box(&h), &w).unwrap())
    });
    c.bench_function("brute_sum/box_3d_60", |b| {
        let r = rectangle(&[60, 60, 60]);
        let w3 = ComplexExp::real(2.0, &[-0.01, -0.02, 0.005]);
        b.iter(|| brute_sum(black_box(&r), &w3).unwrap())
    });
}

criterion_group!(benches, bench_sums);
criterion_main!(benches);
