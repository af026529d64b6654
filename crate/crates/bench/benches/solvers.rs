use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use impartial::digraph::NodeId;
use impartial::hackenbush::{compile_to_digraph, DEFAULT_POSITION_CAP};
use impartial::oracle::{cartproduct, retrograde_label};
use impartial::solvers::{solve_carry, solve_cyclic};
use impartial_bench::{carry_instance, cyclic_instance, full_glass_drawing};

fn bench_solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for &n in &[50usize, 150, 400] {
        let carry = carry_instance(n, 42);
        group.bench_with_input(BenchmarkId::new("carry", n), &carry, |b, d| {
            b.iter(|| solve_carry(d).unwrap())
        });
        let cyclic = cyclic_instance(n, 42);
        group.bench_with_input(BenchmarkId::new("cyclic", n), &cyclic, |b, d| {
            b.iter(|| solve_cyclic(d).unwrap())
        });
    }
    group.finish();
}

fn bench_retrograde(c: &mut Criterion) {
    let left = carry_instance(25, 7);
    let right = carry_instance(25, 8);
    let (product, _) = cartproduct(&left, &right);
    c.bench_function("retrograde/25x25-product", |b| {
        b.iter(|| retrograde_label(&product))
    });
}

fn bench_hackenbush(c: &mut Criterion) {
    let drawing = full_glass_drawing();
    c.bench_function("hackenbush/full-glass", |b| {
        b.iter(|| {
            let compiled = compile_to_digraph(&drawing, DEFAULT_POSITION_CAP).unwrap();
            let a = solve_carry(&compiled.game.digraph).unwrap();
            a.white_value(NodeId(0)).unwrap().clone()
        })
    });
}

criterion_group!(benches, bench_solvers, bench_retrograde, bench_hackenbush);
criterion_main!(benches);
