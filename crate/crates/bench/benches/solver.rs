use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use shellfound::solver::{assemble_shell, jacobi_sweep, BandedLu};
use shellfound::two_body::{solve_two_body, TwoBodyGrids};
use shellfound::{Field2D, SolverConfig};
use shellfound_bench::fixture;

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble_shell");
    for n in [65, 129, 250] {
        let (p, g) = fixture(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| assemble_shell(&p, &g).unwrap())
        });
    }
    group.finish();
}

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi_sweep");
    for n in [65, 250] {
        let (p, g) = fixture(n);
        let u = Field2D::for_grid(&g);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| jacobi_sweep(&u, &p, &g, 0.6).unwrap())
        });
        let sys = assemble_shell(&p, &g).unwrap();
        let mut out = vec![0.0; sys.a.dim()];
        group.bench_with_input(BenchmarkId::new("assembled", n), &n, |b, _| {
            b.iter(|| sys.a.jacobi_into(u.as_slice(), &sys.b, 0.6, &mut out))
        });
    }
    group.finish();
}

fn direct(c: &mut Criterion) {
    let mut group = c.benchmark_group("banded_lu");
    group.sample_size(10);
    for n in [65, 129, 250] {
        let (p, g) = fixture(n);
        let sys = assemble_shell(&p, &g).unwrap();
        group.bench_with_input(BenchmarkId::new("factor", n), &n, |b, _| {
            b.iter(|| BandedLu::factor(&sys.a).unwrap())
        });
        let lu = BandedLu::factor(&sys.a).unwrap();
        group.bench_with_input(BenchmarkId::new("solve", n), &n, |b, _| b.iter(|| lu.solve(&sys.b)));
    }
    group.finish();
}

fn two_body(c: &mut Criterion) {
    let mut group = c.benchmark_group("two_body_direct");
    group.sample_size(10);
    for n in [65, 129] {
        let (p, _) = fixture(n);
        let g = TwoBodyGrids::new(&p, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_two_body(&p, &g, &SolverConfig::direct()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, assembly, jacobi, direct, two_body);
criterion_main!(benches);
