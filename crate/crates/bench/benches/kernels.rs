use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pmshock_bench::shock_fixture;
use pmshock_core::{solve_profile, FluxSpec, NumericalFlux};

fn profile(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_profile");
    for m in [1.0, 1.25, 4.0 / 3.0] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| solve_profile(&FluxSpec::Burgers, 1.0, black_box(m), (-80.0, 20.0), 1e-10).unwrap())
        });
    }
    g.finish();
}

fn step(c: &mut Criterion) {
    let mut g = c.benchmark_group("step");
    for (name, nf) in [("godunov", NumericalFlux::Godunov), ("engquist-osher", NumericalFlux::EngquistOsher)] {
        for dx in [0.1, 0.025] {
            let (mut scheme, u0) = shock_fixture(4.0 / 3.0, dx, nf);
            let dt = scheme.cfl_dt(&u0, 0.9);
            g.bench_function(BenchmarkId::new(name, dx), |b| {
                let mut u = u0.clone();
                b.iter(|| scheme.step_unchecked(black_box(&mut u), dt))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, profile, step);
criterion_main!(benches);
