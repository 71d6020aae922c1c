use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use susyqm_bench::{helium_points, helium_trial};
use susyqm_core::helium;
use susyqm_core::sampling::{self, MetropolisConfig};

fn local_energy(c: &mut Criterion) {
    let (psi, _) = helium_trial();
    let points = helium_points(256);
    c.bench_function("helium_local_energy", |b| {
        b.iter(|| {
            for x in &points {
                black_box(helium::local_energy(&psi, x).unwrap());
            }
        })
    });
}

fn metropolis_chain(c: &mut Criterion) {
    let (psi, v) = helium_trial();
    let cfg = MetropolisConfig {
        n_walkers: 4,
        steps_per_walker: 2000,
        burn_in: 200,
        seed: 42,
        ..Default::default()
    };
    c.bench_function("vmc_energy_7200_samples", |b| {
        b.iter(|| black_box(sampling::vmc_energy(&psi, &v, &cfg).unwrap()))
    });
}

criterion_group!(sampling_benches, local_energy, metropolis_chain);
criterion_main!(sampling_benches);
