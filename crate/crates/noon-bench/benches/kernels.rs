use std::f64::consts::FRAC_PI_4;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use noon_core::analytic::{coincidence_distribution, fisher_information};
use noon_core::fock::simulate;
use noon_core::scan::run_scan;
use noon_core::{Axis, AxisParam, ProbeConfig, Quantity, ScanSpec};

fn oracle_simulate(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_simulate");
    for n in [2u32, 6, 12] {
        let cfg = ProbeConfig::new(n, 0.4, 0.1, FRAC_PI_4).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &cfg, |b, cfg| {
            b.iter(|| simulate(black_box(cfg)).unwrap());
        });
    }
    group.finish();
}

fn closed_forms(c: &mut Criterion) {
    let cfg = ProbeConfig::new(6, 0.4, 0.1, FRAC_PI_4).unwrap();
    c.bench_function("coincidence_distribution_n6", |b| {
        b.iter(|| coincidence_distribution(black_box(&cfg)));
    });
    c.bench_function("fisher_information_n6", |b| {
        b.iter(|| fisher_information(black_box(&cfg)));
    });
}

fn regime_map(c: &mut Criterion) {
    let spec = ScanSpec {
        n_photons: 2,
        alpha: 0.0,
        loss: 0.0,
        phase: 0.0,
        axes: vec![
            Axis {
                param: AxisParam::Alpha,
                min: 0.0,
                max: 1.0,
                steps: 201,
            },
            Axis {
                param: AxisParam::Loss,
                min: 0.0,
                max: 1.0,
                steps: 201,
            },
        ],
        quantities: vec![Quantity::FisherMax, Quantity::Regime],
    };
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("regime_map_201x201", |b| {
        b.iter(|| run_scan(black_box(&spec)).unwrap());
    });
    group.finish();
}

criterion_group!(benches, oracle_simulate, closed_forms, regime_map);
criterion_main!(benches);
