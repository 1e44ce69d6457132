use std::f64::consts::FRAC_PI_4;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graybeam::beamsplitter::interaction;
use graybeam::circuit::{synthesize, Gate};
use graybeam::experiments::{sweep_theta, sweep_trotter, theta_grid, ExperimentConfig};
use graybeam::statevector::circuit_unitary;
use graybeam::{Circuit, Exec, FockEncoding, StateVector};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn layer(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for q in 0..n {
        c.push(Gate::H(q)).unwrap();
        c.push(Gate::Rz { target: q, angle: 0.3 }).unwrap();
    }
    for q in 0..n - 1 {
        c.push(Gate::Cnot { control: q, target: q + 1 }).unwrap();
    }
    c
}

fn statevector_layer(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("statevector_layer");
    g.sample_size(20);
    for n in [16, 20] {
        let c = layer(n);
        let start = StateVector::zero(n).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| {
                    let mut s = start.clone();
                    s.apply_circuit_with(&c, exec).unwrap();
                    black_box(s.norm_sqr())
                })
            });
        }
    }
    g.finish();
}

fn hom_unitary(cr: &mut Criterion) {
    let inter = interaction(FockEncoding::new(2).unwrap());
    let c = synthesize(&inter, FRAC_PI_4, 4).unwrap();
    let mut g = cr.benchmark_group("circuit_unitary");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| black_box(circuit_unitary(&c, exec).unwrap())));
    }
    g.finish();
}

fn sweeps(cr: &mut Criterion) {
    let cfg = ExperimentConfig { shots: 1000, ..Default::default() };
    let steps = [1, 2, 4, 8, 16, 32];
    let grid = theta_grid(0.0, std::f64::consts::FRAC_PI_2, 33);
    let mut g = cr.benchmark_group("sweeps");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("trotter", name), |b| b.iter(|| black_box(sweep_trotter(&cfg, &steps, exec).unwrap())));
        g.bench_function(BenchmarkId::new("theta_circuit", name), |b| {
            b.iter(|| black_box(sweep_theta(&cfg, &grid, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, statevector_layer, hom_unitary, sweeps);
criterion_main!(benches);
