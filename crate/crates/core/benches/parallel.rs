use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use odot::analysis::{empirical_lambda_with, LambdaShape, NormParams};
use odot::random::{rational_block, rational_map, sample_rng};
use odot::{BlockMatrix, Exec, GradedMatrix, Rational};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn odot_blocks(c: &mut Criterion) {
    let mut rng = sample_rng(1, 0);
    let a: GradedMatrix<f64> = rational_block(&mut rng, 3, 3, 4, 3).unwrap().to_f64();
    let b: GradedMatrix<f64> = rational_block(&mut rng, 3, 3, 4, 3).unwrap().to_f64();
    let mut group = c.benchmark_group("odot M_{3,3}(4,3)");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| black_box(a.odot_with(&b, exec).unwrap()))
        });
    }
    group.finish();
}

fn block_products(c: &mut Criterion) {
    let mut rng = sample_rng(2, 0);
    let psi = rational_map(&mut rng, 2, 2, 3, 4).to_matrix();
    let phi = rational_map(&mut rng, 2, 2, 3, 4).to_matrix();
    let left = psi.exp(3).unwrap();
    let mut group = c.benchmark_group("Exp(M_psi) M_phi, degree 3");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| black_box::<BlockMatrix<Rational>>(left.matmul_with(&phi, exec).unwrap()))
        });
    }
    group.finish();
    let mut group = c.benchmark_group("M_psi odot M_psi");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| black_box(psi.odot_with(&psi, exec).unwrap()))
        });
    }
    group.finish();
}

fn lambda_sampling(c: &mut Criterion) {
    let params = NormParams::new(2.0).unwrap();
    let shape = LambdaShape {
        n: 2,
        n_col: 0,
        p: 3,
        p_col: 0,
        q: 3,
        q_col: 0,
    };
    let mut group = c.benchmark_group("empirical_lambda 2000 samples");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| black_box(empirical_lambda_with(shape, &params, 2000, 5, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, odot_blocks, block_products, lambda_sampling);
criterion_main!(benches);
