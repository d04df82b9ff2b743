use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use urep_core::boundary::{link_infinity, BoundaryPoint, Mode};
use urep_core::markov::{generator_row, simulate_many};
use urep_core::operators::{apply_a, apply_d_in_quotient, verify_main_identity};
use urep_core::orthopoly::{apply_multivariate_operator, multivariate_poly, HahnJacobiParams};
use urep_core::ring::{lr_coefficient, multiply, phi_to_sigma_window, sigma_to_phi};
use urep_core::scalar::rat;
use urep_core::{Params, RingElement, Signature, Window};

fn sig(v: &[i64]) -> Signature {
    Signature::new(v.to_vec()).unwrap()
}

fn ring(c: &mut Criterion) {
    let w = Window::new(-5, 5).unwrap();
    let lam = sig(&[2, 0, -1]);
    c.bench_function("sigma_to_phi_to_sigma N=3", |b| {
        b.iter(|| phi_to_sigma_window(&sigma_to_phi(black_box(&lam)), &w).unwrap())
    });
    let x = RingElement::sigma(&sig(&[1, -1]));
    let y = RingElement::sigma(&sig(&[2, 0]));
    c.bench_function("multiply sigma N=2 window [-5,5]", |b| b.iter(|| multiply(black_box(&x), &y, Some(&w)).unwrap()));
    let (l, m, n) = (sig(&[3, 2, 1, 0]), sig(&[2, 1]), sig(&[1, 0]));
    c.bench_function("lr_coefficient", |b| b.iter(|| lr_coefficient(black_box(&l), &m, &n).unwrap()));
}

fn operators(c: &mut Criterion) {
    let p = Params::ratios([(1, 2), (7, 10), (1, 2), (7, 10)]);
    let w = Window::new(-5, 5).unwrap();
    let mu = sig(&[1, 0, -1]);
    let e = sigma_to_phi(&mu);
    c.bench_function("apply_d N=3", |b| b.iter(|| apply_d_in_quotient(&p, black_box(&e), &w).unwrap()));
    let s = RingElement::sigma(&mu);
    c.bench_function("apply_a N=3", |b| b.iter(|| apply_a(&p, black_box(&s)).unwrap()));
    c.bench_function("main identity N=3", |b| b.iter(|| verify_main_identity(&p, black_box(&mu), &w).unwrap()));
}

fn markov(c: &mut Criterion) {
    let p = Params::ratios([(1, 2), (7, 10), (1, 2), (7, 10)]);
    let nu = sig(&[2, 0, -1, -3]);
    c.bench_function("generator_row N=4", |b| b.iter(|| generator_row(&p, 4, black_box(&nu)).unwrap()));
    let start = sig(&[0, 0]);
    c.bench_function("simulate 1000 trajectories N=2 t=1", |b| {
        b.iter(|| simulate_many(&p, 2, black_box(&start), 1.0, 7, 1000).unwrap())
    });
}

fn boundary(c: &mut Criterion) {
    let omega = BoundaryPoint::simplex(vec![rat(2, 5), rat(1, 7)], vec![rat(1, 3), rat(1, 4)]).unwrap();
    let lam = sig(&[2, 0, -1]);
    c.bench_function("link_infinity exact N=3", |b| {
        b.iter(|| link_infinity(&omega, black_box(&lam), -6, 6, Mode::exact()).unwrap())
    });
}

fn orthopoly(c: &mut Criterion) {
    let params = HahnJacobiParams::jacobi(rat(1, 2), rat(-1, 3)).unwrap();
    let f = multivariate_poly(&params, &[2, 1], 2).unwrap();
    c.bench_function("multivariate Jacobi operator m=2", |b| {
        b.iter(|| apply_multivariate_operator(&params, black_box(&f)).unwrap())
    });
}

criterion_group!(benches, ring, operators, markov, boundary, orthopoly);
criterion_main!(benches);
