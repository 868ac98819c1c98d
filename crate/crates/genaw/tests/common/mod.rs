#![allow(dead_code)]

use genaw::askey_wilson::{AWParams, FamilyContext};
use genaw::lattice::{point_from_qs, point_from_theta, LatticePoint};
use genaw::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The five parameter sets used across the tests; the first is the stock conjugate-pair set.
pub fn param_sets() -> Vec<AWParams> {
    vec![
        AWParams::new(c(0.3, 0.4), c(0.3, -0.4), c(0.2, 0.0), c(-0.5, 0.0), 0.5).unwrap(),
        AWParams::real(0.1, 0.2, 0.3, 0.4, 0.5).unwrap(),
        AWParams::real(-0.6, 0.45, 0.25, -0.15, 0.7).unwrap(),
        AWParams::new(c(0.0, 0.5), c(0.0, -0.5), c(0.6, 0.0), c(-0.3, 0.0), 0.3).unwrap(),
        AWParams::real(0.8, -0.7, 0.35, 0.05, 0.85).unwrap(),
    ]
}

pub fn stock() -> AWParams {
    param_sets()[0]
}

pub fn ctx(p: &AWParams, n_max: usize) -> FamilyContext {
    FamilyContext::new(*p, n_max).unwrap()
}

/// Random points on the unit circle away from the mass points.
pub fn circle_points(seed: u64, count: usize, p: &AWParams) -> Vec<LatticePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| point_from_theta(rng.gen_range(0.05..std::f64::consts::PI - 0.05), p.q()).unwrap())
        .collect()
}

/// Random points off the unit circle.
pub fn off_points(seed: u64, count: usize, p: &AWParams) -> Vec<LatticePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(0.6..1.6);
            let t = rng.gen_range(0.1..3.0);
            point_from_qs(C64::from_polar(r, t), p.q()).unwrap()
        })
        .collect()
}

pub fn rel(a: C64, b: C64, scale: f64) -> f64 {
    (a - b).norm() / scale.max(f64::MIN_POSITIVE)
}

/// Relative size of a sum of terms that should vanish.
pub fn residual(terms: &[C64]) -> f64 {
    let s: C64 = terms.iter().sum();
    let m = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        0.0
    } else {
        s.norm() / m
    }
}
