//! Quadrature against the Askey-Wilson weight, the mass-modified inner product,
//! Gram matrices, and a moment-matrix construction of the modified family that
//! shares nothing with the recurrence or kernel code.
//!
//! Integrals are taken in `theta` with `x = cos theta`, which absorbs the
//! `1 / sqrt(1 - x^2)` edge behaviour of the weight.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::askey_wilson::{AWParams, AWWeight, CONTEXT_TAIL_TOL};
use crate::error::{Error, Result};
use crate::gen_aw::{GenFamily, MassConfig};

type C64 = Complex64;

/// Nodes of the coarsest rule.
pub const BASE_NODES: usize = 16;
/// Number of doublings before giving up.
pub const MAX_DOUBLINGS: usize = 12;
/// Largest degree the moment construction accepts.
pub const ORACLE_MAX_DEGREE: usize = 8;
/// Hankel residual above which the moment construction is rejected.
pub const HANKEL_RESIDUAL_LIMIT: f64 = 1e-8;

/// Gauss-Legendre rule on `theta` in `[0, pi]` with `16 * 2^level` nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub level: usize,
}

impl QuadratureRule {
    pub fn at_level(level: usize) -> Self {
        let n = NonZeroUsize::new(BASE_NODES << level).expect("node count is positive");
        let rule = GaussLegendre::new(n);
        let (nodes, weights) = rule
            .iter()
            .map(|(x, w)| (PI / 2.0 * (x + 1.0), PI / 2.0 * w))
            .unzip();
        QuadratureRule { nodes, weights, level }
    }
}

/// Integrates several functions of `x` against `rho(x) dx` at once, doubling the
/// rule until every component changes by less than `tol` relative to `int |f| rho`.
pub fn integrate_many<F>(params: &AWParams, tol: f64, count: usize, mut f: F) -> Result<Vec<C64>>
where
    F: FnMut(f64) -> Result<Vec<C64>>,
{
    let weight = AWWeight::new(params, CONTEXT_TAIL_TOL)?;
    let mut prev: Option<Vec<C64>> = None;
    for level in 0..=MAX_DOUBLINGS {
        let rule = QuadratureRule::at_level(level);
        let mut sum = vec![C64::new(0.0, 0.0); count];
        let mut abs = vec![0.0; count];
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            let wd = w * weight.theta_density(*t);
            let vals = f(t.cos())?;
            for k in 0..count {
                sum[k] += wd * vals[k];
                abs[k] += wd.abs() * vals[k].norm();
            }
        }
        if let Some(p) = &prev {
            let settled = (0..count).all(|k| (sum[k] - p[k]).norm() <= tol * abs[k].max(f64::MIN_POSITIVE));
            if settled {
                return Ok(sum);
            }
        }
        prev = Some(sum);
    }
    Err(Error::NoConvergence(MAX_DOUBLINGS))
}

/// `int f(x) rho(x) dx` over `(-1, 1)`.
pub fn integrate_weighted<F>(f: F, params: &AWParams, tol: f64) -> Result<C64>
where
    F: Fn(f64) -> C64,
{
    Ok(integrate_many(params, tol, 1, |x| Ok(vec![f(x)]))?[0])
}

/// `int f g rho dx + A f(-1) g(-1) + B f(1) g(1)`.
pub fn inner_mod<F, G>(f: F, g: G, params: &AWParams, masses: &MassConfig, tol: f64) -> Result<C64>
where
    F: Fn(f64) -> C64,
    G: Fn(f64) -> C64,
{
    let body = integrate_weighted(|x| f(x) * g(x), params, tol)?;
    Ok(body + masses.mass_neg() * f(-1.0) * g(-1.0) + masses.mass_pos() * f(1.0) * g(1.0))
}

/// Modified inner products `<P~_i, P~_j>` for `i, j <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    pub n_max: usize,
    /// Row-major `(n_max + 1)^2` entries.
    pub matrix: Vec<Vec<f64>>,
    /// `d~_n^2` from the boundary system.
    pub expected_diag: Vec<f64>,
    /// `max |G_ij| / (d~_i d~_j)` over `i != j`.
    pub max_offdiag_rel: f64,
    /// `max |G_nn - d~_n^2| / d~_n^2`.
    pub max_diag_dev_rel: f64,
}

/// Gram matrix of the modified family up to degree `n_max`.
pub fn gram(n_max: usize, family: &GenFamily, tol: f64) -> Result<GramReport> {
    if n_max > family.ctx().n_max() {
        return Err(Error::DegreeOutOfRange { n: n_max, limit: family.ctx().n_max() });
    }
    let dim = n_max + 1;
    let values = |x: f64| -> Result<Vec<C64>> {
        let xc = C64::new(x, 0.0);
        (0..dim).map(|n| family.eval(n, xc)).collect()
    };
    let mut pairs = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            pairs.push((i, j));
        }
    }
    let body = integrate_many(family.ctx().params(), tol, pairs.len(), |x| {
        let v = values(x)?;
        Ok(pairs.iter().map(|&(i, j)| v[i] * v[j]).collect())
    })?;
    let vm = values(-1.0)?;
    let vp = values(1.0)?;
    let m = family.masses();
    let mut matrix = vec![vec![0.0; dim]; dim];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let g = body[k] + m.mass_neg() * vm[i] * vm[j] + m.mass_pos() * vp[i] * vp[j];
        matrix[i][j] = g.re;
        matrix[j][i] = g.re;
    }
    let expected_diag: Vec<f64> =
        (0..dim).map(|n| family.boundary(n).map(|b| b.norm_sq_mod.re)).collect::<Result<_>>()?;
    let mut max_offdiag_rel: f64 = 0.0;
    let mut max_diag_dev_rel: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                let dev = (matrix[i][i] - expected_diag[i]).abs() / expected_diag[i].abs();
                max_diag_dev_rel = max_diag_dev_rel.max(dev);
            } else {
                let s = (expected_diag[i] * expected_diag[j]).abs().sqrt();
                max_offdiag_rel = max_offdiag_rel.max(matrix[i][j].abs() / s);
            }
        }
    }
    Ok(GramReport { n_max, matrix, expected_diag, max_offdiag_rel, max_diag_dev_rel })
}

/// Monic orthogonal polynomials of degrees `0..=n_max` for the modified measure,
/// from its moments `m_k = int x^k rho dx + A (-1)^k + B` and the Hankel systems.
/// Coefficients are listed constant term first.
pub fn moment_oracle(n_max: usize, params: &AWParams, masses: &MassConfig, tol: f64) -> Result<Vec<Vec<f64>>> {
    if n_max > ORACLE_MAX_DEGREE {
        return Err(Error::DegreeOutOfRange { n: n_max, limit: ORACLE_MAX_DEGREE });
    }
    let count = 2 * n_max + 1;
    let body = integrate_many(params, tol, count, |x| {
        Ok((0..count).map(|k| C64::new(x.powi(k as i32), 0.0)).collect())
    })?;
    let moments: Vec<f64> = body
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            v.re + masses.mass_neg() * sign + masses.mass_pos()
        })
        .collect();
    let mut out = vec![vec![1.0]];
    for n in 1..=n_max {
        let h = DMatrix::from_fn(n, n, |i, j| moments[i + j]);
        let rhs = DVector::from_fn(n, |i, _| -moments[i + n]);
        let sol = h.clone().lu().solve(&rhs).ok_or(Error::IllConditioned(f64::INFINITY))?;
        let resid = (&h * &sol - &rhs).norm() / (h.norm() * sol.norm() + rhs.norm());
        if !(resid <= HANKEL_RESIDUAL_LIMIT) {
            return Err(Error::IllConditioned(resid));
        }
        let mut c: Vec<f64> = sol.iter().copied().collect();
        c.push(1.0);
        out.push(c);
    }
    Ok(out)
}
