use num_complex::Complex64;

use super::params::AWParams;
use super::series::{aw_at_pm1, aw_delta_at_pm1};
use super::table::{lambda_n, nonzero, ttrr_coeffs};
use super::weight::norm_sq;
use crate::error::{Error, Result};

type C64 = Complex64;

/// Tail tolerance of the infinite products cached in a [`FamilyContext`].
pub const CONTEXT_TAIL_TOL: f64 = 1e-17;

/// Per-degree data of one Askey-Wilson family, built once and then read-only.
///
/// Recurrence data are kept two degrees beyond `n_max`, so kernels of degree
/// `n_max` and the recurrence of the modified family at degree `n_max` can
/// read `P_{n+1}` and `P_{n+2}`.
#[derive(Debug, Clone)]
pub struct FamilyContext {
    params: AWParams,
    n_max: usize,
    beta: Vec<C64>,
    gamma: Vec<C64>,
    lambda: Vec<C64>,
    norms: Vec<C64>,
    boundary_p: Vec<(C64, C64)>,
    boundary_dp: Vec<(C64, C64)>,
}

impl FamilyContext {
    pub fn new(params: AWParams, n_max: usize) -> Result<Self> {
        let limit = n_max + 2;
        let mut beta = Vec::with_capacity(limit + 1);
        let mut gamma = Vec::with_capacity(limit + 1);
        for n in 0..=limit {
            let (b, g) = ttrr_coeffs(n, &params)?;
            if n >= 1 {
                nonzero(g, "gamma_n (quasi-definiteness)")?;
            }
            beta.push(b);
            gamma.push(g);
        }
        let lambda = (0..=limit).map(|n| lambda_n(n, &params)).collect();
        let norms = (0..=limit)
            .map(|n| norm_sq(n, &params, CONTEXT_TAIL_TOL))
            .collect::<Result<Vec<_>>>()?;
        let boundary_p = (0..=limit).map(|n| aw_at_pm1(n, &params)).collect::<Result<Vec<_>>>()?;
        let boundary_dp =
            (0..=limit).map(|n| aw_delta_at_pm1(n, &params)).collect::<Result<Vec<_>>>()?;
        Ok(FamilyContext { params, n_max, beta, gamma, lambda, norms, boundary_p, boundary_dp })
    }

    pub fn params(&self) -> &AWParams {
        &self.params
    }
    pub fn n_max(&self) -> usize {
        self.n_max
    }
    /// Highest degree for which recurrence data are cached (`n_max + 2`).
    pub fn limit(&self) -> usize {
        self.n_max + 2
    }
    pub fn beta(&self, n: usize) -> C64 {
        self.beta[n]
    }
    pub fn gamma(&self, n: usize) -> C64 {
        self.gamma[n]
    }
    pub fn lambda(&self, n: usize) -> C64 {
        self.lambda[n]
    }
    /// `d_n^2` from the infinite-product closed form.
    pub fn norm_sq(&self, n: usize) -> C64 {
        self.norms[n]
    }
    /// `(P_n(-1), P_n(+1))`.
    pub fn p_at_pm1(&self, n: usize) -> (C64, C64) {
        self.boundary_p[n]
    }
    /// `(Delta P_n(-1), Delta P_n(+1))`, forward differences from `q^s = -1` and `q^s = 1`.
    pub fn dp_at_pm1(&self, n: usize) -> (C64, C64) {
        self.boundary_dp[n]
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.limit() {
            Err(Error::DegreeOutOfRange { n, limit: self.limit() })
        } else {
            Ok(())
        }
    }

    /// `[P_0(x), ..., P_n(x)]` from the three-term recurrence.
    pub fn eval_all(&self, n: usize, x: C64) -> Result<Vec<C64>> {
        self.check_degree(n)?;
        let mut out = Vec::with_capacity(n + 1);
        let (mut prev, mut cur) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        out.push(cur);
        for k in 0..n {
            let next = (x - self.beta[k]) * cur - self.gamma[k] * prev;
            prev = cur;
            cur = next;
            out.push(cur);
        }
        Ok(out)
    }

    /// `P_n(x)` from the three-term recurrence.
    pub fn eval(&self, n: usize, x: C64) -> Result<C64> {
        Ok(*self.eval_all(n, x)?.last().expect("eval_all returns n + 1 values"))
    }
}

/// `P_n(x)` of the monic family from the three-term recurrence.
pub fn aw_eval_ttrr(n: usize, x: C64, ctx: &FamilyContext) -> Result<C64> {
    ctx.eval(n, x)
}
