//! The normalised Askey-Wilson weight and the closed-form norms.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::params::AWParams;
use super::table::nonzero;
use crate::error::{Error, Result};
use crate::qkernel::{qpoch, qpoch_inf_ratio, truncation_index};

type C64 = Complex64;

/// `rho(x)` on (-1, 1), normalised to a probability measure.
///
/// Holds the constant prefactor and the truncation index of the `h`-products,
/// so repeated evaluation (quadrature) costs one finite product per point.
#[derive(Debug, Clone)]
pub struct AWWeight {
    params: AWParams,
    constant: f64,
    terms: usize,
}

impl AWWeight {
    pub fn new(params: &AWParams, tail_tol: f64) -> Result<Self> {
        let q = params.q();
        let mut num = vec![C64::new(q.get(), 0.0)];
        num.extend(params.pair_products());
        let c = qpoch_inf_ratio(&num, &[params.e4()], q, tail_tol)? / (2.0 * PI);
        let r = q.sqrt();
        let mut scale = 2.0 * (3.0 + 2.0 * r + q.get());
        for z in params.abcd() {
            scale += 2.0 * z.norm() + z.norm_sqr();
        }
        let terms = truncation_index(scale, q, tail_tol)?.max(1);
        Ok(AWWeight { params: *params, constant: c.re, terms })
    }

    /// `rho(cos theta) sin theta`, the integrand weight after `x = cos theta`.
    pub fn theta_density(&self, theta: f64) -> f64 {
        let q = self.params.q().get();
        let r = q.sqrt();
        let (x, s) = (theta.cos(), theta.sin());
        let abcd = self.params.abcd();
        // k = 0 factor of h(x,1) h(x,-1) is 4 (1 - x^2) = 4 sin^2 theta.
        let mut num = 4.0 * s * s * (1.0 - 2.0 * r * x + q) * (1.0 + 2.0 * r * x + q);
        let mut den = C64::new(1.0, 0.0);
        for z in abcd {
            den *= 1.0 - 2.0 * z * x + z * z;
        }
        let mut qk = q;
        for _ in 1..self.terms {
            let q2 = qk * qk;
            num *= (1.0 - 2.0 * x * qk + q2)
                * (1.0 + 2.0 * x * qk + q2)
                * (1.0 - 2.0 * r * x * qk + q2 * q)
                * (1.0 + 2.0 * r * x * qk + q2 * q);
            for z in abcd {
                den *= 1.0 - 2.0 * z * x * qk + z * z * q2;
            }
            qk *= q;
        }
        self.constant * num / den.re
    }

    /// `rho(x)` for `|x| < 1`.
    pub fn at(&self, x: f64) -> Result<f64> {
        if !(x.abs() < 1.0) {
            return Err(Error::OutOfInterval(x));
        }
        let theta = x.acos();
        Ok(self.theta_density(theta) / theta.sin())
    }
}

/// `rho(x)` for `|x| < 1` with `h`-products truncated at tail tolerance `tail_tol`.
pub fn aw_weight(x: f64, params: &AWParams, tail_tol: f64) -> Result<f64> {
    AWWeight::new(params, tail_tol)?.at(x)
}

/// `d_n^2` from the infinite-product closed form, with paired truncation.
pub fn norm_sq(n: usize, params: &AWParams, tail_tol: f64) -> Result<C64> {
    let q = params.q();
    let nf = n as f64;
    let e4 = params.e4();
    let pairs = params.pair_products();
    let mut num = vec![C64::new(q.get(), 0.0)];
    num.extend(pairs);
    num.push(e4 * q.pow(2.0 * nf));
    let mut den = vec![C64::new(q.pow(nf + 1.0), 0.0)];
    den.extend(pairs.iter().map(|z| z * q.pow(nf)));
    den.push(e4);
    let finite = nonzero(
        qpoch(e4 * q.pow(nf - 1.0), q, n),
        "(abcd q^{n-1}; q)_n in d_n^2",
    )?;
    let ratio = qpoch_inf_ratio(&num, &den, q, tail_tol)?;
    Ok(ratio * 4f64.powi(-(n as i32)) / finite)
}
