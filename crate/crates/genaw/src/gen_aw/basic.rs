//! `phi(s) P~_n(s)` as a single terminating `5phi4`.

use num_complex::Complex64;

use super::reps::phi;
use super::GenFamily;
use crate::askey_wilson::{nonzero, AWParams, XAtoms};
use crate::error::Result;
use crate::lattice::LatticePoint;
use crate::qkernel::{sum_terminating, SeriesSpec};
use crate::xprec::{self, XComplex};

type C64 = Complex64;

/// Which denominator `vartheta_n` carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaVariant {
    /// `(1 - abcd q^{2n-3})(1 - abcd q^{2n-2})`, the one that reproduces `P~_n`.
    Consistent,
    /// `(1 - abcd q^{2n-3})(1 - abcd q^{2n-4})`, kept only to measure how far it is off.
    Printed,
}

fn vartheta_with(n: usize, params: &AWParams, last: f64) -> Result<C64> {
    let q = params.q();
    let nf = n as f64;
    let e4 = params.e4();
    let qn1 = q.pow(nf - 1.0);
    let [a, b, c, d] = params.abcd();
    let num = (1.0 - a * b * qn1) * (1.0 - a * c * qn1) * (1.0 - a * d * qn1) * (1.0 - q.pow(-nf));
    let den = 2.0 * a * (1.0 - e4 * q.pow(2.0 * nf - 3.0)) * (1.0 - e4 * q.pow(last));
    Ok(num / nonzero(den, "vartheta_n denominator")?)
}

/// `vartheta_n = (1 - ab q^{n-1})(1 - ac q^{n-1})(1 - ad q^{n-1})(1 - q^{-n}) / (2a (1 - abcd q^{2n-3})(1 - abcd q^{2n-2}))`.
pub fn vartheta(n: usize, params: &AWParams) -> Result<C64> {
    vartheta_with(n, params, 2.0 * n as f64 - 2.0)
}

/// `vartheta_n` with `(1 - abcd q^{2n-4})` in place of `(1 - abcd q^{2n-2})`.
pub fn vartheta_printed(n: usize, params: &AWParams) -> Result<C64> {
    vartheta_with(n, params, 2.0 * n as f64 - 4.0)
}

impl GenFamily {
    /// `phi(s) P~_n(s)` from the `5phi4` representation.
    pub fn eval_basic(&self, n: usize, p: &LatticePoint) -> Result<C64> {
        self.eval_basic_variant(n, p, ThetaVariant::Consistent)
    }

    /// As [`GenFamily::eval_basic`], with a choice of `vartheta_n`.
    pub fn eval_basic_variant(&self, n: usize, p: &LatticePoint, variant: ThetaVariant) -> Result<C64> {
        if n == 0 {
            return Ok(phi(p.x));
        }
        let params = self.ctx().params().series_order()?;
        let q = params.q();
        let nf = n as f64;
        let ni = n as i64;
        let theta = match variant {
            ThetaVariant::Consistent => vartheta(n, &params)?,
            ThetaVariant::Printed => vartheta_printed(n, &params)?,
        };
        let (a_s, b_s) = self.abs_coeffs(n, p.x)?;
        let br = nonzero(
            a_s * params.e4() * q.pow(nf - 2.0) * theta + b_s * q.pow(-nf),
            "bracket of the 5phi4 prefactor",
        )?;
        let qk = nonzero((a_s * theta + b_s) / br, "q^kappa of the 5phi4")?;
        for i in 0..n - 1 {
            nonzero(1.0 - params.e4() * q.pow((n - 2 + i) as f64), "(abcd q^{n-2}; q)_{n-1}")?;
        }
        xprec::adaptive(|bits| {
            let at = XAtoms::new(&params, bits);
            let one = at.one();
            let qkx = at.lift(qk);
            let qsx = at.lift(p.qs);
            let spec = SeriesSpec {
                numerator: vec![
                    at.qpow(-ni),
                    at.e4() * at.qpow(ni - 2),
                    at.a.clone() * qsx.clone(),
                    at.a.clone() / qsx,
                    at.q.clone() / qkx.clone(),
                ],
                denominator: vec![at.ab(), at.ac(), at.ad(), qkx.recip()],
                argument: at.q.clone(),
                max_terms: n + 1,
            };
            let s = sum_terminating(&spec, &at.q)?;
            let loss = xprec::cancellation_bits(s.max_term, s.value.to_c64());
            let front: XComplex = at.prefactor(n - 1) * (one.clone() - qkx) * at.lift(br)
                / (one - at.qpow(-ni));
            Ok((-front * s.value, loss))
        })
    }
}
