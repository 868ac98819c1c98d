//! Three-term recurrence of the modified family.

use num_complex::Complex64;

use super::GenFamily;
use crate::error::{Error, Result};

type C64 = Complex64;

impl GenFamily {
    /// `Delta_n = (A P~_n(-1) P_n(-1) + B P~_n(1) P_n(1)) / d_n^2`, so that `d~_n^2 = d_n^2 (1 + Delta_n)`.
    pub fn delta(&self, n: usize) -> Result<C64> {
        let bd = self.boundary(n)?;
        let (pm, pp) = self.ctx().p_at_pm1(n);
        let m = self.masses();
        Ok((m.mass_neg() * bd.p_neg * pm + m.mass_pos() * bd.p_pos * pp) / self.ctx().norm_sq(n))
    }

    /// `(beta~_n, gamma~_n)` of `x P~_n = P~_{n+1} + beta~_n P~_n + gamma~_n P~_{n-1}`, for `n <= n_max`.
    pub fn gen_ttrr_coeffs(&self, n: usize) -> Result<(C64, C64)> {
        if n + 1 > self.limit() {
            return Err(Error::DegreeOutOfRange { n, limit: self.limit() - 1 });
        }
        let ctx = self.ctx();
        let m = self.masses();
        let now = self.boundary(n)?;
        let next = self.boundary(n + 1)?;
        let (pm, pp) = ctx.p_at_pm1(n);
        let dn = ctx.norm_sq(n);
        let (prev_m, prev_p) = if n == 0 {
            (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
        } else {
            let (qm, qp) = ctx.p_at_pm1(n - 1);
            let d = ctx.norm_sq(n - 1);
            (now.p_neg * qm / d, now.p_pos * qp / d)
        };
        let beta = ctx.beta(n)
            - m.mass_neg() * (prev_m - next.p_neg * pm / dn)
            - m.mass_pos() * (prev_p - next.p_pos * pp / dn);
        if n == 0 {
            return Ok((beta, C64::new(0.0, 0.0)));
        }
        let gamma = ctx.gamma(n) * (1.0 + self.delta(n)?) / (1.0 + self.delta(n - 1)?);
        Ok((beta, gamma))
    }

    /// `P~_0(x), ..., P~_n(x)` from the modified recurrence.
    pub fn eval_all_ttrr(&self, n: usize, x: C64) -> Result<Vec<C64>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(C64::new(1.0, 0.0));
        for k in 0..n {
            let (b, g) = self.gen_ttrr_coeffs(k)?;
            let prev = if k == 0 { C64::new(0.0, 0.0) } else { out[k - 1] };
            out.push((x - b) * out[k] - g * prev);
        }
        Ok(out)
    }

    /// Residual of the modified recurrence at degree `n`, relative to its largest term.
    pub fn ttrr_residual(&self, n: usize, x: C64) -> Result<f64> {
        let (b, g) = self.gen_ttrr_coeffs(n)?;
        let terms = [
            x * self.eval(n, x)?,
            -self.eval(n + 1, x)?,
            -b * self.eval(n, x)?,
            -g * self.eval_signed(n as i64 - 1, x)?,
        ];
        Ok(relative_residual(&terms))
    }
}

/// `|sum t| / max |t|`, zero when every term vanishes.
pub(crate) fn relative_residual(terms: &[C64]) -> f64 {
    let s: C64 = terms.iter().sum();
    let m = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        0.0
    } else {
        s.norm() / m
    }
}
