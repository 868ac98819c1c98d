//! Representations of `P~_n` through the classical family, and the
//! difference equation they imply.

use num_complex::Complex64;

use super::{GenFamily, Route, RouteValue};
use crate::askey_wilson::{sode_coeffs, theta_xi};
use crate::cd_kernels::{varkappa, Anchor, CONFLUENT_GUARD};
use crate::error::{Error, Result};
use crate::lattice::{shift, LatticePoint};

type C64 = Complex64;

/// Inside this distance of `x = +-1` the differentiation-formula representation
/// hands over to the kernel representation.
pub const DIFFREP_EXCLUSION: f64 = 1e-6;

/// `phi(s) = x(s)^2 - 1`.
pub(crate) fn phi(x: C64) -> C64 {
    x * x - 1.0
}

/// Coefficients of the shifted representations at `s`:
/// `u P~_n(s+1) = c P_n(s) + d P_n(s+1)` and `v P~_n(s-1) = e P_n(s) + f P_n(s+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftRepCoeffs {
    pub u: C64,
    pub c: C64,
    pub d: C64,
    pub v: C64,
    pub e: C64,
    pub f: C64,
}

impl GenFamily {
    fn mass_terms(&self, n: usize) -> Result<(C64, C64)> {
        let bd = self.boundary(n)?;
        Ok((self.masses.mass_neg() * bd.p_neg, self.masses.mass_pos() * bd.p_pos))
    }

    /// `(A(s, n), B(s, n))` with `phi(s) P~_n(s) = A(s, n) P_n(s) + B(s, n) P_{n-1}(s)`.
    pub fn abs_coeffs(&self, n: usize, x: C64) -> Result<(C64, C64)> {
        if n == 0 {
            return Ok((phi(x), C64::new(0.0, 0.0)));
        }
        let (wm, wp) = self.mass_terms(n)?;
        let ctx = self.ctx();
        let d = ctx.norm_sq(n - 1);
        let (m1, p1) = ctx.p_at_pm1(n - 1);
        let (m0, p0) = ctx.p_at_pm1(n);
        let a = phi(x) - (wm * m1 * (x - 1.0) + wp * p1 * (x + 1.0)) / d;
        let b = (wm * m0 * (x - 1.0) + wp * p0 * (x + 1.0)) / d;
        Ok((a, b))
    }

    /// `(a(s; n), b(s; n))` with `phi(s) P~_n(s) = a(s; n) P_n(s) + b(s; n) P_n(s+1)`.
    pub fn rep_coeffs(&self, n: usize, p: &LatticePoint) -> Result<(C64, C64)> {
        let (a, b) = self.abs_coeffs(n, p.x)?;
        if n == 0 {
            return Ok((a, b));
        }
        let (theta, xi) = theta_xi(n, p, self.ctx().params())?;
        Ok((a + b * theta, b * xi))
    }

    /// `(A_bar, B_bar)` with `P~_n = P_n + A_bar P_{n-1} + B_bar Delta P_{n-1} / Delta x`.
    pub fn diffrep_coeffs(&self, n: usize, p: &LatticePoint) -> Result<(C64, C64)> {
        if n == 0 {
            return Ok((C64::new(0.0, 0.0), C64::new(0.0, 0.0)));
        }
        let (wm, wp) = self.mass_terms(n)?;
        let (km, kbm) = varkappa(n, p, Anchor::Neg, self.ctx())?;
        let (kp, kbp) = varkappa(n, p, Anchor::Pos, self.ctx())?;
        Ok((-(wm * km + wp * kp), -(wm * kbm + wp * kbp)))
    }

    /// The coefficients of [`ShiftRepCoeffs`] at `s`.
    pub fn shift_rep_coeffs(&self, n: usize, p: &LatticePoint) -> Result<ShiftRepCoeffs> {
        let params = self.ctx().params();
        let q = params.q();
        let lam = self.ctx().lambda(n);
        let up = shift(p, 1, q);
        let dn = shift(p, -1, q);
        let (a1, b1, c1) = sode_coeffs(&up, params)?;
        let (a0, b0, c0) = sode_coeffs(p, params)?;
        let (ra1, rb1) = self.rep_coeffs(n, &up)?;
        let (ram, rbm) = self.rep_coeffs(n, &dn)?;
        Ok(ShiftRepCoeffs {
            u: a1 * phi(up.x),
            c: -c1 * rb1,
            d: a1 * ra1 - rb1 * (lam + b1),
            v: c0 * phi(dn.x),
            e: c0 * rbm - ram * (lam + b0),
            f: -a0 * ram,
        })
    }

    /// Coefficients of `P~_n(s+1)`, `P~_n(s)`, `P~_n(s-1)` in the second-order
    /// difference equation satisfied by the modified family.
    pub fn sode_tilde_coeffs(&self, n: usize, p: &LatticePoint) -> Result<(C64, C64, C64)> {
        let (a, b) = self.rep_coeffs(n, p)?;
        let k = self.shift_rep_coeffs(n, p)?;
        Ok((
            k.u * (b * k.e - a * k.f),
            phi(p.x) * (k.c * k.f - k.d * k.e),
            k.v * (a * k.d - b * k.c),
        ))
    }

    /// The three-by-three determinant whose vanishing expresses the difference
    /// equation, with the largest of its cofactor-expansion terms.
    pub fn elimination_determinant(&self, n: usize, p: &LatticePoint) -> Result<(C64, f64)> {
        let q = self.ctx().params().q();
        let (a, b) = self.rep_coeffs(n, p)?;
        let k = self.shift_rep_coeffs(n, p)?;
        let r1 = phi(p.x) * self.eval(n, p.x)?;
        let r2 = k.u * self.eval(n, shift(p, 1, q).x)?;
        let r3 = k.v * self.eval(n, shift(p, -1, q).x)?;
        let det = r1 * k.c * k.f + a * k.d * r3 + b * r2 * k.e
            - b * k.c * r3
            - a * r2 * k.f
            - r1 * k.d * k.e;
        let scale = [r1 * (k.c * k.f - k.d * k.e), r2 * (a * k.f - b * k.e), r3 * (a * k.d - b * k.c)]
            .iter()
            .map(|t| t.norm())
            .fold(0.0, f64::max);
        Ok((det, scale))
    }

    /// `P~_n(x(s))` through the differentiation-formula coefficients; inside
    /// [`DIFFREP_EXCLUSION`] of a mass point the kernel representation is used.
    pub fn diffrep(&self, n: usize, p: &LatticePoint) -> Result<RouteValue> {
        let near = |x0: f64| (p.x - x0).norm() < DIFFREP_EXCLUSION;
        if n == 0 || near(-1.0) || near(1.0) {
            return self.kernelrep(n, p.x);
        }
        let q = self.ctx().params().q();
        let (abar, bbar) = self.diffrep_coeffs(n, p)?;
        let pn = self.ctx().eval(n, p.x)?;
        let pm = self.ctx().eval(n - 1, p.x)?;
        let dq = (self.ctx().eval(n - 1, shift(p, 1, q).x)? - pm) / p.dx_fwd;
        let (t1, t2) = (abar * pm, bbar * dq);
        Ok(RouteValue { value: pn + t1 + t2, scale: pn.norm() + t1.norm() + t2.norm() })
    }

    fn divide_phi(&self, x: C64, value: C64, scale: f64) -> Result<RouteValue> {
        let ph = phi(x);
        if ph.norm() <= CONFLUENT_GUARD {
            return Err(Error::ConfluentPoints(ph.norm()));
        }
        Ok(RouteValue { value: value / ph, scale: scale / ph.norm() })
    }

    /// `P~_n(x)` from `phi P~_n = A(s, n) P_n + B(s, n) P_{n-1}`.
    pub fn reprac(&self, n: usize, x: C64) -> Result<RouteValue> {
        let (a, b) = self.abs_coeffs(n, x)?;
        let t1 = a * self.ctx().eval(n, x)?;
        let t2 = if n == 0 { C64::new(0.0, 0.0) } else { b * self.ctx().eval(n - 1, x)? };
        self.divide_phi(x, t1 + t2, t1.norm() + t2.norm())
    }

    /// `P~_n(x(s))` from `phi P~_n = a(s; n) P_n(s) + b(s; n) P_n(s+1)`.
    pub fn reprac2(&self, n: usize, p: &LatticePoint) -> Result<RouteValue> {
        let q = self.ctx().params().q();
        let (a, b) = self.rep_coeffs(n, p)?;
        let t1 = a * self.ctx().eval(n, p.x)?;
        let t2 = b * self.ctx().eval(n, shift(p, 1, q).x)?;
        self.divide_phi(p.x, t1 + t2, t1.norm() + t2.norm())
    }

    /// `P~_n(x(s))` through the requested representation.
    pub fn eval_route(&self, route: Route, n: usize, p: &LatticePoint) -> Result<RouteValue> {
        match route {
            Route::KernelRep => self.kernelrep(n, p.x),
            Route::DiffRep => self.diffrep(n, p),
            Route::RepRac => self.reprac(n, p.x),
            Route::RepRac2 => self.reprac2(n, p),
            Route::Basic => {
                let value = self.eval_basic(n, p)?;
                self.divide_phi(p.x, value, value.norm())
            }
        }
    }
}
