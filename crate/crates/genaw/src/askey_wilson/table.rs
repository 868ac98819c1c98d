//! Closed-form data of the monic Askey-Wilson family on `x(s) = (q^s + q^{-s}) / 2`.
//!
//! With `h = q^{1/2} - q^{-1/2}` and `k = -q^{1/2} h^2` the difference-equation data are
//! `sigma(s) = k q^{-2s} prod (q^s - a)` and `Phi(s) = k q^{2s} prod (q^{-s} - a)`; this scale
//! makes `Phi = sigma + tau Delta x(s - 1/2)` and the eigenvalue `lambda_n` consistent.

use num_complex::Complex64;

use super::params::AWParams;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::qkernel::QField;

type C64 = Complex64;

/// Relative size below which a denominator counts as zero.
const SINGULAR_TOL: f64 = 1e-14;

pub(crate) fn nonzero(v: C64, what: &str) -> Result<C64> {
    if v.norm() <= SINGULAR_TOL || !v.is_finite() {
        Err(Error::SingularDenominator(what.to_string()))
    } else {
        Ok(v)
    }
}

fn lattice_nonzero(v: C64, what: &str) -> Result<C64> {
    if v.norm() <= SINGULAR_TOL {
        Err(Error::DegenerateLatticePoint(format!("{what} vanishes")))
    } else {
        Ok(v)
    }
}

fn qpow(p: &AWParams, e: f64) -> f64 {
    p.q().pow(e)
}

/// The constant `k = -q^{1/2} (q^{1/2} - q^{-1/2})^2` scaling `sigma` and `Phi`.
pub fn sigma_scale(params: &AWParams) -> f64 {
    let q = params.q();
    -q.sqrt() * q.h() * q.h()
}

/// `sigma(s)`.
pub fn sigma(p: &LatticePoint, params: &AWParams) -> C64 {
    let prod: C64 = params.abcd().iter().map(|&z| p.qs - z).product();
    sigma_scale(params) * prod / (p.qs * p.qs)
}

/// `Phi(s) = sigma(s) + tau(s) Delta x(s - 1/2)`.
pub fn phi_big(p: &LatticePoint, params: &AWParams) -> C64 {
    let inv = 1.0 / p.qs;
    let prod: C64 = params.abcd().iter().map(|&z| inv - z).product();
    sigma_scale(params) * prod * p.qs * p.qs
}

/// `tau(s) = -2 q^{1/2} h [2 (abcd - 1) x(s) + (e1 - e3)]`.
pub fn tau(p: &LatticePoint, params: &AWParams) -> C64 {
    let q = params.q();
    -2.0 * q.sqrt() * q.h() * (2.0 * (params.e4() - 1.0) * p.x + params.e1() - params.e3())
}

/// `tau_n(s) = (Phi(s + n) - sigma(s)) / Delta x(s + n/2 - 1/2)`, which is linear in `x(s + n/2)`.
pub fn tau_n(n: usize, p: &LatticePoint, params: &AWParams) -> C64 {
    let q = params.q();
    let nf = n as f64;
    let xn = p.x_half_steps(n as i32, q);
    -2.0 * q.sqrt()
        * q.h()
        * (2.0 * (params.e4() * qpow(params, nf) - qpow(params, -nf)) * xn
            + params.e1() * qpow(params, -nf / 2.0)
            - params.e3() * qpow(params, nf / 2.0))
}

/// `lambda_n = 4 q^{-n+1} (1 - q^n) (1 - abcd q^{n-1})`.
pub fn lambda_n(n: usize, params: &AWParams) -> C64 {
    let nf = n as f64;
    4.0 * qpow(params, -nf + 1.0)
        * (1.0 - qpow(params, nf))
        * (1.0 - params.e4() * qpow(params, nf - 1.0))
}

/// Coefficients `(A_s, B_s, C_s)` of the second-order difference equation.
pub fn sode_coeffs(p: &LatticePoint, params: &AWParams) -> Result<(C64, C64, C64)> {
    let dx = lattice_nonzero(p.dx_fwd, "Delta x(s)")?;
    let nx = lattice_nonzero(p.dx_bwd, "nabla x(s)")?;
    let hx = lattice_nonzero(p.dx_half, "Delta x(s-1/2)")?;
    let sg = sigma(p, params);
    let a = (sg + tau(p, params) * hx) / (dx * hx);
    let c = sg / (nx * hx);
    Ok((a, -a - c, c))
}

/// `(beta_n, gamma_n)` in any scalar field, from the parameter atoms.
pub fn ttrr_coeffs_in<T: QField>(n: usize, a: &T, b: &T, c: &T, d: &T, q: &T) -> (T, T) {
    let one = q.lift(C64::new(1.0, 0.0));
    let half = q.lift(C64::new(0.5, 0.0));
    let qp = |e: i64| -> T {
        let mut r = one.clone();
        let base = if e < 0 { one.clone() / q.clone() } else { q.clone() };
        for _ in 0..e.unsigned_abs() {
            r = r * base.clone();
        }
        r
    };
    let m = |x: &T, y: &T| x.clone() * y.clone();
    let f = |x: T| one.clone() - x;
    let (ab, ac, ad, bc, bd, cd) = (m(a, b), m(a, c), m(a, d), m(b, c), m(b, d), m(c, d));
    let e4 = m(&ab, &cd);
    let ni = n as i64;
    let qn = qp(ni);
    let qn1 = qp(ni - 1);
    let mut t = f(m(&ab, &qn)) * f(m(&ac, &qn)) * f(m(&ad, &qn)) * f(m(&e4, &qn1))
        / (a.clone() * f(m(&e4, &qp(2 * ni - 1))) * f(m(&e4, &qp(2 * ni))));
    if n > 0 {
        t = t + a.clone() * f(qn.clone()) * f(m(&bc, &qn1)) * f(m(&bd, &qn1)) * f(m(&cd, &qn1))
            / (f(m(&e4, &qp(2 * ni - 2))) * f(m(&e4, &qp(2 * ni - 1))));
    }
    let beta = half.clone() * (a.clone() + one.clone() / a.clone() - t);
    if n == 0 {
        return (beta, q.lift(C64::new(0.0, 0.0)));
    }
    let quarter = q.lift(C64::new(0.25, 0.0));
    let num = f(qn)
        * f(m(&ab, &qn1))
        * f(m(&ac, &qn1))
        * f(m(&ad, &qn1))
        * f(m(&bc, &qn1))
        * f(m(&bd, &qn1))
        * f(m(&cd, &qn1))
        * f(m(&e4, &qp(ni - 2)));
    let d2 = f(m(&e4, &qp(2 * ni - 2)));
    let den = f(m(&e4, &qp(2 * ni - 3))) * d2.clone() * d2 * f(m(&e4, &qp(2 * ni - 1)));
    (beta, quarter * num / den)
}

/// `(beta_n, gamma_n)`; `gamma_0 = 0` by convention.
pub fn ttrr_coeffs(n: usize, params: &AWParams) -> Result<(C64, C64)> {
    let e4 = params.e4();
    let nf = n as f64;
    nonzero(params.a(), "beta_n divides by a")?;
    let lo = if n == 0 { 2.0 * nf - 1.0 } else { 2.0 * nf - 3.0 };
    let mut e = lo;
    while e <= 2.0 * nf {
        nonzero(1.0 - e4 * qpow(params, e), "1 - abcd q^{2n+j} in beta_n/gamma_n")?;
        e += 1.0;
    }
    let q = C64::new(params.q().get(), 0.0);
    let [a, b, c, d] = params.abcd();
    Ok(ttrr_coeffs_in(n, &a, &b, &c, &d, &q))
}

/// `alpha_bar_n = alpha_hat_n = 4 q^{-n+1} h (1 - abcd q^{2n-1})`.
pub fn alpha_hat(n: usize, params: &AWParams) -> C64 {
    let nf = n as f64;
    4.0 * qpow(params, -nf + 1.0)
        * params.q().h()
        * (1.0 - params.e4() * qpow(params, 2.0 * nf - 1.0))
}

/// `beta_bar_n(s) = -4 q^{-n/2+1} h (1 - abcd q^{n-1}) [x(s+n/2) - q^{n/2}(e1 - e3 q^n) / (2(1 - abcd q^{2n}))]`.
pub fn beta_bar(n: usize, p: &LatticePoint, params: &AWParams) -> Result<C64> {
    let q = params.q();
    let nf = n as f64;
    let den = nonzero(
        1.0 - params.e4() * qpow(params, 2.0 * nf),
        "1 - abcd q^{2n} in beta_bar_n",
    )?;
    let shift = qpow(params, nf / 2.0) * (params.e1() - params.e3() * qpow(params, nf)) / (2.0 * den);
    Ok(-4.0
        * qpow(params, -nf / 2.0 + 1.0)
        * q.h()
        * (1.0 - params.e4() * qpow(params, nf - 1.0))
        * (p.x_half_steps(n as i32, q) - shift))
}

/// Coefficients `(alpha_bar_n, beta_bar_n(s), beta_hat_n(s))` of the backward and
/// forward differentiation formulas; `beta_hat = beta_bar - lambda_n Delta x(s - 1/2)`.
pub fn diff_coeffs(n: usize, p: &LatticePoint, params: &AWParams) -> Result<(C64, C64, C64)> {
    let bb = beta_bar(n, p, params)?;
    Ok((alpha_hat(n, params), bb, bb - lambda_n(n, params) * p.dx_half))
}

/// `(Theta(s, n), Xi(s, n))` with `P_{n-1}(s) = Theta P_n(s) + Xi P_n(s+1)`.
pub fn theta_xi(n: usize, p: &LatticePoint, params: &AWParams) -> Result<(C64, C64)> {
    if n == 0 {
        return Err(Error::SingularDenominator("Theta/Xi need n >= 1".into()));
    }
    let q = params.q();
    let nf = n as f64;
    let e4 = params.e4();
    let [a, b, c, d] = params.abcd();
    let qn = qpow(params, nf);
    let qn1 = qpow(params, nf - 1.0);
    let mut den = C64::new(q.h() * (1.0 - qn), 0.0) * (1.0 - e4 * qpow(params, nf - 2.0));
    for z in params.pair_products() {
        den *= 1.0 - z * qn1;
    }
    let den = nonzero(den, "Theta/Xi prefactor denominator")?;
    let e = |j: f64| 1.0 - e4 * qpow(params, 2.0 * nf + j);
    let pref = qn1 * e(-3.0) * e(-2.0) * e(-2.0) / den;
    let dx = lattice_nonzero(p.dx_fwd, "Delta x(s)")?;
    let a = nonzero(a, "Theta divides by a")?;
    let phi_dx = phi_big(p, params) / dx;
    let bracket = 2.0 * p.x - a - 1.0 / a
        + (1.0 - e4 * qn1) * (1.0 - a * b * qn) * (1.0 - a * c * qn) * (1.0 - a * d * qn)
            / (a * nonzero(e(-1.0) * e(0.0), "1 - abcd q^{2n-1}, q^{2n}")?)
        + a * (1.0 - qn) * (1.0 - b * c * qn1) * (1.0 - b * d * qn1) * (1.0 - c * d * qn1)
            / nonzero(e(-2.0) * e(-1.0), "1 - abcd q^{2n-2}, q^{2n-1}")?;
    let (_, _, bhat) = diff_coeffs(n, p, params)?;
    let theta = pref
        * (phi_dx + 2.0 * qpow(params, -nf + 1.0) * q.h() * e(-1.0) * bracket + bhat);
    Ok((theta, -pref * phi_dx))
}
