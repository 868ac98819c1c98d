//! Reproducing kernels `K_n(x, y) = sum_{k<=n} P_k(x) P_k(y) / d_k^2` of the
//! classical family, in four equivalent forms, and the coefficients expressing
//! `K_{n-1}(x(s), +-1)` through `P_{n-1}(s)` and its forward difference.

use num_complex::Complex64;

use crate::askey_wilson::{diff_coeffs, phi_big, sigma, FamilyContext};
use crate::error::{Error, Result};
use crate::lattice::{shift, LatticePoint};
use crate::qkernel::{qpoch, qpoch_inf_ratio};

type C64 = Complex64;

/// Below this separation the quotient forms refuse to evaluate.
pub const CONFLUENT_GUARD: f64 = 1e-8;
/// Tail tolerance for the infinite-product prefactors of the anchored forms.
pub const KAPPA_TAIL_TOL: f64 = 1e-17;

/// Which expression produced a kernel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelForm {
    Sum,
    ChristoffelDarboux,
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub n: usize,
    pub x1: C64,
    pub x2: C64,
    pub value: C64,
    pub form_used: KernelForm,
}

/// One of the two mass points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// `x = -1`, `q^s = -1`.
    Neg,
    /// `x = +1`, `q^s = 1`.
    Pos,
}

impl Anchor {
    pub fn x(self) -> f64 {
        match self {
            Anchor::Neg => -1.0,
            Anchor::Pos => 1.0,
        }
    }
}

fn separated(x: C64, x0: C64) -> Result<C64> {
    let d = x - x0;
    if d.norm() <= CONFLUENT_GUARD {
        Err(Error::ConfluentPoints(d.norm()))
    } else {
        Ok(d)
    }
}

/// `K_n(x1, x2)` as the defining partial sum.
pub fn kernel_sum(n: usize, x1: C64, x2: C64, ctx: &FamilyContext) -> Result<C64> {
    let p1 = ctx.eval_all(n, x1)?;
    let p2 = ctx.eval_all(n, x2)?;
    Ok((0..=n).map(|k| p1[k] * p2[k] / ctx.norm_sq(k)).sum())
}

/// `K_n(x1, x2)` from the Christoffel-Darboux quotient.
pub fn kernel_cd(n: usize, x1: C64, x2: C64, ctx: &FamilyContext) -> Result<C64> {
    let d = separated(x1, x2)?;
    let p1 = ctx.eval_all(n + 1, x1)?;
    let p2 = ctx.eval_all(n + 1, x2)?;
    Ok((p1[n + 1] * p2[n] - p2[n + 1] * p1[n]) / (d * ctx.norm_sq(n)))
}

/// `Delta P_n(s) / Delta x(s)`, with the cached closed-form value at the mass points.
fn forward_quotient(n: usize, p: &LatticePoint, ctx: &FamilyContext) -> Result<C64> {
    let q = ctx.params().q();
    let dp = match anchor_of(p) {
        Some(Anchor::Neg) => ctx.dp_at_pm1(n).0,
        Some(Anchor::Pos) => ctx.dp_at_pm1(n).1,
        None => ctx.eval(n, shift(p, 1, q).x)? - ctx.eval(n, p.x)?,
    };
    Ok(dp / p.dx_fwd)
}

fn anchor_of(p: &LatticePoint) -> Option<Anchor> {
    if p.qs == C64::new(-1.0, 0.0) {
        Some(Anchor::Neg)
    } else if p.qs == C64::new(1.0, 0.0) {
        Some(Anchor::Pos)
    } else {
        None
    }
}

fn p_at(n: usize, p: &LatticePoint, ctx: &FamilyContext) -> Result<C64> {
    match anchor_of(p) {
        Some(Anchor::Neg) => Ok(ctx.p_at_pm1(n).0),
        Some(Anchor::Pos) => Ok(ctx.p_at_pm1(n).1),
        None => ctx.eval(n, p.x),
    }
}

/// `K_n(x(s), x(s_0))` in the form built on the forward differentiation formula.
pub fn kernel_forward(n: usize, p: &LatticePoint, p0: &LatticePoint, ctx: &FamilyContext) -> Result<C64> {
    let params = ctx.params();
    let d = separated(p.x, p0.x)?;
    let (ahat, _, bhat) = diff_coeffs(n, p, params)?;
    let (_, _, bhat0) = diff_coeffs(n, p0, params)?;
    let scale = ahat * ctx.norm_sq(n);
    let pn = p_at(n, p, ctx)?;
    let pn0 = p_at(n, p0, ctx)?;
    let inner = (bhat0 - bhat) / d * pn + phi_big(p, params) / d * forward_quotient(n, p, ctx)?;
    Ok(pn0 / scale * inner - phi_big(p0, params) / (scale * d) * forward_quotient(n, p0, ctx)? * pn)
}

/// `K_n(x(s), x(s_0))` in the form built on the backward differentiation formula.
pub fn kernel_backward(n: usize, p: &LatticePoint, p0: &LatticePoint, ctx: &FamilyContext) -> Result<C64> {
    let params = ctx.params();
    let q = params.q();
    let d = separated(p.x, p0.x)?;
    let (abar, bbar, _) = diff_coeffs(n, p, params)?;
    let (_, bbar0, _) = diff_coeffs(n, p0, params)?;
    let scale = abar * ctx.norm_sq(n);
    let pn = p_at(n, p, ctx)?;
    let pn0 = p_at(n, p0, ctx)?;
    let back = |pt: &LatticePoint, v: C64| -> Result<C64> {
        Ok((v - ctx.eval(n, shift(pt, -1, q).x)?) / pt.dx_bwd)
    };
    let inner = (bbar0 - bbar) / d * pn + sigma(p, params) / d * back(p, pn)?;
    Ok(pn0 / scale * inner - sigma(p0, params) / (scale * d) * back(p0, pn0)? * pn)
}

/// Evaluates `K_n(x(s1), x(s2))` in the requested form.
pub fn kernel(
    n: usize,
    p1: &LatticePoint,
    p2: &LatticePoint,
    form: KernelForm,
    ctx: &FamilyContext,
) -> Result<KernelEval> {
    let value = match form {
        KernelForm::Sum => kernel_sum(n, p1.x, p2.x, ctx)?,
        KernelForm::ChristoffelDarboux => kernel_cd(n, p1.x, p2.x, ctx)?,
        KernelForm::Forward => kernel_forward(n, p1, p2, ctx)?,
        KernelForm::Backward => kernel_backward(n, p1, p2, ctx)?,
    };
    Ok(KernelEval { n, x1: p1.x, x2: p2.x, value, form_used: form })
}

/// The two infinite-product prefactors of `varkappa` and `varkappa_bar`.
fn kappa_prefactors(n: usize, ctx: &FamilyContext) -> Result<(C64, C64)> {
    let params = ctx.params();
    let q = params.q();
    let nf = n as f64;
    let e4 = params.e4();
    let pairs = params.pair_products();
    let mut num = vec![e4, C64::new(q.pow(nf), 0.0)];
    num.extend(pairs.iter().map(|z| z * q.pow(nf - 1.0)));
    let mut den = vec![e4 * q.pow(2.0 * nf - 3.0), C64::new(q.get(), 0.0)];
    den.extend(pairs);
    let ratio = qpoch(e4 * q.pow(nf - 2.0), q, n - 1) * qpoch_inf_ratio(&num, &den, q, KAPPA_TAIL_TOL)?;
    let h = q.h();
    let pk = ratio / (2f64.powf(-2.0 * nf + 2.0) * q.get() * h);
    let pkb = ratio / (2f64.powf(-2.0 * nf + 4.0) * q.pow(-nf + 2.0) * h);
    Ok((pk, pkb))
}

/// `(varkappa_anchor(s, n), varkappa_bar_anchor(s, n))` with
/// `K_{n-1}(x(s), anchor) = varkappa P_{n-1}(s) + varkappa_bar Delta P_{n-1}(s) / Delta x(s)`.
pub fn varkappa(n: usize, p: &LatticePoint, anchor: Anchor, ctx: &FamilyContext) -> Result<(C64, C64)> {
    if n == 0 {
        return Err(Error::DegreeOutOfRange { n, limit: 0 });
    }
    ctx.check_degree(n)?;
    let params = ctx.params();
    let q = params.q();
    let nf = n as f64;
    let e4 = params.e4();
    let d = separated(p.x, C64::new(anchor.x(), 0.0))?;
    let (pk, pkb) = kappa_prefactors(n, ctx)?;
    let (pm, dpm) = match anchor {
        Anchor::Neg => (ctx.p_at_pm1(n - 1).0, ctx.dp_at_pm1(n - 1).0),
        Anchor::Pos => (ctx.p_at_pm1(n - 1).1, ctx.dp_at_pm1(n - 1).1),
    };
    let e = 1.0 - e4 * q.pow(nf - 2.0);
    let cosh_like = (q.pow((nf - 1.0) / 2.0) + q.pow(-(nf - 1.0) / 2.0)) / 2.0;
    let xs = p.x_half_steps(n as i32 - 1, q);
    let lead = q.pow((nf + 1.0) / 2.0) * q.h() * e;
    let mid = q.get() * (1.0 - q.pow(nf - 1.0)) * e * p.dx_half;
    let tail = q.pow(nf - 0.5) / 2.0;
    let kappa = match anchor {
        Anchor::Neg => {
            let prod: C64 = params.abcd().iter().map(|z| 1.0 + z).product();
            pk * ((lead * (cosh_like + xs) + mid) / d * pm - tail * prod / d * dpm)
        }
        Anchor::Pos => {
            let prod: C64 = params.abcd().iter().map(|z| 1.0 - z).product();
            pk * ((-lead * (cosh_like - xs) + mid) / d * pm + tail * prod / d * dpm)
        }
    };
    let kappa_bar = pkb * phi_big(p, params) / d * pm;
    Ok((kappa, kappa_bar))
}

/// `K_{n-1}(x(s), anchor)` reassembled from [`varkappa`].
pub fn kernel_anchored(n: usize, p: &LatticePoint, anchor: Anchor, ctx: &FamilyContext) -> Result<C64> {
    let (k, kb) = varkappa(n, p, anchor, ctx)?;
    Ok(k * ctx.eval(n - 1, p.x)? + kb * forward_quotient(n - 1, p, ctx)?)
}
