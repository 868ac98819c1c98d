//! Reduction of the Askey-Wilson family to q-Racah polynomials.
//!
//! With `a = q^{a~+1/2}`, `b = q^{beta-a~+1/2}`, `c = q^{alpha+b~+1/2}`, `d = q^{-b~+1/2}`
//! and `q^s = q^{t+1/2}`, the rescaled polynomial `2^n / h^{2n} P_n(x(s))` equals
//! a terminating `4phi3` in `q^{a~-t}` and `q^{t+a~+1}`.

use num_complex::Complex64;

use crate::askey_wilson::{ttrr_coeffs_in, AWParams};
use crate::error::Result;
use crate::qkernel::{qpoch_in, sum_terminating, QBase, SeriesSpec};
use crate::xprec::{self, XComplex};

type C64 = Complex64;

/// Working precision of the recurrence side of the check.
const RECURRENCE_BITS: usize = 512;

/// Parameters `(alpha, beta, a~, b~)` of the q-Racah reduction together with `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RacahParams {
    pub alpha: f64,
    pub beta: f64,
    pub a_tilde: f64,
    pub b_tilde: f64,
    pub q: QBase,
}

/// Outcome of one comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RacahCheck {
    pub n: usize,
    pub t: f64,
    /// `2^n / h^{2n} P_n(x(s))` from the Askey-Wilson recurrence.
    pub lhs: C64,
    /// The q-Racah series side.
    pub rhs: C64,
    pub residual: f64,
}

/// Double atoms from which both sides are assembled.
struct Atoms {
    r: f64,
    qa: f64,
    qb: f64,
    qal: f64,
    qbe: f64,
    qt: f64,
}

impl RacahParams {
    pub fn new(alpha: f64, beta: f64, a_tilde: f64, b_tilde: f64, q: QBase) -> Self {
        RacahParams { alpha, beta, a_tilde, b_tilde, q }
    }

    fn atoms(&self, t: f64) -> Atoms {
        let q = self.q;
        Atoms {
            r: q.sqrt(),
            qa: q.pow(self.a_tilde),
            qb: q.pow(self.b_tilde),
            qal: q.pow(self.alpha),
            qbe: q.pow(self.beta),
            qt: q.pow(t),
        }
    }

    /// The Askey-Wilson parameters of the reduction. Only finiteness is checked:
    /// the reduction routinely places parameters outside the unit disk.
    pub fn aw_params(&self) -> Result<AWParams> {
        let at = self.atoms(0.0);
        let r = at.r;
        let c = |v: f64| C64::new(v, 0.0);
        AWParams::unrestricted(
            c(at.qa * r),
            c(at.qbe / at.qa * r),
            c(at.qal * at.qb * r),
            c(r / at.qb),
            self.q.get(),
        )
    }
}

fn x(v: f64, bits: usize) -> XComplex {
    XComplex::from_f64(v, bits)
}

/// Compares `2^n / h^{2n} P_n(x(s))` with its q-Racah series at `q^s = q^{t+1/2}`.
pub fn racah_identity_check(n: usize, t: f64, rp: &RacahParams) -> Result<RacahCheck> {
    rp.aw_params()?;
    let at = rp.atoms(t);
    let ni = n as i64;

    let lhs = {
        let bits = RECURRENCE_BITS;
        let r = x(at.r, bits);
        let q = r.clone() * r.clone();
        let qa = x(at.qa, bits);
        let qb = x(at.qb, bits);
        let a = qa.clone() * r.clone();
        let b = x(at.qbe, bits) / qa * r.clone();
        let c = x(at.qal, bits) * qb.clone() * r.clone();
        let d = r.clone() / qb;
        let qs = x(at.qt, bits) * r.clone();
        let half = x(0.5, bits);
        let xs = half * (qs.clone() + qs.recip());
        let mut prev = x(0.0, bits);
        let mut cur = x(1.0, bits);
        for k in 0..n {
            let (beta, gamma) = ttrr_coeffs_in(k, &a, &b, &c, &d, &q);
            let next = (xs.clone() - beta) * cur.clone() - gamma * prev;
            prev = cur;
            cur = next;
        }
        let h = r.clone() - r.recip();
        x(2.0, bits).powi(ni) * cur / h.powi(2 * ni)
    };

    let rhs = xprec::adaptive(|bits| {
        let r = x(at.r, bits);
        let q = r.clone() * r.clone();
        let qa = x(at.qa, bits);
        let qb = x(at.qb, bits);
        let qal = x(at.qal, bits);
        let qbe = x(at.qbe, bits);
        let qt = x(at.qt, bits);
        let d1 = qa.clone() / qb.clone() * q.clone();
        let d2 = qbe.clone() * q.clone();
        let d3 = qa.clone() * qb * qal.clone() * q.clone();
        let top = qal * qbe * q.powi(ni + 1);
        let spec = SeriesSpec {
            numerator: vec![
                q.powi(-ni),
                top.clone(),
                qa.clone() / qt.clone(),
                qt * qa.clone() * q.clone(),
            ],
            denominator: vec![d1.clone(), d2.clone(), d3.clone()],
            argument: q.clone(),
            max_terms: n + 1,
        };
        let s = sum_terminating(&spec, &q)?;
        let loss = xprec::cancellation_bits(s.max_term, s.value.to_c64());
        let h = r.clone() - r.recip();
        let front = (qa.powi(-ni) * r.powi(-ni))
            * qpoch_in(&d1, &q, n)
            * qpoch_in(&d2, &q, n)
            * qpoch_in(&d3, &q, n)
            / (h.powi(2 * ni) * qpoch_in(&top, &q, n));
        Ok((front * s.value, loss))
    })?;

    let lhs = lhs.to_c64();
    let scale = lhs.norm().max(rhs.norm());
    let residual = if scale == 0.0 { 0.0 } else { (lhs - rhs).norm() / scale };
    Ok(RacahCheck { n, t, lhs, rhs, residual })
}
