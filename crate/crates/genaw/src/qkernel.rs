//! q-Pochhammer symbols and terminating basic hypergeometric series.

use std::ops::{Add, Div, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::xprec::{self, XComplex};

pub type C64 = Complex64;

/// Largest truncation index accepted for an infinite product.
const MAX_PRODUCT_TERMS: usize = 1_000_000;
/// Tolerance for recognising a numerator parameter as `q^{-n}`.
const TERMINATION_TOL: f64 = 1e-14;
/// A series denominator factor below this modulus counts as vanished.
const DENOMINATOR_GUARD: f64 = 1e-300;

/// The base `q`, restricted to the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(QBase(q))
        } else {
            Err(Error::InvalidBase(q))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn sqrt(self) -> f64 {
        self.0.sqrt()
    }

    /// `q^e` for real `e`.
    pub fn pow(self, e: f64) -> f64 {
        self.0.powf(e)
    }

    /// `q^{1/2} - q^{-1/2}`, the recurring lattice scale (negative for q < 1).
    pub fn h(self) -> f64 {
        let r = self.sqrt();
        r - 1.0 / r
    }
}

/// Scalar types the series kernels can run in: complex doubles and [`XComplex`].
pub trait QField:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    /// Embeds a double-precision constant in the representation of `self`.
    fn lift(&self, z: C64) -> Self;
    /// Nearest double-precision value.
    fn approx(&self) -> C64;
}

impl QField for C64 {
    fn lift(&self, z: C64) -> Self {
        z
    }
    fn approx(&self) -> C64 {
        *self
    }
}

/// `(z; q)_k` in any [`QField`].
pub fn qpoch_in<T: QField>(z: &T, q: &T, k: usize) -> T {
    let one = z.lift(C64::new(1.0, 0.0));
    let mut acc = one.clone();
    let mut zq = z.clone();
    for _ in 0..k {
        acc = acc * (one.clone() - zq.clone());
        zq = zq * q.clone();
    }
    acc
}

/// `(z; q)_k = prod_{i<k} (1 - z q^i)`.
pub fn qpoch(z: C64, q: QBase, k: usize) -> C64 {
    qpoch_in(&z, &C64::new(q.get(), 0.0), k)
}

/// `(z_1, ..., z_m; q)_k`.
pub fn qpoch_multi(zs: &[C64], q: QBase, k: usize) -> C64 {
    zs.iter().map(|&z| qpoch(z, q, k)).product()
}

pub(crate) fn truncation_index(scale: f64, q: QBase, tail_tol: f64) -> Result<usize> {
    if !(tail_tol > 0.0) {
        return Err(Error::NonConvergent(format!("tail tolerance {tail_tol} must be positive")));
    }
    if scale == 0.0 {
        return Ok(0);
    }
    // Smallest K with scale * q^K / (1 - q) < tail_tol.
    let target = tail_tol * (1.0 - q.get()) / scale;
    if target >= 1.0 {
        return Ok(0);
    }
    let k = (target.ln() / q.get().ln()).floor() + 1.0;
    if !k.is_finite() || k > MAX_PRODUCT_TERMS as f64 {
        return Err(Error::NonConvergent(format!(
            "tail bound needs more than {MAX_PRODUCT_TERMS} factors"
        )));
    }
    Ok(k as usize)
}

/// `(z; q)_inf` truncated where the tail bound `|z| q^K / (1 - q)` drops below `tail_tol`.
pub fn qpoch_inf(z: C64, q: QBase, tail_tol: f64) -> Result<C64> {
    let k = truncation_index(z.norm(), q, tail_tol)?;
    Ok(qpoch(z, q, k))
}

/// `prod (num_i; q)_inf / prod (den_j; q)_inf` with one truncation index for all factors.
///
/// The index is chosen from the combined tail bound, so tails of matching
/// numerator and denominator bases cancel instead of accumulating separately.
pub fn qpoch_inf_ratio(num: &[C64], den: &[C64], q: QBase, tail_tol: f64) -> Result<C64> {
    let scale: f64 = num.iter().chain(den).map(|z| z.norm()).sum();
    let k = truncation_index(scale, q, tail_tol)?;
    let mut acc = C64::new(1.0, 0.0);
    let mut qi = 1.0;
    for i in 0..k {
        for z in num {
            acc *= 1.0 - z * qi;
        }
        for w in den {
            let f = 1.0 - w * qi;
            if f.norm() < DENOMINATOR_GUARD {
                return Err(Error::DenominatorVanished { k: i });
            }
            acc /= f;
        }
        qi *= q.get();
    }
    Ok(acc)
}

/// Symmetric q-number `[n]_q = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`.
pub fn qbracket(n: i64, q: QBase) -> f64 {
    qbracket_real(n as f64, q)
}

/// `[t]_q` for real `t`.
pub fn qbracket_real(t: f64, q: QBase) -> f64 {
    let half = q.pow(t / 2.0);
    (half - 1.0 / half) / q.h()
}

/// A basic hypergeometric series `r+1 phi r` with the `(q; q)_k` factor in the denominator.
#[derive(Debug, Clone)]
pub struct SeriesSpec<T> {
    pub numerator: Vec<T>,
    pub denominator: Vec<T>,
    pub argument: T,
    pub max_terms: usize,
}

/// Result of summing a terminating series.
#[derive(Debug, Clone)]
pub struct SeriesSum<T> {
    pub value: T,
    /// Largest modulus among the summands, for cancellation estimates.
    pub max_term: f64,
    /// Index `n` of the last summand.
    pub last_index: usize,
}

/// Index `n` of the first numerator parameter equal to `q^{-n}`, if any.
pub fn termination_index(numerator: &[C64], q: f64, max_terms: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for p in numerator {
        let mut qm = 1.0f64;
        for m in 0..max_terms {
            if (p - qm).norm() <= TERMINATION_TOL * qm.max(1.0) {
                best = Some(best.map_or(m, |b| b.min(m)));
                break;
            }
            qm /= q;
            if !qm.is_finite() {
                break;
            }
        }
    }
    best
}

/// Sums a terminating series term by term with a running ratio.
pub fn sum_terminating<T: QField>(spec: &SeriesSpec<T>, q: &T) -> Result<SeriesSum<T>> {
    let approx: Vec<C64> = spec.numerator.iter().map(QField::approx).collect();
    let n = termination_index(&approx, q.approx().re, spec.max_terms)
        .ok_or(Error::NotTerminating { max_terms: spec.max_terms })?;
    let one = q.lift(C64::new(1.0, 0.0));
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut max_term: f64 = 1.0;
    let mut qk = one.clone();
    for k in 0..n {
        let mut num = spec.argument.clone();
        for p in &spec.numerator {
            num = num * (one.clone() - p.clone() * qk.clone());
        }
        let mut den = one.clone() - qk.clone() * q.clone();
        for c in &spec.denominator {
            den = den * (one.clone() - c.clone() * qk.clone());
        }
        if !(den.approx().norm() >= DENOMINATOR_GUARD) {
            return Err(Error::DenominatorVanished { k });
        }
        term = term * num / den;
        max_term = max_term.max(term.approx().norm());
        sum = sum + term.clone();
        qk = qk * q.clone();
    }
    Ok(SeriesSum { value: sum, max_term, last_index: n })
}

/// Terminating series at double-precision inputs.
///
/// The inputs are treated as exact and the sum is carried out at a working
/// precision wide enough to absorb its cancellation, so the result is accurate
/// to about double precision relative to the value itself.
pub fn phi_terminating(spec: &SeriesSpec<C64>, q: QBase) -> Result<C64> {
    xprec::adaptive(|bits| {
        let lift = |z: &C64| XComplex::from_c64(*z, bits);
        let xspec = SeriesSpec {
            numerator: spec.numerator.iter().map(lift).collect(),
            denominator: spec.denominator.iter().map(lift).collect(),
            argument: lift(&spec.argument),
            max_terms: spec.max_terms,
        };
        let s = sum_terminating(&xspec, &XComplex::from_f64(q.get(), bits))?;
        let loss = xprec::cancellation_bits(s.max_term, s.value.to_c64());
        Ok((s.value, loss))
    })
}

/// Double-precision summation without widening; exposed for conditioning diagnostics.
pub fn phi_terminating_double(spec: &SeriesSpec<C64>, q: QBase) -> Result<C64> {
    Ok(sum_terminating(spec, &C64::new(q.get(), 0.0))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn qbase_rejects_out_of_range() {
        for bad in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(QBase::new(bad).is_err());
        }
        assert!(QBase::new(0.5).is_ok());
    }

    #[test]
    fn qpoch_examples() {
        let q = QBase::new(0.5).unwrap();
        assert_eq!(qpoch(C64::new(0.7, 0.2), q, 0), c(1.0));
        assert_eq!(qpoch(c(0.5), q, 1), c(0.5));
        let expect = (1.0 - 0.3) * (1.0 - 0.15) * (1.0 - 0.075);
        assert!((qpoch(c(0.3), q, 3) - expect).norm() < 1e-15);
    }

    #[test]
    fn qpoch_multi_examples() {
        let q = QBase::new(0.5).unwrap();
        let z = C64::new(0.2, -0.1);
        assert_eq!(qpoch_multi(&[z], q, 4), qpoch(z, q, 4));
        assert_eq!(qpoch_multi(&[z, c(0.4)], q, 0), c(1.0));
        let expect = qpoch(c(0.2), q, 2) * qpoch(c(0.4), q, 2);
        assert!((qpoch_multi(&[c(0.2), c(0.4)], q, 2) - expect).norm() < 1e-15);
    }

    #[test]
    fn qpoch_inf_examples() {
        let q = QBase::new(0.5).unwrap();
        assert_eq!(qpoch_inf(c(0.0), q, 1e-15).unwrap(), c(1.0));
        let v = qpoch_inf(c(0.5), q, 1e-15).unwrap();
        assert!((v - qpoch(c(0.5), q, 60)).norm() < 1e-14);
        let q9 = QBase::new(0.9).unwrap();
        let v = qpoch_inf(c(0.9), q9, 1e-15).unwrap();
        assert!(v.re > 0.0);
        let k = truncation_index(0.9, q9, 1e-15).unwrap();
        assert!((v - qpoch(c(0.9), q9, 2 * k)).norm() < 1e-14 * v.norm());
    }

    #[test]
    fn qpoch_inf_rejects_bad_tolerance() {
        let q = QBase::new(0.5).unwrap();
        assert!(matches!(qpoch_inf(c(0.3), q, 0.0), Err(Error::NonConvergent(_))));
        let qq = QBase::new(1.0 - 1e-12).unwrap();
        assert!(matches!(qpoch_inf(c(0.3), qq, 1e-15), Err(Error::NonConvergent(_))));
    }

    #[test]
    fn qpoch_inf_ratio_of_shifted_bases_is_finite_product() {
        // (z; q)_inf / (z q^3; q)_inf = (z; q)_3
        let q = QBase::new(0.6).unwrap();
        let z = C64::new(0.3, 0.2);
        let r = qpoch_inf_ratio(&[z], &[z * 0.6f64.powi(3)], q, 1e-17).unwrap();
        assert!((r - qpoch(z, q, 3)).norm() < 1e-15);
    }

    #[test]
    fn qbracket_examples() {
        let q = QBase::new(0.25).unwrap();
        assert_eq!(qbracket(0, q), 0.0);
        assert!((qbracket(1, q) - 1.0).abs() < 1e-15);
        assert!((qbracket(2, q) - 2.5).abs() < 1e-15);
    }

    fn series(num: Vec<C64>, den: Vec<C64>) -> SeriesSpec<C64> {
        SeriesSpec { numerator: num, denominator: den, argument: c(0.5), max_terms: 64 }
    }

    #[test]
    fn phi_trivial_when_q_to_zero_parameter_present() {
        let q = QBase::new(0.5).unwrap();
        let s = series(vec![c(1.0), c(0.3)], vec![c(0.2)]);
        assert_eq!(phi_terminating(&s, q).unwrap(), c(1.0));
    }

    #[test]
    fn phi_two_term_expansion() {
        let qv = 0.5;
        let q = QBase::new(qv).unwrap();
        let (a, b, cc, d) = (C64::new(0.3, 0.4), C64::new(0.3, -0.4), c(0.2), c(-0.5));
        let qs = C64::new(0.6, 0.8);
        let e4 = a * b * cc * d;
        let spec = SeriesSpec {
            numerator: vec![c(1.0 / qv), e4, a * qs, a / qs],
            denominator: vec![a * b, a * cc, a * d],
            argument: c(qv),
            max_terms: 64,
        };
        let expect = 1.0
            + (1.0 - 1.0 / qv) * (1.0 - e4) * (1.0 - a * qs) * (1.0 - a / qs) * qv
                / ((1.0 - a * b) * (1.0 - a * cc) * (1.0 - a * d) * (1.0 - qv));
        let v = phi_terminating(&spec, q).unwrap();
        assert!((v - expect).norm() < 1e-15 * expect.norm());
    }

    #[test]
    fn phi_requires_termination() {
        let q = QBase::new(0.5).unwrap();
        let s = series(vec![c(0.3)], vec![c(0.2)]);
        assert!(matches!(phi_terminating(&s, q), Err(Error::NotTerminating { .. })));
    }

    #[test]
    fn phi_reports_vanishing_denominator() {
        let q = QBase::new(0.5).unwrap();
        // (2; q)_2 contains the factor 1 - 2 q = 0.
        let s = series(vec![c(8.0), c(0.3)], vec![c(2.0)]);
        assert!(matches!(phi_terminating(&s, q), Err(Error::DenominatorVanished { k: 1 })));
    }

    #[test]
    fn q_chu_vandermonde_sum() {
        // 2phi1(q^-n, b; c; q, q) = (c/b; q)_n / (c; q)_n * b^n
        let qv = 0.5;
        let q = QBase::new(qv).unwrap();
        let (b, cc) = (C64::new(0.3, 0.1), c(0.7));
        for n in 0..=20usize {
            let spec = SeriesSpec {
                numerator: vec![c(qv.powi(-(n as i32))), b],
                denominator: vec![cc],
                argument: c(qv),
                max_terms: 64,
            };
            let expect = qpoch(cc / b, q, n) / qpoch(cc, q, n) * b.powi(n as i32);
            let v = phi_terminating(&spec, q).unwrap();
            assert!((v - expect).norm() <= 1e-13 * expect.norm(), "n={n}: {v} vs {expect}");
        }
    }
}
