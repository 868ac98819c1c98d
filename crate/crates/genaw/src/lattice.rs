//! The q-quadratic lattice `x(s) = c1 q^s + c2 q^{-s} + c3` and its differences.
//!
//! Points are keyed by the value `q^s`, so `s`, `theta` (with `q^s = e^{i theta}`)
//! and `x` all enter through the same constructor. Only the Askey-Wilson case
//! `c1 = c2 = 1/2`, `c3 = 0` is used by the polynomial families; the general form
//! serves the q-Racah lattice.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qkernel::QBase;

type C64 = Complex64;

/// Coefficients of `x(s) = c1 q^s + c2 q^{-s} + c3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl Lattice {
    /// `x(s) = (q^s + q^{-s}) / 2`.
    pub const ASKEY_WILSON: Lattice = Lattice { c1: 0.5, c2: 0.5, c3: 0.0 };

    /// The q-Racah lattice `mu(t) = c1 (q^t + q^{-t-1}) + c3` written in the variable
    /// `q^s = q^{t + 1/2}`, with `c1 = q^{1/2} / (q^{1/2} - q^{-1/2})^2` and
    /// `c3 = -q^{-1/2} (1 + q) / (q^{1/2} - q^{-1/2})^2`.
    pub fn q_racah(q: QBase) -> Lattice {
        let h2 = q.h() * q.h();
        let c1 = q.sqrt() / h2;
        let c3 = -(1.0 + q.get()) / (q.sqrt() * h2);
        // c1 (q^t + q^{-t-1}) = c1 q^{-1/2} (q^s + q^{-s})
        Lattice { c1: c1 / q.sqrt(), c2: c1 / q.sqrt(), c3 }
    }

    pub fn x_of(&self, qs: C64) -> C64 {
        self.c1 * qs + self.c2 / qs + self.c3
    }

    /// Builds the point with value `q^s = qs`.
    pub fn point(&self, qs: C64, q: QBase) -> Result<LatticePoint> {
        if qs == C64::new(0.0, 0.0) || !qs.is_finite() {
            return Err(Error::ZeroArgument);
        }
        let (qv, r) = (q.get(), q.sqrt());
        let inv = 1.0 / qs;
        Ok(LatticePoint {
            qs,
            x: self.x_of(qs),
            dx_fwd: self.c1 * qs * (qv - 1.0) + self.c2 * inv * (1.0 / qv - 1.0),
            dx_bwd: self.c1 * qs * (1.0 - 1.0 / qv) + self.c2 * inv * (1.0 - qv),
            dx_half: self.c1 * qs * (r - 1.0 / r) + self.c2 * inv * (1.0 / r - r),
            lattice: *self,
        })
    }
}

/// A lattice point with its value and the three differences used by the formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    /// `q^s`.
    pub qs: C64,
    /// `x(s)`.
    pub x: C64,
    /// `Delta x(s) = x(s+1) - x(s)`.
    pub dx_fwd: C64,
    /// `nabla x(s) = x(s) - x(s-1)`.
    pub dx_bwd: C64,
    /// `Delta x(s - 1/2) = x(s + 1/2) - x(s - 1/2)`.
    pub dx_half: C64,
    pub lattice: Lattice,
}

impl LatticePoint {
    /// `x(s + m/2)` for an integer number `m` of half steps.
    pub fn x_half_steps(&self, m: i32, q: QBase) -> C64 {
        self.lattice.x_of(self.qs * q.pow(m as f64 / 2.0))
    }
}

/// Which square root `q^s = x +- i sqrt(1 - x^2)` to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    /// `theta` in `[0, pi]`.
    #[default]
    Upper,
    Lower,
}

/// Askey-Wilson lattice point with the given `q^s`.
pub fn point_from_qs(qs: C64, q: QBase) -> Result<LatticePoint> {
    Lattice::ASKEY_WILSON.point(qs, q)
}

/// Askey-Wilson lattice point at `q^s = e^{i theta}`.
pub fn point_from_theta(theta: f64, q: QBase) -> Result<LatticePoint> {
    point_from_qs(C64::from_polar(1.0, theta), q)
}

/// Askey-Wilson lattice point over a real `x` in `[-1, 1]`.
pub fn point_from_x(x: f64, q: QBase, branch: Branch) -> Result<LatticePoint> {
    if !x.is_finite() || x.abs() > 1.0 + 1e-12 {
        return Err(Error::OutOfInterval(x));
    }
    let xc = x.clamp(-1.0, 1.0);
    let y = (1.0 - xc * xc).sqrt();
    let qs = match branch {
        Branch::Upper => C64::new(xc, y),
        Branch::Lower => C64::new(xc, -y),
    };
    let mut p = point_from_qs(qs, q)?;
    // Keep the requested abscissa exactly; the difference data follow q^s.
    p.x = C64::new(x, 0.0);
    Ok(p)
}

/// Askey-Wilson lattice point over any real `x`: on the unit circle for `|x| <= 1`,
/// on the real axis with `|q^s| >= 1` otherwise.
pub fn point_from_real_x(x: f64, q: QBase) -> Result<LatticePoint> {
    if x.abs() <= 1.0 {
        return point_from_x(x, q, Branch::Upper);
    }
    if !x.is_finite() {
        return Err(Error::OutOfInterval(x));
    }
    let qs = x + x.signum() * (x * x - 1.0).sqrt();
    let mut p = point_from_qs(C64::new(qs, 0.0), q)?;
    p.x = C64::new(x, 0.0);
    Ok(p)
}

/// The point at `q^s q^k`.
pub fn shift(p: &LatticePoint, k: i32, q: QBase) -> LatticePoint {
    if k == 0 {
        return *p;
    }
    p.lattice
        .point(p.qs * q.get().powi(k), q)
        .expect("shifting a nonzero q^s by a power of q stays nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QBase {
        QBase::new(0.5).unwrap()
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn examples_from_qs() {
        let c = |re, im| C64::new(re, im);
        assert!(close(point_from_qs(c(1.0, 0.0), q()).unwrap().x, c(1.0, 0.0), 1e-15));
        assert!(close(point_from_qs(c(-1.0, 0.0), q()).unwrap().x, c(-1.0, 0.0), 1e-15));
        assert!(close(point_from_qs(c(0.0, 1.0), q()).unwrap().x, c(0.0, 0.0), 1e-15));
        assert_eq!(point_from_qs(c(0.0, 0.0), q()), Err(Error::ZeroArgument));
    }

    #[test]
    fn examples_from_x() {
        let p = point_from_x(1.0, q(), Branch::Upper).unwrap();
        assert!(close(p.qs, C64::new(1.0, 0.0), 1e-15));
        let p = point_from_x(0.0, q(), Branch::Upper).unwrap();
        assert!(close(p.qs, C64::new(0.0, 1.0), 1e-15));
        let p = point_from_x(0.5, q(), Branch::Upper).unwrap();
        assert!(close(p.qs, C64::new(0.5, 3f64.sqrt() / 2.0), 1e-15));
        assert!(matches!(point_from_x(1.1, q(), Branch::Upper), Err(Error::OutOfInterval(_))));
    }

    #[test]
    fn shift_examples() {
        let p = point_from_qs(C64::new(0.3, 0.7), q()).unwrap();
        assert_eq!(shift(&p, 0, q()), p);
        let back = shift(&shift(&p, 1, q()), -1, q());
        assert!(close(back.qs, p.qs, 1e-14) && close(back.x, p.x, 1e-14));
        let one = point_from_qs(C64::new(1.0, 0.0), q()).unwrap();
        assert!(close(shift(&one, 1, q()).x, C64::new((0.5 + 2.0) / 2.0, 0.0), 1e-15));
    }

    #[test]
    fn differences_match_recomputation() {
        let p = point_from_qs(C64::new(0.8, -0.3), q()).unwrap();
        let l = Lattice::ASKEY_WILSON;
        assert!(close(p.dx_fwd, l.x_of(p.qs * 0.5) - p.x, 1e-14));
        assert!(close(p.dx_bwd, p.x - l.x_of(p.qs / 0.5), 1e-14));
        let r = 0.5f64.sqrt();
        assert!(close(p.dx_half, l.x_of(p.qs * r) - l.x_of(p.qs / r), 1e-14));
    }

    #[test]
    fn racah_lattice_matches_bracket_product() {
        // mu(t) = [t]_q [t+1]_q
        let qb = QBase::new(0.6).unwrap();
        let l = Lattice::q_racah(qb);
        for t in [0.0, 1.0, 2.5, 3.0] {
            let qs = C64::new(qb.pow(t + 0.5), 0.0);
            let expect = crate::qkernel::qbracket_real(t, qb) * crate::qkernel::qbracket_real(t + 1.0, qb);
            assert!((l.x_of(qs).re - expect).abs() < 1e-13 * (1.0 + expect.abs()));
        }
    }
}
