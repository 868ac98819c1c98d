//! Extended-precision complex scalar used to sum terminating basic series.
//!
//! Terminating series with argument `q` and a `q^{-n}` numerator parameter have
//! terms of size up to `q^{-n(n-1)/2}` whose sum is O(1), so double precision
//! loses every digit well before `n = 20`. The series routes therefore build
//! their parameters from exactly representable double "atoms" (`a`, `q`, `q^s`,
//! ...) inside a binary floating point type of adjustable width and raise the
//! width until it covers the measured cancellation.

use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex64;

use crate::error::Result;
use crate::qkernel::QField;

type XReal = FBig<HalfEven, 2>;

/// Working width of the first attempt, in bits.
pub const START_BITS: usize = 128;
/// Width beyond which the driver stops widening and accepts the result.
pub const MAX_BITS: usize = 4096;
/// Bits kept beyond the 53 of a double after subtracting the measured cancellation.
const GUARD_BITS: f64 = 32.0;

fn lift_real(v: f64, bits: usize) -> XReal {
    // Non-finite inputs are rejected by parameter validation before they get here.
    XReal::try_from(v)
        .expect("non-finite value lifted into extended precision")
        .with_precision(bits)
        .value()
}

/// Complex number with real and imaginary parts held at a common binary precision.
#[derive(Clone, Debug)]
pub struct XComplex {
    re: XReal,
    im: XReal,
    bits: usize,
}

impl XComplex {
    /// Exact embedding of a double-precision complex number.
    pub fn from_c64(z: Complex64, bits: usize) -> Self {
        XComplex { re: lift_real(z.re, bits), im: lift_real(z.im, bits), bits }
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        Self::from_c64(Complex64::new(v, 0.0), bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_f64(1.0, bits)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Nearest double-precision value (overflows to infinity, underflows to zero).
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }

    pub fn recip(&self) -> Self {
        XComplex::one(self.bits) / self.clone()
    }

    /// Integer power, negative exponents allowed.
    pub fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = XComplex::one(self.bits);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Add for XComplex {
    type Output = XComplex;
    fn add(self, o: XComplex) -> XComplex {
        XComplex { re: self.re + o.re, im: self.im + o.im, bits: self.bits.max(o.bits) }
    }
}

impl Sub for XComplex {
    type Output = XComplex;
    fn sub(self, o: XComplex) -> XComplex {
        XComplex { re: self.re - o.re, im: self.im - o.im, bits: self.bits.max(o.bits) }
    }
}

impl Neg for XComplex {
    type Output = XComplex;
    fn neg(self) -> XComplex {
        XComplex { re: -self.re, im: -self.im, bits: self.bits }
    }
}

impl Mul for XComplex {
    type Output = XComplex;
    fn mul(self, o: XComplex) -> XComplex {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        XComplex { re, im, bits: self.bits.max(o.bits) }
    }
}

impl Div for XComplex {
    type Output = XComplex;
    fn div(self, o: XComplex) -> XComplex {
        let den = &o.re * &o.re + &o.im * &o.im;
        let re = (&self.re * &o.re + &self.im * &o.im) / &den;
        let im = (&self.im * &o.re - &self.re * &o.im) / &den;
        XComplex { re, im, bits: self.bits.max(o.bits) }
    }
}

impl QField for XComplex {
    fn lift(&self, z: Complex64) -> Self {
        XComplex::from_c64(z, self.bits)
    }
    fn approx(&self) -> Complex64 {
        self.to_c64()
    }
}

/// Bits of cancellation between the largest summand and the result.
pub fn cancellation_bits(max_term: f64, value: Complex64) -> f64 {
    let v = value.norm();
    if !(max_term > 0.0) {
        return 0.0;
    }
    if v == 0.0 || !v.is_finite() {
        return f64::INFINITY;
    }
    (max_term / v).log2().max(0.0)
}

/// Runs `eval` at increasing working precision until the precision covers the
/// cancellation it reports.
///
/// `eval(bits)` returns the value computed at `bits` bits together with the
/// number of bits lost to cancellation in that computation.
pub fn adaptive<F>(mut eval: F) -> Result<Complex64>
where
    F: FnMut(usize) -> Result<(XComplex, f64)>,
{
    let mut bits = START_BITS;
    loop {
        let (value, loss) = eval(bits)?;
        let need = loss + 53.0 + GUARD_BITS;
        if (bits as f64) >= need || bits >= MAX_BITS {
            return Ok(value.to_c64());
        }
        let wanted = if need.is_finite() { need.ceil() as usize + 64 } else { MAX_BITS };
        bits = (2 * bits).max(wanted).min(MAX_BITS);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_round_trips() {
        let z = Complex64::new(0.3, -0.4);
        assert_eq!(XComplex::from_c64(z, 200).to_c64(), z);
    }

    #[test]
    fn field_operations_match_double() {
        let a = Complex64::new(0.3, 0.4);
        let b = Complex64::new(-1.25, 0.5);
        let xa = XComplex::from_c64(a, 256);
        let xb = XComplex::from_c64(b, 256);
        for (x, z) in [
            (xa.clone() + xb.clone(), a + b),
            (xa.clone() - xb.clone(), a - b),
            (xa.clone() * xb.clone(), a * b),
            (xa.clone() / xb.clone(), a / b),
            (xa.powi(-3), a.powi(-3)),
        ] {
            assert!((x.to_c64() - z).norm() <= 1e-15 * z.norm());
        }
    }

    #[test]
    fn extended_precision_resolves_cancellation() {
        // (1 + 2^-80) - 1 is invisible in double precision.
        let one = XComplex::one(200);
        let tiny = XComplex::from_f64(2f64.powi(-80), 200);
        let v = (one.clone() + tiny) - one;
        assert_eq!(v.to_c64().re, 2f64.powi(-80));
    }

    #[test]
    fn adaptive_widens_until_covered() {
        let mut seen = Vec::new();
        let v = adaptive(|bits| {
            seen.push(bits);
            Ok((XComplex::one(bits), 300.0))
        })
        .unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
        assert!(*seen.last().unwrap() as f64 >= 300.0 + 53.0);
        assert_eq!(seen[0], START_BITS);
    }
}
