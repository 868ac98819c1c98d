//! Basic-series evaluation of the monic Askey-Wilson polynomials.
//!
//! Every series parameter is assembled in extended precision from the double
//! atoms `a, b, c, d, q, q^s`; see [`crate::xprec`] for why.

use num_complex::Complex64;

use super::params::AWParams;
use super::table::nonzero;
use crate::error::Result;
use crate::lattice::LatticePoint;
use crate::qkernel::{qpoch_in, sum_terminating, SeriesSpec, SeriesSum};
use crate::xprec::{self, XComplex};

type C64 = Complex64;

/// Parameters of one family lifted to a common working precision.
pub(crate) struct XAtoms {
    pub a: XComplex,
    pub b: XComplex,
    pub c: XComplex,
    pub d: XComplex,
    pub q: XComplex,
    pub bits: usize,
}

impl XAtoms {
    pub fn new(params: &AWParams, bits: usize) -> Self {
        let [a, b, c, d] = params.abcd().map(|z| XComplex::from_c64(z, bits));
        XAtoms { a, b, c, d, q: XComplex::from_f64(params.q().get(), bits), bits }
    }

    pub fn lift(&self, z: C64) -> XComplex {
        XComplex::from_c64(z, self.bits)
    }

    pub fn one(&self) -> XComplex {
        XComplex::one(self.bits)
    }

    pub fn qpow(&self, e: i64) -> XComplex {
        self.q.powi(e)
    }

    pub fn ab(&self) -> XComplex {
        self.a.clone() * self.b.clone()
    }
    pub fn ac(&self) -> XComplex {
        self.a.clone() * self.c.clone()
    }
    pub fn ad(&self) -> XComplex {
        self.a.clone() * self.d.clone()
    }
    pub fn e4(&self) -> XComplex {
        self.ab() * self.c.clone() * self.d.clone()
    }

    /// `(ab, ac, ad; q)_n / ((2a)^n (abcd q^{n-1}; q)_n)`.
    pub fn prefactor(&self, n: usize) -> XComplex {
        let ni = n as i64;
        let num = qpoch_in(&self.ab(), &self.q, n)
            * qpoch_in(&self.ac(), &self.q, n)
            * qpoch_in(&self.ad(), &self.q, n);
        let two_a = self.lift(C64::new(2.0, 0.0)) * self.a.clone();
        num / (two_a.powi(ni) * qpoch_in(&(self.e4() * self.qpow(ni - 1)), &self.q, n))
    }

    /// `4phi3(q^{-n}, abcd q^{n-1}, u, v; ab, ac, ad; q, q)`.
    pub fn aw_series(&self, n: usize, u: XComplex, v: XComplex) -> Result<SeriesSum<XComplex>> {
        let ni = n as i64;
        let spec = SeriesSpec {
            numerator: vec![self.qpow(-ni), self.e4() * self.qpow(ni - 1), u, v],
            denominator: vec![self.ab(), self.ac(), self.ad()],
            argument: self.q.clone(),
            max_terms: n + 1,
        };
        sum_terminating(&spec, &self.q)
    }
}

fn check_prefactor(n: usize, params: &AWParams) -> Result<()> {
    let q = params.q();
    nonzero(params.a(), "(2a)^n in the series prefactor")?;
    for i in 0..n {
        nonzero(
            1.0 - params.e4() * q.pow((n - 1 + i) as f64),
            "(abcd q^{n-1}; q)_n in the series prefactor",
        )?;
    }
    Ok(())
}

/// `P_n(x(s))` from the terminating `4phi3` at `q^s = qs`.
pub fn aw_eval_series_qs(n: usize, qs: C64, params: &AWParams) -> Result<C64> {
    let params = params.series_order()?;
    check_prefactor(n, &params)?;
    xprec::adaptive(|bits| {
        let at = XAtoms::new(&params, bits);
        let qsx = at.lift(qs);
        let s = at.aw_series(n, at.a.clone() * qsx.clone(), at.a.clone() / qsx)?;
        let loss = xprec::cancellation_bits(s.max_term, s.value.to_c64());
        Ok((at.prefactor(n) * s.value, loss))
    })
}

/// `P_n(x(s))` from the terminating `4phi3`.
pub fn aw_eval_series(n: usize, p: &LatticePoint, params: &AWParams) -> Result<C64> {
    aw_eval_series_qs(n, p.qs, params)
}

/// `(P_n(-1), P_n(+1))` from the `4phi3` with repeated argument `-a` or `a`.
pub fn aw_at_pm1(n: usize, params: &AWParams) -> Result<(C64, C64)> {
    Ok((
        aw_eval_series_qs(n, C64::new(-1.0, 0.0), params)?,
        aw_eval_series_qs(n, C64::new(1.0, 0.0), params)?,
    ))
}

fn delta_at(n: usize, eps: f64, params: &AWParams) -> Result<C64> {
    if n == 0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let params = params.series_order()?;
    check_prefactor(n, &params)?;
    let [a, b, c, d] = params.abcd();
    for (z, what) in [(a * b, "1 - ab"), (a * c, "1 - ac"), (a * d, "1 - ad")] {
        nonzero(1.0 - z, what)?;
    }
    let ni = n as i64;
    xprec::adaptive(|bits| {
        let at = XAtoms::new(&params, bits);
        let one = at.one();
        let alpha = at.lift(C64::new(eps, 0.0)) * at.a.clone();
        let spec = SeriesSpec {
            numerator: vec![
                at.qpow(1 - ni),
                at.e4() * at.qpow(ni),
                alpha.clone() * at.q.clone(),
                alpha.clone(),
            ],
            denominator: vec![
                at.ab() * at.q.clone(),
                at.ac() * at.q.clone(),
                at.ad() * at.q.clone(),
            ],
            argument: at.q.clone(),
            max_terms: n,
        };
        let s = sum_terminating(&spec, &at.q)?;
        let loss = xprec::cancellation_bits(s.max_term, s.value.to_c64());
        let front = alpha
            * at.q.clone()
            * (one.clone() - at.q.recip())
            * (one.clone() - at.qpow(-ni))
            * (one.clone() - at.e4() * at.qpow(ni - 1))
            / ((one.clone() - at.ab()) * (one.clone() - at.ac()) * (one - at.ad()));
        Ok((front * at.prefactor(n) * s.value, loss))
    })
}

/// `(Delta P_n(-1), Delta P_n(+1))`: `P_n(x(s_0 + 1)) - P_n(x(s_0))` at `q^{s_0} = -1` and `q^{s_0} = 1`.
pub fn aw_delta_at_pm1(n: usize, params: &AWParams) -> Result<(C64, C64)> {
    Ok((delta_at(n, -1.0, params)?, delta_at(n, 1.0, params)?))
}
