use num_complex::Complex64;

use crate::error::{Error, ParamViolation, Result};
use crate::qkernel::QBase;

type C64 = Complex64;

const NAMES: [&str; 4] = ["a", "b", "c", "d"];
const PAIRS: [(&str, usize, usize); 6] =
    [("ab", 0, 1), ("ac", 0, 2), ("ad", 0, 3), ("bc", 1, 2), ("bd", 1, 3), ("cd", 2, 3)];
const CONJ_TOL: f64 = 1e-12;
const POLE_TOL: f64 = 1e-12;

/// The Askey-Wilson parameters `(a, b, c, d; q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AWParams {
    abcd: [C64; 4],
    q: QBase,
    admissible: bool,
}

impl AWParams {
    /// Validated parameters of a positive orthogonality measure on [-1, 1].
    ///
    /// Checks, in order: finiteness, that no pairwise product equals `q^{-m}`,
    /// closure of `{a, b, c, d}` under conjugation, and `max |.| < 1`.
    pub fn new(a: C64, b: C64, c: C64, d: C64, q: f64) -> Result<Self> {
        let p = Self::unrestricted(a, b, c, d, q)?;
        p.check_pairwise()?;
        p.check_conjugate_closed()?;
        for (i, z) in p.abcd.iter().enumerate() {
            if z.norm() >= 1.0 {
                return Err(Error::InvalidParams(ParamViolation::Magnitude {
                    name: NAMES[i],
                    modulus: z.norm(),
                }));
            }
        }
        Ok(AWParams { admissible: true, ..p })
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64, q: f64) -> Result<Self> {
        let r = |v| C64::new(v, 0.0);
        Self::new(r(a), r(b), r(c), r(d), q)
    }

    /// Parameters for purely algebraic use (for instance the q-Racah images),
    /// where only finiteness and `0 < q < 1` are enforced.
    pub fn unrestricted(a: C64, b: C64, c: C64, d: C64, q: f64) -> Result<Self> {
        let q = QBase::new(q)?;
        let abcd = [a, b, c, d];
        for (i, z) in abcd.iter().enumerate() {
            if !z.is_finite() {
                return Err(Error::InvalidParams(ParamViolation::NonFinite { name: NAMES[i] }));
            }
        }
        Ok(AWParams { abcd, q, admissible: false })
    }

    fn check_pairwise(&self) -> Result<()> {
        let lnq = self.q.get().ln();
        for (name, i, j) in PAIRS {
            let p = self.abcd[i] * self.abcd[j];
            let m = (p.norm().ln() / -lnq).round();
            if (0.0..1e6).contains(&m) {
                let target = self.q.pow(-m);
                if (p - target).norm() <= POLE_TOL * target {
                    return Err(Error::InvalidParams(ParamViolation::PairwiseProductPole {
                        pair: name,
                        m: m as u32,
                    }));
                }
            }
        }
        Ok(())
    }

    fn check_conjugate_closed(&self) -> Result<()> {
        let mut used = [false; 4];
        for i in 0..4 {
            let z = self.abcd[i];
            if z.im.abs() <= CONJ_TOL * (1.0 + z.norm()) || used[i] {
                continue;
            }
            let partner = (0..4).find(|&j| {
                j != i && !used[j] && (self.abcd[j] - z.conj()).norm() <= CONJ_TOL * (1.0 + z.norm())
            });
            match partner {
                Some(j) => {
                    used[i] = true;
                    used[j] = true;
                }
                None => {
                    return Err(Error::InvalidParams(ParamViolation::NotConjugateClosed {
                        name: NAMES[i],
                    }))
                }
            }
        }
        Ok(())
    }

    pub fn a(&self) -> C64 {
        self.abcd[0]
    }
    pub fn b(&self) -> C64 {
        self.abcd[1]
    }
    pub fn c(&self) -> C64 {
        self.abcd[2]
    }
    pub fn d(&self) -> C64 {
        self.abcd[3]
    }
    pub fn abcd(&self) -> [C64; 4] {
        self.abcd
    }
    pub fn q(&self) -> QBase {
        self.q
    }

    /// True when built by [`AWParams::new`], so the measure is positive on [-1, 1].
    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    /// True when all four parameters are real.
    pub fn is_real(&self) -> bool {
        self.abcd.iter().all(|z| z.im == 0.0)
    }

    /// `a + b + c + d`.
    pub fn e1(&self) -> C64 {
        self.abcd.iter().sum()
    }

    /// `abc + abd + acd + bcd`.
    pub fn e3(&self) -> C64 {
        let [a, b, c, d] = self.abcd;
        a * b * c + a * b * d + a * c * d + b * c * d
    }

    /// `abcd`.
    pub fn e4(&self) -> C64 {
        self.abcd.iter().product()
    }

    /// The six products `ab, ac, ad, bc, bd, cd`.
    pub fn pair_products(&self) -> [C64; 6] {
        PAIRS.map(|(_, i, j)| self.abcd[i] * self.abcd[j])
    }

    /// The same family with the parameters listed in another order.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        AWParams { abcd: perm.map(|i| self.abcd[i]), ..*self }
    }

    /// Order used by the basic-series formulas, which divide by `a`: a zero
    /// leading parameter is swapped with the first nonzero one.
    pub(crate) fn series_order(&self) -> Result<Self> {
        if self.abcd[0] != C64::new(0.0, 0.0) {
            return Ok(*self);
        }
        match (1..4).find(|&i| self.abcd[i] != C64::new(0.0, 0.0)) {
            Some(i) => {
                let mut perm = [0, 1, 2, 3];
                perm.swap(0, i);
                Ok(self.permuted(perm))
            }
            None => Err(Error::SingularDenominator(
                "basic-series prefactor (2a)^n with a = b = c = d = 0".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn accepts_conjugate_pair() {
        let p = AWParams::new(c(0.3, 0.4), c(0.3, -0.4), c(0.2, 0.0), c(-0.5, 0.0), 0.5).unwrap();
        assert!(p.is_admissible());
        assert!(p.e4().im.abs() < 1e-16);
    }

    #[test]
    fn rejects_magnitude() {
        let e = AWParams::real(0.3, 1.2, 0.1, 0.1, 0.5).unwrap_err();
        assert!(matches!(e, Error::InvalidParams(ParamViolation::Magnitude { name: "b", .. })));
        assert!(e.to_string().contains("max(|a|,|b|,|c|,|d|) < 1"));
    }

    #[test]
    fn rejects_unpaired_complex() {
        let e = AWParams::new(c(0.3, 0.4), c(0.3, 0.4), c(0.2, 0.0), c(-0.5, 0.0), 0.5).unwrap_err();
        assert!(matches!(e, Error::InvalidParams(ParamViolation::NotConjugateClosed { .. })));
    }

    #[test]
    fn rejects_pairwise_pole_by_name() {
        // ab = 2 = q^-1 at q = 1/2.
        let e = AWParams::real(1.0, 2.0, 0.1, 0.2, 0.5).unwrap_err();
        assert_eq!(
            e,
            Error::InvalidParams(ParamViolation::PairwiseProductPole { pair: "ab", m: 1 })
        );
        assert!(e.to_string().contains("pairwise product ab"));
    }

    #[test]
    fn rejects_bad_q_and_nan() {
        assert!(matches!(AWParams::real(0.1, 0.2, 0.3, 0.4, 1.0), Err(Error::InvalidBase(_))));
        assert!(matches!(
            AWParams::real(f64::NAN, 0.2, 0.3, 0.4, 0.5),
            Err(Error::InvalidParams(ParamViolation::NonFinite { name: "a" }))
        ));
    }

    #[test]
    fn series_order_moves_zero_away_from_front() {
        let p = AWParams::real(0.0, 0.2, 0.3, 0.4, 0.5).unwrap();
        assert_eq!(p.series_order().unwrap().a(), c(0.2, 0.0));
    }
}
