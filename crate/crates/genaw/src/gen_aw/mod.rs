//! The Askey-Wilson family modified by point masses `A` at `x = -1` and `B` at `x = +1`.
//!
//! `P~_n` is defined through the reproducing-kernel representation
//! `P~_n(x) = P_n(x) - A P~_n(-1) K_{n-1}(x, -1) - B P~_n(1) K_{n-1}(x, 1)`;
//! the other representations are evaluated independently and compared against it.

mod basic;
mod racah;
mod reps;
mod ttrr;

use std::sync::Arc;

use num_complex::Complex64;

use crate::askey_wilson::FamilyContext;
use crate::error::{Error, Result};

pub use basic::{vartheta, vartheta_printed, ThetaVariant};
pub use racah::{racah_identity_check, RacahParams};
pub use reps::{ShiftRepCoeffs, DIFFREP_EXCLUSION};

type C64 = Complex64;

/// Below this modulus the 2x2 determinant counts as singular.
const KAPPA_GUARD: f64 = 1e-13;

/// Point masses `A` (at `x = -1`) and `B` (at `x = +1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassConfig {
    mass_neg: f64,
    mass_pos: f64,
}

impl MassConfig {
    pub fn new(mass_neg: f64, mass_pos: f64) -> Result<Self> {
        for (name, v) in [("mass at -1", mass_neg), ("mass at +1", mass_pos)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidMasses(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(MassConfig { mass_neg, mass_pos })
    }

    /// Finite masses of either sign, for probing the non-positive regime.
    pub fn signed(mass_neg: f64, mass_pos: f64) -> Result<Self> {
        if !(mass_neg.is_finite() && mass_pos.is_finite()) {
            return Err(Error::InvalidMasses("masses must be finite".into()));
        }
        Ok(MassConfig { mass_neg, mass_pos })
    }

    pub fn none() -> Self {
        MassConfig { mass_neg: 0.0, mass_pos: 0.0 }
    }

    pub fn mass_neg(&self) -> f64 {
        self.mass_neg
    }

    pub fn mass_pos(&self) -> f64 {
        self.mass_pos
    }

    pub fn is_zero(&self) -> bool {
        self.mass_neg == 0.0 && self.mass_pos == 0.0
    }
}

/// Solution of the 2x2 boundary system at one degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenBoundary {
    pub n: usize,
    /// `P~_n(-1)`.
    pub p_neg: C64,
    /// `P~_n(+1)`.
    pub p_pos: C64,
    /// `kappa_{n-1}(-1, 1)`, the determinant of the system.
    pub kappa_det: C64,
    /// `d~_n^2 = d_n^2 + A P~_n(-1) P_n(-1) + B P~_n(1) P_n(1)`.
    pub norm_sq_mod: C64,
}

/// `K_{n-1}` at the mass points: `(K(-1,-1), K(-1,1), K(1,1))`.
fn boundary_kernels(n: usize, ctx: &FamilyContext) -> (C64, C64, C64) {
    let mut k = (C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for j in 0..n {
        let (m, p) = ctx.p_at_pm1(j);
        let d = ctx.norm_sq(j);
        k.0 += m * m / d;
        k.1 += m * p / d;
        k.2 += p * p / d;
    }
    k
}

/// Solves the boundary system for `(P~_n(-1), P~_n(1))` at degree `n`.
pub fn boundary_values(n: usize, ctx: &FamilyContext, masses: &MassConfig) -> Result<GenBoundary> {
    ctx.check_degree(n)?;
    let (pm, pp) = ctx.p_at_pm1(n);
    let (a, b) = (masses.mass_neg, masses.mass_pos);
    if n == 0 {
        return Ok(GenBoundary {
            n,
            p_neg: C64::new(1.0, 0.0),
            p_pos: C64::new(1.0, 0.0),
            kappa_det: C64::new(1.0, 0.0),
            norm_sq_mod: ctx.norm_sq(0) + a + b,
        });
    }
    let (kmm, kmp, kpp) = boundary_kernels(n, ctx);
    let kappa = (1.0 + a * kmm) * (1.0 + b * kpp) - a * b * kmp * kmp;
    if kappa.norm() < KAPPA_GUARD {
        return Err(Error::SingularKappa { n, value: kappa.norm() });
    }
    let p_neg = ((1.0 + b * kpp) * pm - b * kmp * pp) / kappa;
    let p_pos = ((1.0 + a * kmm) * pp - a * kmp * pm) / kappa;
    Ok(GenBoundary {
        n,
        p_neg,
        p_pos,
        kappa_det: kappa,
        norm_sq_mod: ctx.norm_sq(n) + a * p_neg * pm + b * p_pos * pp,
    })
}

/// The modified family: a classical context, the masses, and the boundary data
/// for every degree up to `n_max + 1`.
#[derive(Debug, Clone)]
pub struct GenFamily {
    ctx: Arc<FamilyContext>,
    masses: MassConfig,
    boundary: Vec<GenBoundary>,
}

/// A value of `P~_n(x)` from one representation and the size of the terms it summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteValue {
    pub value: C64,
    pub scale: f64,
}

/// The five independent representations of `P~_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Route {
    /// Reproducing-kernel sum.
    KernelRep,
    /// `P_n + A_bar P_{n-1} + B_bar Delta P_{n-1} / Delta x`.
    DiffRep,
    /// `phi P~_n = A(s,n) P_n + B(s,n) P_{n-1}`.
    RepRac,
    /// `phi P~_n = a(s;n) P_n(s) + b(s;n) P_n(s+1)`.
    RepRac2,
    /// Terminating `5phi4`.
    Basic,
}

impl Route {
    pub const ALL: [Route; 5] =
        [Route::KernelRep, Route::DiffRep, Route::RepRac, Route::RepRac2, Route::Basic];

    pub fn tag(self) -> &'static str {
        match self {
            Route::KernelRep => "kernel",
            Route::DiffRep => "difference",
            Route::RepRac => "abs-coefficients",
            Route::RepRac2 => "shifted-pair",
            Route::Basic => "basic-series",
        }
    }
}

impl GenFamily {
    pub fn new(ctx: Arc<FamilyContext>, masses: MassConfig) -> Result<Self> {
        let boundary = (0..=ctx.n_max() + 1)
            .map(|n| boundary_values(n, &ctx, &masses))
            .collect::<Result<Vec<_>>>()?;
        Ok(GenFamily { ctx, masses, boundary })
    }

    pub fn ctx(&self) -> &FamilyContext {
        &self.ctx
    }

    pub fn masses(&self) -> &MassConfig {
        &self.masses
    }

    /// Highest degree with boundary data (`n_max + 1`).
    pub fn limit(&self) -> usize {
        self.boundary.len() - 1
    }

    pub fn boundary(&self, n: usize) -> Result<&GenBoundary> {
        self.boundary.get(n).ok_or(Error::DegreeOutOfRange { n, limit: self.limit() })
    }

    /// `P~_n(x)` from the reproducing-kernel representation, with its term scale.
    pub fn kernelrep(&self, n: usize, x: C64) -> Result<RouteValue> {
        let bd = self.boundary(n)?;
        let pn = self.ctx.eval(n, x)?;
        if n == 0 || self.masses.is_zero() {
            return Ok(RouteValue { value: pn, scale: pn.norm() });
        }
        let ps = self.ctx.eval_all(n - 1, x)?;
        let (mut km, mut kp) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for (j, pj) in ps.iter().enumerate() {
            let (m, p) = self.ctx.p_at_pm1(j);
            let d = self.ctx.norm_sq(j);
            km += pj * m / d;
            kp += pj * p / d;
        }
        let tm = self.masses.mass_neg * bd.p_neg * km;
        let tp = self.masses.mass_pos * bd.p_pos * kp;
        Ok(RouteValue { value: pn - tm - tp, scale: pn.norm() + tm.norm() + tp.norm() })
    }

    /// `P~_n(x)` from the reproducing-kernel representation.
    pub fn eval(&self, n: usize, x: C64) -> Result<C64> {
        Ok(self.kernelrep(n, x)?.value)
    }

    /// `P~_n(x)` with `P~_{-1} = 0`.
    pub(crate) fn eval_signed(&self, n: i64, x: C64) -> Result<C64> {
        if n < 0 {
            Ok(C64::new(0.0, 0.0))
        } else {
            self.eval(n as usize, x)
        }
    }
}

/// Monomial coefficients (constant term first) of `P_0, ..., P_n` from the classical recurrence.
pub fn classical_coefficients(n: usize, ctx: &FamilyContext) -> Result<Vec<Vec<C64>>> {
    ctx.check_degree(n)?;
    let zero = C64::new(0.0, 0.0);
    let mut out: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0)]];
    for k in 0..n {
        let cur = &out[k];
        let mut next = vec![zero; k + 2];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= ctx.beta(k) * c;
        }
        if k > 0 {
            for (j, c) in out[k - 1].iter().enumerate() {
                next[j] -= ctx.gamma(k) * c;
            }
        }
        out.push(next);
    }
    Ok(out)
}

impl GenFamily {
    /// Monomial coefficients (constant term first) of `P~_n`, from the kernel representation.
    pub fn coefficients(&self, n: usize) -> Result<Vec<C64>> {
        let bd = self.boundary(n)?;
        let ctx = self.ctx();
        let basis = classical_coefficients(n, ctx)?;
        let mut out = basis[n].clone();
        let wm = self.masses.mass_neg * bd.p_neg;
        let wp = self.masses.mass_pos * bd.p_pos;
        for (j, pj) in basis.iter().enumerate().take(n) {
            let (m, p) = ctx.p_at_pm1(j);
            let w = (wm * m + wp * p) / ctx.norm_sq(j);
            for (o, c) in out.iter_mut().zip(pj) {
                *o -= w * c;
            }
        }
        Ok(out)
    }
}
