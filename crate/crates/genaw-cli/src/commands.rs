//! The four subcommands.

use std::sync::Arc;

use anyhow::Result;
use genaw::askey_wilson::FamilyContext;
use genaw::gen_aw::{racah_identity_check, GenFamily, RacahParams, Route};
use genaw::lattice::point_from_real_x;
use genaw::qkernel::QBase;
use genaw::suite::{run_suite, ResidualRecord, SuiteConfig};
use genaw::verify::{gram, GramReport};
use genaw::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{Num, Table};

/// Convergence tolerance of the Gram quadrature, independent of the pass threshold.
pub const GRAM_QUADRATURE_TOL: f64 = 1e-13;
/// Random evaluation points used by `eval` when none are given.
pub const DEFAULT_EVAL_POINTS: usize = 5;

/// A rendered result and whether every check passed.
pub struct Outcome {
    pub table: Box<dyn Table>,
    pub pass: bool,
}

#[derive(Serialize)]
struct RecordOut {
    identity_tag: String,
    n: usize,
    point: Num,
    residual: Num,
    tolerance: Num,
    pass: bool,
}

struct Records(Vec<RecordOut>);

impl Table for Records {
    fn json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.0)?)
    }
    fn header(&self) -> Vec<String> {
        ["identity_tag", "n", "point", "residual", "tolerance", "pass"].map(String::from).to_vec()
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| {
                vec![
                    r.identity_tag.clone(),
                    r.n.to_string(),
                    r.point.text(),
                    r.residual.text(),
                    r.tolerance.text(),
                    r.pass.to_string(),
                ]
            })
            .collect()
    }
}

fn record(r: &ResidualRecord) -> RecordOut {
    RecordOut {
        identity_tag: r.identity_tag.to_string(),
        n: r.n,
        point: Num(r.point),
        residual: Num(r.residual),
        tolerance: Num(r.tolerance),
        pass: r.pass,
    }
}

fn family(cfg: &RunConfig, n_max: usize) -> Result<GenFamily> {
    let ctx = Arc::new(FamilyContext::new(cfg.params()?, n_max)?);
    Ok(GenFamily::new(ctx, cfg.masses()?)?)
}

pub fn residuals(cfg: &RunConfig) -> Result<Outcome> {
    cfg.check_tol()?;
    let suite = SuiteConfig {
        params: cfg.params()?,
        masses: cfg.masses()?,
        n_max: cfg.n_max,
        tol: cfg.tol,
        seed: cfg.seed,
    };
    let report = run_suite(&suite)?;
    let pass = report.iter().all(|r| r.pass);
    Ok(Outcome { table: Box::new(Records(report.iter().map(record).collect())), pass })
}

pub struct RacahArgs {
    pub alpha: f64,
    pub beta: f64,
    pub a_tilde: f64,
    pub b_tilde: f64,
    pub t: f64,
}

pub fn racah_check(cfg: &RunConfig, args: &RacahArgs) -> Result<Outcome> {
    cfg.check_tol()?;
    let q = QBase::new(cfg.q)?;
    let rp = RacahParams::new(args.alpha, args.beta, args.a_tilde, args.b_tilde, q);
    let mut out = Vec::new();
    for n in 0..=cfg.n_max {
        let r = racah_identity_check(n, args.t, &rp)?;
        out.push(RecordOut {
            identity_tag: "racah.reduction".into(),
            n,
            point: Num(args.t),
            residual: Num(r.residual),
            tolerance: Num(cfg.tol),
            pass: r.residual < cfg.tol,
        });
    }
    let pass = out.iter().all(|r| r.pass);
    Ok(Outcome { table: Box::new(Records(out)), pass })
}

#[derive(Serialize)]
struct GramOut {
    n_max: usize,
    matrix: Vec<Vec<Num>>,
    expected_diag: Vec<Num>,
    max_offdiag_rel: Num,
    max_diag_dev_rel: Num,
    tolerance: Num,
    pass: bool,
}

impl Table for GramOut {
    fn json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
    fn header(&self) -> Vec<String> {
        ["i", "j", "value", "expected"].map(String::from).to_vec()
    }
    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expected = if i == j { self.expected_diag[i] } else { Num(0.0) };
                rows.push(vec![i.to_string(), j.to_string(), v.text(), expected.text()]);
            }
        }
        rows
    }
}

pub fn gram_cmd(cfg: &RunConfig) -> Result<Outcome> {
    cfg.check_tol()?;
    let fam = family(cfg, cfg.n_max)?;
    let g: GramReport = gram(cfg.n_max, &fam, GRAM_QUADRATURE_TOL)?;
    let pass = g.max_offdiag_rel <= cfg.tol && g.max_diag_dev_rel <= cfg.tol;
    let out = GramOut {
        n_max: g.n_max,
        matrix: g.matrix.iter().map(|r| r.iter().map(|v| Num(*v)).collect()).collect(),
        expected_diag: g.expected_diag.iter().map(|v| Num(*v)).collect(),
        max_offdiag_rel: Num(g.max_offdiag_rel),
        max_diag_dev_rel: Num(g.max_diag_dev_rel),
        tolerance: Num(cfg.tol),
        pass,
    };
    Ok(Outcome { table: Box::new(out), pass })
}

#[derive(Serialize)]
struct EvalRow {
    n: usize,
    point: Num,
    classical: Num,
    kernel: Num,
    difference: Num,
    #[serde(rename = "abs-coefficients")]
    abs_coefficients: Num,
    #[serde(rename = "shifted-pair")]
    shifted_pair: Num,
    #[serde(rename = "basic-series")]
    basic_series: Num,
    max_deviation: Num,
    tolerance: Num,
    pass: bool,
}

struct EvalTable(Vec<EvalRow>);

impl Table for EvalTable {
    fn json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.0)?)
    }
    fn header(&self) -> Vec<String> {
        [
            "n",
            "point",
            "classical",
            "kernel",
            "difference",
            "abs-coefficients",
            "shifted-pair",
            "basic-series",
            "max_deviation",
            "tolerance",
            "pass",
        ]
        .map(String::from)
        .to_vec()
    }
    fn rows(&self) -> Vec<Vec<String>> {
        self.0
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.point.text(),
                    r.classical.text(),
                    r.kernel.text(),
                    r.difference.text(),
                    r.abs_coefficients.text(),
                    r.shifted_pair.text(),
                    r.basic_series.text(),
                    r.max_deviation.text(),
                    r.tolerance.text(),
                    r.pass.to_string(),
                ]
            })
            .collect()
    }
}

/// Seeded evaluation points in `(-0.95, 0.95)`, sorted.
pub fn default_points(seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<f64> = (0..DEFAULT_EVAL_POINTS).map(|_| rng.gen_range(-0.95..0.95)).collect();
    pts.sort_by(f64::total_cmp);
    pts
}

pub fn eval(cfg: &RunConfig, degrees: &[usize], points: &[f64]) -> Result<Outcome> {
    cfg.check_tol()?;
    let top = degrees.iter().copied().max().unwrap_or(0);
    let fam = family(cfg, top.max(1))?;
    let q = fam.ctx().params().q();
    let mut rows = Vec::new();
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    for &n in &degrees {
        for &x in points {
            let pt = point_from_real_x(x, q)?;
            let xc = Complex64::new(x, 0.0);
            let classical = fam.ctx().eval(n, xc)?;
            // A route may be undefined at a particular point (for instance at x = +-1);
            // it is then reported as null and left out of the deviation.
            let vals: Vec<Option<(Complex64, f64)>> = Route::ALL
                .iter()
                .map(|r| fam.eval_route(*r, n, &pt).ok().map(|v| (v.value, v.scale)))
                .collect();
            let mut dev: f64 = 0.0;
            for i in 0..vals.len() {
                for j in i + 1..vals.len() {
                    if let (Some((a, sa)), Some((b, sb))) = (vals[i], vals[j]) {
                        let s = sa.max(sb);
                        let d = if s == 0.0 { (a - b).norm() } else { (a - b).norm() / s };
                        dev = dev.max(d);
                    }
                }
            }
            let num = |k: usize| Num(vals[k].map_or(f64::NAN, |v| v.0.re));
            rows.push(EvalRow {
                n,
                point: Num(x),
                classical: Num(classical.re),
                kernel: num(0),
                difference: num(1),
                abs_coefficients: num(2),
                shifted_pair: num(3),
                basic_series: num(4),
                max_deviation: Num(dev),
                tolerance: Num(cfg.tol),
                pass: dev < cfg.tol,
            });
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(Outcome { table: Box::new(EvalTable(rows)), pass })
}
