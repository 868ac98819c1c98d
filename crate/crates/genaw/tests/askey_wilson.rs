mod common;

use common::*;
use genaw::askey_wilson::*;
use genaw::lattice::{point_from_qs, shift};

#[test]
fn sigma_and_phi_examples() {
    let p = AWParams::real(0.1, 0.2, 0.3, 0.4, 0.5).unwrap();
    let q = p.q();
    let one = point_from_qs(c(1.0, 0.0), q).unwrap();
    let k = sigma_scale(&p);
    let expect = k * 0.9 * 0.8 * 0.7 * 0.6;
    assert!((sigma(&one, &p) - expect).norm() < 1e-15);
    assert!((phi_big(&one, &p) - sigma(&one, &p)).norm() < 1e-15);
    assert!(sigma(&point_from_qs(c(0.1, 0.0), q).unwrap(), &p).norm() < 1e-15);
    assert!(sigma(&point_from_qs(c(0.2, 0.0), q).unwrap(), &p).norm() < 1e-15);
    assert!(phi_big(&point_from_qs(c(10.0, 0.0), q).unwrap(), &p).norm() < 1e-13);
    // Phi(s) = sigma(-s)
    let z = c(0.7, 0.45);
    let s1 = phi_big(&point_from_qs(z, q).unwrap(), &p);
    let s2 = sigma(&point_from_qs(1.0 / z, q).unwrap(), &p);
    assert!((s1 - s2).norm() < 1e-14 * s1.norm());
}

#[test]
fn phi_equals_sigma_plus_tau_dx() {
    for p in param_sets() {
        for pt in circle_points(1, 10, &p).iter().chain(off_points(2, 10, &p).iter()) {
            let lhs = phi_big(pt, &p);
            let rhs = sigma(pt, &p) + tau(pt, &p) * pt.dx_half;
            assert!(rel(lhs, rhs, lhs.norm().max(1e-300)) < 1e-12);
        }
    }
}

#[test]
fn tau_n_definition_and_lambda_values() {
    let p = stock();
    let q = p.q();
    assert_eq!(lambda_n(0, &p), c(0.0, 0.0));
    let l1 = 4.0 * (1.0 - q.get()) * (1.0 - p.e4());
    assert!((lambda_n(1, &p) - l1).norm() < 1e-15);
    for pt in circle_points(3, 5, &p) {
        assert!((tau_n(0, &pt, &p) - tau(&pt, &p)).norm() < 1e-14);
        for n in 1..5 {
            // tau_n(s) = (Phi(s+n) - sigma(s)) / Delta x(s + n/2 - 1/2)
            let shifted = shift(&pt, n as i32, q);
            let mid = point_from_qs(pt.qs * q.pow((n as f64 - 1.0) / 2.0), q).unwrap();
            let expect = (phi_big(&shifted, &p) - sigma(&pt, &p)) / mid.dx_fwd;
            let got = tau_n(n, &pt, &p);
            assert!(rel(got, expect, expect.norm()) < 1e-12, "n={n}");
        }
    }
}

#[test]
fn sode_holds_for_table_data() {
    for p in param_sets() {
        let ctx = ctx(&p, 15);
        let q = p.q();
        for pt in circle_points(4, 8, &p).iter().chain(off_points(5, 8, &p).iter()) {
            let (a, b, cc) = sode_coeffs(pt, &p).unwrap();
            assert!((a + b + cc).norm() <= 1e-15 * (a.norm() + cc.norm()));
            for n in 0..=15 {
                let y = |k: i32| ctx.eval(n, shift(pt, k, q).x).unwrap();
                let r = residual(&[a * y(1), b * y(0), cc * y(-1), ctx.lambda(n) * y(0)]);
                assert!(r < 1e-9, "n={n} r={r:e}");
            }
        }
    }
}

#[test]
fn sode_rejects_degenerate_point() {
    let p = stock();
    let q = p.q();
    let pt = point_from_qs(c(1.0 / q.sqrt(), 0.0), q).unwrap();
    assert!(matches!(sode_coeffs(&pt, &p), Err(genaw::Error::DegenerateLatticePoint(_))));
}

#[test]
fn ttrr_coefficients_examples() {
    let p = stock();
    let (_, g0) = ttrr_coeffs(0, &p).unwrap();
    assert_eq!(g0, c(0.0, 0.0));
    let q = p.q().get();
    let e4 = p.e4();
    let prod: C64 = p.pair_products().iter().map(|z| 1.0 - z).product();
    let g1 = 0.25 * (1.0 - q) * prod * (1.0 - e4 / q)
        / ((1.0 - e4 / q) * (1.0 - e4) * (1.0 - e4) * (1.0 - e4 * q));
    assert!((ttrr_coeffs(1, &p).unwrap().1 - g1).norm() < 1e-15);
    for n in 0..8 {
        let (b, g) = ttrr_coeffs(n, &p).unwrap();
        assert!(b.im.abs() < 1e-12 && g.im.abs() < 1e-12);
        if n > 0 {
            assert!(g.re > 0.0);
        }
        for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1], [1, 2, 3, 0]] {
            let (bp, gp) = ttrr_coeffs(n, &p.permuted(perm)).unwrap();
            assert!((bp - b).norm() < 1e-13 && (gp - g).norm() < 1e-13);
        }
    }
}

#[test]
fn ttrr_low_degrees() {
    let p = stock();
    let ctx = ctx(&p, 4);
    let x = c(0.37, 0.0);
    assert_eq!(aw_eval_ttrr(0, x, &ctx).unwrap(), c(1.0, 0.0));
    assert!((aw_eval_ttrr(1, x, &ctx).unwrap() - (x - ctx.beta(0))).norm() < 1e-16);
    let p2 = (x - ctx.beta(1)) * (x - ctx.beta(0)) - ctx.gamma(1);
    assert!((aw_eval_ttrr(2, x, &ctx).unwrap() - p2).norm() < 1e-15);
}

#[test]
fn ttrr_is_monic() {
    // n-th divided difference over n+1 nodes equals the leading coefficient.
    let p = param_sets()[2];
    let ctx = ctx(&p, 12);
    for n in 1..=12usize {
        let nodes: Vec<f64> = (0..=n).map(|k| -0.9 + 1.8 * k as f64 / n as f64).collect();
        let mut dd: Vec<C64> = nodes.iter().map(|&x| ctx.eval(n, c(x, 0.0)).unwrap()).collect();
        for level in 1..=n {
            for i in (level..=n).rev() {
                dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
            }
        }
        assert!((dd[n] - 1.0).norm() < 1e-9, "n={n}: {}", dd[n]);
    }
}

#[test]
fn permutation_symmetry_of_values() {
    let p = stock();
    let a = ctx(&p, 10);
    let b = ctx(&p.permuted([2, 3, 1, 0]), 10);
    for pt in circle_points(6, 10, &p) {
        for n in 0..=10 {
            let (u, v) = (a.eval(n, pt.x).unwrap(), b.eval(n, pt.x).unwrap());
            assert!(rel(u, v, u.norm().max(a.norm_sq(n).re.sqrt())) < 1e-10);
        }
    }
}

#[test]
fn series_examples() {
    let p = stock();
    let ctx = ctx(&p, 4);
    let pt = point_from_qs(c(0.6, 0.8), p.q()).unwrap();
    assert_eq!(aw_eval_series(0, &pt, &p).unwrap(), c(1.0, 0.0));
    let ttrr = ctx.eval(3, pt.x).unwrap();
    let ser = aw_eval_series(3, &pt, &p).unwrap();
    assert!(rel(ser, ttrr, ttrr.norm()) < 1e-13);
}

#[test]
fn series_root_of_degree_one() {
    // x = beta_0 is the root of P_1.
    let p = param_sets()[1];
    let ctx = ctx(&p, 2);
    let b0 = ctx.beta(0).re;
    let pt = genaw::lattice::point_from_x(b0, p.q(), Default::default()).unwrap();
    assert!(aw_eval_series(1, &pt, &p).unwrap().norm() < 1e-15);
}

#[test]
fn boundary_values_match_recurrence() {
    for p in param_sets() {
        let ctx = ctx(&p, 15);
        let q = p.q();
        for n in 0..=15 {
            let (m, pp) = aw_at_pm1(n, &p).unwrap();
            let (tm, tp) = (ctx.eval(n, c(-1.0, 0.0)).unwrap(), ctx.eval(n, c(1.0, 0.0)).unwrap());
            assert!(rel(m, tm, tm.norm()) < 1e-10, "P_{n}(-1)");
            assert!(rel(pp, tp, tp.norm()) < 1e-10, "P_{n}(1)");
            let (dm, dp) = aw_delta_at_pm1(n, &p).unwrap();
            let xm = (-q.get() - 1.0 / q.get()) / 2.0;
            let xp = (q.get() + 1.0 / q.get()) / 2.0;
            let fm = ctx.eval(n, c(xm, 0.0)).unwrap() - tm;
            let fp = ctx.eval(n, c(xp, 0.0)).unwrap() - tp;
            let sm = ctx.eval(n, c(xm, 0.0)).unwrap().norm() + tm.norm();
            let sp = ctx.eval(n, c(xp, 0.0)).unwrap().norm() + tp.norm();
            assert!(rel(dm, fm, sm) < 1e-10, "dP_{n}(-1) {dm} {fm}");
            assert!(rel(dp, fp, sp) < 1e-10, "dP_{n}(1) {dp} {fp}");
        }
        assert_eq!(aw_delta_at_pm1(0, &p).unwrap(), (c(0.0, 0.0), c(0.0, 0.0)));
    }
}

#[test]
fn series_matches_recurrence_to_degree_twenty() {
    for p in param_sets() {
        let ctx = ctx(&p, 20);
        for pt in circle_points(7, 6, &p).iter().chain(off_points(8, 4, &p).iter()) {
            for n in 0..=20 {
                let t = ctx.eval(n, pt.x).unwrap();
                let s = aw_eval_series(n, pt, &p).unwrap();
                let scale = t.norm().max(ctx.norm_sq(n).re.sqrt());
                assert!(rel(s, t, scale) < 1e-10, "n={n} {s} {t}");
            }
        }
    }
}

#[test]
fn differentiation_formulas() {
    for p in param_sets() {
        let ctx = ctx(&p, 12);
        let q = p.q();
        for pt in circle_points(9, 6, &p).iter().chain(off_points(10, 6, &p).iter()) {
            for n in 0..=12 {
                let (abar, bbar, bhat) = diff_coeffs(n, pt, &p).unwrap();
                let pn = ctx.eval(n, pt.x).unwrap();
                let pn1 = ctx.eval(n + 1, pt.x).unwrap();
                let back = (pn - ctx.eval(n, shift(pt, -1, q).x).unwrap()) / pt.dx_bwd;
                let fwd = (ctx.eval(n, shift(pt, 1, q).x).unwrap() - pn) / pt.dx_fwd;
                let r1 = residual(&[sigma(pt, &p) * back, -abar * pn1, -bbar * pn]);
                let r2 = residual(&[phi_big(pt, &p) * fwd, -abar * pn1, -bhat * pn]);
                assert!(r1 < 1e-9 && r2 < 1e-9, "n={n}: {r1:e} {r2:e}");
            }
        }
    }
}

#[test]
fn theta_xi_shift_relation() {
    for p in param_sets() {
        let ctx = ctx(&p, 12);
        let q = p.q();
        let mut pts = circle_points(11, 6, &p);
        pts.push(point_from_qs(c(0.8, 0.0), q).unwrap());
        for pt in &pts {
            for n in 1..=12 {
                let (th, xi) = theta_xi(n, pt, &p).unwrap();
                let r = residual(&[
                    -ctx.eval(n - 1, pt.x).unwrap(),
                    th * ctx.eval(n, pt.x).unwrap(),
                    xi * ctx.eval(n, shift(pt, 1, q).x).unwrap(),
                ]);
                assert!(r < 1e-9, "n={n} r={r:e}");
            }
        }
    }
    // Xi carries the factor Phi(s): it vanishes at q^s = 1/a.
    let p = param_sets()[1];
    let pt = point_from_qs(c(1.0 / p.a().re, 0.0), p.q()).unwrap();
    assert!(theta_xi(3, &pt, &p).unwrap().1.norm() < 1e-14);
}

#[test]
fn norms_agree_with_recurrence() {
    for p in param_sets() {
        let ctx = ctx(&p, 20);
        assert!((ctx.norm_sq(0) - 1.0).norm() < 1e-12);
        for n in 1..=20 {
            let rec = ctx.norm_sq(n - 1) * ctx.gamma(n);
            assert!(rel(ctx.norm_sq(n), rec, rec.norm()) < 1e-10, "n={n}");
        }
    }
}

#[test]
fn weight_is_positive_and_rejects_endpoints() {
    for p in param_sets() {
        let w = AWWeight::new(&p, 1e-17).unwrap();
        for k in 1..1000 {
            let x = -1.0 + 2.0 * k as f64 / 1000.0;
            assert!(w.at(x).unwrap() > 0.0);
        }
        assert!(matches!(aw_weight(1.0, &p, 1e-17), Err(genaw::Error::OutOfInterval(_))));
        assert!(matches!(aw_weight(-1.0, &p, 1e-17), Err(genaw::Error::OutOfInterval(_))));
    }
}
