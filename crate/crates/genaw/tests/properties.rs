use std::sync::Arc;

use genaw::askey_wilson::{aw_eval_series, AWParams, FamilyContext};
use genaw::cd_kernels::kernel_sum;
use genaw::gen_aw::{GenFamily, MassConfig, Route};
use genaw::lattice::point_from_theta;
use genaw::qkernel::{qpoch, QBase};
use genaw::Complex64;
use proptest::prelude::*;

type C64 = Complex64;

/// Real admissible parameters kept away from the degenerate products.
fn real_params() -> impl Strategy<Value = AWParams> {
    (
        proptest::array::uniform4(-0.8..0.8f64),
        0.2..0.8f64,
    )
        .prop_filter_map("admissible", |(abcd, q)| {
            let [a, b, c, d] = abcd;
            if a.abs() < 0.05 {
                return None;
            }
            AWParams::real(a, b, c, d, q).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn qpoch_steps_by_one_factor(re in -2.0..2.0f64, im in -2.0..2.0f64, q in 0.05..0.95f64, k in 0usize..30) {
        let q = QBase::new(q).unwrap();
        let z = C64::new(re, im);
        let lhs = qpoch(z, q, k + 1);
        let rhs = qpoch(z, q, k) * (1.0 - z * q.pow(k as f64));
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn polynomials_are_symmetric_in_the_parameters(p in real_params(), theta in 0.05..3.0f64, n in 0usize..9) {
        let x = point_from_theta(theta, p.q()).unwrap().x;
        let base = FamilyContext::new(p, n).unwrap().eval(n, x).unwrap();
        for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
            let other = FamilyContext::new(p.permuted(perm), n).unwrap().eval(n, x).unwrap();
            prop_assert!((base - other).norm() <= 1e-10 * base.norm().max(1.0));
        }
    }

    #[test]
    fn series_matches_recurrence(p in real_params(), theta in 0.05..3.0f64, n in 0usize..12) {
        let pt = point_from_theta(theta, p.q()).unwrap();
        let ctx = FamilyContext::new(p, n).unwrap();
        let ttrr = ctx.eval(n, pt.x).unwrap();
        let series = aw_eval_series(n, &pt, &p).unwrap();
        let scale = ttrr.norm().max(ctx.norm_sq(n).norm().sqrt());
        prop_assert!((series - ttrr).norm() / scale < 1e-9);
    }

    #[test]
    fn kernel_is_symmetric(p in real_params(), x in -0.99..0.99f64, y in -0.99..0.99f64, n in 0usize..10) {
        let ctx = FamilyContext::new(p, n).unwrap();
        let (x, y) = (C64::new(x, 0.0), C64::new(y, 0.0));
        let a = kernel_sum(n, x, y, &ctx).unwrap();
        let b = kernel_sum(n, y, x, &ctx).unwrap();
        prop_assert!((a - b).norm() <= 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn modified_family_is_monic_and_routes_agree(
        p in real_params(),
        a in 0.0..20.0f64,
        b in 0.0..20.0f64,
        theta in 0.05..3.0f64,
        n in 0usize..9,
    ) {
        let ctx = Arc::new(FamilyContext::new(p, n).unwrap());
        let fam = GenFamily::new(ctx, MassConfig::new(a, b).unwrap()).unwrap();
        let coeffs = fam.coefficients(n).unwrap();
        prop_assert_eq!(coeffs.len(), n + 1);
        prop_assert_eq!(coeffs[n], C64::new(1.0, 0.0));
        prop_assert!(fam.boundary(n).unwrap().kappa_det.re > 0.0);
        let pt = point_from_theta(theta, p.q()).unwrap();
        let base = fam.eval_route(Route::KernelRep, n, &pt).unwrap();
        for route in Route::ALL {
            let v = fam.eval_route(route, n, &pt).unwrap();
            let scale = v.scale.max(base.scale);
            prop_assert!((v.value - base.value).norm() / scale < 1e-8, "{:?}", route);
        }
    }
}
