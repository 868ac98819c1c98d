//! The classical monic Askey-Wilson family: closed-form data, recurrence and
//! series evaluation, weight and norms.

mod family;
mod params;
mod series;
mod table;
mod weight;

pub use family::{aw_eval_ttrr, FamilyContext, CONTEXT_TAIL_TOL};
pub use params::AWParams;
pub use series::{aw_at_pm1, aw_delta_at_pm1, aw_eval_series, aw_eval_series_qs};
pub(crate) use series::XAtoms;
pub use table::{
    alpha_hat, beta_bar, diff_coeffs, lambda_n, phi_big, sigma, sigma_scale, sode_coeffs, tau,
    tau_n, theta_xi, ttrr_coeffs, ttrr_coeffs_in,
};
pub(crate) use table::nonzero;
pub use weight::{aw_weight, norm_sq, AWWeight};
