//! Askey-Wilson polynomials and their generalisation by point masses at x = -1 and x = +1.
//!
//! Module map:
//! - [`qkernel`]: q-Pochhammer symbols and terminating basic series.
//! - [`lattice`]: the q-quadratic lattice and its differences.
//! - [`askey_wilson`]: the classical family.
//! - [`cd_kernels`]: reproducing kernels in sum, quotient, forward and backward forms.
//! - [`gen_aw`]: the family with masses, every representation and recurrence.
//! - [`verify`]: quadrature, Gram matrices and a moment-matrix oracle.
//! - [`suite`]: the seeded identity-residual suite used by the command line.

pub mod askey_wilson;
pub mod cd_kernels;
pub mod error;
pub mod gen_aw;
pub mod lattice;
pub mod qkernel;
pub mod suite;
pub mod verify;
pub mod xprec;

pub use error::{Error, ParamViolation, Result};
pub use num_complex::Complex64;
