//! Numerical integration oracles.

mod nd;
mod tanh_sinh;

pub use nd::{integrate_nd, integrate_nd_with_breaks, nested, qmc, Breaks, NdMethod, QmcConfig};
pub use tanh_sinh::{integrate_1d, integrate_1d_tol, integrate_half_line, integrate_piecewise, QuadResult};
