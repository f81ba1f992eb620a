//! Numeric special functions: ζ, multiple zeta values, multiple
//! polylogarithms, Clausen/Glaisher functions, `Ti_k`, `λ_n`, the Dedekind
//! eta function and generalized hypergeometric series.

mod clausen;
mod eta;
mod hyper;
mod polylog;
mod zeta;

pub use clausen::{clausen_glaisher, inverse_tangent_integral, kummer_lambda, li2_real, ClKind};
pub use eta::{eta_crossover, eta_q, eta_q_modular, eta_q_series};
pub use hyper::hypergeometric_pfq;
pub use polylog::{multiple_polylog, mzv, Composition};
pub use zeta::{bernoulli, zeta, zeta_prec};

pub(crate) use clausen::{clausen_glaisher_prec, inverse_tangent_integral_prec, kummer_lambda_prec};
pub(crate) use eta::eta_q_prec;
pub(crate) use hyper::hypergeometric_pfq_prec;
pub(crate) use polylog::{multiple_polylog_prec, polylog_prec};
