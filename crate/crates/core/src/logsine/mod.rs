//! Log-sine integrals: quadrature definitions, exact values at π, series
//! and tables at π/3, generalized integrals at π, central binomial sums.

mod binomial;
mod checks;
mod closed;
mod genpi;
mod numeric;
mod weight4;

pub use binomial::{central_binomial_sum, ls1_pi3_from_central_binomial};
pub use checks::{decay_bound, realgf_one_variable, realgf_sides, DecayCheck};
pub use closed::{gen_ls_pi_table, gen_ls_pi_table_keys, ls_pi3_series, ls_pi3_table, ls_pi_egf, ls_pi_recursive};
pub use genpi::{
    gen_ls_pi_exact, gen_ls_pi_extract, gen_ls_pi_extract_capped, generating_series, Extracted, GaussExpr,
    DEFAULT_ORDER_CAP,
};
pub use numeric::{ls_numeric, LogSineSpec};
pub use weight4::{ls_weight4_tau, Weight4};

pub(crate) use binomial::central_binomial_sum_prec;
pub(crate) use numeric::ls_at_angle;
pub(crate) use weight4::ls_weight4_tau_prec;
