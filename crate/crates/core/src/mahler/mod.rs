//! Higher and multiple Mahler measures: closed forms, definitional torus
//! integrals, random-walk moments and the conjectured η-integral evaluations.

mod closed;
mod conjectures;
mod higher;
mod mu2;
mod oracle;
mod walk;

pub use closed::{
    mu2_1pxyz_exact, mu2_1pxyz_li4_form, mu_k_1px, mu_k_1px_mzv, mu_k_1pxy_star, mu_k_1pxyz_star_closed,
    mu_mixed_closed,
};
pub use conjectures::{rv_conjecture_check, rv_rhs, RvCheck, RvConjecture};
pub use higher::{mu3_star_residual, mu_k_1pxyz_star, mu_mixed_1x_1xyz, parseval_cl2, CubicCheck};
pub use mu2::{
    dilog_tau, dilog_tau_quadrature, mu2_1pxy, mu2_1pxy_dilog_form, mu2_1pxy_ti_form, mu2_1pxy_walk_series, mu2_step,
    Mu2Step,
};
pub use oracle::{linear_torus, mu_multiple_1x_1xy, mu_oracle, MeasureSpec};
pub use walk::{walk_derivative, walk_moment};
