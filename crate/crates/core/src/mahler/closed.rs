//! Exact evaluations of higher and multiple Mahler measures.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::logsine::{ls_pi3_table, ls_pi_recursive};
use crate::mpcore::PrecisionContext;
use crate::specfun::{mzv, Composition};
use crate::symconst::{BasisConstant, ConstExpr};

fn inv_pi(e: i32) -> ConstExpr {
    ConstExpr::basis_pow(BasisConstant::Pi, -e)
}

/// `μ_k(1+x) = -Ls_{k+1}(π)/π`.
pub fn mu_k_1px(k: u32) -> Result<ConstExpr> {
    if k == 0 {
        return Err(Error::invalid("μ_k needs k >= 1"));
    }
    Ok(ls_pi_recursive(k + 1)?.mul(&inv_pi(1)).neg())
}

/// Compositions of `k` into parts `≥ 2`.
pub(crate) fn compositions_ge2(k: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 2..=k {
        for mut rest in compositions_ge2(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `μ_k(1+x) = (-1)^k k! Σ_n 4^{-n} Σ ζ(b_1,…,b_n)` over compositions of `k` into parts `≥ 2`.
pub fn mu_k_1px_mzv(k: u32, ctx: &PrecisionContext) -> Result<Float> {
    if !(2..=8).contains(&k) {
        return Err(Error::invalid("the multiple zeta form is available for 2 <= k <= 8"));
    }
    let p = ctx.prec();
    let mut acc = Float::new(p + 16);
    for c in compositions_ge2(k) {
        let n = c.len() as u32;
        let z = mzv(&Composition::new(c)?, &ctx.raised(5))?;
        acc += Float::with_val(p + 16, z >> (2 * n));
    }
    acc *= Float::with_val(p + 16, Integer::from(Integer::factorial(k)));
    if k % 2 == 1 {
        acc = -acc;
    }
    Ok(Float::with_val(p, acc))
}

/// `μ_k(1+x+y_*) = (Ls_{k+1}(π/3) - Ls_{k+1}(π))/π` for `1 ≤ k ≤ 7`.
pub fn mu_k_1pxy_star(k: u32) -> Result<ConstExpr> {
    if !(1..=7).contains(&k) {
        return Err(Error::Unsupported(format!("closed form of μ_k(1+x+y_*) is available for 1 <= k <= 7, not {k}")));
    }
    let d = ls_pi3_table(k + 1)?.sub(&ls_pi_recursive(k + 1)?);
    Ok(d.mul(&inv_pi(1)))
}

/// Closed forms of `μ_k(1+x+y_*+z_*)` for `k = 1, 2`.
pub fn mu_k_1pxyz_star_closed(k: u32) -> Result<ConstExpr> {
    match k {
        1 => Ok(ConstExpr::zeta(3).mul(&inv_pi(2)).scale(&Rational::from((7, 2)))),
        2 => {
            let li31 = ConstExpr::basis(BasisConstant::LiNegOne(vec![3, 1]));
            let a = li31.mul(&inv_pi(2)).scale(&Rational::from(4));
            Ok(a.add(&ConstExpr::basis_pow(BasisConstant::Pi, 2).scale(&Rational::from((7, 360)))))
        }
        _ => Err(Error::Unsupported(format!("no closed form of μ_{k}(1+x+y_*+z_*)"))),
    }
}

/// Closed forms of `μ(1+x, …, 1+x, 1+x+y+z)` with `k` copies of `1+x`, `k ≤ 2`.
pub fn mu_mixed_closed(k: u32) -> Result<ConstExpr> {
    let lam = |n| ConstExpr::basis(BasisConstant::Lambda(n));
    let pi2 = ConstExpr::basis_pow(BasisConstant::Pi, 2);
    match k {
        0 => mu_k_1pxyz_star_closed(1),
        1 => Ok(lam(4).mul(&inv_pi(2)).scale(&Rational::from(2)).sub(&pi2.scale(&Rational::from((19, 720))))),
        2 => Ok(lam(5)
            .mul(&inv_pi(2))
            .scale(&Rational::from((4, 3)))
            .sub(&ConstExpr::zeta(3).scale(&Rational::from((3, 4))))
            .add(&ConstExpr::zeta(5).mul(&inv_pi(2)).scale(&Rational::from((31, 16))))),
        _ => Err(Error::Unsupported(format!("no closed form of the mixed measure for k = {k}"))),
    }
}

/// `μ_2(1+x+y+z) = (12/π²) λ_4(1/2) - π²/5`.
pub fn mu2_1pxyz_exact() -> ConstExpr {
    ConstExpr::basis(BasisConstant::Lambda(4))
        .mul(&inv_pi(2))
        .scale(&Rational::from(12))
        .sub(&ConstExpr::basis_pow(BasisConstant::Pi, 2).scale(&Rational::from((1, 5))))
}

/// `(24 Li_4(1/2) - 18ζ(4) + 21ζ(3) log 2 - 6ζ(2) log²2 + log⁴2)/π²`.
pub fn mu2_1pxyz_li4_form() -> ConstExpr {
    let l2 = |e| ConstExpr::basis_pow(BasisConstant::Log2, e);
    let num = ConstExpr::basis(BasisConstant::LiHalf(4))
        .scale(&Rational::from(24))
        .sub(&ConstExpr::zeta(4).scale(&Rational::from(18)))
        .add(&ConstExpr::zeta(3).mul(&l2(1)).scale(&Rational::from(21)))
        .sub(&ConstExpr::zeta(2).mul(&l2(2)).scale(&Rational::from(6)))
        .add(&l2(4));
    num.mul(&inv_pi(2))
}
