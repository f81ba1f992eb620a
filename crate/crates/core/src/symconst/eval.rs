//! Numeric realization of constant expressions.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::Float;

use super::{BasisConstant, ConstExpr};
use crate::error::Result;
use crate::mpcore::{Complex, PrecisionContext};
use crate::specfun::{
    clausen_glaisher_prec, kummer_lambda_prec, multiple_polylog_prec, polylog_prec, zeta_prec, ClKind, Composition,
};

fn cache() -> &'static Mutex<HashMap<(BasisConstant, u32), Float>> {
    static C: OnceLock<Mutex<HashMap<(BasisConstant, u32), Float>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Numeric value of a basis constant at `prec` bits.
pub fn basis_value(b: &BasisConstant, prec: u32) -> Result<Float> {
    if let Some(v) = cache().lock().expect("basis cache poisoned").get(&(b.clone(), prec)) {
        return Ok(v.clone());
    }
    let v = compute(b, prec)?;
    cache().lock().expect("basis cache poisoned").insert((b.clone(), prec), v.clone());
    Ok(v)
}

fn compute(b: &BasisConstant, prec: u32) -> Result<Float> {
    use BasisConstant::*;
    let half = || Float::with_val(prec, 0.5);
    let pi3 = || Float::with_val(prec, Constant::Pi) / 3u32;
    Ok(match b {
        Pi => Float::with_val(prec, Constant::Pi),
        Log2 => Float::with_val(prec, Constant::Log2),
        Zeta(k) => zeta_prec(*k, prec),
        LiHalf(k) => polylog_prec(*k, &Complex::real(half()), prec).re,
        LiNegOne(a) => multiple_polylog_prec(a, &Complex::real(Float::with_val(prec, -1)), prec)?.re,
        ClPi3(a) => clausen_glaisher_prec(ClKind::Cl, &Composition::new(a.clone())?, &pi3(), prec)?,
        GlPi3(a) => clausen_glaisher_prec(ClKind::Gl, &Composition::new(a.clone())?, &pi3(), prec)?,
        Lambda(n) => kummer_lambda_prec(*n, &half(), prec)?,
        SPlus(n) => crate::logsine::central_binomial_sum_prec(true, *n, prec)?,
        Mzv(a) => multiple_polylog_prec(a, &Complex::one(prec), prec)?.re,
    })
}

/// Evaluates `e` at the context's working precision.
pub fn cexpr_eval(e: &ConstExpr, ctx: &PrecisionContext) -> Result<Float> {
    cexpr_eval_prec(e, ctx.prec())
}

pub(crate) fn cexpr_eval_prec(e: &ConstExpr, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    let mut acc = Float::new(wp);
    for (m, c) in e.terms() {
        let mut t = Float::with_val(wp, c);
        for (b, k) in m.factors() {
            let v = basis_value(b, wp)?;
            let p = Float::with_val(wp, rug::ops::Pow::pow(&v, k));
            t *= p;
        }
        acc += t;
    }
    Ok(Float::with_val(prec, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::make_context;
    use crate::symconst::parse_expr;

    #[test]
    fn pi_cubed_over_twelve() {
        let ctx = make_context(30).unwrap();
        let v = cexpr_eval(&parse_expr("1/12*Pi^3").unwrap(), &ctx).unwrap();
        let e = Float::with_val(ctx.prec(), Float::parse("2.583856390024985014623026255591782933519").unwrap());
        assert!(Float::with_val(ctx.prec(), &v - &e).abs() < 1e-29);
        assert!(cexpr_eval(&ConstExpr::zero(), &ctx).unwrap().is_zero());
    }

    #[test]
    fn lambda4_via_polylogs() {
        // λ_4(1/2) = 2 Li_4(1/2) + 2 log2 Li_3(1/2) + log²2 Li_2(1/2) + log⁴2/4
        let ctx = make_context(30).unwrap();
        let a = cexpr_eval(&parse_expr("Lambda(4)").unwrap(), &ctx).unwrap();
        let b =
            cexpr_eval(&parse_expr("2*LiHalf(4) + 2*Log2*LiHalf(3) + Log2^2*LiHalf(2) + 1/4*Log2^4").unwrap(), &ctx)
                .unwrap();
        assert!(Float::with_val(ctx.prec(), &a - &b).abs() < 1e-35);
    }

    #[test]
    fn deterministic() {
        let ctx = make_context(25).unwrap();
        let e = parse_expr("6/Pi*GlPi3(4,1) - 1/4860*Pi^4 + Mzv(5,3)").unwrap();
        let a = cexpr_eval(&e, &ctx).unwrap();
        let b = cexpr_eval(&e, &ctx).unwrap();
        assert_eq!(a, b);
    }
}
