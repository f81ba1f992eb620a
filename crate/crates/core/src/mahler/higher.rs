//! One-dimensional integral representations of `μ_k(1+x+y_*+z_*)` and of the
//! mixed measure `μ(1+x, …, 1+x, 1+x+y+z)`.

use std::sync::Mutex;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::logsine::{gen_ls_pi_extract, gen_ls_pi_table, ls_at_angle};
use crate::mpcore::PrecisionContext;
use crate::quadrature::integrate_piecewise;
use crate::specfun::{clausen_glaisher_prec, ClKind, Composition};
use crate::symconst::cexpr_eval_prec;

fn cl2(theta: &Float, wp: u32) -> Result<Float> {
    if theta.is_zero() {
        return Ok(Float::new(wp));
    }
    clausen_glaisher_prec(ClKind::Cl, &Composition::single(2), theta, wp)
}

fn log2sin(theta: &Float, wp: u32) -> Float {
    (Float::with_val(wp, theta / 2u32).sin() * 2u32).ln()
}

/// `∫_0^π f` split at π/3, where `log(2 sin(θ/2))` vanishes, collecting the
/// first error raised by the integrand.
fn integrate_0_pi(f: impl Fn(&Float) -> Result<Float> + Sync, tol: &Float, wp: u32, levels: u32) -> Result<Float> {
    let pi = Float::with_val(wp, Constant::Pi);
    let pts = [Float::new(wp), Float::with_val(wp, &pi / 3u32), pi];
    let failure = Mutex::new(None::<Error>);
    let r = integrate_piecewise(
        |t: &Float| match f(t) {
            Ok(v) => v,
            Err(e) => {
                failure.lock().expect("failure slot poisoned").get_or_insert(e);
                Float::new(wp)
            }
        },
        &pts,
        tol,
        wp,
        levels,
    );
    if let Some(e) = failure.into_inner().expect("failure slot poisoned") {
        return Err(e);
    }
    Ok(r?.value)
}

/// `μ_k(1+x+y_*+z_*) = π^{-k-1} ∫_0^π (θ log(2 sin(θ/2)) + Cl_2(θ))^k dθ`.
pub fn mu_k_1pxyz_star(k: u32, ctx: &PrecisionContext) -> Result<Float> {
    if k == 0 {
        return Err(Error::invalid("μ_k needs k >= 1"));
    }
    let p = ctx.prec();
    let wp = p + 16;
    let tol = Float::with_val(wp, ctx.tol() / 4u32);
    let v = integrate_0_pi(
        |t| {
            let g = Float::with_val(wp, t * log2sin(t, wp)) + cl2(t, wp)?;
            Ok(g.pow(k))
        },
        &tol,
        wp,
        ctx.quadrature_levels,
    )?;
    let pi = Float::with_val(wp, Constant::Pi);
    Ok(Float::with_val(p, v / pi.pow(k + 1)))
}

/// `∫_0^π Cl_2(θ)² dθ`, which Parseval's identity gives as `π⁵/180`.
pub fn parseval_cl2(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let wp = p + 16;
    let tol = Float::with_val(wp, ctx.tol() / 4u32);
    let v = integrate_0_pi(|t| Ok(cl2(t, wp)?.square()), &tol, wp, ctx.quadrature_levels)?;
    Ok(Float::with_val(p, v))
}

/// The three-fold measure and the right side of
/// `μ_3 = (2/π⁴)∫Cl_2³ + (3/π⁴)∫θ² log²(2 sin(θ/2)) Cl_2 - Ls^{(3)}_7(π)/π⁴`.
#[derive(Debug, Clone)]
pub struct CubicCheck {
    pub mu3: Float,
    pub rhs: Float,
    pub residual: Float,
}

pub fn mu3_star_residual(ctx: &PrecisionContext) -> Result<CubicCheck> {
    let p = ctx.prec();
    let wp = p + 16;
    let tol = Float::with_val(wp, ctx.tol() / 4u32);
    let lv = ctx.quadrature_levels;
    let mu3 = mu_k_1pxyz_star(3, &ctx.raised(4))?;
    let a = integrate_0_pi(|t| Ok(cl2(t, wp)?.pow(3u32)), &tol, wp, lv)?;
    let b = integrate_0_pi(
        |t| {
            let l = log2sin(t, wp);
            Ok(Float::with_val(wp, t.square_ref()) * l.square() * cl2(t, wp)?)
        },
        &tol,
        wp,
        lv,
    )?;
    let ls73 = cexpr_eval_prec(&gen_ls_pi_table(7, 3)?, wp)?;
    let pi4 = Float::with_val(wp, Constant::Pi).pow(4u32);
    let rhs = (a * 2u32 + b * 3u32 - ls73) / pi4;
    let residual = Float::with_val(wp, &mu3 - &rhs).abs();
    Ok(CubicCheck {
        mu3: Float::with_val(p, mu3),
        rhs: Float::with_val(p, rhs),
        residual: Float::with_val(p, residual),
    })
}

/// `μ(1+x, …, 1+x, 1+x+y+z)` with `k` copies of `1+x`:
/// `-Ls^{(1)}_{k+3}(π)/π² - (1/π²) ∫_0^π Ls_{k+1}(θ) log(2 sin(θ/2)) dθ`.
pub fn mu_mixed_1x_1xyz(k: u32, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let wp = p + 16;
    let tol = Float::with_val(wp, ctx.tol() / 4u32);
    let lv = ctx.quadrature_levels;
    let inner_tol = Float::with_val(wp, &tol / 64u32);
    let ls = |t: &Float| -> Result<Float> {
        match k {
            0 => Ok(Float::with_val(wp, -t)),
            1 => cl2(t, wp),
            _ => ls_at_angle(k + 1, 0, t, wp, &inner_tol, lv),
        }
    };
    let integral = integrate_0_pi(|t| Ok(ls(t)? * log2sin(t, wp)), &tol, wp, lv)?;
    let g = gen_ls_pi_extract(k + 3, 1, &ctx.raised(4))?.value;
    let pi2 = Float::with_val(wp, Constant::Pi).square();
    Ok(Float::with_val(p, -(g + integral) / pi2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahler::closed::{mu_k_1pxyz_star_closed, mu_mixed_closed};
    use crate::mpcore::make_context;
    use crate::symconst::cexpr_eval;

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() < tol
    }

    #[test]
    fn star_quadrature_matches_closed_forms() {
        let ctx = make_context(25).unwrap();
        for k in 1..=2 {
            let a = mu_k_1pxyz_star(k, &ctx).unwrap();
            let b = cexpr_eval(&mu_k_1pxyz_star_closed(k).unwrap(), &ctx).unwrap();
            assert!(close(&a, &b, 1e-23), "k = {k}: {a} vs {b}");
        }
    }

    #[test]
    fn parseval() {
        let ctx = make_context(30).unwrap();
        let e = ctx.pi().pow(5u32) / 180u32;
        assert!(close(&parseval_cl2(&ctx).unwrap(), &e, 1e-29));
    }

    #[test]
    fn cubic_residual() {
        let ctx = make_context(15).unwrap();
        let c = mu3_star_residual(&ctx).unwrap();
        assert!(c.residual < 1e-13, "{}", c.residual);
        assert!((c.mu3.to_f64() - 0.13206530382166951826).abs() < 1e-14);
    }

    #[test]
    fn mixed_matches_closed_forms() {
        let ctx = make_context(15).unwrap();
        for k in 0..=2 {
            let a = mu_mixed_1x_1xyz(k, &ctx).unwrap();
            let b = cexpr_eval(&mu_mixed_closed(k).unwrap(), &ctx).unwrap();
            assert!(close(&a, &b, 1e-13), "k = {k}: {a} vs {b}");
        }
    }
}
