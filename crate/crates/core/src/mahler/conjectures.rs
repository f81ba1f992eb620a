//! Numerical checks of two conjectured evaluations of Mahler measures of
//! linear forms in terms of integrals of Dedekind eta products.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::Result;
use crate::mahler::oracle::{mu_oracle, MeasureSpec};
use crate::mpcore::PrecisionContext;
use crate::quadrature::integrate_half_line;
use crate::specfun::eta_q_prec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RvConjecture {
    /// `μ(1+x+y+z+w) = (15/(4π²))^{5/2} ∫_0^∞ {η³(e^{-3t})η³(e^{-5t}) + η³(e^{-t})η³(e^{-15t})} t³ dt`.
    FiveTerm,
    /// `μ(1+x+y+z+w+v) = (3/π²)³ ∫_0^∞ η²(e^{-t})η²(e^{-2t})η²(e^{-3t})η²(e^{-6t}) t⁴ dt`.
    SixTerm,
}

#[derive(Debug, Clone)]
pub struct RvCheck {
    pub lhs: Float,
    /// Error estimate of the torus integral (a three-standard-error bar for the six-term sum).
    pub lhs_error: Float,
    pub rhs: Float,
    pub abs_diff: Float,
}

fn eta_pow(c: u32, t: &Float, e: u32, wp: u32) -> Result<Float> {
    let v = eta_q_prec(&Float::with_val(wp, t * c), wp)?;
    Ok(v.pow(e))
}

/// The η-integral side, with the quadrature tolerance `tol`.
pub fn rv_rhs(which: RvConjecture, tol: &Float, prec: u32, levels: u32) -> Result<Float> {
    let wp = prec + 16;
    let pi2 = Float::with_val(wp, Constant::Pi).square();
    let failure = std::sync::Mutex::new(None);
    let guard = |r: Result<Float>| match r {
        Ok(v) => v,
        Err(e) => {
            failure.lock().expect("failure slot poisoned").get_or_insert(e);
            Float::new(wp)
        }
    };
    let (integral, scale) = match which {
        RvConjecture::FiveTerm => {
            let f = |t: &Float| {
                guard((|| {
                    let a = eta_pow(3, t, 3, wp)? * eta_pow(5, t, 3, wp)?;
                    let b = eta_pow(1, t, 3, wp)? * eta_pow(15, t, 3, wp)?;
                    Ok((a + b) * Float::with_val(wp, t.pow(3u32)))
                })())
            };
            let i = integrate_half_line(f, &Float::new(wp), tol, wp, levels)?.value;
            let s = (Float::with_val(wp, 15) / (pi2 * 4u32)).pow(Float::with_val(wp, 2.5));
            (i, s)
        }
        RvConjecture::SixTerm => {
            let f = |t: &Float| {
                guard((|| {
                    let mut v = Float::with_val(wp, t.pow(4u32));
                    for c in [1u32, 2, 3, 6] {
                        v *= eta_pow(c, t, 2, wp)?;
                    }
                    Ok(v)
                })())
            };
            let i = integrate_half_line(f, &Float::new(wp), tol, wp, levels)?.value;
            let s = (Float::with_val(wp, 3) / pi2).pow(3u32);
            (i, s)
        }
    };
    if let Some(e) = failure.into_inner().expect("failure slot poisoned") {
        return Err(e);
    }
    Ok(Float::with_val(prec, integral * scale))
}

/// Both sides of a conjecture. The five-term measure uses nested quadrature over
/// the 2-torus at the context's tolerance; the six-term measure uses
/// randomized quasi-Monte Carlo over the 3-torus.
pub fn rv_conjecture_check(which: RvConjecture, ctx: &PrecisionContext) -> Result<RvCheck> {
    let p = ctx.prec();
    let spec = match which {
        RvConjecture::FiveTerm => MeasureSpec::Mu5Term,
        RvConjecture::SixTerm => MeasureSpec::Mu6Term,
    };
    let l = mu_oracle(&spec, ctx)?;
    let rhs = rv_rhs(which, &ctx.tol(), p, ctx.quadrature_levels)?;
    let lhs = Float::with_val(p, &l.value);
    let abs_diff = Float::with_val(p, &lhs - &rhs).abs();
    Ok(RvCheck { lhs, lhs_error: Float::with_val(p, l.error), rhs, abs_diff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::make_context;

    #[test]
    fn eta_integrals() {
        let ctx = make_context(20).unwrap();
        let p = ctx.prec();
        let r5 = rv_rhs(RvConjecture::FiveTerm, &ctx.tol(), p, ctx.quadrature_levels).unwrap();
        let e5 = Float::with_val(p, Float::parse("0.544412561752185585195878").unwrap());
        assert!(Float::with_val(p, &r5 - &e5).abs() < 1e-20, "{r5}");
        let r6 = rv_rhs(RvConjecture::SixTerm, &ctx.tol(), p, ctx.quadrature_levels).unwrap();
        let e6 = Float::with_val(p, Float::parse("0.6273170748369098071835866").unwrap());
        assert!(Float::with_val(p, &r6 - &e6).abs() < 1e-20, "{r6}");
    }

    #[test]
    fn six_term_within_error_bar() {
        let ctx = make_context(10).unwrap();
        let c = rv_conjecture_check(RvConjecture::SixTerm, &ctx).unwrap();
        assert!(c.abs_diff < 1e-3, "{} vs {}", c.lhs, c.rhs);
    }
}
