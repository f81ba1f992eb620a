//! Log-sine integrals by direct quadrature.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;
use crate::quadrature::integrate_piecewise;

/// `Ls^{(k)}_n(σ) = -∫_0^σ θ^k log^{n-1-k}|2 sin(θ/2)| dθ` with `σ = sigma·π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogSineSpec {
    pub n: u32,
    pub k: u32,
    /// Angle as a multiple of π, in (0, 2].
    pub sigma: Rational,
}

impl LogSineSpec {
    pub fn new(n: u32, k: u32, sigma: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("log-sine order n must be at least 1"));
        }
        if k >= n {
            return Err(Error::invalid(format!("moment power k = {k} must be below n = {n}")));
        }
        if sigma <= 0 || sigma > 2 {
            return Err(Error::invalid(format!("angle {sigma}·π outside (0, 2π]")));
        }
        Ok(LogSineSpec { n, k, sigma })
    }

    /// Plain `Ls_n(σ)`.
    pub fn plain(n: u32, sigma: Rational) -> Result<Self> {
        Self::new(n, 0, sigma)
    }
}

pub fn ls_numeric(spec: &LogSineSpec, ctx: &PrecisionContext) -> Result<Float> {
    ls_numeric_prec(spec, ctx.prec(), &ctx.tol(), ctx.quadrature_levels)
}

pub(crate) fn ls_numeric_prec(spec: &LogSineSpec, prec: u32, tol: &Float, max_level: u32) -> Result<Float> {
    let wp = prec + 16;
    let sigma = Float::with_val(wp, &spec.sigma) * Float::with_val(wp, Constant::Pi);
    ls_at_angle(spec.n, spec.k, &sigma, prec, tol, max_level)
}

/// `Ls^{(k)}_n(τ)` for a real angle `0 ≤ τ ≤ 2π`.
pub(crate) fn ls_at_angle(n: u32, k: u32, tau: &Float, prec: u32, tol: &Float, max_level: u32) -> Result<Float> {
    let wp = prec + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let sigma = Float::with_val(wp, tau);
    let p = n - 1 - k;
    if p == 0 {
        let v = Float::with_val(wp, (&sigma).pow(k + 1)) / (k + 1);
        return Ok(Float::with_val(prec, -v));
    }
    if sigma.is_zero() {
        return Ok(Float::new(prec));
    }
    // log(2 sin(θ/2)) changes sign at π/3 and 5π/3
    let mut pts = vec![Float::new(wp)];
    for q in [1u32, 5] {
        let b = Float::with_val(wp, &pi * q) / 3u32;
        if b < sigma {
            pts.push(b);
        }
    }
    pts.push(sigma);
    let f = |t: &Float| {
        let s = Float::with_val(wp, t / 2u32).sin() * 2u32;
        let l = s.abs().ln();
        let mut v = l.pow(p);
        if k > 0 {
            v *= Float::with_val(wp, t.pow(k));
        }
        v
    };
    let itol = Float::with_val(wp, tol / 4u32);
    let r = integrate_piecewise(f, &pts, &itol, wp, max_level)?;
    Ok(Float::with_val(prec, -r.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::make_context;
    use crate::specfun::{clausen_glaisher, ClKind, Composition};

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() < tol
    }

    #[test]
    fn ls1_is_minus_sigma() {
        let ctx = make_context(30).unwrap();
        let s = LogSineSpec::plain(1, Rational::from((3, 4))).unwrap();
        let e = -ctx.pi() * 3u32 / 4u32;
        assert!(close(&ls_numeric(&s, &ctx).unwrap(), &e, 1e-30));
    }

    #[test]
    fn top_moment_is_power() {
        let ctx = make_context(30).unwrap();
        let s = LogSineSpec::new(4, 3, Rational::from((1, 2))).unwrap();
        let tau = ctx.pi() / 2u32;
        let e = -Float::with_val(ctx.prec(), tau.pow(4u32)) / 4u32;
        assert!(close(&ls_numeric(&s, &ctx).unwrap(), &e, 1e-30));
    }

    #[test]
    fn ls2_is_clausen() {
        let ctx = make_context(30).unwrap();
        let s = LogSineSpec::plain(2, Rational::from((1, 3))).unwrap();
        let c = clausen_glaisher(ClKind::Cl, &Composition::single(2), &(ctx.pi() / 3u32), &ctx).unwrap();
        assert!(close(&ls_numeric(&s, &ctx).unwrap(), &c, 1e-30));
        let s = LogSineSpec::plain(2, Rational::from(2)).unwrap();
        assert!(ls_numeric(&s, &ctx).unwrap().abs() < 1e-30);
    }

    #[test]
    fn spec_validation() {
        assert!(LogSineSpec::new(0, 0, Rational::from(1)).is_err());
        assert!(LogSineSpec::new(3, 3, Rational::from(1)).is_err());
        assert!(LogSineSpec::new(3, 0, Rational::from(0)).is_err());
        assert!(LogSineSpec::new(3, 0, Rational::from((5, 2))).is_err());
    }
}
