//! Numerical identities used as cross-checks: the decay bound between π/3
//! and π, and the real form of the generating function.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::numeric::{ls_numeric_prec, LogSineSpec};
use crate::error::Result;
use crate::mpcore::{accelerate_sum, PrecisionContext};
use crate::quadrature::integrate_1d_tol;

#[derive(Debug, Clone)]
pub struct DecayCheck {
    pub k: u32,
    pub difference: Float,
    pub bound: Float,
}

impl DecayCheck {
    pub fn holds(&self) -> bool {
        self.difference <= self.bound
    }
}

/// `|Ls_{k+1}(π/3) - Ls_{k+1}(π)|` against `(2π/3) log^k 2`, both sides by quadrature.
pub fn decay_bound(k: u32, ctx: &PrecisionContext) -> Result<DecayCheck> {
    let p = ctx.prec();
    let tol = ctx.tol();
    let lv = ctx.quadrature_levels;
    let a = ls_numeric_prec(&LogSineSpec::plain(k + 1, Rational::from((1, 3)))?, p, &tol, lv)?;
    let b = ls_numeric_prec(&LogSineSpec::plain(k + 1, Rational::from(1))?, p, &tol, lv)?;
    let difference = Float::with_val(p, &a - &b).abs();
    let bound = Float::with_val(p, Constant::Pi) * 2u32 / 3u32 * Float::with_val(p, Constant::Log2).pow(k);
    Ok(DecayCheck { k, difference, bound })
}

/// `(-1)^n C(x, n)` for real `x`, updated in place.
fn next_signed_binom(c: &mut Float, x: &Float, n: u32) {
    // (-1)^{n+1} C(x, n+1) = -(-1)^n C(x, n) (x - n)/(n + 1)
    let f = Float::with_val(c.prec(), x - n) / (n + 1);
    *c *= -f;
}

/// `Σ_n term(n, (-1)^n C(x,n))`, accelerated.
fn binom_weighted_sum(
    x: &Float,
    wp: u32,
    ctx: &PrecisionContext,
    term: impl Fn(usize, &Float) -> Float,
) -> Result<Float> {
    let mut coef = Float::with_val(wp, 1);
    let mut next = 0u32;
    Ok(accelerate_sum(
        |n, _| {
            while next < n as u32 {
                next_signed_binom(&mut coef, x, next);
                next += 1;
            }
            term(n, &coef)
        },
        &ctx.raised(4),
        400,
    )?
    .value)
}

/// Left and right sides of
/// `∫_0^π (2 sin(θ/2))^x e^{θy} dθ = Σ_n (-1)^n C(x,n) (y((-1)^n e^{πy} - cos(πx/2)) - (n - x/2) sin(πx/2)) / ((n - x/2)² + y²)`.
pub fn realgf_sides(x: &Float, y: &Float, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let p = ctx.prec();
    let wp = p + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let lhs = integrate_1d_tol(
        |t: &Float| {
            let s = Float::with_val(wp, t / 2u32).sin() * 2u32;
            let e = Float::with_val(wp, t * y).exp();
            s.pow(x) * e
        },
        &Float::new(wp),
        &pi,
        &Float::with_val(wp, ctx.tol() / 4u32),
        wp,
        ctx.quadrature_levels,
    )?
    .value;
    let half_x = Float::with_val(wp, x / 2u32);
    let (sn, cs) = Float::with_val(wp, &pi * &half_x).sin_cos(Float::new(wp));
    let e_py = Float::with_val(wp, &pi * y).exp();
    let y2 = Float::with_val(wp, y.square_ref());
    // the (-1)^n e^{πy} part alternates, the rest has eventually constant sign
    let alt = binom_weighted_sum(x, wp, ctx, |n, coef| {
        let d = Float::with_val(wp, n) - &half_x;
        let den = Float::with_val(wp, d.square_ref()) + &y2;
        let v = Float::with_val(wp, coef * y) * &e_py / den;
        if n % 2 == 0 {
            v
        } else {
            -v
        }
    })?;
    let mono = binom_weighted_sum(x, wp, ctx, |n, coef| {
        let d = Float::with_val(wp, n) - &half_x;
        let num = -Float::with_val(wp, y * &cs) - Float::with_val(wp, &d * &sn);
        let den = Float::with_val(wp, d.square_ref()) + &y2;
        Float::with_val(wp, coef * num) / den
    })?;
    let rhs = alt + mono;
    Ok((Float::with_val(p, lhs), Float::with_val(p, rhs)))
}

/// Both sides of `Σ_n Ls^{(1)}_{n+2}(π) λ^n/n! = Σ_n C(λ,n) ((-1)^n cos(πλ/2) - 1)/(n - λ/2)²`;
/// the left side is `-∫_0^π θ (2 sin(θ/2))^λ dθ` by quadrature.
pub fn realgf_one_variable(lambda: &Float, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let p = ctx.prec();
    let wp = p + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let lhs = integrate_1d_tol(
        |t: &Float| {
            let s = Float::with_val(wp, t / 2u32).sin() * 2u32;
            s.pow(lambda) * t
        },
        &Float::new(wp),
        &pi,
        &Float::with_val(wp, ctx.tol() / 4u32),
        wp,
        ctx.quadrature_levels,
    )?
    .value;
    let cs = (Float::with_val(wp, &pi * lambda) / 2u32).cos();
    let half = Float::with_val(wp, lambda / 2u32);
    // with c_n = (-1)^n C(λ,n): C(λ,n)((-1)^n cos - 1) = c_n cos - (-1)^n c_n
    let mono = binom_weighted_sum(lambda, wp, ctx, |n, coef| {
        let d = Float::with_val(wp, n) - &half;
        Float::with_val(wp, coef * &cs) / Float::with_val(wp, d.square_ref())
    })?;
    let alt = binom_weighted_sum(lambda, wp, ctx, |n, coef| {
        let d = Float::with_val(wp, n) - &half;
        let v = Float::with_val(wp, coef / Float::with_val(wp, d.square_ref()));
        if n % 2 == 0 {
            -v
        } else {
            v
        }
    })?;
    let rhs = alt + mono;
    Ok((Float::with_val(p, -lhs), Float::with_val(p, rhs)))
}
