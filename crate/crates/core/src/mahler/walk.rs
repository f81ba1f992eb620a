//! Moments `W_n(s)` of the distance travelled by an `n`-step planar walk with
//! unit steps in uniformly random directions, and their derivatives at `s = 0`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mahler::closed::{mu2_1pxyz_exact, mu_k_1pxyz_star_closed};
use crate::mpcore::{make_context, PrecisionContext};
use crate::specfun::hypergeometric_pfq_prec;
use crate::symconst::cexpr_eval_prec;

fn gamma(x: Float) -> Float {
    x.gamma()
}

/// `W_2(s) = Γ(1+s)/Γ(1+s/2)²` and
/// `W_3(s) = (√3/2π) 3^{s+1} Γ(1+s/2)²/Γ(s+2) ₃F₂((s+2)/2, (s+2)/2, (s+2)/2; 1, (s+3)/2; 1/4)`.
pub fn walk_moment(n: u32, s: &Float, ctx: &PrecisionContext) -> Result<Float> {
    walk_moment_prec(n, s, ctx.prec(), ctx)
}

fn walk_moment_prec(n: u32, s: &Float, prec: u32, ctx: &PrecisionContext) -> Result<Float> {
    let wp = prec + 16;
    let s = Float::with_val(wp, s);
    if s <= -2 {
        return Err(Error::invalid("W_n(s) is evaluated for s > -2"));
    }
    let half = Float::with_val(wp, &s / 2u32);
    let g_half = gamma(Float::with_val(wp, 1 + &half));
    let v = match n {
        2 => gamma(Float::with_val(wp, 1 + &s)) / g_half.square(),
        3 => {
            let a = Float::with_val(wp, 1 + &half);
            let upper = [a.clone(), a.clone(), a];
            let lower = [Float::with_val(wp, 1), Float::with_val(wp, &s + 3u32) / 2u32];
            let f = hypergeometric_pfq_prec(&upper, &lower, &Float::with_val(wp, 0.25), wp, ctx)?;
            let pi = Float::with_val(wp, Constant::Pi);
            let pre = Float::with_val(wp, 3).sqrt() / (pi * 2u32);
            let pow3 = Float::with_val(wp, 3).pow(Float::with_val(wp, &s + 1u32));
            let g = g_half.square() / gamma(Float::with_val(wp, &s + 2u32));
            pre * pow3 * g * f
        }
        _ => return Err(Error::Unsupported(format!("W_{n}(s) has no implemented closed form"))),
    };
    Ok(Float::with_val(prec, v))
}

/// Central-difference weights for the `k`-th derivative on the nodes `-m..=m`.
fn stencil(k: u32, m: i64) -> Vec<Rational> {
    let size = (2 * m + 1) as usize;
    // Vandermonde system Σ_j w_j j^p = k! δ_{pk}
    let mut a: Vec<Vec<Rational>> = (0..size)
        .map(|p| {
            let mut row: Vec<Rational> = (-m..=m).map(|j| Rational::from(Integer::from(j).pow(p as u32))).collect();
            let rhs = if p as u32 == k { Rational::from(Integer::factorial(k)) } else { Rational::new() };
            row.push(rhs);
            row
        })
        .collect();
    for c in 0..size {
        let piv = (c..size).find(|&r| a[r][c] != 0).expect("Vandermonde matrix is invertible");
        a.swap(c, piv);
        let inv = Rational::from(1) / a[c][c].clone();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..size {
            if r != c && a[r][c] != 0 {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= Rational::from(&f * y);
                }
            }
        }
    }
    a.into_iter().map(|row| row[size].clone()).collect()
}

/// `W_n^{(k)}(0) = μ_k(1 + x_1 + … + x_{n-1})`.
///
/// For `n = 2, 3` the closed forms are differentiated numerically with step
/// `h = 10^{-D/(k+1)}` on a symmetric stencil of `2⌊k/2⌋ + 3` points, `D` the
/// target digits, at a working precision raised by `kD/(k+1)` digits. For
/// `n = 4` the known Mahler measures are returned for `k = 1, 2`.
pub fn walk_derivative(n: u32, k: u32, ctx: &PrecisionContext) -> Result<Float> {
    if k == 0 {
        return Err(Error::invalid("derivative order must be at least 1"));
    }
    match n {
        2 | 3 => {}
        4 => {
            let e = match k {
                1 => mu_k_1pxyz_star_closed(1)?,
                2 => mu2_1pxyz_exact(),
                _ => return Err(Error::Unsupported(format!("W_4^({k})(0) has no stored closed form"))),
            };
            return cexpr_eval_prec(&e, ctx.prec());
        }
        _ => return Err(Error::Unsupported(format!("W_{n}^({k})(0) is not available"))),
    }
    let d = ctx.target_digits;
    let extra = (k * d).div_ceil(k + 1);
    let work = make_context(d + extra)?;
    let wp = work.prec() + 16;
    let h = Float::with_val(wp, 10).pow(-((d / (k + 1)).max(1) as i32));
    let m = (k / 2 + 1) as i64;
    let weights = stencil(k, m);
    let mut acc = Float::new(wp);
    for (j, w) in (-m..=m).zip(weights.iter()) {
        if *w == 0 {
            continue;
        }
        let s = Float::with_val(wp, &h * j);
        let f = walk_moment_prec(n, &s, wp, &work)?;
        acc += f * Float::with_val(wp, w);
    }
    acc /= h.pow(k);
    Ok(Float::with_val(ctx.prec(), acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahler::closed::mu_k_1px;
    use crate::mahler::mu2::mu2_1pxy;
    use crate::symconst::cexpr_eval;

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() < tol
    }

    #[test]
    fn moment_values() {
        let ctx = make_context(30).unwrap();
        let p = ctx.prec();
        assert!(close(&walk_moment(2, &ctx.float(2), &ctx).unwrap(), &Float::with_val(p, 2), 1e-30));
        assert!(close(&walk_moment(3, &ctx.zero(), &ctx).unwrap(), &Float::with_val(p, 1), 1e-30));
        assert!(close(&walk_moment(3, &ctx.float(2), &ctx).unwrap(), &Float::with_val(p, 3), 1e-29));
        assert!(close(&walk_moment(3, &ctx.float(4), &ctx).unwrap(), &Float::with_val(p, 15), 1e-28));
        // W_3(1) from mpmath
        let w1 = Float::with_val(p, Float::parse("1.57459723755189365749469218308").unwrap());
        assert!(close(&walk_moment(3, &ctx.float(1), &ctx).unwrap(), &w1, 1e-28));
        assert!(walk_moment(5, &ctx.float(1), &ctx).is_err());
    }

    #[test]
    fn stencils() {
        let w = stencil(1, 1);
        assert_eq!(w, vec![Rational::from((-1, 2)), Rational::new(), Rational::from((1, 2))]);
        let w = stencil(2, 2);
        let e: Vec<Rational> =
            [(-1, 12), (4, 3), (-5, 2), (4, 3), (-1, 12)].iter().map(|&q| Rational::from(q)).collect();
        assert_eq!(w, e);
    }

    #[test]
    fn derivatives_are_mahler_measures() {
        let ctx = make_context(20).unwrap();
        for k in 1..=4 {
            let a = walk_derivative(2, k, &ctx).unwrap();
            let b = cexpr_eval(&mu_k_1px(k).unwrap(), &ctx).unwrap();
            assert!(close(&a, &b, 1e-8), "k = {k}: {a} vs {b}");
        }
        let a = walk_derivative(3, 2, &ctx).unwrap();
        assert!(close(&a, &mu2_1pxy(&ctx).unwrap(), 1e-10), "{a}");
        assert!(walk_derivative(5, 1, &ctx).is_err());
    }
}
