//! Generalized hypergeometric series `pFq(a; b; z)` for real parameters.

use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::{accelerate_sum, PrecisionContext};

fn nonpositive_integer(x: &Float) -> bool {
    *x <= 0 && x.is_integer()
}

/// `Σ_k Π(a_i)_k / Π(b_j)_k · z^k / k!`.
pub fn hypergeometric_pfq(upper: &[Float], lower: &[Float], z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    hypergeometric_pfq_prec(upper, lower, z, ctx.prec(), ctx)
}

pub(crate) fn hypergeometric_pfq_prec(
    upper: &[Float],
    lower: &[Float],
    z: &Float,
    prec: u32,
    ctx: &PrecisionContext,
) -> Result<Float> {
    if lower.iter().any(nonpositive_integer) {
        return Err(Error::invalid("lower parameter is a non-positive integer"));
    }
    let wp = prec + 32;
    let p = upper.len();
    let q = lower.len();
    let az = Float::with_val(wp, z.abs_ref());
    let terminating = upper.iter().any(nonpositive_integer);
    if !terminating && p > q + 1 && !z.is_zero() {
        return Err(Error::Divergent(format!("{p}F{q} diverges for z != 0")));
    }
    if !terminating && p == q + 1 {
        if az > 1 {
            return Err(Error::Divergent("|z| > 1".into()));
        }
        if az == 1 {
            let mut excess = Float::new(wp);
            for b in lower {
                excess += b;
            }
            for a in upper {
                excess -= a;
            }
            if z.is_sign_positive() && excess <= 0 {
                return Err(Error::Divergent("parameter excess must be positive at z = 1".into()));
            }
            if excess <= -1 {
                return Err(Error::Divergent("parameter excess too small at z = -1".into()));
            }
            return unit_argument(upper, lower, z, prec, ctx);
        }
    }
    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let mut term = Float::with_val(wp, 1);
    let mut acc = Float::with_val(wp, 1);
    let mut k = 0u32;
    loop {
        let mut ratio = Float::with_val(wp, z);
        for a in upper {
            ratio *= Float::with_val(wp, a + k);
        }
        for b in lower {
            ratio /= Float::with_val(wp, b + k);
        }
        ratio /= k + 1;
        term *= &ratio;
        acc += &term;
        k += 1;
        if term.is_zero() {
            break;
        }
        let r = Float::with_val(wp, ratio.abs_ref()).to_f64();
        let rmax = if p == q + 1 { r.max(az.to_f64()) } else { r };
        if rmax < 1.0 {
            let bound = Float::with_val(wp, term.abs_ref()) * (rmax / (1.0 - rmax));
            if bound < eps {
                break;
            }
        }
        if k as usize > ctx.max_terms {
            return Err(Error::exhausted("hypergeometric_pfq", "term cap reached"));
        }
    }
    Ok(Float::with_val(prec, acc))
}

fn unit_argument(upper: &[Float], lower: &[Float], z: &Float, prec: u32, ctx: &PrecisionContext) -> Result<Float> {
    let mut state: Option<(usize, Float)> = None;
    let sign = if z.is_sign_negative() { -1 } else { 1 };
    let local = ctx.with_target(((prec as f64) / std::f64::consts::LOG2_10) as u32);
    let r = accelerate_sum(
        |j, wp| {
            let (mut k, mut t) = match state.take() {
                Some((k, t)) if k <= j => (k, t),
                _ => (0, Float::with_val(wp, 1)),
            };
            while k < j {
                for a in upper {
                    t *= Float::with_val(wp, a + k as u32);
                }
                for b in lower {
                    t /= Float::with_val(wp, b + k as u32);
                }
                t /= k as u32 + 1;
                t *= sign;
                k += 1;
            }
            state = Some((k, t.clone()));
            t
        },
        &local,
        400,
    )?;
    Ok(Float::with_val(prec, r.value))
}
