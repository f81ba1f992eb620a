//! Levin u-transform for slowly (including logarithmically) convergent series.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::context::PrecisionContext;
use crate::error::{Error, Result};

/// Result of an accelerated summation.
#[derive(Debug, Clone)]
pub struct Accelerated {
    pub value: Float,
    /// Difference between the two highest transformation orders used.
    pub error: Float,
    pub terms_used: usize,
}

/// Levin u-transform `L_k^{(0)}` with `beta = 1` over partial sums built from `terms`.
///
/// `terms[j]` is the j-th summand (j = 0, 1, ...). Returns `None` if a remainder
/// estimate vanishes.
pub fn levin_u(terms: &[Float], k: usize) -> Option<Float> {
    if terms.len() < k + 1 {
        return None;
    }
    let prec = terms[0].prec();
    let mut partial = Float::new(prec);
    let mut num = Float::new(prec);
    let mut den = Float::new(prec);
    let beta_k = Float::with_val(prec, (k + 1) as u32);
    for (j, t) in terms.iter().enumerate().take(k + 1) {
        partial += t;
        if t.is_zero() {
            return None;
        }
        // omega_j = (beta + j) a_j
        let omega = Float::with_val(prec, t * (j as u32 + 1));
        let ratio = Float::with_val(prec, (j + 1) as u32) / &beta_k;
        let mut w = ratio.pow(k.saturating_sub(1) as u32);
        w *= Integer::from(Integer::binomial_u(k as u32, j as u32));
        if j % 2 == 1 {
            w = -w;
        }
        w /= &omega;
        num += Float::with_val(prec, &w * &partial);
        den += &w;
    }
    if den.is_zero() {
        return None;
    }
    Some(num / den)
}

/// Sums `term(0) + term(1) + ...` with the Levin u-transform.
///
/// Transformation orders are increased until two consecutive estimates agree
/// within `ctx.tail_tolerance`. Internally works at roughly twice the working
/// precision to absorb the cancellation inherent to the transform.
pub fn accelerate_sum(
    mut term: impl FnMut(usize, u32) -> Float,
    ctx: &PrecisionContext,
    max_order: usize,
) -> Result<Accelerated> {
    let prec = ctx.prec() * 2 + 64;
    let tol = ctx.tol();
    let mut terms: Vec<Float> = Vec::new();
    let mut prev: Option<Float> = None;
    let mut k = 4;
    while k <= max_order {
        while terms.len() < k + 1 {
            let j = terms.len();
            terms.push(Float::with_val(prec, term(j, prec)));
        }
        let est = levin_u(&terms, k).ok_or_else(|| Error::exhausted("levin_u", "vanishing remainder estimate"))?;
        if let Some(p) = &prev {
            let diff = Float::with_val(prec, &est - p).abs();
            if diff <= tol {
                return Ok(Accelerated {
                    value: Float::with_val(ctx.prec(), &est),
                    error: Float::with_val(ctx.prec(), &diff),
                    terms_used: terms.len(),
                });
            }
        }
        prev = Some(est);
        k += 2;
    }
    Err(Error::exhausted("accelerate_sum", format!("no agreement between successive Levin orders up to {max_order}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::context::make_context;

    #[test]
    fn basel_problem() {
        let ctx = make_context(25).unwrap();
        let r = accelerate_sum(|j, p| Float::with_val(p, (j + 1) as u32).square().recip(), &ctx, 200).unwrap();
        let pi = ctx.pi();
        let expect = Float::with_val(ctx.prec(), pi.square_ref()) / 6u32;
        let d = Float::with_val(ctx.prec(), &r.value - &expect).abs();
        assert!(d < 1e-24, "{d}");
    }

    #[test]
    fn alternating_log2() {
        let ctx = make_context(30).unwrap();
        let r = accelerate_sum(
            |j, p| {
                let v = Float::with_val(p, (j + 1) as u32).recip();
                if j % 2 == 1 {
                    -v
                } else {
                    v
                }
            },
            &ctx,
            200,
        )
        .unwrap();
        let d = Float::with_val(ctx.prec(), &r.value - ctx.log2()).abs();
        assert!(d < 1e-29, "{d}");
    }

    #[test]
    fn zero_term_is_reported() {
        let ctx = make_context(10).unwrap();
        let r = accelerate_sum(|_, p| Float::new(p), &ctx, 20);
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }
}
