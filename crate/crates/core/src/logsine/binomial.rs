//! Central binomial sums `S_±(n) = Σ_{k≥1} (±1)^{k+1} / (C(2k,k) k^n)`.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;

pub fn central_binomial_sum(plus: bool, n: u32, ctx: &PrecisionContext) -> Result<Float> {
    central_binomial_sum_prec(plus, n, ctx.prec())
}

pub(crate) fn central_binomial_sum_prec(plus: bool, n: u32, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let mut inv_binom = Float::with_val(wp, 0.5);
    let mut acc = Float::new(wp);
    let mut k = 1u32;
    loop {
        let t = Float::with_val(wp, &inv_binom / Float::with_val(wp, k).pow(n));
        // successive terms shrink by at least 1/3, so the tail is below t/2
        let done = t < eps;
        if plus || k % 2 == 1 {
            acc += t;
        } else {
            acc -= t;
        }
        if done {
            break;
        }
        inv_binom *= Float::with_val(wp, k + 1) / Float::with_val(wp, 2 * (2 * k + 1));
        k += 1;
        if k > 1_000_000 {
            return Err(Error::exhausted("central_binomial_sum", "term cap reached"));
        }
    }
    Ok(Float::with_val(prec, acc))
}

/// `Ls^{(1)}_{n+2}(π/3) = -n! (-1/2)^n S_+(n+2)`.
pub fn ls1_pi3_from_central_binomial(n: u32, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let s = central_binomial_sum_prec(true, n + 2, p)?;
    let mut v = s * Float::with_val(p, Integer::from(Integer::factorial(n)));
    v /= Float::with_val(p, Float::i_exp(1, n as i32));
    if n % 2 == 0 {
        v = -v;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::make_context;
    use rug::float::Constant;

    #[test]
    fn apery_and_comtet() {
        let ctx = make_context(40).unwrap();
        let p = ctx.prec();
        let pi = Float::with_val(p, Constant::Pi);
        let sm3 = central_binomial_sum(false, 3, &ctx).unwrap() * 5u32 / 2u32;
        let z3 = crate::specfun::zeta_prec(3, p);
        assert!(Float::with_val(p, &sm3 - &z3).abs() < 1e-45);
        let sp4 = central_binomial_sum(true, 4, &ctx).unwrap();
        let e = Float::with_val(p, (&pi).pow(4u32)) * 17u32 / (36u32 * 90u32);
        assert!(Float::with_val(p, &sp4 - &e).abs() < 1e-45);
        let l2 = ls1_pi3_from_central_binomial(0, &ctx).unwrap();
        let e2 = -Float::with_val(p, pi.square_ref()) / 18u32;
        assert!(Float::with_val(p, &l2 - &e2).abs() < 1e-45);
        let l4 = ls1_pi3_from_central_binomial(2, &ctx).unwrap();
        let e4 = -Float::with_val(p, (&pi).pow(4u32)) * 17u32 / 6480u32;
        assert!(Float::with_val(p, &l4 - &e4).abs() < 1e-45);
    }
}
