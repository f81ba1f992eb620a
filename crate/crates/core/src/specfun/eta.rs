//! Dedekind eta function at the real nome `q = e^{-t}`.

use rug::Float;

use super::polylog::pi;
use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;

/// Crossover below which the modular transformation is applied first.
pub fn eta_crossover(prec: u32) -> Float {
    pi(prec) * Float::with_val(prec, 2).sqrt()
}

/// `η(e^{-t}) = e^{-t/24} Π_{n≥1} (1 - e^{-nt})`.
pub fn eta_q(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    eta_q_prec(t, ctx.prec())
}

pub(crate) fn eta_q_prec(t: &Float, prec: u32) -> Result<Float> {
    if *t <= 0 {
        return Err(Error::invalid("eta_q needs t > 0"));
    }
    if *t < eta_crossover(prec) {
        eta_q_modular(t, prec)
    } else {
        eta_q_series(t, prec)
    }
}

/// Pentagonal-number series `q^{1/24} Σ_{n∈ℤ} (-1)^n q^{n(3n+1)/2}`.
pub fn eta_q_series(t: &Float, prec: u32) -> Result<Float> {
    if *t <= 0 {
        return Err(Error::invalid("eta_q needs t > 0"));
    }
    let wp = prec + 20;
    let t = Float::with_val(wp, t);
    let limit = Float::with_val(wp, wp) * Float::with_val(wp, rug::float::Constant::Log2);
    let mut acc = Float::with_val(wp, 1);
    let mut n = 1i64;
    loop {
        let mut added = false;
        for m in [n, -n] {
            let e = m * (3 * m + 1) / 2;
            let x = Float::with_val(wp, &t * e);
            if x > limit {
                continue;
            }
            added = true;
            let term = (-x).exp();
            if n % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        if !added {
            break;
        }
        n += 1;
        if n > 10_000_000 {
            return Err(Error::exhausted("eta_q", "pentagonal series did not terminate"));
        }
    }
    let pref = (Float::with_val(wp, -&t) / 24u32).exp();
    Ok(Float::with_val(prec, acc * pref))
}

/// `η(e^{-t}) = sqrt(2π/t) η(e^{-4π²/t})`.
pub fn eta_q_modular(t: &Float, prec: u32) -> Result<Float> {
    if *t <= 0 {
        return Err(Error::invalid("eta_q needs t > 0"));
    }
    let wp = prec + 20;
    let t = Float::with_val(wp, t);
    let two_pi = pi(wp) * 2u32;
    let dual = Float::with_val(wp, two_pi.square_ref()) / &t;
    let scale = Float::with_val(wp, &two_pi / &t).sqrt();
    let v = eta_q_series(&dual, wp)?;
    Ok(Float::with_val(prec, v * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::make_context;

    fn product_form(t: &Float, prec: u32) -> Float {
        let wp = prec + 20;
        let q = Float::with_val(wp, -t).exp();
        let mut acc = Float::with_val(wp, 1);
        let mut qn = q.clone();
        while qn > Float::with_val(wp, Float::i_exp(1, -(wp as i32))) {
            acc *= Float::with_val(wp, 1 - &qn);
            qn *= &q;
        }
        acc * (Float::with_val(wp, -t) / 24u32).exp()
    }

    #[test]
    fn self_dual_point() {
        let ctx = make_context(40).unwrap();
        let p = ctx.prec();
        let t = pi(p) * 2u32;
        let v = eta_q(&t, &ctx).unwrap();
        let quarter = Float::with_val(p, 0.25).gamma();
        let e = quarter / (Float::with_val(p, pi(p).sqrt().sqrt() * pi(p).sqrt()) * 2u32);
        assert!(Float::with_val(p, &v - &e).abs() < 1e-45, "{v} vs {e}");
    }

    #[test]
    fn product_and_series_agree() {
        let p = 180;
        let t = Float::with_val(p, 1);
        let a = eta_q_series(&t, p).unwrap();
        let b = product_form(&t, p);
        assert!(Float::with_val(p, &a - &b).abs() < 1e-50);
    }

    #[test]
    fn modular_and_direct_paths_agree() {
        let p = 180;
        for x in [0.5, 3.0, 7.5] {
            let t = Float::with_val(p, x);
            let a = eta_q_series(&t, p).unwrap();
            let b = eta_q_modular(&t, p).unwrap();
            assert!(Float::with_val(p, &a - &b).abs() < 1e-50, "t={x}");
        }
    }

    #[test]
    fn rejects_nonpositive() {
        let ctx = make_context(10).unwrap();
        assert!(eta_q(&Float::with_val(64, 0), &ctx).is_err());
        assert!(eta_q(&Float::with_val(64, -1), &ctx).is_err());
    }
}
