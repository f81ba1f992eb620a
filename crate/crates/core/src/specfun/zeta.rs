//! Riemann zeta at integers and Bernoulli numbers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;

fn zeta_cache() -> &'static Mutex<HashMap<(u32, u32), Float>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Float>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: u32) -> Rational {
    let mut b = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while b.len() <= n as usize {
        let m = b.len() as u32;
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            if *bk == 0 {
                continue;
            }
            let c = Integer::from(Integer::binomial_u(m + 1, k as u32));
            acc += Rational::from(bk * c);
        }
        acc /= m + 1;
        b.push(-acc);
    }
    b[n as usize].clone()
}

/// `ζ(s)` for an integer `s ≥ 2`, correct to about `prec` bits.
pub fn zeta_prec(s: u32, prec: u32) -> Float {
    assert!(s >= 2, "zeta_prec requires s >= 2");
    if let Some(v) = zeta_cache().lock().expect("zeta cache poisoned").get(&(s, prec)) {
        return v.clone();
    }
    let v = if (s as f64) > prec as f64 + 2.0 {
        Float::with_val(prec, 1) + Float::with_val(prec, Float::i_exp(1, -(s as i32)))
    } else if direct_terms(s, prec) <= 24 {
        direct_zeta(s, prec)
    } else {
        alternating_zeta(s, prec)
    };
    zeta_cache().lock().expect("zeta cache poisoned").insert((s, prec), v.clone());
    v
}

/// Terms of `Σ n^{-s}` needed so that the tail `N^{1-s}/(s-1)` is below `2^-prec`.
fn direct_terms(s: u32, prec: u32) -> u32 {
    let target = prec as f64 * std::f64::consts::LN_2;
    let mut n = 2u32;
    while ((s - 1) as f64) * (n as f64).ln() + ((s - 1) as f64).ln() < target {
        n += 1;
        if n > 64 {
            break;
        }
    }
    n
}

fn direct_zeta(s: u32, prec: u32) -> Float {
    let wp = prec + 16;
    let n = direct_terms(s, prec);
    let mut acc = Float::new(wp);
    for j in (1..=n).rev() {
        let t = Float::with_val(wp, j).pow(s).recip();
        acc += t;
    }
    Float::with_val(prec, acc)
}

/// Accelerated alternating series for `η(s)`, converted to `ζ(s)`.
fn alternating_zeta(s: u32, prec: u32) -> Float {
    let wp = prec + 32;
    let n = (wp as f64 * std::f64::consts::LN_2 / (3.0 + 8f64.sqrt()).ln()).ceil() as u32 + 4;
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut term = Rational::from((1, n));
    let mut sum = Rational::from((1, n));
    d.push(Rational::from(&sum * n));
    for i in 1..=n {
        term *= Rational::from(((n + i - 1) as u64 * (n - i + 1) as u64 * 4, (2 * i - 1) as u64 * (2 * i) as u64));
        sum += &term;
        d.push(Rational::from(&sum * n));
    }
    let dn = d[n as usize].clone();
    let mut acc = Float::new(wp);
    for k in 0..n {
        let num = Rational::from(&d[k as usize] - &dn);
        let mut t = Float::with_val(wp, &num);
        t /= Float::with_val(wp, k + 1).pow(s);
        if k % 2 == 1 {
            acc -= t;
        } else {
            acc += t;
        }
    }
    let mut denom = Float::with_val(wp, &dn);
    let two_pow = Float::with_val(wp, Float::i_exp(1, 1 - s as i32));
    denom *= Float::with_val(wp, 1 - two_pow);
    let v = -acc / denom;
    Float::with_val(prec, v)
}

/// `ζ(s)` for integer `s ≥ 2` at the context's working precision.
pub fn zeta(s: u32, ctx: &PrecisionContext) -> Result<Float> {
    if s < 2 {
        return Err(Error::invalid(format!("zeta({s}) is not defined by a convergent series")));
    }
    Ok(zeta_prec(s, ctx.prec()))
}

/// `ζ(-m)` for `m ≥ 0` via the functional equation, with `ζ(0) = -1/2`.
pub(crate) fn zeta_nonpositive(m: u32, prec: u32) -> Float {
    if m == 0 {
        return Float::with_val(prec, -0.5);
    }
    if m % 2 == 0 {
        return Float::new(prec);
    }
    // ζ(-m) = (-1)^{(m+1)/2} 2 m! ζ(m+1) / (2π)^{m+1}
    let pi2 = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    let mut v = zeta_prec(m + 1, prec) * 2u32;
    v *= Float::with_val(prec, Integer::from(Integer::factorial(m)));
    v /= pi2.pow(m + 1);
    if ((m + 1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}
