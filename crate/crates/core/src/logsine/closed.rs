//! Exact values of `Ls_n(π)` and the transcribed tables at π/3 and π.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{PrecisionContext, TruncatedSeries};
use crate::symconst::{parse_expr, ConstExpr};

/// `α(m) = (1 - 2^{1-m}) ζ(m)`, with `α(1) = 0`.
fn alpha(m: u32) -> ConstExpr {
    if m < 2 {
        return ConstExpr::zero();
    }
    let f = Rational::from(1) - Rational::from((1, Integer::from(1) << (m - 1)));
    ConstExpr::zeta(m).scale(&f)
}

fn factorial(n: u32) -> Rational {
    Rational::from(Integer::from(Integer::factorial(n)))
}

/// `Ls_n(π)` by the classical recursion in `n`.
pub fn ls_pi_recursive(n: u32) -> Result<ConstExpr> {
    if n == 0 {
        return Err(Error::invalid("Ls_n(π) needs n >= 1"));
    }
    let mut vals: Vec<ConstExpr> = vec![ConstExpr::zero(), ConstExpr::pi().neg()];
    for m in 2..=n {
        let j = m - 2;
        let mut acc = ConstExpr::pi().mul(&alpha(j + 1));
        for k in 1..=j.saturating_sub(2) {
            let c = Rational::from((if k % 2 == 0 { 1 } else { -1 }, 1)) / factorial(k + 1);
            acc = acc.add(&alpha(j - k).mul(&vals[(k + 2) as usize]).scale(&c));
        }
        let mut f = factorial(j);
        if j % 2 == 1 {
            f = -f;
        }
        vals.push(acc.scale(&f));
    }
    Ok(vals.swap_remove(n as usize))
}

/// `Ls_1(π), …, Ls_{max_n}(π)` from `-Σ Ls_{m+1}(π) x^m/m! = π Γ(1+x)/Γ(1+x/2)^2`.
pub fn ls_pi_egf(max_n: u32) -> Result<Vec<ConstExpr>> {
    if max_n == 0 {
        return Err(Error::invalid("ls_pi_egf needs max_n >= 1"));
    }
    let order = max_n - 1;
    let vars = ["x"];
    // log Γ(1+x) - 2 log Γ(1+x/2) = Σ_{k≥2} (-1)^k α(k) x^k / k
    let log_gamma_ratio = TruncatedSeries::from_terms(
        &vars,
        order,
        &ConstExpr::zero(),
        (2..=order).map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            (vec![k], alpha(k).scale(&Rational::from((sign, k))))
        }),
    )?;
    let e = log_gamma_ratio.exp()?;
    Ok((0..max_n).map(|m| e.coeff(&[m]).mul(&ConstExpr::pi()).scale(&-factorial(m))).collect())
}

fn parse_table<K: Ord>(src: &str, key: impl Fn(&str) -> Option<K>) -> BTreeMap<K, ConstExpr> {
    let mut out = BTreeMap::new();
    for line in src.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').expect("table line has `=`");
        let k = key(k.trim()).expect("table key");
        out.insert(k, parse_expr(v.trim()).expect("table entry parses"));
    }
    out
}

fn pi3_table() -> &'static BTreeMap<u32, ConstExpr> {
    static T: OnceLock<BTreeMap<u32, ConstExpr>> = OnceLock::new();
    T.get_or_init(|| parse_table(include_str!("../../data/ls_pi3.txt"), |k| k.parse().ok()))
}

fn gen_pi_table() -> &'static BTreeMap<(u32, u32), ConstExpr> {
    static T: OnceLock<BTreeMap<(u32, u32), ConstExpr>> = OnceLock::new();
    T.get_or_init(|| {
        parse_table(include_str!("../../data/gen_ls_pi.txt"), |k| {
            let (a, b) = k.split_once(',')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
    })
}

/// Tabulated `Ls_n(π/3)` for `2 ≤ n ≤ 8`.
pub fn ls_pi3_table(n: u32) -> Result<ConstExpr> {
    pi3_table()
        .get(&n)
        .cloned()
        .ok_or_else(|| Error::Unsupported(format!("Ls_{n}(π/3) is tabulated only for 2 ≤ n ≤ 8")))
}

/// Tabulated `Ls^{(k)}_n(π)`.
pub fn gen_ls_pi_table(n: u32, k: u32) -> Result<ConstExpr> {
    gen_pi_table().get(&(n, k)).cloned().ok_or_else(|| Error::Unsupported(format!("Ls^({k})_{n}(π) is not tabulated")))
}

pub fn gen_ls_pi_table_keys() -> Vec<(u32, u32)> {
    gen_pi_table().keys().copied().collect()
}

/// `Ls_{n+1}(π/3)` from `(-1)^{n+1}/n! Ls_{n+1}(π/3) = Σ_k 2^{-4k} C(2k,k)/(2k+1)^{n+1}`.
pub fn ls_pi3_series(n: u32, ctx: &PrecisionContext) -> Result<Float> {
    ls_pi3_series_prec(n, ctx.prec())
}

pub(crate) fn ls_pi3_series_prec(n: u32, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    // c_k = 2^{-4k} C(2k,k); c_{k+1}/c_k = (2k+1)/(8(k+1)) < 1/4
    let mut c = Float::with_val(wp, 1);
    let mut acc = Float::new(wp);
    let mut k = 0u32;
    loop {
        let d = Float::with_val(wp, 2 * k + 1);
        let t = Float::with_val(wp, &c / rug::ops::Pow::pow(d, n + 1));
        acc += &t;
        if t < eps {
            break;
        }
        c *= Float::with_val(wp, 2 * k + 1) / Float::with_val(wp, 8 * (k + 1));
        k += 1;
        if k > 10_000_000 {
            return Err(Error::exhausted("ls_pi3_series", "term cap reached"));
        }
    }
    acc *= Float::with_val(wp, Integer::from(Integer::factorial(n)));
    if n % 2 == 0 {
        acc = -acc;
    }
    Ok(Float::with_val(prec, acc))
}
