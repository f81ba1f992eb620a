//! Double-exponential quadrature on finite intervals and half-lines.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;

/// An integral estimate. `error` bounds the remaining level-to-level change plus
/// the contribution beyond the outermost node.
#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: Float,
    pub error: Float,
    pub levels: u32,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
struct Node {
    /// Distance from the right endpoint of `[-1, 1]`, i.e. `1 - x`.
    comp: Float,
    weight: Float,
}

type NodeTable = RwLock<HashMap<(u32, u32, bool), Arc<Vec<Node>>>>;

fn table() -> &'static NodeTable {
    static T: OnceLock<NodeTable> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

const LEVEL0_STEP: f64 = 1.0;
const PAR_THRESHOLD: usize = 48;

/// Nodes with `t = k h`, `h = 2^-level`, `k > 0` (odd `k` for `level > 0`).
/// For `exp_sinh` the nodes are `x = exp(π/2 sinh t)` over all signs of `t`.
fn nodes(level: u32, prec: u32, exp_sinh: bool) -> Arc<Vec<Node>> {
    let key = (level, prec, exp_sinh);
    if let Some(v) = table().read().expect("node table poisoned").get(&key) {
        return v.clone();
    }
    let built = Arc::new(if exp_sinh { build_exp_sinh(level, prec) } else { build_tanh_sinh(level, prec) });
    table().write().expect("node table poisoned").entry(key).or_insert(built).clone()
}

fn build_tanh_sinh(level: u32, prec: u32) -> Vec<Node> {
    let h = LEVEL0_STEP / (1u64 << level) as f64;
    let step = if level == 0 { 1 } else { 2 };
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 40));
    let mut out = Vec::new();
    let mut k = 1u64;
    loop {
        let t = Float::with_val(prec, k as f64 * h);
        let u = Float::with_val(prec, t.sinh_ref()) * &half_pi;
        let e2u = Float::with_val(prec, &u * 2u32).exp();
        let comp = Float::with_val(prec, 2u32) / Float::with_val(prec, &e2u + 1u32);
        let ch = Float::with_val(prec, u.cosh_ref());
        let weight = Float::with_val(prec, t.cosh_ref()) * &half_pi / Float::with_val(prec, ch.square_ref());
        if weight < tiny || comp < tiny {
            break;
        }
        out.push(Node { comp, weight });
        k += step;
    }
    out
}

fn build_exp_sinh(level: u32, prec: u32) -> Vec<Node> {
    // comp holds x = exp(π/2 sinh t); t = ±k h
    let h = LEVEL0_STEP / (1u64 << level) as f64;
    let step = if level == 0 { 1 } else { 2 };
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 40));
    let mut out = Vec::new();
    if level == 0 {
        out.push(Node { comp: Float::with_val(prec, 1), weight: half_pi.clone() });
    }
    for sign in [1i32, -1] {
        let mut k = 1u64;
        loop {
            let t = Float::with_val(prec, sign as f64 * k as f64 * h);
            let u = Float::with_val(prec, t.sinh_ref()) * &half_pi;
            let x = Float::with_val(prec, u.exp_ref());
            let weight = Float::with_val(prec, t.cosh_ref()) * &half_pi * &x;
            if weight < tiny || x.to_f64() > 1e30 {
                break;
            }
            out.push(Node { comp: x, weight });
            k += step;
        }
    }
    out
}

/// `∫_a^b f` with tanh-sinh, doubling levels until two estimates agree within `tol`.
/// Error bound for the newest estimate, if it meets `tol`.
///
/// Successive differences shrinking by a ratio `r ≤ 1/2` bound the remaining
/// error by `diff·r/(1-r)`; otherwise the raw difference is used.
fn accept(diff: &Float, diff_prev: Option<&Float>, tol: &Float) -> Option<Float> {
    let prev = diff_prev?;
    if diff.is_zero() && prev.is_zero() {
        return Some(diff.clone());
    }
    if *diff <= *tol && *prev <= Float::with_val(tol.prec(), tol * 1e6) {
        return Some(diff.clone());
    }
    if prev.is_zero() {
        return None;
    }
    let r = Float::with_val(diff.prec(), diff / prev);
    if r > 0.5 {
        return None;
    }
    let one_minus = Float::with_val(diff.prec(), 1 - &r);
    let bound = Float::with_val(diff.prec(), diff * &r) / one_minus;
    (bound <= *tol).then_some(bound)
}

pub fn integrate_1d_tol<F>(f: F, a: &Float, b: &Float, tol: &Float, prec: u32, max_level: u32) -> Result<QuadResult>
where
    F: Fn(&Float) -> Float + Sync,
{
    if a == b {
        return Ok(QuadResult { value: Float::new(prec), error: Float::new(prec), levels: 0, evaluations: 0 });
    }
    if a > b {
        let r = integrate_1d_tol(f, b, a, tol, prec, max_level)?;
        return Ok(QuadResult { value: -r.value, ..r });
    }
    let wp = prec;
    let a = Float::with_val(wp, a);
    let b = Float::with_val(wp, b);
    let hw = Float::with_val(wp, &b - &a) / 2u32;
    let mid = Float::with_val(wp, &a + &b) / 2u32;
    let eval = |n: &Node| -> Float {
        let d = Float::with_val(wp, &hw * &n.comp);
        // abscissae keep their distance to the endpoint to full relative precision
        let xp = wp + n.comp.get_exp().map_or(0, |e| e.min(0).unsigned_abs());
        let xr = Float::with_val(xp, &b - &d);
        let xl = Float::with_val(xp, &a + &d);
        let mut s = Float::new(wp);
        if xr != b && xr > a {
            s += f(&xr);
        }
        if xl != a && xl < b {
            s += f(&xl);
        }
        s * &n.weight
    };
    let sum_level = |level: u32| -> (Float, usize) {
        let ns = nodes(level, wp, false);
        let vals: Vec<Float> =
            if ns.len() > PAR_THRESHOLD { ns.par_iter().map(eval).collect() } else { ns.iter().map(eval).collect() };
        let mut acc = Float::new(wp);
        for v in vals {
            acc += v;
        }
        (acc, 2 * ns.len())
    };
    let half_pi = Float::with_val(wp, Constant::Pi) / 2u32;
    let center = Float::with_val(wp, f(&mid) * &half_pi);
    let (s0, n0) = sum_level(0);
    let mut total = Float::with_val(wp, &s0 + &center);
    let mut evaluations = n0 + 1;
    let mut h = Float::with_val(wp, LEVEL0_STEP);
    let mut prev = Float::with_val(wp, &total * &h) * &hw;
    let mut diff_prev: Option<Float> = None;
    for level in 1..=max_level {
        let (s, n) = sum_level(level);
        evaluations += n;
        total += s;
        h /= 2u32;
        let est = Float::with_val(wp, &total * &h) * &hw;
        let diff = Float::with_val(wp, &est - &prev).abs();
        if !est.is_finite() {
            return Err(Error::exhausted("integrate_1d", "integrand produced a non-finite value"));
        }
        if level >= 3 {
            if let Some(error) = accept(&diff, diff_prev.as_ref(), tol) {
                // the outermost node bounds what lies beyond the node range
                let outer = nodes(level, wp, false).last().map_or_else(|| Float::new(wp), |n| eval(n).abs());
                let tail = Float::with_val(wp, &outer * &h) * &hw;
                let error = error + tail;
                return Ok(QuadResult { value: est, error, levels: level, evaluations });
            }
        }
        diff_prev = Some(diff);
        prev = est;
    }
    Err(Error::exhausted(
        "integrate_1d",
        format!(
            "no agreement within tolerance after {max_level} levels (last difference {})",
            diff_prev.map(|d| d.to_f64()).unwrap_or(f64::NAN)
        ),
    ))
}

/// `∫_a^b f` to the context's tail tolerance.
pub fn integrate_1d<F>(f: F, a: &Float, b: &Float, ctx: &PrecisionContext) -> Result<QuadResult>
where
    F: Fn(&Float) -> Float + Sync,
{
    integrate_1d_tol(f, a, b, &ctx.tol(), ctx.prec(), ctx.quadrature_levels)
}

/// `∫` over consecutive pieces `[p_0, p_1], [p_1, p_2], ...`.
pub fn integrate_piecewise<F>(f: F, points: &[Float], tol: &Float, prec: u32, max_level: u32) -> Result<QuadResult>
where
    F: Fn(&Float) -> Float + Sync,
{
    let pieces = points.len().saturating_sub(1).max(1) as u32;
    let piece_tol = Float::with_val(prec, tol / pieces);
    let mut value = Float::new(prec);
    let mut error = Float::new(prec);
    let mut levels = 0;
    let mut evaluations = 0;
    for w in points.windows(2) {
        let r = integrate_1d_tol(&f, &w[0], &w[1], &piece_tol, prec, max_level)?;
        value += r.value;
        error += r.error;
        levels = levels.max(r.levels);
        evaluations += r.evaluations;
    }
    Ok(QuadResult { value, error, levels, evaluations })
}

/// `∫_a^∞ f` with the exp-sinh substitution `x = a + exp(π/2 sinh t)`.
pub fn integrate_half_line<F>(f: F, a: &Float, tol: &Float, prec: u32, max_level: u32) -> Result<QuadResult>
where
    F: Fn(&Float) -> Float + Sync,
{
    let wp = prec;
    let a = Float::with_val(wp, a);
    let eval = |n: &Node| -> Float {
        let x = Float::with_val(wp, &a + &n.comp);
        let v = f(&x);
        v * &n.weight
    };
    let sum_level = |level: u32| -> (Float, usize) {
        let ns = nodes(level, wp, true);
        let vals: Vec<Float> = ns.par_iter().map(eval).collect();
        let mut acc = Float::new(wp);
        for v in vals {
            acc += v;
        }
        (acc, ns.len())
    };
    let (s0, n0) = sum_level(0);
    let mut total = s0;
    let mut evaluations = n0;
    let mut h = Float::with_val(wp, LEVEL0_STEP);
    let mut prev = Float::with_val(wp, &total * &h);
    let mut diff_prev: Option<Float> = None;
    for level in 1..=max_level {
        let (s, n) = sum_level(level);
        evaluations += n;
        total += s;
        h /= 2u32;
        let est = Float::with_val(wp, &total * &h);
        if !est.is_finite() {
            return Err(Error::exhausted("integrate_half_line", "integrand produced a non-finite value"));
        }
        let diff = Float::with_val(wp, &est - &prev).abs();
        if level >= 3 {
            if let Some(error) = accept(&diff, diff_prev.as_ref(), tol) {
                return Ok(QuadResult { value: est, error, levels: level, evaluations });
            }
        }
        diff_prev = Some(diff);
        prev = est;
    }
    Err(Error::exhausted("integrate_half_line", format!("no agreement within tolerance after {max_level} levels")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::make_context;
    use rug::ops::Pow;

    fn pi(p: u32) -> Float {
        Float::with_val(p, Constant::Pi)
    }

    #[test]
    fn log_sine_over_half_period_vanishes() {
        let ctx = make_context(40).unwrap();
        let p = ctx.prec();
        let r = integrate_1d(
            |t: &Float| Float::with_val(p, Float::with_val(p, t / 2u32).sin() * 2u32).ln(),
            &Float::new(p),
            &pi(p),
            &ctx,
        )
        .unwrap();
        assert!(r.value.clone().abs() < 1e-38, "{}", r.value);
    }

    #[test]
    fn gamma_moment() {
        // ∫_0^1 x^2 log^2 x dx = 2/27
        let ctx = make_context(40).unwrap();
        let p = ctx.prec();
        let r = integrate_1d(
            |x: &Float| Float::with_val(p, x.square_ref()) * Float::with_val(p, x.ln_ref()).square(),
            &Float::new(p),
            &Float::with_val(p, 1),
            &ctx,
        )
        .unwrap();
        let e = Float::with_val(p, 2) / 27u32;
        assert!(Float::with_val(p, &r.value - &e).abs() < 1e-38);
        assert!(r.error < 1e-30);
    }

    #[test]
    fn polynomials_are_exact() {
        let ctx = make_context(30).unwrap();
        let p = ctx.prec();
        let r = integrate_1d(
            |x: &Float| Float::with_val(p, x.pow(5u32)) * 3u32 - Float::with_val(p, x * 2u32) + 1u32,
            &Float::with_val(p, -1),
            &Float::with_val(p, 2),
            &ctx,
        )
        .unwrap();
        // ∫ 3x^5 - 2x + 1 over [-1, 2] = 31.5 - 3 + 3
        assert!(Float::with_val(p, &r.value - 31.5).abs() < 1e-30);
    }

    #[test]
    fn reversed_interval_negates() {
        let p = 128;
        let tol = Float::with_val(p, 1e-25);
        let a =
            integrate_1d_tol(|x: &Float| x.clone().exp(), &Float::new(p), &Float::with_val(p, 1), &tol, p, 10).unwrap();
        let b =
            integrate_1d_tol(|x: &Float| x.clone().exp(), &Float::with_val(p, 1), &Float::new(p), &tol, p, 10).unwrap();
        assert_eq!(a.value, -b.value);
    }

    #[test]
    fn half_line_gamma() {
        // ∫_0^∞ t^3 e^{-2t} dt = 3!/2^4
        let p = 160;
        let tol = Float::with_val(p, 1e-35);
        let r = integrate_half_line(
            |t: &Float| Float::with_val(p, t.pow(3u32)) * Float::with_val(p, t * -2i32).exp(),
            &Float::new(p),
            &tol,
            p,
            12,
        )
        .unwrap();
        let e = Float::with_val(p, 6) / 16u32;
        assert!(Float::with_val(p, &r.value - &e).abs() < 1e-33, "{}", r.value);
    }

    #[test]
    fn reports_failure_instead_of_garbage() {
        let p = 128;
        let tol = Float::with_val(p, 1e-30);
        // a jump inside the interval defeats the rule at the requested accuracy
        let r = integrate_1d_tol(
            |x: &Float| if *x < 0.3 { Float::with_val(p, 0) } else { Float::with_val(p, 1) },
            &Float::new(p),
            &Float::with_val(p, 1),
            &tol,
            p,
            6,
        );
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }
}
