//! Integration over the unit cube: nested tanh-sinh and randomized
//! rank-1 lattice (Kronecker) quasi-Monte Carlo.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Float;

use super::tanh_sinh::{integrate_piecewise, QuadResult};
use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;

#[derive(Debug, Clone, PartialEq)]
pub enum NdMethod {
    NestedTanhSinh,
    Qmc(QmcConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QmcConfig {
    /// Independent random shifts; the spread gives the error bar.
    pub replicas: usize,
    pub points_per_replica: usize,
    pub seed: u64,
    /// Bits used for each integrand evaluation.
    pub prec: u32,
}

impl Default for QmcConfig {
    fn default() -> Self {
        QmcConfig { replicas: 8, points_per_replica: 1 << 14, seed: 0x5eed_1234, prec: 64 }
    }
}

/// Extra interior break points for coordinate `dim` given the outer coordinates.
pub type Breaks<'a> = &'a (dyn Fn(usize, &[Float]) -> Vec<Float> + Sync);

fn no_breaks(_: usize, _: &[Float]) -> Vec<Float> {
    Vec::new()
}

/// `∫_{[0,1]^dim} f`.
pub fn integrate_nd(
    f: &(dyn Fn(&[Float]) -> Float + Sync),
    dim: usize,
    method: NdMethod,
    ctx: &PrecisionContext,
) -> Result<QuadResult> {
    integrate_nd_with_breaks(f, dim, method, &no_breaks, ctx)
}

pub fn integrate_nd_with_breaks(
    f: &(dyn Fn(&[Float]) -> Float + Sync),
    dim: usize,
    method: NdMethod,
    breaks: Breaks<'_>,
    ctx: &PrecisionContext,
) -> Result<QuadResult> {
    if !(1..=4).contains(&dim) {
        return Err(Error::invalid(format!("integration dimension {dim} outside 1..=4")));
    }
    match method {
        NdMethod::NestedTanhSinh => {
            let levels = ctx.quadrature_levels;
            nested(f, dim, breaks, &ctx.tol(), ctx.prec(), levels)
        }
        NdMethod::Qmc(cfg) => qmc(f, dim, &cfg),
    }
}

/// Nested tanh-sinh: the outer tolerance is split across levels.
pub fn nested(
    f: &(dyn Fn(&[Float]) -> Float + Sync),
    dim: usize,
    breaks: Breaks<'_>,
    tol: &Float,
    prec: u32,
    max_level: u32,
) -> Result<QuadResult> {
    let mut coords = Vec::with_capacity(dim);
    nested_rec(f, dim, breaks, tol, prec, max_level, &mut coords)
}

fn nested_rec(
    f: &(dyn Fn(&[Float]) -> Float + Sync),
    dim: usize,
    breaks: Breaks<'_>,
    tol: &Float,
    prec: u32,
    max_level: u32,
    outer: &mut Vec<Float>,
) -> Result<QuadResult> {
    let depth = outer.len();
    let mut pts = vec![Float::new(prec)];
    let mut inner_pts: Vec<Float> =
        breaks(depth, outer).into_iter().filter(|x| *x > 0 && *x < 1).map(|x| Float::with_val(prec, x)).collect();
    inner_pts.sort_by(|a, b| a.partial_cmp(b).expect("finite break points"));
    inner_pts.dedup();
    pts.extend(inner_pts);
    pts.push(Float::with_val(prec, 1));
    if depth + 1 == dim {
        let base = outer.clone();
        return integrate_piecewise(
            move |x: &Float| {
                let mut c = base.clone();
                c.push(x.clone());
                f(&c)
            },
            &pts,
            tol,
            prec,
            max_level,
        );
    }
    let inner_tol = Float::with_val(prec, tol / 16u32);
    let failure = std::sync::Mutex::new(None::<Error>);
    let base = outer.clone();
    let r = integrate_piecewise(
        |x: &Float| {
            let mut c = base.clone();
            c.push(x.clone());
            match nested_rec(f, dim, breaks, &inner_tol, prec, max_level, &mut c) {
                Ok(v) => v.value,
                Err(e) => {
                    failure.lock().expect("failure slot poisoned").get_or_insert(e);
                    Float::new(prec)
                }
            }
        },
        &pts,
        tol,
        prec,
        max_level,
    );
    if let Some(e) = failure.into_inner().expect("failure slot poisoned") {
        return Err(e);
    }
    r
}

/// Generator of the `R_d` sequence: powers of `1/φ_d`, `φ_d^{d+1} = φ_d + 1`.
fn kronecker_alpha(dim: usize) -> Vec<f64> {
    let mut phi = 2.0f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
    }
    (1..=dim).map(|j| phi.powi(-(j as i32)).fract()).collect()
}

pub fn qmc(f: &(dyn Fn(&[Float]) -> Float + Sync), dim: usize, cfg: &QmcConfig) -> Result<QuadResult> {
    if cfg.replicas < 2 {
        return Err(Error::invalid("qmc needs at least two replicas for an error bar"));
    }
    let alpha = kronecker_alpha(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let shifts: Vec<Vec<f64>> = (0..cfg.replicas).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect();
    let p = cfg.prec;
    let n = cfg.points_per_replica;
    let means: Vec<f64> = shifts
        .iter()
        .map(|shift| {
            let sum: f64 = (0..n)
                .into_par_iter()
                .map(|i| {
                    let x: Vec<Float> = (0..dim)
                        .map(|j| Float::with_val(p, (shift[j] + (i as f64 + 1.0) * alpha[j]).fract()))
                        .collect();
                    f(&x).to_f64()
                })
                .sum();
            sum / n as f64
        })
        .collect();
    if means.iter().any(|m| !m.is_finite()) {
        return Err(Error::exhausted("qmc", "integrand produced a non-finite value"));
    }
    let r = means.len() as f64;
    let mean = means.iter().sum::<f64>() / r;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (r - 1.0);
    // three standard errors of the replicate mean
    let err = 3.0 * (var / r).sqrt();
    Ok(QuadResult {
        value: Float::with_val(p, mean),
        error: Float::with_val(p, err),
        levels: 0,
        evaluations: n * cfg.replicas,
    })
}
