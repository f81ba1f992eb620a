//! Definitional torus integrals for Mahler measures.

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::{Complex, PrecisionContext};
use crate::quadrature::{integrate_nd_with_breaks, integrate_piecewise, qmc, NdMethod, QmcConfig, QuadResult};
use crate::specfun::{clausen_glaisher_prec, li2_real, ClKind, Composition};

/// The measures with a definitional oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    /// `μ_k(1+x)`.
    MuK1px(u32),
    /// `μ_k(1+x+y_*)`: the power is taken after integrating out `y`.
    MuK1pxyStar(u32),
    /// `μ_k(1+x+y_*+z_*)`.
    MuK1pxyzStar(u32),
    /// `μ(1+x, …, 1+x, 1+x+y+z)` with `k` copies of `1+x`.
    MuMixed1x1xyz(u32),
    Mu2_1pxy,
    Mu2_1pxyz,
    Mu1pxy,
    Mu1pxyz,
    /// `μ(ax + b)`.
    MuLinear(Complex, Complex),
    /// `μ(1+x+y+z+w)`.
    Mu5Term,
    /// `μ(1+x+y+z+w+v)`.
    Mu6Term,
}

impl MeasureSpec {
    pub fn k(&self) -> Option<u32> {
        match self {
            MeasureSpec::MuK1px(k)
            | MeasureSpec::MuK1pxyStar(k)
            | MeasureSpec::MuK1pxyzStar(k)
            | MeasureSpec::MuMixed1x1xyz(k) => Some(*k),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::MuK1px(0) | MeasureSpec::MuK1pxyStar(0) | MeasureSpec::MuK1pxyzStar(0) => {
                Err(Error::invalid("multiplicity k must be at least 1"))
            }
            MeasureSpec::MuLinear(a, b) if a.is_zero() && b.is_zero() => Err(Error::invalid("μ(0) is -∞")),
            _ => Ok(()),
        }
    }
}

/// `log(2 cos(πu/2)) = log|1 + e^{iπu}|`.
fn log_one_plus(u: &Float, wp: u32) -> Float {
    let c = (Float::with_val(wp, Constant::Pi) * u / 2u32).cos() * 2u32;
    c.abs().ln()
}

fn torus_point(coords: &[Float], wp: u32) -> Complex {
    // the first coordinate is folded onto [0, 1/2]
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    let mut z = Complex::one(wp);
    for (j, x) in coords.iter().enumerate() {
        let mut t = Float::with_val(wp, x * &two_pi);
        if j == 0 {
            t /= 2u32;
        }
        z += &Complex::cis(&t);
    }
    z
}

fn frac_angle(t: &Float) -> Float {
    let two_pi = Float::with_val(t.prec(), Constant::Pi) * 2u32;
    let mut u = Float::with_val(t.prec(), t / &two_pi);
    u -= Float::with_val(t.prec(), u.floor_ref());
    u
}

/// Break points for `∫ F(1 + e^{2πix_1} + … + e^{2πix_dim})` over the torus, with the
/// first coordinate folded.
fn linear_breaks(dim: usize, d: usize, outer: &[Float]) -> Vec<Float> {
    let wp = outer.first().map_or(64, |x| x.prec());
    if d == 0 {
        // x_0 = 1/3 folded
        return vec![Float::with_val(wp, 2) / 3u32];
    }
    let b = torus_point(outer, wp);
    let arg = (-b.clone()).arg();
    if d + 1 == dim {
        return vec![frac_angle(&arg)];
    }
    let mut out = vec![frac_angle(&arg)];
    let half = Float::with_val(wp, b.abs() / 2u32);
    if half <= 1 {
        let a = half.acos();
        out.push(frac_angle(&Float::with_val(wp, &arg + &a)));
        out.push(frac_angle(&Float::with_val(wp, &arg - &a)));
    }
    out
}

fn nested(
    f: &(dyn Fn(&[Float]) -> Float + Sync),
    dim: usize,
    breaks: &(dyn Fn(usize, &[Float]) -> Vec<Float> + Sync),
    ctx: &PrecisionContext,
) -> Result<QuadResult> {
    integrate_nd_with_breaks(f, dim, NdMethod::NestedTanhSinh, breaks, ctx)
}

/// `∫_{T^dim} log^power |1 + x_1 + … + x_dim|` by nested quadrature, `dim ∈ {2, 3}`.
pub fn linear_torus(power: u32, dim: usize, ctx: &PrecisionContext) -> Result<QuadResult> {
    if !(2..=3).contains(&dim) || power == 0 {
        return Err(Error::Unsupported(format!("linear torus oracle for dim {dim}, power {power}")));
    }
    let wp = ctx.prec();
    let f = move |x: &[Float]| {
        let n = torus_point(x, wp).norm_sqr();
        if n.is_zero() {
            return Float::new(wp);
        }
        let l = n.ln() / 2u32;
        rug::ops::Pow::pow(l, power)
    };
    nested(&f, dim, &move |d, o| linear_breaks(dim, d, o), ctx)
}

/// `μ(1+x, …, 1+x, 1+x+y)` with `k - 1` copies of `1+x`, over the 2-torus.
pub fn mu_multiple_1x_1xy(k: u32, ctx: &PrecisionContext) -> Result<QuadResult> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let wp = ctx.prec();
    let f = move |x: &[Float]| {
        let n = torus_point(x, wp).norm_sqr();
        if n.is_zero() {
            return Float::new(wp);
        }
        let l = n.ln() / 2u32;
        let a = log_one_plus(&x[0], wp);
        rug::ops::Pow::pow(a, k - 1) * l
    };
    nested(&f, 2, &|d, o| linear_breaks(2, d, o), ctx)
}

/// `(1/π)(a θ_a + Cl_2(θ_a))`, `θ_a = 2 arcsin(min(e^a/2, 1))`, `a = log r`: the mean of
/// `log max(|r + e^{iφ}|, 1)` over `φ`.
pub(crate) fn jensen_inner(r: &Float, wp: u32) -> Result<Float> {
    if r.is_zero() {
        return Ok(Float::new(wp));
    }
    let a = Float::with_val(wp, r.ln_ref());
    if *r >= 2 {
        return Ok(a);
    }
    let theta = Float::with_val(wp, r / 2u32).asin() * 2u32;
    let cl = clausen_glaisher_prec(ClKind::Cl, &Composition::single(2), &theta, wp)?;
    let pi = Float::with_val(wp, Constant::Pi);
    Ok((a * &theta + cl) / pi)
}

/// `∫_0^1 ∫_0^1 g(r²) du dv` with `r = |s + e^{iπv}|`, `s = 2 cos(πu/2) = |1 + x|`: the mean of
/// `g(|1 + x + y|²)` over the 2-torus. `level` is a radius at which `g` is singular; the
/// inner integral is split where `r = level`.
fn two_step_mean(
    g: &(dyn Fn(&Float) -> Result<Float> + Sync),
    level: u32,
    ctx: &PrecisionContext,
) -> Result<QuadResult> {
    let wp = ctx.prec();
    let s_of = move |u: &Float| (Float::with_val(wp, Constant::Pi) * u / 2u32).cos() * 2u32;
    let failure = std::sync::Mutex::new(None::<Error>);
    let f = |x: &[Float]| {
        let s = s_of(&x[0]);
        let c = (Float::with_val(wp, Constant::Pi) * &x[1]).cos();
        let r2 = Float::with_val(wp, s.square_ref()) + 1u32 + Float::with_val(wp, &s * &c) * 2u32;
        let r2 = if r2 < 0 { Float::new(wp) } else { r2 };
        match g(&r2) {
            Ok(v) => v,
            Err(e) => {
                failure.lock().expect("failure slot poisoned").get_or_insert(e);
                Float::new(wp)
            }
        }
    };
    let breaks = move |d: usize, o: &[Float]| {
        if d == 0 {
            return vec![Float::with_val(wp, 2) / 3u32];
        }
        // cos(πv) = (level² - 1 - s²) / (2s)
        let s = s_of(&o[0]);
        if s.is_zero() {
            return Vec::new();
        }
        let c = (Float::with_val(wp, level * level - 1) - Float::with_val(wp, s.square_ref())) / (s * 2u32);
        if c.clone().abs() >= 1 {
            return Vec::new();
        }
        vec![c.acos() / Float::with_val(wp, Constant::Pi)]
    };
    let r = nested(&f, 2, &breaks, ctx);
    if let Some(e) = failure.into_inner().expect("failure slot poisoned") {
        return Err(e);
    }
    r
}

/// `μ_2(1+x+y+z)`: the mean of `log²|b + e^{it}|` over `t` is
/// `log² max(|b|, 1) + Li_2(min(|b|, 1/|b|)²)/2`, integrated over `b = 1 + x + y`.
fn mu2_four_term(ctx: &PrecisionContext) -> Result<QuadResult> {
    let wp = ctx.prec();
    let g = move |r2: &Float| -> Result<Float> {
        if r2.is_zero() {
            return Ok(Float::new(wp));
        }
        if *r2 <= 1 {
            return Ok(li2_real(r2, wp) / 2u32);
        }
        let l = Float::with_val(wp, r2.ln_ref()) / 2u32;
        Ok(l.square() + li2_real(&Float::with_val(wp, r2.recip_ref()), wp) / 2u32)
    };
    two_step_mean(&g, 1, ctx)
}

/// `μ(1+x+y+z+w)`: the closed mean over `(z, w)` integrated over `b = 1 + x + y`.
fn five_term(ctx: &PrecisionContext) -> Result<QuadResult> {
    let wp = ctx.prec();
    let g = move |r2: &Float| jensen_inner(&Float::with_val(wp, r2.sqrt_ref()), wp);
    two_step_mean(&g, 2, ctx)
}

fn six_term(cfg: &QmcConfig) -> Result<QuadResult> {
    let wp = cfg.prec;
    let f = move |x: &[Float]| {
        let r = torus_point(x, wp).abs();
        jensen_inner(&r, wp).unwrap_or_else(|_| Float::with_val(wp, f64::NAN))
    };
    qmc(&f, 3, cfg)
}

/// `∫_0^1 max(log|1+e^{iπu}|, log|1+e^{iπv}|) dv` as a function of `u ∈ [0, 1]`.
fn max_inner(u: &Float, wp: u32, tol: &Float, levels: u32) -> Result<Float> {
    let lu = log_one_plus(u, wp);
    let pts = [Float::new(wp), Float::with_val(wp, u), Float::with_val(wp, 1)];
    let pts: Vec<Float> = if u.is_zero() || *u >= 1 { vec![pts[0].clone(), pts[2].clone()] } else { pts.to_vec() };
    Ok(integrate_piecewise(
        |v: &Float| {
            let lv = log_one_plus(v, wp);
            if lv > lu {
                lv
            } else {
                lu.clone()
            }
        },
        &pts,
        tol,
        wp,
        levels,
    )?
    .value)
}

/// Definitional value of a Mahler measure by torus integration, after the
/// Jensen-type reductions: `μ_k(1+x+y_*)` over the arc where `|1+x| > 1`, the
/// max-form for `1+x+y+z`, and the closed inner integral for the 5- and 6-term sums.
pub fn mu_oracle(spec: &MeasureSpec, ctx: &PrecisionContext) -> Result<QuadResult> {
    spec.validate()?;
    let wp = ctx.prec();
    let tol = ctx.tol();
    let lv = ctx.quadrature_levels;
    let exact = |v: Float| QuadResult { value: v, error: Float::new(wp), levels: 0, evaluations: 0 };
    match spec {
        MeasureSpec::MuLinear(a, b) => {
            let la = Float::with_val(wp, a.norm_sqr().ln_ref()) / 2u32;
            let lb = Float::with_val(wp, b.norm_sqr().ln_ref()) / 2u32;
            Ok(exact(if la > lb { la } else { lb }))
        }
        MeasureSpec::MuK1px(k) => {
            let k = *k;
            let pts = [Float::new(wp), Float::with_val(wp, 2) / 3u32, Float::with_val(wp, 1)];
            integrate_piecewise(|u: &Float| rug::ops::Pow::pow(log_one_plus(u, wp), k), &pts, &tol, wp, lv)
        }
        MeasureSpec::MuK1pxyStar(_) | MeasureSpec::Mu1pxy => {
            let k = spec.k().unwrap_or(1);
            // 2 ∫_{1/6}^{1/2} log^k(2 sin πt) dt
            let pi = Float::with_val(wp, Constant::Pi);
            let r = crate::quadrature::integrate_1d_tol(
                |t: &Float| {
                    let s = Float::with_val(wp, t * &pi).sin() * 2u32;
                    rug::ops::Pow::pow(s.ln(), k)
                },
                &(Float::with_val(wp, 1) / 6u32),
                &(Float::with_val(wp, 1) / 2u32),
                &Float::with_val(wp, &tol / 2u32),
                wp,
                lv,
            )?;
            Ok(QuadResult { value: r.value * 2u32, error: r.error * 2u32, ..r })
        }
        MeasureSpec::MuK1pxyzStar(k) => {
            let k = *k;
            let itol = Float::with_val(wp, &tol / 16u32);
            let failure = std::sync::Mutex::new(None::<Error>);
            let pts = [Float::new(wp), Float::with_val(wp, 2) / 3u32, Float::with_val(wp, 1)];
            let r = integrate_piecewise(
                |u: &Float| match max_inner(u, wp, &itol, lv) {
                    Ok(v) => rug::ops::Pow::pow(v, k),
                    Err(e) => {
                        failure.lock().expect("failure slot poisoned").get_or_insert(e);
                        Float::new(wp)
                    }
                },
                &pts,
                &tol,
                wp,
                lv,
            );
            if let Some(e) = failure.into_inner().expect("failure slot poisoned") {
                return Err(e);
            }
            r
        }
        MeasureSpec::MuMixed1x1xyz(_) | MeasureSpec::Mu1pxyz => {
            let k = spec.k().unwrap_or(0);
            let f = move |x: &[Float]| {
                let a = log_one_plus(&x[0], wp);
                let b = log_one_plus(&x[1], wp);
                let m = if a > b { a.clone() } else { b };
                rug::ops::Pow::pow(a, k) * m
            };
            let breaks = |d: usize, o: &[Float]| {
                if d == 0 {
                    vec![Float::with_val(wp, 2) / 3u32]
                } else {
                    vec![o[0].clone()]
                }
            };
            nested(&f, 2, &breaks, ctx)
        }
        MeasureSpec::Mu2_1pxy => {
            // (2/π²) ∫_0^{π/2} ∫_0^π log²|1 - 2 sin θ e^{iω}| dω dθ with θ = πu/2, ω = πv
            let f = move |x: &[Float]| {
                let pi = Float::with_val(wp, Constant::Pi);
                let th = Float::with_val(wp, &x[0] * &pi) / 2u32;
                let al = th.sin() * 2u32;
                let c = Float::with_val(wp, &x[1] * &pi).cos();
                let q = Float::with_val(wp, 1 + Float::with_val(wp, al.square_ref()))
                    - Float::with_val(wp, &al * &c) * 2u32;
                if q.is_zero() {
                    return Float::new(wp);
                }
                let l = q.ln() / 2u32;
                l.square()
            };
            let breaks = |d: usize, _: &[Float]| {
                if d == 0 {
                    vec![Float::with_val(wp, 1) / 3u32]
                } else {
                    Vec::new()
                }
            };
            nested(&f, 2, &breaks, ctx)
        }
        MeasureSpec::Mu2_1pxyz => mu2_four_term(ctx),
        MeasureSpec::Mu5Term => five_term(ctx),
        MeasureSpec::Mu6Term => six_term(&QmcConfig::default()),
    }
}
