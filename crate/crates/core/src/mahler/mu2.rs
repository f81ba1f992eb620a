//! `μ_2(1+x+y)` by several independent routes, the dilogarithmic function τ
//! and the intermediate identities relating them.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::logsine::{ls_at_angle, ls_weight4_tau_prec, Weight4};
use crate::mpcore::{Complex, PrecisionContext};
use crate::quadrature::{integrate_1d_tol, integrate_piecewise};
use crate::specfun::{
    clausen_glaisher_prec, inverse_tangent_integral_prec, li2_real, polylog_prec, zeta_prec, ClKind, Composition,
};

fn cl2_pi3(wp: u32) -> Result<Float> {
    let t = Float::with_val(wp, Constant::Pi) / 3u32;
    clausen_glaisher_prec(ClKind::Cl, &Composition::single(2), &t, wp)
}

fn log3(wp: u32) -> Float {
    Float::with_val(wp, 3).ln()
}

/// `τ(z) = 4 Li_2((1 - √(1-4z))/2) - 2 log²((1 + √(1-4z))/2)`.
///
/// For `z > 1/4` the square root is taken as `-i√(4z-1)`, which gives
/// `τ(1) = 2ζ(2) + 4i Cl_2(π/3)`.
pub fn dilog_tau(z: &Float, ctx: &PrecisionContext) -> Result<Complex> {
    if *z > 1 {
        return Err(Error::invalid("τ(z) is evaluated for real z <= 1"));
    }
    let p = ctx.prec();
    let wp = p + 24;
    let d = Float::with_val(wp, 1 - Float::with_val(wp, z * 4u32));
    let root = if d >= 0 { Complex::real(d.sqrt()) } else { Complex::new(Float::new(wp), -(-d).sqrt()) };
    let half = |c: Complex| c.scale(&Float::with_val(wp, 0.5));
    let one = Complex::one(wp);
    let w = half(&one - &root);
    let v = half(&one + &root);
    let li = polylog_prec(2, &w, wp);
    let lg = v.ln();
    let r = &li.scale_int(4) - &(&lg * &lg).scale_int(2);
    Ok(Complex::new(Float::with_val(p, &r.re), Float::with_val(p, &r.im)))
}

/// `(2/π) ∫_0^π Li_2(4z sin²θ) dθ` by quadrature, `z ≤ 1/4`.
pub fn dilog_tau_quadrature(z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *z > 0.25 {
        return Err(Error::invalid("the defining integral of τ needs z <= 1/4"));
    }
    let p = ctx.prec();
    let wp = p + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let r = integrate_1d_tol(
        |t: &Float| {
            let s = Float::with_val(wp, t.sin_ref());
            let x = Float::with_val(wp, s.square_ref()) * z * 4u32;
            li2_real(&x, wp)
        },
        &Float::new(wp),
        &pi,
        &Float::with_val(wp, ctx.tol() / 8u32),
        wp,
        ctx.quadrature_levels,
    )?;
    Ok(Float::with_val(p, r.value * 2u32 / pi))
}

/// Canonical value `μ_2(1+x+y) = π²/4 + (3/π) Ls_3(2π/3)`.
pub fn mu2_1pxy(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let wp = p + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let tau = Float::with_val(wp, &pi * 2u32) / 3u32;
    let ls3 = ls_weight4_tau_prec(Weight4::Ls3, &tau, wp)?;
    let v = Float::with_val(wp, pi.square_ref()) / 4u32 + ls3 * 3u32 / &pi;
    Ok(Float::with_val(p, v))
}

/// `24/(5π) Ti_3(1/√3) + (2 log 3/π) Cl_2(π/3) - log²3/10 - 19π²/180`.
pub fn mu2_1pxy_ti_form(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let wp = p + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let x = Float::with_val(wp, 3).sqrt().recip();
    let ti3 = inverse_tangent_integral_prec(3, &x, wp)?;
    let l3 = log3(wp);
    let mut v = ti3 * 24u32 / Float::with_val(wp, &pi * 5u32);
    v += Float::with_val(wp, &l3 * cl2_pi3(wp)?) * 2u32 / &pi;
    v -= Float::with_val(wp, l3.square_ref()) / 10u32;
    v -= Float::with_val(wp, pi.square_ref()) * 19u32 / 180u32;
    Ok(Float::with_val(p, v))
}

/// `π²/36 + (2/π) ∫_0^{π/6} Li_2(4 sin²θ) dθ`.
pub fn mu2_1pxy_dilog_form(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let wp = p + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let r = integrate_1d_tol(
        |t: &Float| {
            let s = Float::with_val(wp, t.sin_ref());
            li2_real(&(Float::with_val(wp, s.square_ref()) * 4u32), wp)
        },
        &Float::new(wp),
        &Float::with_val(wp, &pi / 6u32),
        &Float::with_val(wp, ctx.tol() / 8u32),
        wp,
        ctx.quadrature_levels,
    )?;
    let v = Float::with_val(wp, pi.square_ref()) / 36u32 + r.value * 2u32 / &pi;
    Ok(Float::with_val(p, v))
}

/// `W_3''(0) = π²/12 + (4 log 2/π) Cl_2(π/3) - (4/π) Σ_n C(2n,n)/16^n · (Σ_{k≤n} 1/(2k+1))/(2n+1)²`.
pub fn mu2_1pxy_walk_series(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let wp = p + 24;
    let pi = Float::with_val(wp, Constant::Pi);
    let eps = Float::with_val(wp, ctx.tol() / 1000u32);
    let mut c = Float::with_val(wp, 1);
    let mut h = Float::new(wp);
    let mut sum = Float::new(wp);
    let mut n = 0u32;
    loop {
        let d = Float::with_val(wp, 2 * n + 1);
        h += Float::with_val(wp, d.recip_ref());
        let t = Float::with_val(wp, &c * &h) / Float::with_val(wp, d.square_ref());
        sum += &t;
        // ratio of consecutive terms tends to 1/4
        if t < eps {
            break;
        }
        c *= Float::with_val(wp, 2 * n + 1) / Float::with_val(wp, 8 * (n + 1));
        n += 1;
        if n as usize > ctx.max_terms {
            return Err(Error::exhausted("mu2_1pxy_walk_series", "term cap reached"));
        }
    }
    let mut v = Float::with_val(wp, pi.square_ref()) / 12u32;
    v += Float::with_val(wp, Constant::Log2) * cl2_pi3(wp)? * 4u32 / &pi;
    v -= sum * 4u32 / &pi;
    Ok(Float::with_val(p, v))
}

/// Intermediate identities on the way to `μ_2(1+x+y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mu2Step {
    /// `(2/π) ∫_0^π Re Li_2(4 sin²θ) dθ = 2ζ(2)`.
    DilogMean,
    /// `∫_{π/6}^{π/2} {Re Li_2(4 sin²θ) + Li_2(1/(4 sin²θ))} dθ = 5π³/54`.
    FunctionalEquation,
    /// `π μ_2 = 67π³/324 + 2 Cl_2(π/3) log 3 - 8 Im Li_3(i√3) + 4 Im Li_3((3+i√3)/2)`.
    TrilogForm,
    /// `Im Li_3((3+i√3)/2) = 55π³/1296 + 5π log²3/48 + Im Li_3((3-i√3)/6)`.
    TrilogInversion,
    /// `Im Li_3(i√3) = π³/16 + π log²3/16 - Ti_3(1/√3)`.
    TrilogImaginaryAxis,
    /// `Ti_3(1/√3) = 5/8 Ls_3(2π/3) - Ti_2(1/√3) log 3/2 - π log²3/48 + 2π³/27`.
    TiThreeLogSine,
    /// `Ti_2(1/√3) = 5/6 Cl_2(π/3) - π log 3/12`.
    TiTwoClausen,
    /// `∫_{-π}^{π} log²|1 - 2 sin θ e^{iω}| dω = π Li_2(4 sin²θ)` at `θ = π/10`.
    Parseval,
    /// `Ls_3(2π/3) = -13π³/162 - 2 Gl_{2,1}(2π/3)`, with the left side by quadrature.
    LogSineTwoThirds,
}

impl Mu2Step {
    pub const ALL: [Mu2Step; 9] = [
        Mu2Step::DilogMean,
        Mu2Step::FunctionalEquation,
        Mu2Step::TrilogForm,
        Mu2Step::TrilogInversion,
        Mu2Step::TrilogImaginaryAxis,
        Mu2Step::TiThreeLogSine,
        Mu2Step::TiTwoClausen,
        Mu2Step::Parseval,
        Mu2Step::LogSineTwoThirds,
    ];
}

fn im_li3(re: &Float, im: &Float, wp: u32) -> Float {
    polylog_prec(3, &Complex::new(re.clone(), im.clone()), wp).im
}

/// Both sides of an intermediate identity.
pub fn mu2_step(step: Mu2Step, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let p = ctx.prec();
    let wp = p + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let pp = |k: u32| Float::with_val(wp, (&pi).pow(k));
    let l3 = log3(wp);
    let l3sq = Float::with_val(wp, l3.square_ref());
    let sqrt3 = Float::with_val(wp, 3).sqrt();
    let itol = Float::with_val(wp, ctx.tol() / 8u32);
    let lv = ctx.quadrature_levels;
    let re_li2_4s2 = |t: &Float| {
        let s = Float::with_val(wp, t.sin_ref());
        li2_real(&(Float::with_val(wp, s.square_ref()) * 4u32), wp)
    };
    let (l, r) = match step {
        Mu2Step::DilogMean => {
            let pts: Vec<Float> = [0u32, 1, 3, 5, 6].iter().map(|&j| Float::with_val(wp, &pi * j) / 6u32).collect();
            let v = integrate_piecewise(re_li2_4s2, &pts, &itol, wp, lv)?.value;
            (v * 2u32 / &pi, zeta_prec(2, wp) * 2u32)
        }
        Mu2Step::FunctionalEquation => {
            let v = integrate_1d_tol(
                |t: &Float| {
                    let s2 = Float::with_val(wp, t.sin_ref()).square() * 4u32;
                    li2_real(&s2, wp) + li2_real(&s2.recip(), wp)
                },
                &Float::with_val(wp, &pi / 6u32),
                &Float::with_val(wp, &pi / 2u32),
                &itol,
                wp,
                lv,
            )?
            .value;
            (v, pp(3) * 5u32 / 54u32)
        }
        Mu2Step::TrilogForm => {
            let lhs = Float::with_val(wp, &pi * mu2_1pxy(&ctx.raised(5))?);
            let mut r = pp(3) * 67u32 / 324u32;
            r += cl2_pi3(wp)? * &l3 * 2u32;
            r -= im_li3(&Float::new(wp), &sqrt3, wp) * 8u32;
            r += im_li3(&Float::with_val(wp, 1.5), &Float::with_val(wp, &sqrt3 / 2u32), wp) * 4u32;
            (lhs, r)
        }
        Mu2Step::TrilogInversion => {
            let lhs = im_li3(&Float::with_val(wp, 1.5), &Float::with_val(wp, &sqrt3 / 2u32), wp);
            let mut r = pp(3) * 55u32 / 1296u32;
            r += Float::with_val(wp, &pi * &l3sq) * 5u32 / 48u32;
            r += im_li3(&Float::with_val(wp, 0.5), &-Float::with_val(wp, &sqrt3 / 6u32), wp);
            (lhs, r)
        }
        Mu2Step::TrilogImaginaryAxis => {
            let lhs = im_li3(&Float::new(wp), &sqrt3, wp);
            let ti3 = inverse_tangent_integral_prec(3, &sqrt3.clone().recip(), wp)?;
            let r = pp(3) / 16u32 + Float::with_val(wp, &pi * &l3sq) / 16u32 - ti3;
            (lhs, r)
        }
        Mu2Step::TiThreeLogSine => {
            let x = sqrt3.clone().recip();
            let lhs = inverse_tangent_integral_prec(3, &x, wp)?;
            let tau = Float::with_val(wp, &pi * 2u32) / 3u32;
            let ls3 = ls_at_angle(3, 0, &tau, wp, &itol, lv)?;
            let ti2 = inverse_tangent_integral_prec(2, &x, wp)?;
            let mut r = ls3 * 5u32 / 8u32;
            r -= Float::with_val(wp, &ti2 * &l3) / 2u32;
            r -= Float::with_val(wp, &pi * &l3sq) / 48u32;
            r += pp(3) * 2u32 / 27u32;
            (lhs, r)
        }
        Mu2Step::TiTwoClausen => {
            let lhs = inverse_tangent_integral_prec(2, &sqrt3.clone().recip(), wp)?;
            let r = cl2_pi3(wp)? * 5u32 / 6u32 - Float::with_val(wp, &pi * &l3) / 12u32;
            (lhs, r)
        }
        Mu2Step::Parseval => {
            let theta = Float::with_val(wp, &pi / 10u32);
            let alpha = Float::with_val(wp, theta.sin_ref()) * 2u32;
            // log|1 - α e^{iω}|² = log(1 - 2α cos ω + α²)
            let v = integrate_1d_tol(
                |w: &Float| {
                    let c = Float::with_val(wp, w.cos_ref());
                    let q = Float::with_val(wp, 1 + Float::with_val(wp, alpha.square_ref()))
                        - Float::with_val(wp, &alpha * &c) * 2u32;
                    let l = q.ln() / 2u32;
                    l.square()
                },
                &Float::with_val(wp, -&pi),
                &pi,
                &itol,
                wp,
                lv,
            )?
            .value;
            let r = Float::with_val(wp, &pi * li2_real(&Float::with_val(wp, alpha.square_ref()), wp));
            (v, r)
        }
        Mu2Step::LogSineTwoThirds => {
            let tau = Float::with_val(wp, &pi * 2u32) / 3u32;
            let lhs = ls_at_angle(3, 0, &tau, wp, &itol, lv)?;
            let gl = clausen_glaisher_prec(ClKind::Gl, &Composition::new(vec![2, 1])?, &tau, wp)?;
            (lhs, -(pp(3) * 13u32 / 162u32) - gl * 2u32)
        }
    };
    Ok((Float::with_val(p, l), Float::with_val(p, r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::make_context;

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() < tol
    }

    #[test]
    fn tau_special_values() {
        let ctx = make_context(30).unwrap();
        let p = ctx.prec();
        let t0 = dilog_tau(&ctx.zero(), &ctx).unwrap();
        assert!(t0.abs() < 1e-30);
        let t1 = dilog_tau(&ctx.float(1), &ctx).unwrap();
        let re = zeta_prec(2, p) * 2u32;
        let im = cl2_pi3(p).unwrap() * 4u32;
        assert!(close(&t1.re, &re, 1e-29) && close(&t1.im, &im, 1e-29), "{:?}", t1);
        let z = ctx.ratio(1, 8);
        let a = dilog_tau(&z, &ctx).unwrap();
        let b = dilog_tau_quadrature(&z, &ctx).unwrap();
        assert!(close(&a.re, &b, 1e-28) && a.im.is_zero());
        // τ(1/4) = π²/3 - 4 log²2
        let q = dilog_tau(&ctx.ratio(1, 4), &ctx).unwrap();
        let e = ctx.pi().square() / 3u32 - ctx.log2().square() * 4u32;
        assert!(close(&q.re, &e, 1e-29));
        assert!(dilog_tau(&ctx.float(2), &ctx).is_err());
    }

    #[test]
    fn all_routes_agree() {
        let ctx = make_context(25).unwrap();
        let p = ctx.prec();
        let v = mu2_1pxy(&ctx).unwrap();
        let e = Float::with_val(p, Float::parse("0.4192992783011744553461857017488614656618").unwrap());
        assert!(close(&v, &e, 1e-25), "{v}");
        for w in
            [mu2_1pxy_ti_form(&ctx).unwrap(), mu2_1pxy_dilog_form(&ctx).unwrap(), mu2_1pxy_walk_series(&ctx).unwrap()]
        {
            assert!(close(&v, &w, 1e-23), "{v} vs {w}");
        }
    }

    #[test]
    fn intermediate_identities() {
        let ctx = make_context(20).unwrap();
        for s in Mu2Step::ALL {
            let (l, r) = mu2_step(s, &ctx).unwrap();
            assert!(close(&l, &r, 1e-18), "{s:?}: {l} vs {r}");
        }
    }
}
