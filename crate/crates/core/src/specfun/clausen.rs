//! Clausen and Glaisher functions, inverse tangent integrals, Kummer-type λ_n.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::polylog::{multiple_polylog_prec, pi, polylog_prec, unit, Composition};
use crate::error::{Error, Result};
use crate::mpcore::{Complex, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClKind {
    Cl,
    Gl,
}

/// `Cl_a(θ)` or `Gl_a(θ)`: the imaginary or real part of `Li_a(e^{iθ})`,
/// chosen by the parity of the weight.
pub fn clausen_glaisher(kind: ClKind, a: &Composition, theta: &Float, ctx: &PrecisionContext) -> Result<Float> {
    clausen_glaisher_prec(kind, a, theta, ctx.prec())
}

pub(crate) fn clausen_glaisher_prec(kind: ClKind, a: &Composition, theta: &Float, prec: u32) -> Result<Float> {
    if a.parts()[0] < 2 && a.depth() > 1 {
        return Err(Error::Divergent(format!("Clausen/Glaisher function with index ({a}) needs a leading index >= 2")));
    }
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    if *theta < 0 || Float::with_val(prec, theta - &two_pi) > 1e-30 {
        return Err(Error::invalid("angle must lie in [0, 2π]"));
    }
    if a.parts()[0] == 1 && (theta.is_zero() || *theta == two_pi) {
        return Err(Error::Divergent("Cl_1 at θ = 0".into()));
    }
    let wp = prec + 16;
    let z = unit(theta, wp);
    let li =
        if a.depth() == 1 { polylog_prec(a.parts()[0], &z, wp) } else { multiple_polylog_prec(a.parts(), &z, wp)? };
    Ok(Float::with_val(prec, pick(kind, a.weight(), &li)))
}

fn pick(kind: ClKind, weight: u32, li: &Complex) -> &Float {
    match (kind, weight % 2 == 0) {
        (ClKind::Cl, true) | (ClKind::Gl, false) => &li.im,
        _ => &li.re,
    }
}

/// `Ti_k(x) = Σ (-1)^n x^{2n+1}/(2n+1)^k`, `|x| ≤ 1`.
pub fn inverse_tangent_integral(k: u32, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    inverse_tangent_integral_prec(k, x, ctx.prec())
}

pub(crate) fn inverse_tangent_integral_prec(k: u32, x: &Float, prec: u32) -> Result<Float> {
    if k < 1 {
        return Err(Error::invalid("Ti_k needs k >= 1"));
    }
    if Float::with_val(prec, x.abs_ref()) > 1 {
        return Err(Error::invalid("Ti_k(x) needs |x| <= 1"));
    }
    let wp = prec + 24;
    let x = Float::with_val(wp, x);
    if x.is_zero() {
        return Ok(Float::new(prec));
    }
    let x2 = Float::with_val(wp, x.square_ref());
    if x2 <= 0.5 {
        let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
        let mut acc = Float::new(wp);
        let mut pw = x.clone();
        let mut n = 0u32;
        loop {
            let t = Float::with_val(wp, &pw / Float::with_val(wp, 2 * n + 1).pow(k));
            let small = Float::with_val(wp, t.abs_ref()) < eps;
            if n % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
            if small {
                break;
            }
            pw *= &x2;
            n += 1;
        }
        return Ok(Float::with_val(prec, acc));
    }
    let z = Complex::new(Float::new(wp), x);
    let li = polylog_prec(k, &z, wp);
    Ok(Float::with_val(prec, li.im))
}

/// Kummer-type polylogarithm
/// `λ_n(x) = (n-2)! Σ_{k=0}^{n-2} (-1)^k/k! Li_{n-k}(x) log^k|x| + (-1)^n/n log^n|x|`.
pub fn kummer_lambda(n: u32, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    kummer_lambda_prec(n, x, ctx.prec())
}

pub(crate) fn kummer_lambda_prec(n: u32, x: &Float, prec: u32) -> Result<Float> {
    if n < 1 {
        return Err(Error::invalid("λ_n needs n >= 1"));
    }
    if x.is_zero() || Float::with_val(prec, x.abs_ref()) > 1 {
        return Err(Error::invalid("λ_n(x) needs 0 < |x| <= 1"));
    }
    let wp = prec + 24;
    let lg = Float::with_val(wp, x.abs_ref()).ln();
    let mut last = Float::with_val(wp, (&lg).pow(n)) / n;
    if n % 2 == 1 {
        last = -last;
    }
    if n == 1 {
        return Ok(Float::with_val(prec, last));
    }
    let z = Complex::real(Float::with_val(wp, x));
    let mut acc = Float::new(wp);
    let mut lgk = Float::with_val(wp, 1);
    let mut kfact = Float::with_val(wp, 1);
    for k in 0..=(n - 2) {
        if k > 0 {
            lgk *= &lg;
            kfact *= k;
        }
        let li = polylog_prec(n - k, &z, wp);
        let mut t = Float::with_val(wp, &li.re * &lgk) / &kfact;
        if k % 2 == 1 {
            t = -t;
        }
        acc += t;
    }
    acc *= Float::with_val(wp, Integer::from(Integer::factorial(n - 2)));
    acc += last;
    Ok(Float::with_val(prec, acc))
}

/// Real part of `Li_2(x)` for any real `x` (the principal branch for `x > 1`).
pub fn li2_real(x: &Float, prec: u32) -> Float {
    let wp = prec + 24;
    let x = Float::with_val(wp, x);
    let ax = Float::with_val(wp, x.abs_ref());
    if ax <= 1 {
        return Float::with_val(prec, polylog_prec(2, &Complex::real(x), wp).re);
    }
    let inv = Float::with_val(wp, x.recip_ref());
    let li_inv = polylog_prec(2, &Complex::real(inv), wp).re;
    let pi2 = Float::with_val(wp, pi(wp).square_ref());
    let l2 = Float::with_val(wp, ax.ln().square_ref()) / 2u32;
    let v = if x > 0 {
        // Li_2(x) + Li_2(1/x) = π²/3 - log²(x)/2 (real parts)
        pi2 / 3u32 - l2 - li_inv
    } else {
        -(pi2 / 6u32) - l2 - li_inv
    };
    Float::with_val(prec, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::make_context;
    use crate::specfun::zeta::zeta_prec;

    fn parse(s: &str, p: u32) -> Float {
        Float::with_val(p, Float::parse(s).unwrap())
    }

    /// Partial sum of `Σ sin(nθ)/n²`; the omitted tail is below `1/N`.
    fn cl2_direct(theta: f64, n: usize) -> f64 {
        (1..=n).map(|k| (k as f64 * theta).sin() / (k * k) as f64).sum()
    }

    #[test]
    fn cl2_values() {
        let ctx = make_context(40).unwrap();
        let p = ctx.prec();
        let a = Composition::single(2);
        let v = clausen_glaisher(ClKind::Cl, &a, &pi(p), &ctx).unwrap();
        assert!(v.clone().abs() < 1e-45);
        let th = Float::with_val(p, pi(p) / 3u32);
        let v = clausen_glaisher(ClKind::Cl, &a, &th, &ctx).unwrap();
        let e = parse("1.0149416064096536250212025542745202859416893075", p);
        assert!(Float::with_val(p, &v - &e).abs() < 1e-39);
        assert!((v.to_f64() - cl2_direct(std::f64::consts::PI / 3.0, 200000)).abs() < 1e-5);
    }

    #[test]
    fn glaisher_depth_one_is_bernoulli_polynomial() {
        // Gl_2(θ) = π²/6 - πθ/2 + θ²/4 on [0, 2π]
        let ctx = make_context(30).unwrap();
        let p = ctx.prec();
        let th = Float::with_val(p, 1.25);
        let v = clausen_glaisher(ClKind::Gl, &Composition::single(2), &th, &ctx).unwrap();
        let pi = pi(p);
        let e = Float::with_val(p, pi.square_ref()) / 6u32 - Float::with_val(p, &pi * &th) / 2u32
            + Float::with_val(p, th.square_ref()) / 4u32;
        assert!(Float::with_val(p, &v - &e).abs() < 1e-35);
    }

    #[test]
    fn gl41_pi3_against_central_binomial_form() {
        // Gl_{4,1}(π/3) = 3341π⁵/1632960 - ζ(3)²/π - (3/(4π)) Σ 1/(C(2n,n) n⁶)
        let ctx = make_context(30).unwrap();
        let p = ctx.prec();
        let th = Float::with_val(p, pi(p) / 3u32);
        let a = Composition::new(vec![4, 1]).unwrap();
        let v = clausen_glaisher(ClKind::Gl, &a, &th, &ctx).unwrap();
        let wp = p + 20;
        let mut s = Float::new(wp);
        for n in 1..200u32 {
            let c = Float::with_val(wp, Integer::from(Integer::binomial_u(2 * n, n)));
            s += (c * Float::with_val(wp, n).pow(6u32)).recip();
        }
        let pi = super::pi(wp);
        let z3 = zeta_prec(3, wp);
        let rhs = Float::with_val(wp, (&pi).pow(5u32)) * 3341u32 / 1632960u32
            - Float::with_val(wp, z3.square_ref()) / &pi
            - s * 3u32 / (pi * 4u32);
        assert!(Float::with_val(wp, &v - &rhs).abs() < 1e-33, "{v} vs {rhs}");
    }

    #[test]
    fn parity_reconstructs_polylog() {
        let ctx = make_context(25).unwrap();
        let p = ctx.prec();
        let th = Float::with_val(p, 2.0);
        for parts in [vec![2], vec![3], vec![2, 1], vec![3, 1, 1]] {
            let a = Composition::new(parts).unwrap();
            let li = multiple_polylog_prec(a.parts(), &unit(&th, p), p).unwrap();
            let cl = clausen_glaisher(ClKind::Cl, &a, &th, &ctx).unwrap();
            let gl = clausen_glaisher(ClKind::Gl, &a, &th, &ctx).unwrap();
            let (re, im) = if a.weight() % 2 == 0 { (gl, cl) } else { (cl, gl) };
            assert!(Float::with_val(p, &li.re - &re).abs() < 1e-30);
            assert!(Float::with_val(p, &li.im - &im).abs() < 1e-30);
        }
    }

    #[test]
    fn ti2_inverse_sqrt3() {
        // Ti_2(1/√3) = (5/6) Cl_2(π/3) - (π/12) log 3
        let ctx = make_context(35).unwrap();
        let p = ctx.prec();
        let x = Float::with_val(p, 3).sqrt().recip();
        let v = inverse_tangent_integral(2, &x, &ctx).unwrap();
        let th = Float::with_val(p, pi(p) / 3u32);
        let cl = clausen_glaisher(ClKind::Cl, &Composition::single(2), &th, &ctx).unwrap();
        let e = cl * 5u32 / 6u32 - pi(p) / 12u32 * Float::with_val(p, 3).ln();
        assert!(Float::with_val(p, &v - &e).abs() < 1e-38);
        assert!(inverse_tangent_integral(3, &Float::new(p), &ctx).unwrap().is_zero());
    }

    #[test]
    fn ti_series_and_polylog_paths_agree() {
        let p = 150;
        let x = Float::with_val(p, 0.7);
        let via_li = {
            let z = Complex::new(Float::new(p + 24), Float::with_val(p + 24, &x));
            polylog_prec(3, &z, p + 24).im
        };
        let mut direct = Float::new(p + 24);
        let x2 = Float::with_val(p + 24, x.square_ref());
        let mut pw = Float::with_val(p + 24, &x);
        for n in 0..400u32 {
            let t = Float::with_val(p + 24, &pw / Float::with_val(p + 24, 2 * n + 1).pow(3u32));
            if n % 2 == 0 {
                direct += t;
            } else {
                direct -= t;
            }
            pw *= &x2;
        }
        assert!(Float::with_val(p, &via_li - &direct).abs() < 1e-40);
        // Ti_2(1) is Catalan's constant
        let g = inverse_tangent_integral_prec(2, &Float::with_val(p, 1), p).unwrap();
        let e = parse("0.91596559417721901505460351493238411077414937", p);
        assert!(Float::with_val(p, &g - &e).abs() < 1e-40);
    }

    #[test]
    fn kummer_lambda_at_half() {
        let ctx = make_context(40).unwrap();
        let p = ctx.prec();
        let h = ctx.ratio(1, 2);
        let l1 = kummer_lambda(1, &h, &ctx).unwrap();
        assert!(Float::with_val(p, &l1 - ctx.log2()).abs() < 1e-45);
        let l2 = kummer_lambda(2, &h, &ctx).unwrap();
        assert!(Float::with_val(p, &l2 - zeta_prec(2, p) / 2u32).abs() < 1e-45);
        let l3 = kummer_lambda(3, &h, &ctx).unwrap();
        let e3 = zeta_prec(3, p) * 7u32 / 8u32;
        assert!(Float::with_val(p, &l3 - &e3).abs() < 1e-45);
    }

    #[test]
    fn kummer_lambda4_independent_assembly() {
        // λ_4(1/2) = 2 Li_4(1/2) + 2 log2 Li_3(1/2) + log²2 Li_2(1/2) + log⁴2/4
        let ctx = make_context(30).unwrap();
        let p = ctx.prec();
        let h = ctx.ratio(1, 2);
        let v = kummer_lambda(4, &h, &ctx).unwrap();
        let li = |s: u32| {
            let mut acc = Float::new(p + 20);
            for n in 1..200u32 {
                acc += Float::with_val(p + 20, Float::i_exp(1, -(n as i32))) / Float::with_val(p + 20, n).pow(s);
            }
            acc
        };
        let l = Float::with_val(p + 20, rug::float::Constant::Log2);
        let e = li(4) * 2u32
            + Float::with_val(p + 20, &l * li(3)) * 2u32
            + Float::with_val(p + 20, l.square_ref()) * li(2)
            + Float::with_val(p + 20, (&l).pow(4u32)) / 4u32;
        assert!(Float::with_val(p, &v - &e).abs() < 1e-35);
    }

    #[test]
    fn li2_real_branches() {
        let p = 160;
        for (x, e) in [
            ("2", "2.4674011002723396547086227499690377838284248518"),
            ("-3", "-1.9393754207667089530772717191778914412225901778"),
            ("4", "2.0613094667773174166914414521509088591569368323"),
            ("0.75", "0.97846939293030610374306666652456149776148427462"),
        ] {
            let v = li2_real(&parse(x, p), p);
            assert!(Float::with_val(p, &v - parse(e, p)).abs() < 1e-40, "x={x}: {v}");
        }
    }
}
