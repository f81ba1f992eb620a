//! Polylogarithmic reductions of low-weight log-sine integrals at a general angle.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;
use crate::specfun::{clausen_glaisher_prec, zeta_prec, ClKind, Composition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight4 {
    /// `Ls_3(τ)`
    Ls3,
    /// `Ls^{(1)}_3(τ)`
    Ls3k1,
    /// `Ls_4(τ)`
    Ls4,
    /// `Ls^{(1)}_4(τ)`
    Ls4k1,
    /// `Ls^{(2)}_4(τ)`
    Ls4k2,
}

impl Weight4 {
    pub fn n(self) -> u32 {
        match self {
            Weight4::Ls3 | Weight4::Ls3k1 => 3,
            _ => 4,
        }
    }

    pub fn k(self) -> u32 {
        match self {
            Weight4::Ls3 | Weight4::Ls4 => 0,
            Weight4::Ls3k1 | Weight4::Ls4k1 => 1,
            Weight4::Ls4k2 => 2,
        }
    }
}

pub fn ls_weight4_tau(which: Weight4, tau: &Float, ctx: &PrecisionContext) -> Result<Float> {
    ls_weight4_tau_prec(which, tau, ctx.prec())
}

pub(crate) fn ls_weight4_tau_prec(which: Weight4, tau: &Float, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    let pi = Float::with_val(wp, Constant::Pi);
    let two_pi = Float::with_val(wp, &pi * 2u32);
    if *tau <= 0 || *tau >= two_pi {
        return Err(Error::invalid("τ must lie in (0, 2π)"));
    }
    let t = Float::with_val(wp, tau);
    let cl = |a: &[u32]| clausen_glaisher_prec(ClKind::Cl, &Composition::new(a.to_vec())?, &t, wp);
    let gl = |a: &[u32]| clausen_glaisher_prec(ClKind::Gl, &Composition::new(a.to_vec())?, &t, wp);
    let tp = |k: u32| Float::with_val(wp, (&t).pow(k));
    let pp = |k: u32| Float::with_val(wp, (&pi).pow(k));
    let v = match which {
        Weight4::Ls3 => {
            // -Ls_3 = 2 Gl_{2,1} + τ(3π² - 3πτ + τ²)/12
            let poly = Float::with_val(wp, pp(2) * 3u32) - Float::with_val(wp, &pi * &t) * 3u32 + tp(2);
            let r = gl(&[2, 1])? * 2u32 + Float::with_val(wp, &t * &poly) / 12u32;
            -r
        }
        Weight4::Ls3k1 => cl(&[3])? + Float::with_val(wp, &t * cl(&[2])?) - zeta_prec(3, wp),
        Weight4::Ls4 => {
            let d = Float::with_val(wp, &pi - &t);
            let mut r = cl(&[2, 1, 1])? * -6i32;
            r += cl(&[4])? * 3u32 / 2u32;
            r += Float::with_val(wp, &d * cl(&[3])?) * 3u32 / 2u32;
            r -= Float::with_val(wp, d.square_ref()) * cl(&[2])? * 3u32 / 4u32;
            r -= Float::with_val(wp, &pi * zeta_prec(3, wp)) * 3u32 / 2u32;
            -r
        }
        Weight4::Ls4k1 => {
            let mut r = pp(4) / 180u32;
            r -= tp(4) / 16u32;
            r += Float::with_val(wp, &pi * tp(3)) / 6u32;
            r -= Float::with_val(wp, pp(2) * tp(2)) / 8u32;
            r -= gl(&[3, 1])? * 2u32;
            r -= Float::with_val(wp, &t * gl(&[2, 1])?) * 2u32;
            r
        }
        Weight4::Ls4k2 => {
            let mut r = cl(&[4])? * -2i32;
            r += Float::with_val(wp, &t * cl(&[3])?) * 2u32;
            r += tp(2) * cl(&[2])?;
            r
        }
    };
    Ok(Float::with_val(prec, v))
}
