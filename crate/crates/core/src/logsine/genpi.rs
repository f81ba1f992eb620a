//! Generalized log-sine integrals at π from the generating function
//!
//! `-Σ Ls^{(k)}_{n+k+1}(π) λ^n/n! (iμ)^k/k!
//!   = i Σ_{m≥0} (-1)^m C(λ,m) (e^{iπλ/2} - (-1)^m e^{iπμ}) / (μ - λ/2 + m)`.
//!
//! For `m ≥ 1` the summand is expanded in `λ` and `μ - λ/2`; summing the
//! coefficients over `m` termwise gives `Li_{s,{1}^a}(±1)` exactly, so every
//! coefficient is a finite combination of π, multiple zeta values and
//! alternating multiple polylogarithms at -1. The `m = 0` summand is a
//! removable singularity handled by exact series division.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{Coeff, PrecisionContext, TruncatedSeries};
use crate::symconst::{cexpr_eval_prec, BasisConstant, ConstExpr};

/// Default cap on `n` for [`gen_ls_pi_extract`].
pub const DEFAULT_ORDER_CAP: u32 = 9;

/// `re + i·im` with symbolic parts.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussExpr {
    pub re: ConstExpr,
    pub im: ConstExpr,
}

impl GaussExpr {
    fn real(re: ConstExpr) -> Self {
        GaussExpr { re, im: ConstExpr::zero() }
    }

    fn imag(im: ConstExpr) -> Self {
        GaussExpr { re: ConstExpr::zero(), im }
    }

    /// `(iπ)^j / j!` times `scale`.
    fn i_pi_pow(j: u32, scale: &Rational) -> Self {
        let c = ConstExpr::basis_pow(BasisConstant::Pi, j as i32)
            .scale(&(scale.clone() / Rational::from(Integer::from(Integer::factorial(j)))));
        match j % 4 {
            0 => Self::real(c),
            1 => Self::imag(c),
            2 => Self::real(c.neg()),
            _ => Self::imag(c.neg()),
        }
    }
}

impl Coeff for GaussExpr {
    fn zero_like(&self) -> Self {
        Self::real(ConstExpr::zero())
    }
    fn one_like(&self) -> Self {
        Self::real(ConstExpr::int(1))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.im.is_zero() && self.re == ConstExpr::int(1)
    }
    fn add(&self, o: &Self) -> Self {
        GaussExpr { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussExpr { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }
    fn mul(&self, o: &Self) -> Self {
        GaussExpr { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }
    fn neg(&self) -> Self {
        GaussExpr { re: self.re.neg(), im: self.im.neg() }
    }
    fn scale_ratio(&self, num: i64, den: i64) -> Self {
        let q = Rational::from((num, den));
        GaussExpr { re: self.re.scale(&q), im: self.im.scale(&q) }
    }
    fn inverse(&self) -> Option<Self> {
        if self.im.is_zero() {
            Some(Self::real(Coeff::inverse(&self.re)?))
        } else if self.re.is_zero() {
            Some(Self::imag(Coeff::inverse(&self.im)?.neg()))
        } else {
            None
        }
    }
}

const VARS: [&str; 2] = ["lambda", "mu"];

fn rat(q: Rational) -> GaussExpr {
    GaussExpr::real(ConstExpr::rational(q))
}

fn monomial(i: u32, j: u32, c: GaussExpr, order: u32) -> Result<TruncatedSeries<GaussExpr>> {
    TruncatedSeries::from_terms(&VARS, order, &rat(Rational::new()), std::iter::once((vec![i, j], c)))
}

/// `exp(iπ·(a λ + b μ))` to total degree `order`.
fn exp_i_pi(a: &Rational, b: &Rational, order: u32) -> Result<TruncatedSeries<GaussExpr>> {
    let mut acc = TruncatedSeries::zero(&VARS, order, &rat(Rational::new()));
    for d in 0..=order {
        for i in 0..=d {
            let j = d - i;
            let binom = Rational::from(Integer::from(Integer::binomial_u(d, i)));
            let c = binom * rpow(a, i) * rpow(b, j);
            if c == 0 {
                continue;
            }
            acc = acc.add(&monomial(i, j, GaussExpr::i_pi_pow(d, &c), order)?)?;
        }
    }
    Ok(acc)
}

fn rpow(q: &Rational, e: u32) -> Rational {
    let mut r = Rational::from(1);
    for _ in 0..e {
        r *= q;
    }
    r
}

fn ones_index(s: u32, a: u32) -> Vec<u32> {
    let mut v = vec![s];
    v.extend(std::iter::repeat(1).take(a as usize));
    v
}

/// The full generating function, exact through total degree `order`.
pub fn generating_series(order: u32) -> Result<TruncatedSeries<GaussExpr>> {
    let zero = rat(Rational::new());
    let half = Rational::from((1, 2));
    let e_lam = exp_i_pi(&half, &Rational::new(), order + 1)?;
    let e_mu = exp_i_pi(&Rational::new(), &Rational::from(1), order + 1)?;

    // m = 0: i (e^{iπλ/2} - e^{iπμ}) / (μ - λ/2)
    let numer = e_lam.sub(&e_mu)?.map(|c| c.mul(&GaussExpr::imag(ConstExpr::int(1))));
    let mut total = numer.div_by_linear(&[rat(-half.clone()), rat(Rational::from(1))])?;

    // m ≥ 1: (-1)^m C(λ,m) = -(λ/m) Σ_a (-λ)^a e_a(1, 1/2, …, 1/(m-1)),
    // 1/(m + u) = Σ_r (-u)^r / m^{r+1} with u = μ - λ/2.
    let e_lam = e_lam.truncate(order);
    let e_mu = e_mu.truncate(order);
    let u = TruncatedSeries::from_terms(
        &VARS,
        order,
        &zero,
        [(vec![1, 0], rat(-half.clone())), (vec![0, 1], rat(Rational::from(1)))],
    )?;
    let mut u_pow = vec![TruncatedSeries::constant(&VARS, order, rat(Rational::from(1)))];
    for r in 1..order {
        let next = u_pow[r as usize - 1].mul(&u)?;
        u_pow.push(next);
    }
    let minus_i = GaussExpr::imag(ConstExpr::int(-1));
    for a in 0..order {
        for r in 0..(order - a) {
            let s = 2 + r;
            let sign = if (a + r) % 2 == 0 { 1 } else { -1 };
            let idx = ones_index(s, a);
            let li_plus = ConstExpr::basis(BasisConstant::Mzv(idx.clone()));
            let li_minus = ConstExpr::basis(BasisConstant::LiNegOne(idx));
            // z = +1 pairs with e^{iπλ/2}, z = -1 with -e^{iπμ}
            let weight_series = e_lam
                .map(|c| c.mul(&GaussExpr::real(li_plus.clone())))
                .sub(&e_mu.map(|c| c.mul(&GaussExpr::real(li_minus.clone()))))?;
            let lam_pow = monomial(1 + a, 0, minus_i.scale_ratio(sign, 1), order)?;
            let term = lam_pow.mul(&u_pow[r as usize])?.mul(&weight_series)?;
            total = total.add(&term)?;
        }
    }
    Ok(total)
}

fn check_order(n: u32, k: u32, cap: u32) -> Result<()> {
    if k >= n || n < 1 {
        return Err(Error::invalid(format!("Ls^({k})_{n}(π) needs 0 ≤ k ≤ n-1")));
    }
    if n > cap {
        return Err(Error::Unsupported(format!("order {n} exceeds the configured cap {cap}")));
    }
    Ok(())
}

/// Exact `Ls^{(k)}_n(π)` over π, MZVs and alternating values at -1, with
/// the (numerically vanishing) imaginary part kept for diagnostics.
pub fn gen_ls_pi_exact(n: u32, k: u32, cap: u32) -> Result<GaussExpr> {
    check_order(n, k, cap)?;
    let big_n = n - k - 1;
    let series = generating_series(n - 1)?;
    let c = series.coeff(&[big_n, k]);
    // -Ls = N! K! c / i^K
    let f = Rational::from(Integer::from(Integer::factorial(big_n)) * Integer::from(Integer::factorial(k)));
    let c = GaussExpr { re: c.re.scale(&f), im: c.im.scale(&f) };
    let c = match k % 4 {
        0 => c,
        1 => GaussExpr { re: c.im.clone(), im: c.re.neg() },
        2 => c.neg(),
        _ => GaussExpr { re: c.im.neg(), im: c.re.clone() },
    };
    Ok(c.neg())
}

#[derive(Debug, Clone)]
pub struct Extracted {
    pub value: Float,
    /// Magnitude of the imaginary part left over by the extraction.
    pub imag_residue: Float,
    pub exact: ConstExpr,
}

pub fn gen_ls_pi_extract(n: u32, k: u32, ctx: &PrecisionContext) -> Result<Extracted> {
    gen_ls_pi_extract_capped(n, k, DEFAULT_ORDER_CAP, ctx)
}

pub fn gen_ls_pi_extract_capped(n: u32, k: u32, cap: u32, ctx: &PrecisionContext) -> Result<Extracted> {
    let g = gen_ls_pi_exact(n, k, cap)?;
    let p = ctx.prec();
    let value = cexpr_eval_prec(&g.re, p)?;
    let imag_residue = cexpr_eval_prec(&g.im, p)?.abs();
    if imag_residue > ctx.tol() {
        return Err(Error::exhausted(
            "gen_ls_pi_extract",
            format!("imaginary residue {} above tolerance", imag_residue.to_f64()),
        ));
    }
    Ok(Extracted { value, imag_residue, exact: g.re })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logsine::{gen_ls_pi_table, ls_numeric, LogSineSpec};
    use crate::mpcore::make_context;
    use crate::symconst::{cexpr_eval, parse_expr};

    #[test]
    fn ls42_and_ls64() {
        let ctx = make_context(30).unwrap();
        for (n, k, s) in [(4, 2, "-3/2*Pi*Zeta(3)"), (6, 4, "45/2*Pi*Zeta(5) - 3*Pi^3*Zeta(3)")] {
            let r = gen_ls_pi_extract(n, k, &ctx).unwrap();
            let e = cexpr_eval(&parse_expr(s).unwrap(), &ctx).unwrap();
            assert!(Float::with_val(ctx.prec(), &r.value - &e).abs() < 1e-30, "({n},{k})");
            assert!(r.imag_residue < 1e-30);
        }
    }

    #[test]
    fn plain_values_match_recursion() {
        let ctx = make_context(25).unwrap();
        for n in 2..=7 {
            let r = gen_ls_pi_extract(n, 0, &ctx).unwrap();
            let e = cexpr_eval(&crate::logsine::ls_pi_recursive(n).unwrap(), &ctx).unwrap();
            assert!(Float::with_val(ctx.prec(), &r.value - &e).abs() < 1e-25, "n = {n}");
        }
    }

    #[test]
    fn weight_is_n() {
        let g = gen_ls_pi_exact(5, 1, 9).unwrap();
        assert!(g.re.is_homogeneous_of(5));
    }

    #[test]
    fn matches_table_and_quadrature() {
        let ctx = make_context(20).unwrap();
        for (n, k) in crate::logsine::gen_ls_pi_table_keys() {
            let r = gen_ls_pi_extract(n, k, &ctx).unwrap();
            let t = cexpr_eval(&gen_ls_pi_table(n, k).unwrap(), &ctx).unwrap();
            let q = ls_numeric(&LogSineSpec::new(n, k, Rational::from(1)).unwrap(), &ctx).unwrap();
            assert!(Float::with_val(ctx.prec(), &r.value - &t).abs() < 1e-20, "({n},{k})");
            assert!(Float::with_val(ctx.prec(), &r.value - &q).abs() < 1e-20, "({n},{k})");
        }
    }

    #[test]
    fn order_cap() {
        let ctx = make_context(10).unwrap();
        assert!(matches!(gen_ls_pi_extract(10, 1, &ctx), Err(Error::Unsupported(_))));
        assert!(gen_ls_pi_extract(4, 4, &ctx).is_err());
    }
}
