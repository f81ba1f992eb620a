//! Named evaluators referenced from registry records.

use rug::float::Constant;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logsine::{
    central_binomial_sum, decay_bound, gen_ls_pi_extract, gen_ls_pi_table, ls1_pi3_from_central_binomial, ls_numeric,
    ls_pi3_series, ls_pi3_table, ls_pi_egf, ls_pi_recursive, ls_weight4_tau, realgf_sides, LogSineSpec, Weight4,
};
use crate::mahler::{
    mu2_1pxy, mu2_1pxy_dilog_form, mu2_1pxy_ti_form, mu2_1pxy_walk_series, mu2_1pxyz_exact, mu2_1pxyz_li4_form,
    mu2_step, mu3_star_residual, mu_k_1px, mu_k_1px_mzv, mu_k_1pxy_star, mu_k_1pxyz_star, mu_k_1pxyz_star_closed,
    mu_mixed_1x_1xyz, mu_mixed_closed, mu_multiple_1x_1xy, mu_oracle, parseval_cl2, rv_conjecture_check, rv_rhs,
    walk_derivative, walk_moment, MeasureSpec, Mu2Step, RvConjecture,
};
use crate::mpcore::{Complex, PrecisionContext};
use crate::quadrature::integrate_piecewise;
use crate::specfun::{clausen_glaisher, eta_q_modular, eta_q_series, multiple_polylog, mzv, ClKind, Composition};
use crate::symconst::{cexpr_eval, parse_expr, ConstExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFamily {
    LsPiRecursive,
    LsPiEgf,
    LsPi3Table,
    GenLsPiTable,
    MuK1px,
    MuK1pxyStar,
    MuK1pxyzStar,
    MuMixed,
    Mu2_1pxyz,
    Mu2_1pxyzLi4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleFamily {
    MuK1px,
    MuK1pxyStar,
    MuK1pxyzStar,
    MuMixed,
    Mu2_1pxy,
    Mu2_1pxyz,
    Mu1pxy,
    Mu1pxyz,
    Mu5Term,
    Mu6Term,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mu2Form {
    Canonical,
    Ti,
    Dilog,
    WalkSeries,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinomialSign {
    Plus,
    Minus,
}

/// An evaluator and its parameters. Rational parameters are strings such as `"2/3"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "eval", rename_all = "snake_case", deny_unknown_fields)]
pub enum Evaluator {
    /// A constant in canonical text form.
    Expr {
        expr: String,
    },
    /// A stored or generated closed form.
    Closed {
        family: ClosedFamily,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
    },
    /// `Ls^{(k)}_n(σπ)` by quadrature.
    LsNumeric {
        n: u32,
        #[serde(default)]
        k: u32,
        sigma: String,
    },
    /// `Ls_{n+1}(π/3)` by its central binomial series.
    LsPi3Series {
        n: u32,
    },
    GenLsPiExtract {
        n: u32,
        k: u32,
    },
    Weight4 {
        which: Weight4,
        sigma: String,
    },
    CentralBinomial {
        sign: BinomialSign,
        n: u32,
    },
    /// `Ls^{(1)}_{n+2}(π/3)` from `S_+(n+2)`.
    LsPi3CentralBinomial {
        n: u32,
    },
    Clausen {
        kind: ClKind,
        a: Vec<u32>,
        sigma: String,
    },
    Mzv {
        a: Vec<u32>,
    },
    /// Real part of `Li_a(z)` at a real rational `z`.
    Polylog {
        a: Vec<u32>,
        z: String,
    },
    MahlerOracle {
        family: OracleFamily,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
    },
    /// `∫_0^1 log|a + b e^{2πit}| dt` by quadrature, `a, b` integers.
    LinearQuadrature {
        a: i64,
        b: i64,
    },
    MuMultiple1x1xy {
        k: u32,
    },
    Mu2 {
        form: Mu2Form,
    },
    Mu2Step {
        step: Mu2Step,
        side: Side,
    },
    MuKStarQuadrature {
        k: u32,
    },
    ParsevalCl2,
    CubicResidual,
    MixedQuadrature {
        k: u32,
    },
    MuK1pxMzv {
        k: u32,
    },
    WalkMoment {
        n: u32,
        s: String,
    },
    WalkDerivative {
        n: u32,
        k: u32,
    },
    DecayDifference {
        k: u32,
    },
    DecayBound {
        k: u32,
    },
    RealGf {
        x: String,
        y: String,
        side: Side,
    },
    EtaSeries {
        t: String,
    },
    EtaModular {
        t: String,
    },
    RvLhs {
        which: RvConjecture,
    },
    RvRhs {
        which: RvConjecture,
    },
}

/// The value of one side of an identity.
#[derive(Debug, Clone)]
pub enum Value {
    Number { value: Float, error: Option<Float> },
    Symbolic(ConstExpr),
}

impl Value {
    fn num(value: Float) -> Value {
        Value::Number { value, error: None }
    }

    pub fn to_float(&self, ctx: &PrecisionContext) -> Result<Float> {
        match self {
            Value::Number { value, .. } => Ok(value.clone()),
            Value::Symbolic(e) => cexpr_eval(e, ctx),
        }
    }

    pub fn error(&self) -> Option<&Float> {
        match self {
            Value::Number { error, .. } => error.as_ref(),
            Value::Symbolic(_) => None,
        }
    }
}

fn rational(s: &str) -> Result<Rational> {
    Rational::parse(s.trim())
        .map(Rational::from)
        .map_err(|e| Error::Parse(format!("`{s}` is not a rational number: {e}")))
}

fn real(s: &str, prec: u32) -> Result<Float> {
    Ok(Float::with_val(prec, rational(s)?))
}

fn need(v: Option<u32>, what: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Registry(format!("evaluator needs parameter `{what}`")))
}

fn closed(family: ClosedFamily, n: Option<u32>, k: Option<u32>) -> Result<ConstExpr> {
    use ClosedFamily::*;
    match family {
        LsPiRecursive => ls_pi_recursive(need(n, "n")?),
        LsPiEgf => {
            let n = need(n, "n")?;
            let mut all = ls_pi_egf(n)?;
            all.pop().ok_or_else(|| Error::invalid(format!("no generating-function entry for n = {n}")))
        }
        LsPi3Table => ls_pi3_table(need(n, "n")?),
        GenLsPiTable => gen_ls_pi_table(need(n, "n")?, need(k, "k")?),
        MuK1px => mu_k_1px(need(k, "k")?),
        MuK1pxyStar => mu_k_1pxy_star(need(k, "k")?),
        MuK1pxyzStar => mu_k_1pxyz_star_closed(need(k, "k")?),
        MuMixed => mu_mixed_closed(need(k, "k")?),
        Mu2_1pxyz => Ok(mu2_1pxyz_exact()),
        Mu2_1pxyzLi4 => Ok(mu2_1pxyz_li4_form()),
    }
}

fn oracle_spec(family: OracleFamily, k: Option<u32>) -> Result<MeasureSpec> {
    use OracleFamily::*;
    Ok(match family {
        MuK1px => MeasureSpec::MuK1px(need(k, "k")?),
        MuK1pxyStar => MeasureSpec::MuK1pxyStar(need(k, "k")?),
        MuK1pxyzStar => MeasureSpec::MuK1pxyzStar(need(k, "k")?),
        MuMixed => MeasureSpec::MuMixed1x1xyz(need(k, "k")?),
        Mu2_1pxy => MeasureSpec::Mu2_1pxy,
        Mu2_1pxyz => MeasureSpec::Mu2_1pxyz,
        Mu1pxy => MeasureSpec::Mu1pxy,
        Mu1pxyz => MeasureSpec::Mu1pxyz,
        Mu5Term => MeasureSpec::Mu5Term,
        Mu6Term => MeasureSpec::Mu6Term,
    })
}

fn linear_quadrature(a: i64, b: i64, ctx: &PrecisionContext) -> Result<Float> {
    let wp = ctx.prec() + 16;
    let (a, b) = (Float::with_val(wp, a), Float::with_val(wp, b));
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    // |a + b e^{2πit}| vanishes at t = 1/2 when a = b
    let mut pts = vec![Float::new(wp), Float::with_val(wp, 1)];
    if a == b {
        pts.insert(1, Float::with_val(wp, 0.5));
    }
    let r = integrate_piecewise(
        |t: &Float| {
            let (s, c) = Float::with_val(wp, t * &two_pi).sin_cos(Float::new(wp));
            let re = Float::with_val(wp, &b * &c) + &a;
            let im = Float::with_val(wp, &b * &s);
            let n = re.square() + im.square();
            if n.is_zero() {
                return Float::new(wp);
            }
            n.ln() / 2u32
        },
        &pts,
        &Float::with_val(wp, ctx.tol() / 4u32),
        wp,
        ctx.quadrature_levels,
    )?;
    Ok(Float::with_val(ctx.prec(), r.value))
}

impl Evaluator {
    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<Value> {
        use Evaluator::*;
        let p = ctx.prec();
        let num = |r: Result<Float>| r.map(Value::num);
        match self {
            Expr { expr } => Ok(Value::Symbolic(parse_expr(expr)?)),
            Closed { family, n, k } => Ok(Value::Symbolic(closed(*family, *n, *k)?)),
            LsNumeric { n, k, sigma } => num(ls_numeric(&LogSineSpec::new(*n, *k, rational(sigma)?)?, ctx)),
            LsPi3Series { n } => num(ls_pi3_series(*n, ctx)),
            GenLsPiExtract { n, k } => num(gen_ls_pi_extract(*n, *k, ctx).map(|e| e.value)),
            Weight4 { which, sigma } => {
                let tau = Float::with_val(p, Constant::Pi) * rational(sigma)?;
                num(ls_weight4_tau(*which, &tau, ctx))
            }
            CentralBinomial { sign, n } => num(central_binomial_sum(*sign == BinomialSign::Plus, *n, ctx)),
            LsPi3CentralBinomial { n } => num(ls1_pi3_from_central_binomial(*n, ctx)),
            Clausen { kind, a, sigma } => {
                let theta = Float::with_val(p, Constant::Pi) * rational(sigma)?;
                num(clausen_glaisher(*kind, &Composition::new(a.clone())?, &theta, ctx))
            }
            Mzv { a } => num(mzv(&Composition::new(a.clone())?, ctx)),
            Polylog { a, z } => {
                let z = Complex::new(real(z, p)?, Float::new(p));
                num(multiple_polylog(&Composition::new(a.clone())?, &z, ctx).map(|c| c.re))
            }
            MahlerOracle { family, k } => {
                let r = mu_oracle(&oracle_spec(*family, *k)?, ctx)?;
                Ok(Value::Number { value: r.value, error: Some(r.error) })
            }
            LinearQuadrature { a, b } => num(linear_quadrature(*a, *b, ctx)),
            MuMultiple1x1xy { k } => {
                let r = mu_multiple_1x_1xy(*k, ctx)?;
                Ok(Value::Number { value: r.value, error: Some(r.error) })
            }
            Mu2 { form } => num(match form {
                Mu2Form::Canonical => mu2_1pxy(ctx),
                Mu2Form::Ti => mu2_1pxy_ti_form(ctx),
                Mu2Form::Dilog => mu2_1pxy_dilog_form(ctx),
                Mu2Form::WalkSeries => mu2_1pxy_walk_series(ctx),
            }),
            Mu2Step { step, side } => {
                let (l, r) = mu2_step(*step, ctx)?;
                Ok(Value::num(if *side == Side::Lhs { l } else { r }))
            }
            MuKStarQuadrature { k } => num(mu_k_1pxyz_star(*k, ctx)),
            ParsevalCl2 => num(parseval_cl2(ctx)),
            CubicResidual => num(mu3_star_residual(ctx).map(|c| c.residual)),
            MixedQuadrature { k } => num(mu_mixed_1x_1xyz(*k, ctx)),
            MuK1pxMzv { k } => num(mu_k_1px_mzv(*k, ctx)),
            WalkMoment { n, s } => num(walk_moment(*n, &real(s, p)?, ctx)),
            WalkDerivative { n, k } => num(walk_derivative(*n, *k, ctx)),
            DecayDifference { k } => num(decay_bound(*k, ctx).map(|d| d.difference)),
            DecayBound { k } => num(decay_bound(*k, ctx).map(|d| d.bound)),
            RealGf { x, y, side } => {
                let (l, r) = realgf_sides(&real(x, p)?, &real(y, p)?, ctx)?;
                Ok(Value::num(if *side == Side::Lhs { l } else { r }))
            }
            EtaSeries { t } => num(eta_q_series(&real(t, p)?, p)),
            EtaModular { t } => num(eta_q_modular(&real(t, p)?, p)),
            RvLhs { which } => {
                let c = rv_conjecture_check(*which, ctx)?;
                Ok(Value::Number { value: c.lhs, error: Some(c.lhs_error) })
            }
            RvRhs { which } => num(rv_rhs(*which, &ctx.tol(), p, ctx.quadrature_levels)),
        }
    }
}
