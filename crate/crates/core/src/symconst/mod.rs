//! Exact rational combinations of monomials in a fixed set of basis constants.
//!
//! Even zeta values are always rewritten as rational multiples of powers of
//! `π`, so two expressions are equal exactly when their term maps are.

mod eval;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use crate::mpcore::Coeff;
use crate::specfun::bernoulli;

pub(crate) use eval::cexpr_eval_prec;
pub use eval::{basis_value, cexpr_eval};
pub use text::parse_expr;

/// A named constant with a numeric evaluator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisConstant {
    Pi,
    Log2,
    Zeta(u32),
    /// `Li_k(1/2)`.
    LiHalf(u32),
    /// `Li_{a}(-1)`.
    LiNegOne(Vec<u32>),
    /// `Cl_{a}(π/3)`.
    ClPi3(Vec<u32>),
    /// `Gl_{a}(π/3)`.
    GlPi3(Vec<u32>),
    /// `λ_n(1/2)`.
    Lambda(u32),
    /// `Σ_{k≥1} 1/(C(2k,k) k^n)`.
    SPlus(u32),
    /// Multiple zeta value `ζ(a)` of depth at least two.
    Mzv(Vec<u32>),
}

impl BasisConstant {
    pub fn weight(&self) -> u32 {
        use BasisConstant::*;
        match self {
            Pi | Log2 => 1,
            Zeta(k) | LiHalf(k) | Lambda(k) | SPlus(k) => *k,
            LiNegOne(a) | ClPi3(a) | GlPi3(a) | Mzv(a) => a.iter().sum(),
        }
    }
}

/// Product of basis constants with non-zero integer exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<BasisConstant, i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn power(b: BasisConstant, e: i32) -> Self {
        let mut m = BTreeMap::new();
        if e != 0 {
            m.insert(b, e);
        }
        Monomial(m)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&BasisConstant, i32)> {
        self.0.iter().map(|(b, &e)| (b, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|(b, &e)| b.weight() as i64 * e as i64).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (b, &e) in &o.0 {
            let v = m.get(b).copied().unwrap_or(0) + e;
            if v == 0 {
                m.remove(b);
            } else {
                m.insert(b.clone(), v);
            }
        }
        Monomial(m)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(b, &e)| (b.clone(), -e)).collect())
    }
}

/// Exact element of the constant ring.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ConstExpr {
    terms: BTreeMap<Monomial, Rational>,
}

/// Result of [`cexpr_weight`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(i64),
    Inhomogeneous,
    /// The zero expression has every weight.
    Zero,
}

impl ConstExpr {
    pub fn zero() -> Self {
        ConstExpr::default()
    }

    pub fn rational(q: impl Into<Rational>) -> Self {
        ConstExpr::term(q.into(), Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        ConstExpr::rational(Rational::from(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ConstExpr::rational(Rational::from((num, den)))
    }

    pub fn term(coeff: Rational, mono: Monomial) -> Self {
        let mut e = ConstExpr::zero();
        e.add_term(mono, coeff);
        e
    }

    /// A basis constant, with `ζ(2k)` rewritten as a rational multiple of `π^{2k}`.
    pub fn basis(b: BasisConstant) -> Self {
        match b {
            BasisConstant::Zeta(k) if k >= 2 && k % 2 == 0 => {
                ConstExpr::term(even_zeta_coefficient(k), Monomial::power(BasisConstant::Pi, k as i32))
            }
            BasisConstant::Mzv(a) if a.len() == 1 => ConstExpr::basis(BasisConstant::Zeta(a[0])),
            b => ConstExpr::term(Rational::from(1), Monomial::power(b, 1)),
        }
    }

    pub fn pi() -> Self {
        ConstExpr::basis(BasisConstant::Pi)
    }

    pub fn zeta(k: u32) -> Self {
        ConstExpr::basis(BasisConstant::Zeta(k))
    }

    /// `b^e` for a basis constant; negative exponents are allowed.
    pub fn basis_pow(b: BasisConstant, e: i32) -> Self {
        let base = ConstExpr::basis(b);
        base.powi(e).expect("basis constants are invertible")
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff == 0 {
            return;
        }
        let v = match self.terms.remove(&mono) {
            Some(c) => c + coeff,
            None => coeff,
        };
        if v != 0 {
            self.terms.insert(mono, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ConstExpr) -> ConstExpr {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &ConstExpr) -> ConstExpr {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ConstExpr {
        ConstExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), Rational::from(-c))).collect() }
    }

    pub fn scale(&self, q: &Rational) -> ConstExpr {
        if *q == 0 {
            return ConstExpr::zero();
        }
        ConstExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), Rational::from(c * q))).collect() }
    }

    pub fn mul(&self, o: &ConstExpr) -> ConstExpr {
        let mut r = ConstExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), Rational::from(c1 * c2));
            }
        }
        r
    }

    /// Integer power; negative powers only for single-term expressions.
    pub fn powi(&self, e: i32) -> Option<ConstExpr> {
        if e < 0 {
            return self.inverse_monomial()?.powi(-e);
        }
        let mut r = ConstExpr::int(1);
        for _ in 0..e {
            r = r.mul(self);
        }
        Some(r)
    }

    fn inverse_monomial(&self) -> Option<ConstExpr> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        Some(ConstExpr::term(c.clone().recip(), m.inverse()))
    }

    /// Total weight when every monomial has the same weight.
    pub fn weight(&self) -> Weight {
        let mut w = None;
        for m in self.terms.keys() {
            let mw = m.weight();
            match w {
                None => w = Some(mw),
                Some(x) if x != mw => return Weight::Inhomogeneous,
                _ => {}
            }
        }
        w.map_or(Weight::Zero, Weight::Homogeneous)
    }

    pub fn is_homogeneous_of(&self, w: i64) -> bool {
        matches!(self.weight(), Weight::Homogeneous(x) if x == w) || self.is_zero()
    }

    /// Basis constants occurring in the expression.
    pub fn constants(&self) -> Vec<BasisConstant> {
        let mut v: Vec<BasisConstant> = self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `ζ(2k) / π^{2k} = (-1)^{k+1} B_{2k} 2^{2k-1} / (2k)!`.
fn even_zeta_coefficient(s: u32) -> Rational {
    let k = s / 2;
    let b = bernoulli(s);
    let mut c = Rational::from(&b * rug::Integer::from(rug::Integer::u_pow_u(2, s - 1)));
    c /= rug::Integer::from(rug::Integer::factorial(s));
    if k % 2 == 0 {
        -c
    } else {
        c
    }
}

/// The binary operations of [`cexpr_arith`].
#[derive(Debug, Clone)]
pub enum ArithOp<'a> {
    Add(&'a ConstExpr),
    Mul(&'a ConstExpr),
    Scale(&'a Rational),
}

pub fn cexpr_arith(a: &ConstExpr, op: ArithOp<'_>) -> ConstExpr {
    match op {
        ArithOp::Add(b) => a.add(b),
        ArithOp::Mul(b) => a.mul(b),
        ArithOp::Scale(q) => a.scale(q),
    }
}

pub fn cexpr_weight(e: &ConstExpr) -> Weight {
    e.weight()
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

impl std::str::FromStr for ConstExpr {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        parse_expr(s)
    }
}

impl Coeff for ConstExpr {
    fn zero_like(&self) -> Self {
        ConstExpr::zero()
    }
    fn one_like(&self) -> Self {
        ConstExpr::int(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        *self == ConstExpr::int(1)
    }
    fn add(&self, o: &Self) -> Self {
        ConstExpr::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ConstExpr::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ConstExpr::mul(self, o)
    }
    fn neg(&self) -> Self {
        ConstExpr::neg(self)
    }
    fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.scale(&Rational::from((num, den)))
    }
    fn inverse(&self) -> Option<Self> {
        self.inverse_monomial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pi_pow(e: i32) -> ConstExpr {
        ConstExpr::basis_pow(BasisConstant::Pi, e)
    }

    #[test]
    fn cancellation_and_scaling() {
        let a = pi_pow(3).scale(&Rational::from((1, 12)));
        assert!(a.add(&a.neg()).is_zero());
        let pz3 = ConstExpr::pi().mul(&ConstExpr::zeta(3));
        let s = cexpr_arith(&pz3, ArithOp::Scale(&Rational::from((3, 2))));
        assert_eq!(s.to_string(), "3/2*Pi*Zeta(3)");
        let p3 = cexpr_arith(&ConstExpr::pi(), ArithOp::Mul(&pi_pow(2)));
        assert_eq!(p3, pi_pow(3));
        assert_eq!(p3.weight(), Weight::Homogeneous(3));
    }

    #[test]
    fn even_zetas_become_pi_powers() {
        assert_eq!(ConstExpr::zeta(2), pi_pow(2).scale(&Rational::from((1, 6))));
        assert_eq!(ConstExpr::zeta(4), pi_pow(4).scale(&Rational::from((1, 90))));
        assert_eq!(ConstExpr::zeta(6), pi_pow(6).scale(&Rational::from((1, 945))));
        assert_eq!(ConstExpr::zeta(8), pi_pow(8).scale(&Rational::from((1, 9450))));
        assert_eq!(ConstExpr::zeta(12), pi_pow(12).scale(&Rational::from((691, 638512875))));
    }

    #[test]
    fn weights() {
        let e = ConstExpr::pi().add(&ConstExpr::zeta(3));
        assert_eq!(cexpr_weight(&e), Weight::Inhomogeneous);
        assert_eq!(cexpr_weight(&ConstExpr::zero()), Weight::Zero);
        let g = ConstExpr::basis(BasisConstant::GlPi3(vec![4, 1])).mul(&pi_pow(-1)).scale(&Rational::from(6));
        assert_eq!(g.weight(), Weight::Homogeneous(4));
        assert_eq!(BasisConstant::LiNegOne(vec![5, 1, 1]).weight(), 7);
    }

    #[test]
    fn single_term_inverse() {
        let a = ConstExpr::pi().mul(&ConstExpr::zeta(3)).scale(&Rational::from(4));
        let inv = Coeff::inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), ConstExpr::int(1));
        assert!(Coeff::inverse(&ConstExpr::pi().add(&ConstExpr::int(1))).is_none());
    }

    fn basis_strategy() -> impl Strategy<Value = BasisConstant> {
        prop_oneof![
            Just(BasisConstant::Pi),
            Just(BasisConstant::Log2),
            (3u32..8).prop_map(BasisConstant::Zeta),
            (2u32..6).prop_map(BasisConstant::LiHalf),
            (4u32..7).prop_map(BasisConstant::Lambda),
            Just(BasisConstant::GlPi3(vec![4, 1])),
            Just(BasisConstant::LiNegOne(vec![5, 1])),
        ]
    }

    fn expr_strategy() -> impl Strategy<Value = ConstExpr> {
        prop::collection::vec((-20i64..20, 1i64..12, prop::collection::vec((basis_strategy(), -2i32..4), 0..3)), 0..4)
            .prop_map(|terms| {
                let mut e = ConstExpr::zero();
                for (n, d, factors) in terms {
                    let mut t = ConstExpr::ratio(n, d);
                    for (b, k) in factors {
                        t = t.mul(&ConstExpr::basis_pow(b, k));
                    }
                    e = e.add(&t);
                }
                e
            })
    }

    proptest! {
        #[test]
        fn ring_laws(a in expr_strategy(), b in expr_strategy(), c in expr_strategy()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn text_round_trip(a in expr_strategy()) {
            let s = a.to_string();
            let back = parse_expr(&s).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), s);
        }
    }
}
