//! Multivariate power series truncated at a total degree.
//!
//! Exponent tuples are stored sparsely. Every operation is exact modulo the
//! total-degree cutoff: coefficients up to `order` agree with the true
//! analytic result, assuming exact coefficient arithmetic.

use std::collections::BTreeMap;
use std::fmt::Debug;

use rug::{Float, Rational};

use super::complex::Complex;
use crate::error::{Error, Result};

/// Coefficient ring for [`TruncatedSeries`].
pub trait Coeff: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale_ratio(&self, num: i64, den: i64) -> Self;
    fn inverse(&self) -> Option<Self>;
    /// Zero up to rounding; exact rings use `is_zero`.
    fn approx_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn scale_ratio(&self, num: i64, den: i64) -> Self {
        Rational::from(self * Rational::from((num, den)))
    }
    fn inverse(&self) -> Option<Self> {
        if *self == 0 {
            None
        } else {
            Some(self.clone().recip())
        }
    }
}

fn float_negligible(x: &Float) -> bool {
    x.is_zero() || x.get_exp().map_or(true, |e| e < -((x.prec() as i32) * 3 / 4))
}

impl Coeff for Float {
    fn zero_like(&self) -> Self {
        Float::new(self.prec())
    }
    fn one_like(&self) -> Self {
        Float::with_val(self.prec(), 1)
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn add(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self * o)
    }
    fn neg(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }
    fn scale_ratio(&self, num: i64, den: i64) -> Self {
        let mut r = Float::with_val(self.prec(), self * num);
        r /= den;
        r
    }
    fn inverse(&self) -> Option<Self> {
        if Float::is_zero(self) {
            None
        } else {
            Some(Float::with_val(self.prec(), self.recip_ref()))
        }
    }
    fn approx_zero(&self) -> bool {
        float_negligible(self)
    }
}

impl Coeff for Complex {
    fn zero_like(&self) -> Self {
        Complex::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        Complex::one(self.prec())
    }
    fn is_zero(&self) -> bool {
        Complex::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.re == 1 && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.scale_int(num).div_int(den)
    }
    fn inverse(&self) -> Option<Self> {
        if Complex::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn approx_zero(&self) -> bool {
        float_negligible(&self.re) && float_negligible(&self.im)
    }
}

/// Exponent tuple, one entry per variable.
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone)]
pub struct TruncatedSeries<C: Coeff> {
    variables: Vec<String>,
    order: u32,
    terms: BTreeMap<Exponents, C>,
    proto: C,
}

/// The elementary operations exposed through [`series_elementary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Exp,
    Log,
    Reciprocal,
}

pub fn series_elementary<C: Coeff>(
    op: SeriesOp,
    a: &TruncatedSeries<C>,
    b: Option<&TruncatedSeries<C>>,
) -> Result<TruncatedSeries<C>> {
    let need_b = || b.ok_or_else(|| Error::invalid("binary series operation needs two operands"));
    match op {
        SeriesOp::Add => a.add(need_b()?),
        SeriesOp::Mul => a.mul(need_b()?),
        SeriesOp::Exp => a.exp(),
        SeriesOp::Log => a.log(),
        SeriesOp::Reciprocal => a.reciprocal(),
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(variables: &[&str], order: u32, proto: &C) -> Self {
        TruncatedSeries {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            order,
            terms: BTreeMap::new(),
            proto: proto.zero_like(),
        }
    }

    pub fn constant(variables: &[&str], order: u32, c: C) -> Self {
        let mut s = Self::zero(variables, order, &c);
        let e = vec![0; variables.len()];
        s.insert(e, c);
        s
    }

    /// The series consisting of the single variable `variables[idx]`.
    pub fn variable(variables: &[&str], order: u32, idx: usize, proto: &C) -> Self {
        let mut s = Self::zero(variables, order, proto);
        let mut e = vec![0; variables.len()];
        e[idx] = 1;
        s.insert(e, proto.one_like());
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs, dropping terms above `order`.
    pub fn from_terms(
        variables: &[&str],
        order: u32,
        proto: &C,
        terms: impl IntoIterator<Item = (Exponents, C)>,
    ) -> Result<Self> {
        let mut s = Self::zero(variables, order, proto);
        for (e, c) in terms {
            if e.len() != variables.len() {
                return Err(Error::SeriesMismatch(format!(
                    "exponent tuple of length {} for {} variables",
                    e.len(),
                    variables.len()
                )));
            }
            let cur = s.coeff(&e);
            s.insert(e, cur.add(&c));
        }
        Ok(s)
    }

    fn insert(&mut self, e: Exponents, c: C) {
        if degree(&e) > self.order {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn proto(&self) -> &C {
        &self.proto
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(|| self.proto.zero_like())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.variables.len()])
    }

    /// Re-truncates at a lower (or equal) order.
    pub fn truncate(&self, order: u32) -> Self {
        let mut s = self.clone();
        s.order = order.min(self.order);
        s.terms.retain(|e, _| degree(e) <= s.order);
        s
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.variables != o.variables {
            return Err(Error::SeriesMismatch(format!("variables {:?} vs {:?}", self.variables, o.variables)));
        }
        if self.order != o.order {
            return Err(Error::SeriesMismatch(format!("total orders {} vs {}", self.order, o.order)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            let cur = r.coeff(e);
            r.insert(e.clone(), cur.add(c));
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map(|c| c.mul(k))
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.map(|c| c.scale_ratio(num, den))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = Self {
            variables: self.variables.clone(),
            order: self.order,
            terms: BTreeMap::new(),
            proto: self.proto.clone(),
        };
        for (e, c) in &self.terms {
            r.insert(e.clone(), f(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut acc: BTreeMap<Exponents, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            for (eb, cb) in &o.terms {
                if da + degree(eb) > self.order {
                    continue;
                }
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let p = ca.mul(cb);
                match acc.get_mut(&e) {
                    Some(c) => *c = c.add(&p),
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        let mut r = Self::zero(&self.var_refs(), self.order, &self.proto);
        for (e, c) in acc {
            r.insert(e, c);
        }
        Ok(r)
    }

    fn var_refs(&self) -> Vec<&str> {
        self.variables.iter().map(|s| s.as_str()).collect()
    }

    /// Homogeneous components, indexed by total degree `0..=order`.
    fn components(&self) -> Vec<Self> {
        let mut comps: Vec<Self> =
            (0..=self.order).map(|_| Self::zero(&self.var_refs(), self.order, &self.proto)).collect();
        for (e, c) in &self.terms {
            comps[degree(e) as usize].insert(e.clone(), c.clone());
        }
        comps
    }

    fn assemble(&self, comps: Vec<Self>) -> Self {
        let mut r = Self::zero(&self.var_refs(), self.order, &self.proto);
        for comp in comps {
            for (e, c) in comp.terms {
                r.insert(e, c);
            }
        }
        r
    }

    /// Formal exponential; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::invalid("exp requires a zero constant term"));
        }
        // Euler operator: n E_n = sum_{k=1}^n k A_k E_{n-k}.
        let a = self.components();
        let mut e: Vec<Self> = Vec::with_capacity(a.len());
        e.push(Self::constant(&self.var_refs(), self.order, self.proto.one_like()));
        for n in 1..=self.order as usize {
            let mut acc = Self::zero(&self.var_refs(), self.order, &self.proto);
            for k in 1..=n {
                if a[k].terms.is_empty() || e[n - k].terms.is_empty() {
                    continue;
                }
                acc = acc.add(&a[k].mul(&e[n - k])?.scale_ratio(k as i64, 1))?;
            }
            e.push(acc.scale_ratio(1, n as i64));
        }
        Ok(self.assemble(e))
    }

    /// Formal logarithm; the constant term must be exactly one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::invalid("log requires constant term 1"));
        }
        let b = self.components();
        let mut l: Vec<Self> = Vec::with_capacity(b.len());
        l.push(Self::zero(&self.var_refs(), self.order, &self.proto));
        for n in 1..=self.order as usize {
            let mut acc = Self::zero(&self.var_refs(), self.order, &self.proto);
            for k in 1..n {
                if l[k].terms.is_empty() || b[n - k].terms.is_empty() {
                    continue;
                }
                acc = acc.add(&l[k].mul(&b[n - k])?.scale_ratio(k as i64, 1))?;
            }
            l.push(b[n].sub(&acc.scale_ratio(1, n as i64))?);
        }
        Ok(self.assemble(l))
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self
            .constant_term()
            .inverse()
            .ok_or_else(|| Error::invalid("reciprocal requires an invertible constant term"))?;
        let b = self.components();
        let mut r: Vec<Self> = Vec::with_capacity(b.len());
        r.push(Self::constant(&self.var_refs(), self.order, c0.clone()));
        for n in 1..=self.order as usize {
            let mut acc = Self::zero(&self.var_refs(), self.order, &self.proto);
            for k in 1..=n {
                if b[k].terms.is_empty() || r[n - k].terms.is_empty() {
                    continue;
                }
                acc = acc.add(&b[k].mul(&r[n - k])?)?;
            }
            r.push(acc.scale(&c0.neg()));
        }
        Ok(self.assemble(r))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.reciprocal()?)
    }

    /// Exact quotient by a homogeneous linear form.
    ///
    /// The numerator is known through degree `order`; the quotient is
    /// therefore returned at order `order - 1`. Fails when the division leaves
    /// a remainder.
    pub fn div_by_linear(&self, linear: &[C]) -> Result<Self> {
        if linear.len() != self.variables.len() {
            return Err(Error::SeriesMismatch("linear form has the wrong arity".into()));
        }
        let pivot = linear
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::invalid("division by the zero linear form"))?;
        let pivot_inv = linear[pivot].inverse().expect("nonzero pivot");
        let qorder = self.order.saturating_sub(1);
        let mut rem = self.terms.clone();
        let mut q = Self::zero(&self.var_refs(), qorder, &self.proto);
        loop {
            let next = rem
                .iter()
                .filter(|(e, _)| e[pivot] > 0)
                .max_by_key(|(e, _)| e[pivot])
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = next else { break };
            let mut qe = e.clone();
            qe[pivot] -= 1;
            let qc = c.mul(&pivot_inv);
            for (i, l) in linear.iter().enumerate() {
                if l.is_zero() {
                    continue;
                }
                let mut te = qe.clone();
                te[i] += 1;
                let delta = qc.mul(l);
                let cur = rem.remove(&te).unwrap_or_else(|| self.proto.zero_like());
                let val = cur.sub(&delta);
                if i != pivot && !val.is_zero() {
                    rem.insert(te, val);
                }
            }
            let cur = q.coeff(&qe);
            q.insert(qe, cur.add(&qc));
        }
        if let Some((e, _)) = rem.iter().find(|(_, c)| !c.approx_zero()) {
            return Err(Error::invalid(format!("numerator not divisible by the linear form (remainder at {e:?})")));
        }
        Ok(q)
    }

    /// Evaluates the truncated polynomial at a point.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.variables.len() {
            return Err(Error::SeriesMismatch("evaluation point has the wrong arity".into()));
        }
        let mut acc = self.proto.zero_like();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

/// `C(lambda, n) = lambda (lambda - 1) ... (lambda - n + 1) / n!` as a series in `lambda`.
pub fn binom_lambda_series(n: u32, order: u32) -> TruncatedSeries<Rational> {
    let proto = Rational::new();
    let vars = ["lambda"];
    let lam = TruncatedSeries::variable(&vars, order, 0, &proto);
    let mut acc = TruncatedSeries::constant(&vars, order, Rational::from(1));
    for j in 0..n {
        let factor =
            lam.add(&TruncatedSeries::constant(&vars, order, Rational::from(-(j as i64)))).expect("same shape");
        acc = acc.mul(&factor).expect("same shape");
        acc = acc.scale_ratio(1, (j + 1) as i64);
    }
    acc
}
