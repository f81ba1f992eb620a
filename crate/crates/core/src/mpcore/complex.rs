//! Minimal multiprecision complex arithmetic over `rug::Float`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::Float;

#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Complex::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn real(re: Float) -> Self {
        let p = re.prec();
        Complex::new(re, Float::new(p))
    }

    /// `e^{i theta}`.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        Complex::new(c, s)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        let mut n = Float::with_val(self.prec(), self.re.square_ref());
        n += Float::with_val(self.prec(), self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, f: &Float) -> Self {
        Complex::new(Float::with_val(self.prec(), &self.re * f), Float::with_val(self.prec(), &self.im * f))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        Complex::new(Float::with_val(self.prec(), &self.re * n), Float::with_val(self.prec(), &self.im * n))
    }

    pub fn div_int(&self, n: i64) -> Self {
        Complex::new(Float::with_val(self.prec(), &self.re / n), Float::with_val(self.prec(), &self.im / n))
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let re = Float::with_val(self.prec(), &self.re / &n);
        let im = -Float::with_val(self.prec(), &self.im / &n);
        Complex::new(re, im)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let m = self.abs().ln();
        Complex::new(m, self.arg())
    }

    pub fn exp(&self) -> Self {
        let r = self.re.clone().exp();
        let c = Complex::cis(&self.im);
        c.scale(&r)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Complex::zero(p);
        }
        let r = self.abs();
        // sqrt((r + |re|)/2)
        let mut t = Float::with_val(p, &r + &self.re.clone().abs());
        t /= 2u32;
        let t = t.sqrt();
        let u = Float::with_val(p, &self.im / &t) / 2u32;
        if self.re >= 0 {
            Complex::new(t, u)
        } else if self.im >= 0 {
            Complex::new(u.abs(), t)
        } else {
            Complex::new(u.abs(), -t)
        }
    }

    pub fn powi(&self, mut n: u32) -> Self {
        let mut result = Complex::one(self.prec());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies by `i^k`.
    pub fn mul_i_pow(&self, k: i32) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => Complex::new(-self.im.clone(), self.re.clone()),
            2 => -self.clone(),
            _ => Complex::new(self.im.clone(), -self.re.clone()),
        }
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        let p = self.prec();
        let mut re = Float::with_val(p, &self.re * &o.re);
        re -= Float::with_val(p, &self.im * &o.im);
        let mut im = Float::with_val(p, &self.re * &o.im);
        im += Float::with_val(p, &self.im * &o.re);
        Complex::new(re, im)
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        self * &o.recip()
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, o: Complex) -> Complex {
        &self + &o
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, o: Complex) -> Complex {
        &self - &o
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, o: Complex) -> Complex {
        &self * &o
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, o: &Complex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, o: &Complex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Complex> for Complex {
    fn mul_assign(&mut self, o: &Complex) {
        *self = &*self * o;
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let im = &self.im;
        let sign = if im.is_sign_negative() { "-" } else { "+" };
        write!(
            f,
            "{} {} {}i",
            self.re.to_string_radix(10, Some(digits)),
            sign,
            Float::with_val(im.prec(), im.abs_ref()).to_string_radix(10, Some(digits))
        )
    }
}
