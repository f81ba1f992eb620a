use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Largest accepted `target_digits` unless a caller supplies its own cap.
pub const DEFAULT_DIGIT_CAP: u32 = 1000;

/// Extra decimal digits carried on top of the requested accuracy.
pub const MIN_GUARD_DIGITS: u32 = 10;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Working precision and truncation policy shared by every numeric routine.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    pub target_digits: u32,
    pub guard_digits: u32,
    pub max_terms: usize,
    /// Absolute bound required of truncation tails, `10^-target_digits`.
    pub tail_tolerance: Float,
    pub quadrature_levels: u32,
}

/// Builds a context for `target_digits` correct decimal digits.
pub fn make_context(target_digits: u32) -> Result<PrecisionContext> {
    make_context_with_cap(target_digits, DEFAULT_DIGIT_CAP)
}

pub fn make_context_with_cap(target_digits: u32, cap: u32) -> Result<PrecisionContext> {
    if target_digits == 0 {
        return Err(Error::invalid("target_digits must be at least 1"));
    }
    if target_digits > cap {
        return Err(Error::invalid(format!("target_digits {target_digits} exceeds the configured cap {cap}")));
    }
    let guard_digits = MIN_GUARD_DIGITS.max(target_digits / 4);
    let working = target_digits + guard_digits;
    let prec = digits_to_bits(working);
    let tail_tolerance = pow10(-(target_digits as i32), prec);
    let quadrature_levels = (working as f64).log2().ceil() as u32 + 4;
    Ok(PrecisionContext { target_digits, guard_digits, max_terms: 2_000_000, tail_tolerance, quadrature_levels })
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 8
}

pub(crate) fn pow10(exp: i32, prec: u32) -> Float {
    let ten = Float::with_val(prec, 10);
    ten.pow(exp)
}

impl PrecisionContext {
    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    pub fn tol(&self) -> Float {
        Float::with_val(self.prec(), &self.tail_tolerance)
    }

    /// `10^-(working digits)`: the resolution of the arithmetic itself.
    pub fn epsilon(&self) -> Float {
        pow10(-(self.working_digits() as i32), self.prec())
    }

    /// A context aiming at a different number of digits, keeping the other policies.
    pub fn with_target(&self, target_digits: u32) -> PrecisionContext {
        let mut c = make_context_with_cap(target_digits.max(1), u32::MAX).expect("positive digit count");
        c.max_terms = self.max_terms;
        c
    }

    /// A context whose working precision is raised by `extra` digits.
    pub fn raised(&self, extra: u32) -> PrecisionContext {
        let mut c = self.clone();
        c.guard_digits += extra;
        c.tail_tolerance = Float::with_val(c.prec(), &self.tail_tolerance);
        c
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        let mut f = Float::new(self.prec());
        rug::Assign::assign(&mut f, v);
        f
    }

    pub fn zero(&self) -> Float {
        Float::new(self.prec())
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec(), Constant::Pi)
    }

    pub fn log2(&self) -> Float {
        Float::with_val(self.prec(), Constant::Log2)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Float {
        let mut f = self.float(num);
        f /= den;
        f
    }
}

/// Formats `x` with `digits` significant decimal digits.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(2)))
}
