//! Canonical text form, e.g. `3/2*Pi*Zeta(3) - 1/12*Pi^3`.

use rug::{Integer, Rational};

use super::{BasisConstant, ConstExpr, Monomial};
use crate::error::{Error, Result};

fn list(a: &[u32]) -> String {
    a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn basis_name(b: &BasisConstant) -> String {
    use BasisConstant::*;
    match b {
        Pi => "Pi".into(),
        Log2 => "Log2".into(),
        Zeta(k) => format!("Zeta({k})"),
        LiHalf(k) => format!("LiHalf({k})"),
        LiNegOne(a) => format!("LiNegOne({})", list(a)),
        ClPi3(a) => format!("ClPi3({})", list(a)),
        GlPi3(a) => format!("GlPi3({})", list(a)),
        Lambda(n) => format!("Lambda({n})"),
        SPlus(n) => format!("SPlus({n})"),
        Mzv(a) => format!("Mzv({})", list(a)),
    }
}

fn render_monomial(m: &Monomial) -> String {
    m.factors()
        .map(|(b, e)| if e == 1 { basis_name(b) } else { format!("{}^{}", basis_name(b), e) })
        .collect::<Vec<_>>()
        .join("*")
}

pub(crate) fn render(e: &ConstExpr) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in e.terms().enumerate() {
        let neg = *c < 0;
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = Rational::from(c.abs_ref());
        if m.is_one() {
            out.push_str(&a.to_string());
        } else {
            if a != 1 {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&render_monomial(m));
        }
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<Integer> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Integer::from_str_radix(txt, 10).map_err(|_| self.err("bad integer"))
    }

    fn small(&mut self) -> Result<u32> {
        self.integer()?.to_u32().ok_or_else(|| self.err("index out of range"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a constant name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<ConstExpr> {
        let mut acc = ConstExpr::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ConstExpr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let d = self.factor()?;
                let inv = d.powi(-1).ok_or_else(|| self.err("division by a sum or by zero"))?;
                acc = acc.mul(&inv);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i32> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = self.eat(b'-');
        let e = self.small()? as i32;
        Ok(if neg { -e } else { e })
    }

    fn args(&mut self) -> Result<Vec<u32>> {
        self.expect(b'(')?;
        let mut v = vec![self.small()?];
        while self.eat(b',') {
            v.push(self.small()?);
        }
        self.expect(b')')?;
        Ok(v)
    }

    fn one_arg(&mut self) -> Result<u32> {
        let v = self.args()?;
        if v.len() != 1 {
            return Err(self.err("expected a single index"));
        }
        Ok(v[0])
    }

    fn factor(&mut self) -> Result<ConstExpr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let base = ConstExpr::rational(Rational::from(n));
                let e = self.exponent()?;
                base.powi(e).ok_or_else(|| self.err("zero to a negative power"))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                let e = self.exponent()?;
                inner.powi(e).ok_or_else(|| self.err("negative power of a sum"))
            }
            Some(_) => {
                let name = self.ident()?;
                let b = match name.as_str() {
                    "Pi" => BasisConstant::Pi,
                    "Log2" => BasisConstant::Log2,
                    "Zeta" => BasisConstant::Zeta(self.one_arg()?),
                    "LiHalf" => BasisConstant::LiHalf(self.one_arg()?),
                    "LiNegOne" => BasisConstant::LiNegOne(self.args()?),
                    "ClPi3" => BasisConstant::ClPi3(self.args()?),
                    "GlPi3" => BasisConstant::GlPi3(self.args()?),
                    "Lambda" => BasisConstant::Lambda(self.one_arg()?),
                    "SPlus" => BasisConstant::SPlus(self.one_arg()?),
                    "Mzv" => BasisConstant::Mzv(self.args()?),
                    other => return Err(self.err(&format!("unknown constant `{other}`"))),
                };
                validate(&b).map_err(|m| self.err(&m))?;
                let e = self.exponent()?;
                Ok(ConstExpr::basis_pow(b, e))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn validate(b: &BasisConstant) -> std::result::Result<(), String> {
    use BasisConstant::*;
    let ok = match b {
        Zeta(k) => *k >= 2,
        LiHalf(k) | Lambda(k) | SPlus(k) => *k >= 1,
        LiNegOne(a) | ClPi3(a) | GlPi3(a) => a.iter().all(|&x| x >= 1),
        Mzv(a) => a[0] >= 2 && a.iter().all(|&x| x >= 1),
        Pi | Log2 => true,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("invalid indices for {}", basis_name(b)))
    }
}

/// Parses the canonical text form (also accepts parentheses and `/`).
pub fn parse_expr(s: &str) -> Result<ConstExpr> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    if p.peek() == Some(b'0') {
        let save = p.pos;
        p.pos += 1;
        if p.peek().is_none() {
            return Ok(ConstExpr::zero());
        }
        p.pos = save;
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_canonical_strings() {
        let e = parse_expr("3/2*Pi*Zeta(3)").unwrap();
        assert_eq!(e.to_string(), "3/2*Pi*Zeta(3)");
        let e = parse_expr("-1/12*Pi^3").unwrap();
        assert_eq!(e.to_string(), "-1/12*Pi^3");
        assert_eq!(parse_expr("0").unwrap(), ConstExpr::zero());
        assert_eq!(ConstExpr::zero().to_string(), "0");
    }

    #[test]
    fn accepts_loose_input() {
        let a = parse_expr("Pi^3/12 - (1/12)*Pi^3").unwrap();
        assert!(a.is_zero());
        let b = parse_expr("6/Pi*GlPi3(4,1) - Pi^4/4860").unwrap();
        let c = parse_expr(&b.to_string()).unwrap();
        assert_eq!(b, c);
        let z = parse_expr("Zeta(2)").unwrap();
        assert_eq!(z.to_string(), "1/6*Pi^2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("Foo(2)").is_err());
        assert!(parse_expr("Pi +").is_err());
        assert!(parse_expr("Zeta(1)").is_err());
        assert!(parse_expr("1/(Pi + 1)").is_err());
        assert!(parse_expr("Pi Pi").is_err());
    }
}
