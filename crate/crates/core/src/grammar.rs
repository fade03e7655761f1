//! Text form of operators.
//!
//! Rendering grammar (whitespace is insignificant when parsing):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ['^' ['-'] INT]
//! atom   := INT | IDENT | '(' expr ')'
//! IDENT  := i | g | lam | t | x | y | z | w | xN | f | f' | f'' ...
//!         | dt | dx | dy | dz | dw | dxN
//! ```
//!
//! `xN` names spatial direction `N-1` beyond the fourth.  Products are
//! noncommutative and parse left to right, so `dx*x` is `x*dx + 1`.
//! Rendered output is always normal ordered: coefficient, `t`, spatial
//! coordinates, `f` tower, then derivatives; terms are listed with the
//! highest derivative part first.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::operator::{DerivMono, FnMono, OperatorPoly};
use crate::scalar::{fmt_param_mono, gauss_parts, join_signed, signed_pieces, Gauss, Scalar};

pub fn coord_name(dir: usize) -> String {
    match dir {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "w".into(),
        k => format!("x{}", k + 1),
    }
}

fn pow_suffix(base: String, p: i64) -> String {
    if p == 1 {
        base
    } else {
        format!("{base}^{p}")
    }
}

fn func_factors(m: &FnMono) -> Vec<String> {
    let mut out = Vec::new();
    if m.t_pow() > 0 {
        out.push(pow_suffix("t".into(), m.t_pow() as i64));
    }
    for (k, b) in m.x_pows().iter().enumerate() {
        if *b != 0 {
            out.push(pow_suffix(coord_name(k), *b as i64));
        }
    }
    for (j, p) in m.f_pows().iter().enumerate() {
        if *p != 0 {
            out.push(pow_suffix(format!("f{}", "'".repeat(j)), *p as i64));
        }
    }
    out
}

fn deriv_factors(d: &DerivMono) -> Vec<String> {
    let mut out = Vec::new();
    if d.t_pow() > 0 {
        out.push(pow_suffix("dt".into(), d.t_pow() as i64));
    }
    for (k, q) in d.x_pows().iter().enumerate() {
        if *q != 0 {
            out.push(pow_suffix(format!("d{}", coord_name(k)), *q as i64));
        }
    }
    out
}

pub fn render(p: &OperatorPoly) -> String {
    let mut pieces = Vec::new();
    for (key, c) in p.terms().rev() {
        let mut rest = func_factors(&key.func);
        rest.extend(deriv_factors(&key.deriv));
        if c.num_terms() == 1 {
            let (m, g) = c.terms().next().expect("nonzero scalar");
            let (neg, mag) = gauss_parts(g);
            let mut factors: Vec<String> = mag.into_iter().collect();
            factors.extend(fmt_param_mono(m));
            factors.extend(rest);
            if factors.is_empty() {
                factors.push("1".into());
            }
            pieces.push((neg, factors.join("*")));
        } else {
            let inner = join_signed(&signed_pieces(c));
            let mut factors = vec![format!("({inner})")];
            factors.extend(rest);
            pieces.push((false, factors.join("*")));
        }
    }
    join_signed(&pieces)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                i += 1;
            }
            while i < chars.len() && chars[i].1 == '\'' {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                position: pos,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

fn ident_operator(name: &str) -> Option<OperatorPoly> {
    let coord = |s: &str| -> Option<usize> {
        match s {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            "w" => Some(3),
            _ => {
                let n: usize = s.strip_prefix('x')?.parse().ok()?;
                (n >= 5).then(|| n - 1)
            }
        }
    };
    match name {
        "i" => return Some(OperatorPoly::i()),
        "g" => return Some(OperatorPoly::g()),
        "lam" | "lambda" => return Some(OperatorPoly::lam()),
        "t" => return Some(OperatorPoly::t()),
        "dt" => return Some(OperatorPoly::dt()),
        _ => {}
    }
    if let Some(primes) = name.strip_prefix('f') {
        if primes.chars().all(|c| c == '\'') {
            return Some(OperatorPoly::f_deriv(primes.len()));
        }
    }
    if let Some(k) = coord(name) {
        return Some(OperatorPoly::coord(k));
    }
    if let Some(rest) = name.strip_prefix('d') {
        if let Some(k) = coord(rest) {
            return Some(OperatorPoly::d(k));
        }
    }
    None
}

/// Multiplicative inverse for nonzero constants and single monomials in the
/// spatial coordinates.
fn invert(p: &OperatorPoly) -> Option<OperatorPoly> {
    if p.num_terms() != 1 {
        return None;
    }
    let (key, c) = p.terms().next()?;
    if !key.deriv.is_one() || key.func.t_pow() != 0 || key.func.has_f() {
        return None;
    }
    let c: Gauss = c.constant()?;
    if c.is_zero() {
        return None;
    }
    let mut func = FnMono::one();
    for (k, b) in key.func.x_pows().iter().enumerate() {
        func = func.with_x(k, -b);
    }
    Some(OperatorPoly::term(Scalar::from_gauss(c.inv()), func, DerivMono::one()))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.offset(),
            message: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<OperatorPoly, ParseError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<OperatorPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.power()?;
                match invert(&d) {
                    Some(inv) => acc = &acc * &inv,
                    None => {
                        return Err(ParseError {
                            position: at,
                            message: format!("cannot divide by `{d}`"),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<OperatorPoly, ParseError> {
        let at = self.offset();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let exp = match self.peek() {
            Some(Tok::Int(n)) => n.clone(),
            _ => return self.err("expected integer exponent"),
        };
        self.pos += 1;
        let exp: u32 = match exp.try_into() {
            Ok(e) => e,
            Err(_) => return self.err("exponent too large"),
        };
        if neg {
            match invert(&base) {
                Some(inv) => Ok(inv.pow(exp)),
                None => Err(ParseError {
                    position: at,
                    message: format!("negative power of non-invertible `{base}`"),
                }),
            }
        } else {
            Ok(base.pow(exp))
        }
    }

    fn atom(&mut self) -> Result<OperatorPoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(OperatorPoly::scalar(Scalar::from_rational(
                    BigRational::from_integer(n),
                )))
            }
            Some(Tok::Ident(name)) => match ident_operator(&name) {
                Some(op) => {
                    self.pos += 1;
                    Ok(op)
                }
                None => self.err(format!("unknown symbol `{name}`")),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(src: &str) -> Result<OperatorPoly, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl std::str::FromStr for OperatorPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_schrodinger_with_inverse_square() {
        let g2 = OperatorPoly::g().pow(2);
        let op = &(&(&OperatorPoly::i() * &OperatorPoly::dt()) + &OperatorPoly::d_pow(0, 2))
            - &(&g2 * &OperatorPoly::x_pow(-2));
        assert_eq!(op.to_string(), "i*dt + dx^2 - g^2*x^-2");
    }

    #[test]
    fn grouped_coefficients() {
        let p = parse("(g^2 - g)/x^2").unwrap();
        assert_eq!(p.to_string(), "(g^2 - g)*x^-2");
    }

    #[test]
    fn parse_respects_operator_order() {
        assert_eq!(parse("dx*x").unwrap().to_string(), "x*dx + 1");
        assert_eq!(parse("g/x").unwrap(), parse("g*x^-1").unwrap());
        assert_eq!(parse("f''").unwrap(), OperatorPoly::f_deriv(2));
        assert_eq!(parse("dx5*x5").unwrap().to_string(), "x5*dx5 + 1");
        assert_eq!(parse("-3/2*i*lam").unwrap().to_string(), "-3/2*i*lam");
        assert_eq!(parse("0").unwrap(), OperatorPoly::zero());
        assert_eq!(parse("1 + i").unwrap().to_string(), "(1 + i)");
    }

    #[test]
    fn parse_errors() {
        assert!(parse("").is_err());
        assert!(parse("x +").is_err());
        assert!(parse("q").is_err());
        assert!(parse("1/dx").is_err());
        assert!(parse("t^-1").is_err());
        assert!(parse("(x").is_err());
        assert!(parse("x $ y").is_err());
    }
}
