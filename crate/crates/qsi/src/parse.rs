//! Expression grammar for elements of the torus, the Hopf algebra and
//! the scalar field:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := ["-"] atom ["^" int]
//! atom   := "q" | "t" | "Q" | "u" | "v" | int | "(" expr ")"
//! int    := ["-"] digit+
//! ```
//!
//! `*` is mandatory (no juxtaposition), `^` binds tighter than `*`,
//! and `/` requires a scalar divisor. The target ring is inferred from
//! the generators used; mixing t/Q with u/v is an error.

use std::fmt;

use thiserror::Error;

use crate::algebra::Element;
use crate::hopf::{hopf_monomial, HopfElement, HopfKey};
use crate::scalar::QScalar;
use crate::torus::{monomial, monomial_inverse, TorusElement, TorusKey};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("mixed generator families at position {pos}: t/Q cannot combine with u/v")]
    MixedGenerators { pos: usize },
    #[error("negative exponent on v at position {pos}")]
    NegativeVExponent { pos: usize },
    #[error("non-invertible base for negative exponent at position {pos}")]
    NonInvertible { pos: usize },
    #[error("division requires a nonzero scalar divisor at position {pos}")]
    BadDivisor { pos: usize },
}

/// Result of evaluating an expression; scalars promote into either
/// ring on demand.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(QScalar),
    Torus(TorusElement),
    Hopf(HopfElement),
}

impl Value {
    pub fn into_torus(self) -> Option<TorusElement> {
        match self {
            Value::Scalar(c) => Some(Element::scalar(c)),
            Value::Torus(x) => Some(x),
            Value::Hopf(_) => None,
        }
    }

    pub fn into_hopf(self) -> Option<HopfElement> {
        match self {
            Value::Scalar(c) => Some(Element::scalar(c)),
            Value::Hopf(x) => Some(x),
            Value::Torus(_) => None,
        }
    }

    pub fn into_scalar(self) -> Option<QScalar> {
        match self {
            Value::Scalar(c) => Some(c),
            Value::Torus(x) => x
                .as_monomial()
                .filter(|(k, _)| **k == TorusKey { t_exp: 0, q_exp: 0 })
                .map(|(_, c)| c.clone())
                .or_else(|| if x.is_zero() { Some(QScalar::zero()) } else { None }),
            Value::Hopf(x) => x
                .as_monomial()
                .filter(|(k, _)| **k == HopfKey { u_exp: 0, v_exp: 0 })
                .map(|(_, c)| c.clone())
                .or_else(|| if x.is_zero() { Some(QScalar::zero()) } else { None }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Int(i64),
    Gen(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'q' | 't' | 'Q' | 'u' | 'v' => Tok::Gen(c),
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = src[start..i].parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    msg: "integer literal out of range".to_string(),
                })?;
                out.push((start, Tok::Int(n)));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let pos = self.here();
                    acc = add_values(acc, self.term()?, pos)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let pos = self.here();
                    acc = add_values(acc, neg_value(self.term()?), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let pos = self.here();
                    acc = mul_values(acc, self.factor()?, pos)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.here();
                    let divisor = self
                        .factor()?
                        .into_scalar()
                        .filter(|c| !c.is_zero())
                        .ok_or(ParseError::BadDivisor { pos })?;
                    let inv = divisor.inv().expect("nonzero scalar");
                    acc = scale_value(acc, &inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(neg_value(self.factor()?));
        }
        let atom_pos = self.here();
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let mut sign = 1i64;
            if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                sign = -1;
            }
            let exp_pos = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => pow_value(base, sign * n, atom_pos),
                _ => Err(ParseError::Syntax {
                    pos: exp_pos,
                    msg: "expected integer exponent after '^'".to_string(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Gen('q')) => Ok(Value::Scalar(QScalar::q())),
            Some(Tok::Gen('t')) => Ok(Value::Torus(monomial(1, 0, QScalar::one()))),
            Some(Tok::Gen('Q')) => Ok(Value::Torus(monomial(0, 1, QScalar::one()))),
            Some(Tok::Gen('u')) => Ok(Value::Hopf(hopf_monomial(1, 0, QScalar::one()))),
            Some(Tok::Gen('v')) => Ok(Value::Hopf(hopf_monomial(0, 1, QScalar::one()))),
            Some(Tok::Int(n)) => Ok(Value::Scalar(QScalar::from_int(*n))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax {
                        pos: close,
                        msg: "expected ')'".to_string(),
                    }),
                }
            }
            _ => Err(ParseError::Syntax {
                pos,
                msg: "expected a generator, integer or '('".to_string(),
            }),
        }
    }
}

fn neg_value(v: Value) -> Value {
    match v {
        Value::Scalar(c) => Value::Scalar(-c),
        Value::Torus(x) => Value::Torus(x.neg()),
        Value::Hopf(x) => Value::Hopf(x.neg()),
    }
}

fn scale_value(v: Value, c: &QScalar) -> Value {
    match v {
        Value::Scalar(a) => Value::Scalar(a * c),
        Value::Torus(x) => Value::Torus(x.scale(c)),
        Value::Hopf(x) => Value::Hopf(x.scale(c)),
    }
}

fn add_values(a: Value, b: Value, pos: usize) -> Result<Value, ParseError> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y)),
        (Value::Torus(x), Value::Torus(y)) => Ok(Value::Torus(x.add(&y))),
        (Value::Hopf(x), Value::Hopf(y)) => Ok(Value::Hopf(x.add(&y))),
        (Value::Scalar(c), Value::Torus(y)) => Ok(Value::Torus(Element::scalar(c).add(&y))),
        (Value::Torus(x), Value::Scalar(c)) => Ok(Value::Torus(x.add(&Element::scalar(c)))),
        (Value::Scalar(c), Value::Hopf(y)) => Ok(Value::Hopf(Element::scalar(c).add(&y))),
        (Value::Hopf(x), Value::Scalar(c)) => Ok(Value::Hopf(x.add(&Element::scalar(c)))),
        _ => Err(ParseError::MixedGenerators { pos }),
    }
}

fn mul_values(a: Value, b: Value, pos: usize) -> Result<Value, ParseError> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x * y)),
        (Value::Torus(x), Value::Torus(y)) => Ok(Value::Torus(x.mul(&y))),
        (Value::Hopf(x), Value::Hopf(y)) => Ok(Value::Hopf(x.mul(&y))),
        (Value::Scalar(c), other) => Ok(scale_value(other, &c)),
        (other, Value::Scalar(c)) => Ok(scale_value(other, &c)),
        _ => Err(ParseError::MixedGenerators { pos }),
    }
}

fn pow_value(base: Value, n: i64, pos: usize) -> Result<Value, ParseError> {
    if n >= 0 {
        return Ok(match base {
            Value::Scalar(c) => {
                let mut acc = QScalar::one();
                for _ in 0..n {
                    acc = acc * &c;
                }
                Value::Scalar(acc)
            }
            Value::Torus(x) => Value::Torus(x.pow(n as u32)),
            Value::Hopf(x) => Value::Hopf(x.pow(n as u32)),
        });
    }
    match base {
        Value::Scalar(c) => {
            let inv = c.inv().map_err(|_| ParseError::NonInvertible { pos })?;
            pow_value(Value::Scalar(inv), -n, pos)
        }
        Value::Torus(x) => {
            let inv = monomial_inverse(&x).map_err(|_| ParseError::NonInvertible { pos })?;
            pow_value(Value::Torus(inv), -n, pos)
        }
        Value::Hopf(x) => {
            // only u-powers are invertible
            let (key, coeff) = x.as_monomial().ok_or(ParseError::NonInvertible { pos })?;
            if key.v_exp != 0 {
                return Err(ParseError::NegativeVExponent { pos });
            }
            let c = coeff.inv().map_err(|_| ParseError::NonInvertible { pos })?;
            pow_value(Value::Hopf(hopf_monomial(-key.u_exp, 0, c)), -n, pos)
        }
    }
}

/// Parses and evaluates an expression.
pub fn parse(src: &str) -> Result<Value, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks: &toks, pos: 0, end: src.len() };
    let v = p.expr()?;
    if p.pos < toks.len() {
        return Err(ParseError::Syntax {
            pos: p.here(),
            msg: "unexpected trailing input".to_string(),
        });
    }
    Ok(v)
}

pub fn parse_torus(src: &str) -> Result<TorusElement, ParseError> {
    parse(src)?.into_torus().ok_or(ParseError::MixedGenerators { pos: 0 })
}

pub fn parse_hopf(src: &str) -> Result<HopfElement, ParseError> {
    parse(src)?.into_hopf().ok_or(ParseError::MixedGenerators { pos: 0 })
}

fn format_coeff(c: &QScalar) -> String {
    format!("({c})")
}

fn push_power(parts: &mut Vec<String>, gen: &str, exp: i64) {
    match exp {
        0 => {}
        1 => parts.push(gen.to_string()),
        e => parts.push(format!("{gen}^{e}")),
    }
}

/// Renders a torus element in the expression grammar;
/// `parse(format_torus(x))` evaluates back to `x`.
pub fn format_torus(x: &TorusElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.terms()
        .map(|(key, c)| {
            let mut parts = vec![format_coeff(c)];
            push_power(&mut parts, "t", key.t_exp);
            push_power(&mut parts, "Q", key.q_exp);
            parts.join("*")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Renders a Hopf element in the expression grammar.
pub fn format_hopf(x: &HopfElement) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.terms()
        .map(|(key, c)| {
            let mut parts = vec![format_coeff(c)];
            push_power(&mut parts, "u", key.u_exp);
            push_power(&mut parts, "v", key.v_exp as i64);
            parts.join("*")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn format_scalar(c: &QScalar) -> String {
    format_coeff(c)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{}", format_scalar(c)),
            Value::Torus(x) => write!(f, "{}", format_torus(x)),
            Value::Hopf(x) => write!(f, "{}", format_hopf(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qint;
    use crate::torus::{q_gen, t_gen};

    #[test]
    fn normal_ordering() {
        // Q*t = q t Q
        let x = parse_torus("Q*t").unwrap();
        assert_eq!(x, monomial(1, 1, QScalar::q()));
        assert_eq!(parse_torus("q*t*Q").unwrap(), x);
    }

    #[test]
    fn coefficient_and_powers() {
        let x = parse_torus("(q+1)*t^2*Q^-1").unwrap();
        assert_eq!(x, monomial(2, -1, qint(2)));
        assert_eq!(parse_torus("t^0").unwrap(), TorusElement::one());
    }

    #[test]
    fn mixed_generators_error() {
        assert!(matches!(
            parse("t*u"),
            Err(ParseError::MixedGenerators { .. })
        ));
        assert!(matches!(
            parse("Q + v"),
            Err(ParseError::MixedGenerators { .. })
        ));
    }

    #[test]
    fn negative_v_exponent_error() {
        assert!(matches!(
            parse("v^-1"),
            Err(ParseError::NegativeVExponent { .. })
        ));
        assert!(parse("u^-3").is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("t + ") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse("t @ Q") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse("(t"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("t Q"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn scalar_division() {
        let x = parse("q^2/q").unwrap();
        assert_eq!(x, Value::Scalar(QScalar::q()));
        let y = parse_torus("t/(q-1)").unwrap();
        assert_eq!(
            y,
            t_gen().scale(&(QScalar::q() - QScalar::one()).inv().unwrap())
        );
        assert!(matches!(parse("t/Q"), Err(ParseError::BadDivisor { .. })));
        assert!(matches!(parse("t/0"), Err(ParseError::BadDivisor { .. })));
    }

    #[test]
    fn unary_minus() {
        assert_eq!(parse_torus("-t").unwrap(), t_gen().neg());
        assert_eq!(parse_torus("-t^2").unwrap(), monomial(2, 0, -QScalar::one()));
        assert_eq!(parse_torus("t - -Q").unwrap(), t_gen().add(&q_gen()));
    }

    #[test]
    fn round_trip_samples() {
        let samples = [
            "t", "Q^-3", "(q+1)*t^2*Q^-1 + 3", "q*t*Q - t", "0", "-t + Q",
        ];
        for src in samples {
            let x = parse_torus(src).unwrap();
            assert_eq!(parse_torus(&format_torus(&x)).unwrap(), x, "{src}");
        }
        let hopf_samples = ["u", "v^2", "u^-1*v + (q-1)*u", "0"];
        for src in hopf_samples {
            let x = parse_hopf(src).unwrap();
            assert_eq!(parse_hopf(&format_hopf(&x)).unwrap(), x, "{src}");
        }
    }

    #[test]
    fn hopf_normal_ordering() {
        // u v = q v u, normal order u-then-v
        let uv = parse_hopf("u*v").unwrap();
        let vu = parse_hopf("v*u").unwrap();
        assert_eq!(uv, vu.scale(&QScalar::q()));
    }
}
