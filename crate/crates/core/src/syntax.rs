//! Text grammar for coefficients and polynomials.
//!
//! ```text
//! poly   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' ['-'] digits]
//! atom   := digits | 'q' | name '[' digits ',' digits ']' | '(' coefficient ')'
//! ```
//!
//! Parenthesised groups and divisors must be coefficients (no generators).
//! Generator factors are multiplied in the order written, so a product such as
//! `x[2,3]*x[1,2]` is rewritten into standard form while parsing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{AlgebraPresentation, Element, Monomial};
use crate::coeffs::{FieldElement, QMode};
use crate::error::{Error, Result};

const MAX_GENERATOR_EXPONENT: u32 = 10_000;
const MAX_Q_EXPONENT: i64 = 1 << 20;

/// Parses a polynomial and returns it in canonical (standard-monomial) form.
pub fn parse_polynomial(text: &str, algebra: &AlgebraPresentation) -> Result<Element> {
    let mut p = Parser::new(text, algebra.qmode(), Some(algebra));
    let e = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a coefficient expression in `q`.
pub fn parse_coefficient(text: &str, qmode: &QMode) -> Result<FieldElement> {
    let mut p = Parser::new(text, qmode, None);
    let c = p.coeff_expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(c)
}

/// Parses a generator list such as `x[1,3], x[2,3]` into positions.
pub fn parse_generator_list(text: &str, algebra: &AlgebraPresentation) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut p = Parser::new(text, algebra.qmode(), Some(algebra));
    loop {
        p.skip_ws();
        if p.pos >= p.src.len() {
            break;
        }
        let start = p.pos;
        let name = p.generator_name()?;
        let k = algebra
            .generator_position(&name)
            .ok_or(Error::UnknownGenerator(name.clone()))?;
        if out.contains(&k) {
            return Err(Error::Syntax {
                pos: start,
                msg: format!("generator {name} listed twice"),
            });
        }
        out.push(k);
        p.skip_ws();
        if !p.eat(',') && !p.eat(';') {
            break;
        }
    }
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Value of a parsed factor or term: a scalar, or an algebra element.
enum Value {
    Scalar(FieldElement),
    Poly(Element),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    qmode: &'a QMode,
    algebra: Option<&'a AlgebraPresentation>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, qmode: &'a QMode, algebra: Option<&'a AlgebraPresentation>) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            qmode,
            algebra,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c as u8) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_int(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = self.eat('-');
        let d = self.digits()?;
        let v: i64 = d.parse().map_err(|_| Error::ExponentOverflow(start))?;
        if v > MAX_Q_EXPONENT {
            return Err(Error::ExponentOverflow(start));
        }
        Ok(if neg { -v } else { v })
    }

    fn one(&self) -> FieldElement {
        FieldElement::one(self.qmode)
    }

    fn to_element(&self, v: Value) -> Element {
        match v {
            Value::Poly(e) => e,
            Value::Scalar(c) => {
                let n = self.algebra.map_or(0, |a| a.num_generators());
                Element::term(c, Monomial::one(n))
            }
        }
    }

    fn poly(&mut self) -> Result<Element> {
        let mut acc = Element::zero();
        let mut sign = if self.eat('-') {
            false
        } else {
            self.eat('+');
            true
        };
        loop {
            let t = self.term()?;
            let t = self.to_element(t);
            if sign {
                acc = acc.add(&t);
            } else {
                acc = acc.sub(&t);
            }
            if self.eat('+') {
                sign = true;
            } else if self.eat('-') {
                sign = false;
            } else {
                return Ok(acc);
            }
        }
    }

    fn coeff_expr(&mut self) -> Result<FieldElement> {
        let mut acc = FieldElement::zero(self.qmode);
        let mut sign = if self.eat('-') {
            false
        } else {
            self.eat('+');
            true
        };
        loop {
            let start = self.pos;
            let t = match self.term()? {
                Value::Scalar(c) => c,
                Value::Poly(_) => {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: "generators are not allowed inside a coefficient".into(),
                    })
                }
            };
            acc = if sign { &acc + &t } else { &acc - &t };
            if self.eat('+') {
                sign = true;
            } else if self.eat('-') {
                sign = false;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = self.mul_values(acc, f)?;
            } else if self.peek() == Some(b'/') {
                let start = self.pos;
                self.pos += 1;
                let d = match self.factor()? {
                    Value::Scalar(c) => c,
                    Value::Poly(_) => {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: "cannot divide by an algebra element".into(),
                        })
                    }
                };
                let inv = d.inv()?;
                acc = match acc {
                    Value::Scalar(c) => Value::Scalar(&c * &inv),
                    Value::Poly(e) => Value::Poly(e.scale(&inv)),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn mul_values(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::Scalar(x), Value::Poly(e)) | (Value::Poly(e), Value::Scalar(x)) => Value::Poly(e.scale(&x)),
            (Value::Poly(e), Value::Poly(f)) => Value::Poly(self.algebra.unwrap().multiply(&e, &f)?),
        })
    }

    fn generator_name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a generator name"));
        }
        let stem = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        self.expect('[')?;
        let a = self.digits()?.to_string();
        self.expect(',')?;
        let b = self.digits()?.to_string();
        self.expect(']')?;
        let norm = |s: &str| s.trim_start_matches('0').to_string();
        Ok(format!("{stem}[{},{}]", norm(&a), norm(&b)))
    }

    fn factor(&mut self) -> Result<Value> {
        let c = self
            .peek()
            .ok_or_else(|| self.err("unexpected end of input"))?;
        match c {
            b'0'..=b'9' => {
                let d = self.digits()?;
                let n: BigInt = d.parse().unwrap();
                let mut v = BigRational::from_integer(n);
                if self.eat('^') {
                    let start = self.pos;
                    let e = self.small_int()?;
                    if e < 0 && v.is_zero() {
                        return Err(crate::coeffs::CoeffError::DivisionByZero.into());
                    }
                    if e.unsigned_abs() > 4096 {
                        return Err(Error::ExponentOverflow(start));
                    }
                    v = if e >= 0 {
                        num_traits::pow(v, e as usize)
                    } else {
                        num_traits::pow(v.recip(), (-e) as usize)
                    };
                }
                Ok(Value::Scalar(FieldElement::from_rational(self.qmode, v)))
            }
            b'(' => {
                self.pos += 1;
                let c = self.coeff_expr()?;
                self.expect(')')?;
                let c = if self.eat('^') { self.power(c)? } else { c };
                Ok(Value::Scalar(c))
            }
            b'q' if !self.src.get(self.pos + 1).is_some_and(|b| b.is_ascii_alphabetic() || *b == b'[') => {
                self.pos += 1;
                let e = if self.eat('^') { self.small_int()? } else { 1 };
                Ok(Value::Scalar(FieldElement::q_pow(self.qmode, e)))
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.generator_name()?;
                let Some(alg) = self.algebra else {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: "generators are not allowed in a coefficient".into(),
                    });
                };
                let k = alg
                    .generator_position(&name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let mut e = 1u32;
                if self.eat('^') {
                    let at = self.pos;
                    let d = self.digits()?;
                    e = d.parse().map_err(|_| Error::ExponentOverflow(at))?;
                    if e == 0 {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "generator exponents must be positive".into(),
                        });
                    }
                    if e > MAX_GENERATOR_EXPONENT {
                        return Err(Error::ExponentOverflow(at));
                    }
                }
                let mut exps = vec![0u32; alg.num_generators()];
                exps[k] = e;
                Ok(Value::Poly(alg.monomial_element(Monomial::new(exps))))
            }
            _ => Err(self.err("unexpected character")),
        }
    }

    fn power(&mut self, base: FieldElement) -> Result<FieldElement> {
        let start = self.pos;
        let e = self.small_int()?;
        if e.unsigned_abs() > 4096 {
            return Err(Error::ExponentOverflow(start));
        }
        let b = if e < 0 { base.inv()? } else { base };
        let mut acc = self.one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &b;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::build_uq_plus;

    #[test]
    fn canonicalization_while_parsing() {
        let a = build_uq_plus(2, QMode::Symbolic).unwrap();
        let f = parse_polynomial("x[2,3]*x[1,2]", &a).unwrap();
        assert_eq!(a.format_element(&f), "q^2*x[1,2]*x[2,3] - q*x[1,3]");
        let b = build_uq_plus(3, QMode::Symbolic).unwrap();
        let g = parse_polynomial("(q^2 - q^-2) * x[1,4]*x[2,3]", &b).unwrap();
        assert_eq!(g.num_terms(), 1);
        assert_eq!(b.format_element(&g), "(q^2 - q^-2)*x[1,4]*x[2,3]");
    }

    #[test]
    fn coefficients() {
        let q = QMode::Symbolic;
        let c = parse_coefficient("1/(q - 1) + 1/(q + 1)", &q).unwrap();
        assert_eq!(c.to_string(), "(2*q)/(q^2 - 1)");
        let s = QMode::specialized(BigRational::from_integer(2.into())).unwrap();
        assert_eq!(parse_coefficient("q^2 - q^-2", &s).unwrap().to_string(), "15/4");
        assert!(parse_coefficient("1/(q - q)", &q).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let a = build_uq_plus(2, QMode::Symbolic).unwrap();
        assert_eq!(
            parse_polynomial("x[9,9]", &a),
            Err(Error::UnknownGenerator("x[9,9]".into()))
        );
        assert!(matches!(parse_polynomial("x[1,2] +", &a), Err(Error::Syntax { pos: 8, .. })));
        assert!(matches!(parse_polynomial("x[1,2]^99999", &a), Err(Error::ExponentOverflow(_))));
        assert!(matches!(parse_polynomial("x[1,2] / x[1,3]", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x[1,2] x[1,3]", &a), Err(Error::Syntax { .. })));
    }

    #[test]
    fn generator_lists() {
        let a = build_uq_plus(2, QMode::Symbolic).unwrap();
        assert_eq!(parse_generator_list("x[1,3], x[2,3]", &a).unwrap(), [1, 2]);
        assert!(parse_generator_list("x[1,3], x[1,3]", &a).is_err());
    }
}
