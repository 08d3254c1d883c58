//! Recursive-descent parser for coefficient expressions such as `3/2`,
//! `q^2 - 1`, `(q^2-1)/q` or `2q - 1/q`. Juxtaposition multiplies.

use num_bigint::BigInt;

use super::{CoeffError, Field, FieldValue, RationalFunction};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, CoeffError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((start + 1, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c == 'q' {
            out.push((i + 1, Tok::Q));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((i + 1, Tok::Op(c)));
            i += 1;
        } else {
            return Err(CoeffError::Syntax { column: i + 1, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
    field: Field,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err(&self, message: impl Into<String>) -> CoeffError {
        CoeffError::Syntax { column: self.col(), message: message.into() }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldValue, CoeffError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldValue, CoeffError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat('/') {
                let col = self.col();
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| match e {
                    CoeffError::DivisionByZero => {
                        CoeffError::Syntax { column: col, message: "division by zero".into() }
                    }
                    e => e,
                })?;
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::Q | Tok::Op('('))) {
                acc = acc.checked_mul(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldValue, CoeffError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<FieldValue, CoeffError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let exp = match self.peek() {
            Some(Tok::Int(n)) => i64::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        let col = self.col();
        base.pow(if negative { -exp } else { exp })
            .map_err(|_| CoeffError::Syntax { column: col, message: "zero to a negative power".into() })
    }

    fn atom(&mut self) -> Result<FieldValue, CoeffError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(FieldValue::from_rational(self.field, n.into()))
            }
            Some(Tok::Q) => {
                if self.field != Field::RationalFunction {
                    return Err(self.err("the indeterminate q is only available over Q(q)"));
                }
                self.pos += 1;
                Ok(FieldValue::Function(RationalFunction::q()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of coefficient")),
        }
    }
}

/// Parses a coefficient expression over `field`.
pub fn parse_coefficient(text: &str, field: Field) -> Result<FieldValue, CoeffError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end_col: text.chars().count() + 1, field };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}
