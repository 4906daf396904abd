//! Operator-expression parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | identifier | identifier '(' expr ')' | '(' expr ')'
//! ```
//!
//! For operators `*` is composition in the Weyl algebra evaluated left to
//! right, so `Dx*x` is `x*Dx+1`. `/` only divides by nonzero constants and
//! exponents must be nonnegative. Partial derivatives are written `D` followed
//! by the coordinate name.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::weyl::{WeylContext, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown identifier `{name}` at column {col}")]
    UnknownIdentifier { name: String, col: usize },
    #[error("negative exponent at column {col}")]
    NegativeExponent { col: usize },
    #[error("division by a non-constant at column {col}")]
    NonConstantDivisor { col: usize },
    #[error("division by zero at column {col}")]
    DivisionByZero { col: usize },
    #[error("at column {col}: {msg}")]
    Semantic { col: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(digits.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Meaning of the grammar's constructs for one target value type.
pub(crate) trait Semantics {
    type Value;
    fn number(&self, n: BigInt) -> Self::Value;
    fn ident(&self, name: &str, col: usize) -> Result<Self::Value, ParseError>;
    fn call(&self, name: &str, _arg: Self::Value, col: usize) -> Result<Self::Value, ParseError> {
        Err(ParseError::UnknownIdentifier {
            name: name.to_string(),
            col,
        })
    }
    fn add(&self, a: Self::Value, b: Self::Value, col: usize) -> Result<Self::Value, ParseError>;
    fn sub(&self, a: Self::Value, b: Self::Value, col: usize) -> Result<Self::Value, ParseError>;
    fn mul(&self, a: Self::Value, b: Self::Value, col: usize) -> Result<Self::Value, ParseError>;
    fn div(&self, a: Self::Value, b: Self::Value, col: usize) -> Result<Self::Value, ParseError>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn pow(&self, a: Self::Value, e: i64, col: usize) -> Result<Self::Value, ParseError>;
}

struct Parser<'s, S: Semantics> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sem: &'s S,
}

impl<S: Semantics> Parser<'_, S> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn eat(&mut self, op: char) -> bool {
        if *self.peek() == Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Tok::Num(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Op(c) => c.to_string(),
            Tok::End => "end of input".to_string(),
        };
        ParseError::Syntax {
            col: self.col(),
            msg: format!("expected {what}, found `{found}`"),
        }
    }

    fn expr(&mut self) -> Result<S::Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let col = self.col();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.sem.add(acc, rhs, col)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.sem.sub(acc, rhs, col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<S::Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let col = self.col();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.sem.mul(acc, rhs, col)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = self.sem.div(acc, rhs, col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<S::Value, ParseError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.sem.neg(v));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<S::Value, ParseError> {
        let base = self.atom()?;
        let col = self.col();
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Tok::Num(n) = self.peek().clone() else {
            return Err(self.unexpected("an integer exponent"));
        };
        self.pos += 1;
        let mag: i64 = i64::try_from(n).map_err(|_| ParseError::Syntax {
            col,
            msg: "exponent too large".into(),
        })?;
        self.sem.pow(base, if negative { -mag } else { mag }, col)
    }

    fn atom(&mut self) -> Result<S::Value, ParseError> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(self.sem.number(n))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if self.eat('(') {
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.unexpected("`)`"));
                    }
                    return self.sem.call(&name, arg, col);
                }
                self.sem.ident(&name, col)
            }
            Tok::Op('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected("`)`"));
                }
                Ok(v)
            }
            _ => Err(self.unexpected("a number, identifier or `(`")),
        }
    }
}

pub(crate) fn parse_with<S: Semantics>(src: &str, sem: &S) -> Result<S::Value, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, sem };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(v)
}

struct WeylSemantics<'a> {
    ctx: &'a WeylContext,
}

impl Semantics for WeylSemantics<'_> {
    type Value = WeylElement;

    fn number(&self, n: BigInt) -> WeylElement {
        WeylElement::constant(self.ctx, BigRational::from_integer(n))
    }

    fn ident(&self, name: &str, col: usize) -> Result<WeylElement, ParseError> {
        self.ctx
            .lookup(name)
            .map(|i| WeylElement::generator(self.ctx, i))
            .ok_or_else(|| ParseError::UnknownIdentifier {
                name: name.to_string(),
                col,
            })
    }

    fn add(&self, a: WeylElement, b: WeylElement, _: usize) -> Result<WeylElement, ParseError> {
        Ok(&a + &b)
    }

    fn sub(&self, a: WeylElement, b: WeylElement, _: usize) -> Result<WeylElement, ParseError> {
        Ok(&a - &b)
    }

    fn mul(&self, a: WeylElement, b: WeylElement, _: usize) -> Result<WeylElement, ParseError> {
        Ok(&a * &b)
    }

    fn div(&self, a: WeylElement, b: WeylElement, col: usize) -> Result<WeylElement, ParseError> {
        if !b.is_constant() {
            return Err(ParseError::NonConstantDivisor { col });
        }
        let c = b
            .terms()
            .next()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero);
        if c.is_zero() {
            return Err(ParseError::DivisionByZero { col });
        }
        Ok(a.scale(&c.recip()))
    }

    fn neg(&self, a: WeylElement) -> WeylElement {
        -a
    }

    fn pow(&self, a: WeylElement, e: i64, col: usize) -> Result<WeylElement, ParseError> {
        if e < 0 {
            return Err(ParseError::NegativeExponent { col });
        }
        let e = u32::try_from(e).map_err(|_| ParseError::Syntax {
            col,
            msg: "exponent too large".into(),
        })?;
        Ok(a.pow(e))
    }
}

/// Parses an operator expression and evaluates it in `ctx`.
pub fn parse_operator(src: &str, ctx: &WeylContext) -> Result<WeylElement, ParseError> {
    parse_with(src, &WeylSemantics { ctx })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> WeylContext {
        WeylContext::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn examples() {
        let c = ctx();
        assert_eq!(parse_operator("x*Dx+7", &c).unwrap().to_string(), "x*Dx+7");
        assert_eq!(parse_operator("Dx*x", &c).unwrap().to_string(), "x*Dx+1");
        assert_eq!(
            parse_operator("(x^2-y^3)*(Dx) + 2*x", &c)
                .unwrap()
                .to_string(),
            "-y^3*Dx+x^2*Dx+2*x"
        );
        assert_eq!(
            parse_operator("3/2*x - -1", &c).unwrap().to_string(),
            "3/2*x+1"
        );
        assert_eq!(parse_operator("-x^2", &c).unwrap().to_string(), "-x^2");
    }

    #[test]
    fn errors() {
        let c = ctx();
        assert!(matches!(
            parse_operator("x*", &c),
            Err(ParseError::Syntax { col: 3, .. })
        ));
        assert!(matches!(
            parse_operator("z", &c),
            Err(ParseError::UnknownIdentifier { .. })
        ));
        assert!(matches!(
            parse_operator("x^-1", &c),
            Err(ParseError::NegativeExponent { .. })
        ));
        assert!(matches!(
            parse_operator("1/x", &c),
            Err(ParseError::NonConstantDivisor { .. })
        ));
        assert!(matches!(
            parse_operator("x/0", &c),
            Err(ParseError::DivisionByZero { .. })
        ));
        assert!(matches!(
            parse_operator("(x", &c),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_operator("x $", &c),
            Err(ParseError::Syntax { col: 3, .. })
        ));
    }
}
