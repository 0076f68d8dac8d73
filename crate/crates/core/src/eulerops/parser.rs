//! Recursive-descent parser for Euler and Legendre equations.
//!
//! ```text
//! equation := sum "=" "0"
//! sum      := ["+" | "-"] term { ("+" | "-") term }
//! term     := factor { "*" factor }            (exactly one y-factor)
//! factor   := number | xpow | ypart
//! number   := digits ["." digits] ["/" digits]
//! xpow     := ("x" | "(" linear ")") ["^" digits]
//! linear   := [number "*"] "x" [("+" | "-") number]
//! ypart    := "y" {"'"} | "y^(" digits ")"
//! ```
//!
//! Whitespace is ignored. Every term must carry the same power of x (or of
//! the shared `(a*x+b)`) as its derivative order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{EulerEquation, Shift};
use crate::error::{Error, Result};

const MAX_ORDER: u32 = 20;

#[derive(Debug, Clone, PartialEq)]
enum Base {
    X,
    Linear(Shift),
}

#[derive(Debug)]
struct Term {
    coeff: BigRational,
    base: Option<(Base, u32)>,
    order: u32,
    start: usize,
    text: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax { pos, message: message.into() }
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{ch}'")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> Error {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.chars.get(pos) {
            Some(c) => syntax(pos, format!("expected {wanted}, found '{c}'")),
            None => syntax(pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn small_integer(&mut self) -> Result<u32> {
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.unexpected("an integer"))?;
        d.parse::<u32>()
            .ok()
            .filter(|&k| k <= MAX_ORDER)
            .ok_or_else(|| syntax(start, format!("exponent {d} exceeds {MAX_ORDER}")))
    }

    fn number(&mut self) -> Result<BigRational> {
        let int = self.digits().ok_or_else(|| self.unexpected("a number"))?;
        let mut value = BigRational::from_integer(int.parse::<BigInt>().expect("digits"));
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            let frac: String = {
                let s = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                self.chars[s..self.pos].iter().collect()
            };
            if frac.is_empty() {
                return Err(syntax(self.pos, "expected digits after decimal point"));
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            value += BigRational::new(frac.parse::<BigInt>().expect("digits"), scale);
        }
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.digits().ok_or_else(|| self.unexpected("a denominator"))?;
            let den = den.parse::<BigInt>().expect("digits");
            if den.is_zero() {
                return Err(syntax(at, "division by zero"));
            }
            value /= BigRational::from_integer(den);
        }
        Ok(value)
    }

    fn linear(&mut self) -> Result<Shift> {
        let alpha = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let a = self.number()?;
            self.expect('*')?;
            a
        } else {
            BigRational::one()
        };
        self.expect('x')?;
        let beta = if self.eat('+') {
            self.number()?
        } else if self.eat('-') {
            -self.number()?
        } else {
            BigRational::zero()
        };
        Ok(Shift { alpha, beta })
    }

    fn derivative(&mut self) -> Result<u32> {
        // after 'y'
        if self.chars.get(self.pos) == Some(&'^') {
            self.pos += 1;
            self.expect('(')?;
            let k = self.small_integer()?;
            self.expect(')')?;
            return Ok(k);
        }
        let mut k = 0;
        while self.chars.get(self.pos) == Some(&'\'') {
            self.pos += 1;
            k += 1;
        }
        Ok(k)
    }

    fn term(&mut self, negative: bool) -> Result<Term> {
        self.skip_ws();
        let start = self.pos;
        let mut coeff = BigRational::one();
        let mut base: Option<(Base, u32)> = None;
        let mut order: Option<u32> = None;
        loop {
            let at = {
                self.skip_ws();
                self.pos
            };
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.number()?,
                Some('x') | Some('(') => {
                    if base.is_some() {
                        return Err(syntax(at, "more than one power of x in a term"));
                    }
                    let b = if self.eat('x') {
                        Base::X
                    } else {
                        self.pos += 1;
                        let s = self.linear()?;
                        self.expect(')')?;
                        Base::Linear(s)
                    };
                    let e = if self.eat('^') { self.small_integer()? } else { 1 };
                    base = Some((b, e));
                }
                Some('y') => {
                    if order.is_some() {
                        return Err(syntax(at, "more than one y-factor in a term"));
                    }
                    self.pos += 1;
                    order = Some(self.derivative()?);
                }
                _ => return Err(self.unexpected("a coefficient, x, (a*x+b) or y")),
            }
            if !self.eat('*') {
                break;
            }
        }
        let order = order.ok_or_else(|| syntax(start, "term has no y-factor"))?;
        if negative {
            coeff = -coeff;
        }
        let text: String = self.chars[start..self.pos].iter().collect::<String>().trim().to_string();
        Ok(Term { coeff, base, order, start, text })
    }
}

/// Parses an Euler (or Legendre) equation such as
/// `x^3*y''' + 3*x^2*y'' - 2*x*y' + 2*y = 0`.
pub fn parse_equation(text: &str) -> Result<EulerEquation> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let mut terms = Vec::new();
    let mut negative = if p.eat('-') {
        true
    } else {
        p.eat('+');
        false
    };
    loop {
        terms.push(p.term(negative)?);
        if p.eat('+') {
            negative = false;
        } else if p.eat('-') {
            negative = true;
        } else {
            break;
        }
    }
    p.expect('=')?;
    let at = {
        p.skip_ws();
        p.pos
    };
    if !p.number()?.is_zero() {
        return Err(syntax(at, "right-hand side must be 0"));
    }
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(syntax(p.pos, "unexpected trailing input"));
    }
    assemble(terms)
}

fn assemble(terms: Vec<Term>) -> Result<EulerEquation> {
    let mut shift: Option<Shift> = None;
    let mut plain_x = false;
    for t in &terms {
        let power = t.base.as_ref().map_or(0, |(_, e)| *e);
        if power != t.order {
            return Err(Error::NotEulerForm(format!(
                "term `{}` (at {}): power {} does not match derivative order {}",
                t.text, t.start, power, t.order
            )));
        }
        match &t.base {
            Some((Base::Linear(s), _)) => match &shift {
                Some(prev) if prev != s => {
                    return Err(Error::NotEulerForm(format!(
                        "term `{}` uses a different linear factor than earlier terms",
                        t.text
                    )))
                }
                _ => shift = Some(s.clone()),
            },
            Some((Base::X, e)) if *e > 0 => plain_x = true,
            _ => {}
        }
    }
    if let Some(s) = &shift {
        if s.alpha.is_zero() {
            return Err(Error::NotEulerForm("linear factor (a*x+b) needs a ≠ 0".into()));
        }
        if plain_x && !s.is_identity() {
            return Err(Error::NotEulerForm("mixes powers of x with powers of (a*x+b)".into()));
        }
    }
    let shift = shift.filter(|s| !s.is_identity());
    let max_order = terms.iter().map(|t| t.order).max().unwrap_or(0) as usize;
    let mut coeffs = vec![BigRational::zero(); max_order + 1];
    for t in terms {
        coeffs[t.order as usize] += t.coeff;
    }
    EulerEquation::new(coeffs, shift)
}
