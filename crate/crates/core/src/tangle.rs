//! Algebraic tangle expressions: parsing, printing, continued fractions and
//! canonical rational-tangle expressions.
//!
//! Concrete syntax:
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'Q(' rat ')' | '[' int ']' | '[1/' int ']' | '(' expr ')'
//! rat    := int | int '/' posint
//! ```
//!
//! `*` binds tighter than `+`, both associate to the left.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{floor, is_integer, is_unit_fraction, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TangleExpr {
    /// `Q(q/p)`; `[m]` and `[1/m]` are the integer and unit-fraction cases.
    Rational(Rational),
    Sum(Box<TangleExpr>, Box<TangleExpr>),
    Product(Box<TangleExpr>, Box<TangleExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero fraction at position {pos}")]
    ZeroFraction { pos: usize },
    #[error("zero has no tangle")]
    ZeroInput,
    #[error("`{0}` is not a rational tangle expression")]
    NotRational(String),
    #[error("fraction is undefined for `{0}`")]
    Undefined(String),
}

impl TangleExpr {
    pub fn rational(x: Rational) -> Self {
        TangleExpr::Rational(x)
    }

    pub fn sum(a: TangleExpr, b: TangleExpr) -> Self {
        TangleExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: TangleExpr, b: TangleExpr) -> Self {
        TangleExpr::Product(Box::new(a), Box::new(b))
    }

    /// The fraction of a leaf, if this is a leaf.
    pub fn leaf(&self) -> Option<&Rational> {
        match self {
            TangleExpr::Rational(x) => Some(x),
            _ => None,
        }
    }

    /// Leaf of the form `[n]`.
    pub fn integer_leaf(&self) -> Option<&BigInt> {
        self.leaf().filter(|x| is_integer(x)).map(|x| x.numer())
    }

    fn unit_leaf(&self) -> bool {
        self.leaf().is_some_and(is_unit_fraction)
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Rational> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Rational>) {
        match self {
            TangleExpr::Rational(x) => out.push(x),
            TangleExpr::Sum(a, b) | TangleExpr::Product(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TangleExpr::Rational(_) => 0,
            TangleExpr::Sum(a, b) | TangleExpr::Product(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Built from a single leaf by repeatedly adding integer tangles or
    /// multiplying by `[1/m]` tangles.
    pub fn is_rational_form(&self) -> bool {
        match self {
            TangleExpr::Rational(_) => true,
            TangleExpr::Sum(a, b) => {
                (a.integer_leaf().is_some() && b.is_rational_form())
                    || (b.integer_leaf().is_some() && a.is_rational_form())
            }
            TangleExpr::Product(a, b) => {
                (a.unit_leaf() && b.is_rational_form()) || (b.unit_leaf() && a.is_rational_form())
            }
        }
    }

    /// Structural form, e.g. `Sum(Q(1/3), Q(1/4))`.
    pub fn ast_string(&self) -> String {
        match self {
            TangleExpr::Rational(x) => format!("Q({})", x),
            TangleExpr::Sum(a, b) => format!("Sum({}, {})", a.ast_string(), b.ast_string()),
            TangleExpr::Product(a, b) => {
                format!("Product({}, {})", a.ast_string(), b.ast_string())
            }
        }
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleExpr::Rational(x) => write!(f, "Q({})", x),
            TangleExpr::Sum(a, b) => {
                write!(f, "{} + ", a)?;
                if matches!(**b, TangleExpr::Sum(..)) {
                    write!(f, "({})", b)
                } else {
                    write!(f, "{}", b)
                }
            }
            TangleExpr::Product(a, b) => {
                if matches!(**a, TangleExpr::Sum(..)) {
                    write!(f, "({}) * ", a)?;
                } else {
                    write!(f, "{} * ", a)?;
                }
                if matches!(**b, TangleExpr::Rational(_)) {
                    write!(f, "{}", b)
                } else {
                    write!(f, "({})", b)
                }
            }
        }
    }
}

impl FromStr for TangleExpr {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tangle(s)
    }
}

pub fn format_tangle(t: &TangleExpr) -> String {
    t.to_string()
}

pub fn parse_tangle(text: &str) -> Result<TangleExpr, TangleError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> TangleError {
        TangleError::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expect(&mut self, c: u8) -> Result<(), TangleError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<TangleExpr, TangleError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = TangleExpr::sum(acc, self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TangleExpr, TangleError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = TangleExpr::product(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<TangleExpr, TangleError> {
        match self.peek() {
            Some(b'Q') => {
                self.pos += 1;
                self.expect(b'(')?;
                let start = self.peek_pos();
                let num = self.int()?;
                let x = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    if self.src.get(self.pos) == Some(&b'-') {
                        return Err(self.error("denominator must be positive"));
                    }
                    let den = self.int()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                if x.is_zero() {
                    return Err(TangleError::ZeroFraction { pos: start });
                }
                self.expect(b')')?;
                Ok(TangleExpr::Rational(x))
            }
            Some(b'[') => {
                self.pos += 1;
                let start = self.peek_pos();
                let first = self.int()?;
                let x = if self.peek() == Some(b'/') {
                    if !first.is_one() {
                        return Err(self.error("expected `[m]` or `[1/m]`"));
                    }
                    self.pos += 1;
                    let m = self.int()?;
                    if m.is_zero() {
                        return Err(TangleError::ZeroFraction { pos: start });
                    }
                    Rational::new(BigInt::one(), m)
                } else {
                    if first.is_zero() {
                        return Err(TangleError::ZeroFraction { pos: start });
                    }
                    Rational::from_integer(first)
                };
                self.expect(b']')?;
                Ok(TangleExpr::Rational(x))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(_) => Err(self.error("expected `Q(`, `[` or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn peek_pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn int(&mut self) -> Result<BigInt, TangleError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected integer"));
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        BigInt::from_str(s).map_err(|_| self.error("bad integer"))
    }
}

/// Greedy continued fraction `x = a1 + 1/(a2 + 1/(a3 + ...))`.
///
/// All coefficients share the sign of `x` (the first may be zero) and the
/// last coefficient is at least 2 in absolute value when there are several.
pub fn continued_fraction(x: &Rational) -> Result<Vec<BigInt>, TangleError> {
    if x.is_zero() {
        return Err(TangleError::ZeroInput);
    }
    if x.is_negative() {
        return Ok(continued_fraction(&-x)?.into_iter().map(|a| -a).collect());
    }
    let mut out = Vec::new();
    let mut rest = x.clone();
    loop {
        let a = floor(&rest);
        let frac = &rest - Rational::from_integer(a.clone());
        out.push(a);
        if frac.is_zero() {
            return Ok(out);
        }
        rest = frac.recip();
    }
}

/// Evaluates `a1 + 1/(a2 + 1/(...))`.
pub fn eval_continued_fraction(coeffs: &[BigInt]) -> Option<Rational> {
    let (last, init) = coeffs.split_last()?;
    let mut acc = Rational::from_integer(last.clone());
    for a in init.iter().rev() {
        if acc.is_zero() {
            return None;
        }
        acc = Rational::from_integer(a.clone()) + acc.recip();
    }
    Some(acc)
}

/// Canonical expression of `Q(x)` over elementary tangles `[m]`, `[1/m]`,
/// alternating products with `[1/a_k]` and sums with `[a_k]` from the tail
/// of the continued fraction. Elementary fractions stay a single leaf.
pub fn rational_tangle_expr(x: &Rational) -> Result<TangleExpr, TangleError> {
    if x.is_zero() {
        return Err(TangleError::ZeroInput);
    }
    if is_integer(x) || is_unit_fraction(x) {
        return Ok(TangleExpr::Rational(x.clone()));
    }
    let cf = continued_fraction(x)?;
    let n = cf.len();
    let int_leaf = |a: &BigInt| TangleExpr::Rational(Rational::from_integer(a.clone()));
    let inv_leaf = |a: &BigInt| TangleExpr::Rational(Rational::new(BigInt::one(), a.clone()));
    // Odd length starts from [a_n] and multiplies next; even length starts
    // from [1/a_n] and adds next. Either way the final step adds [a_1].
    let (mut acc, mut multiply) = if n % 2 == 1 { (int_leaf(&cf[n - 1]), true) } else { (inv_leaf(&cf[n - 1]), false) };
    for k in (0..n - 1).rev() {
        let a = &cf[k];
        if multiply {
            acc = TangleExpr::product(acc, inv_leaf(a));
        } else if !(k == 0 && a.is_zero()) {
            acc = TangleExpr::sum(acc, int_leaf(a));
        }
        multiply = !multiply;
    }
    Ok(acc)
}

/// Tangle fraction of a rational-tangle expression: sums add fractions and
/// products combine them harmonically, `(f, g) -> 1/(1/f + 1/g)`.
pub fn fraction_eval(t: &TangleExpr) -> Result<Rational, TangleError> {
    if !t.is_rational_form() {
        return Err(TangleError::NotRational(t.to_string()));
    }
    let undefined = || TangleError::Undefined(t.to_string());
    fn go(t: &TangleExpr) -> Option<Rational> {
        match t {
            TangleExpr::Rational(x) => Some(x.clone()),
            TangleExpr::Sum(a, b) => Some(go(a)? + go(b)?),
            TangleExpr::Product(a, b) => {
                let (f, g) = (go(a)?, go(b)?);
                if f.is_zero() || g.is_zero() {
                    return None;
                }
                let s = f.recip() + g.recip();
                if s.is_zero() {
                    None
                } else {
                    Some(s.recip())
                }
            }
        }
    }
    match go(t) {
        Some(x) if !x.is_zero() => Ok(x),
        _ => Err(undefined()),
    }
}
