//! Text grammar for polynomials.
//!
//! Terms are joined by `+`; a term is a `*`-separated product of scalars
//! (`3/2`, ghost `3/2v`, layered `3/2@2`) and variables `xK^E` with `K` in
//! `1..=n` and rational `E`. A bare `x` stands for the single variable of a
//! univariate polynomial. An omitted coefficient is `0`, the multiplicative
//! identity.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rational::{parse_rational, Rational};
use crate::semiring::{Layer, LayeredValue, Scalar, SupertropicalValue};

/// Optional suffix on a scalar literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suffix {
    None,
    Ghost,
    Layer(Layer),
}

/// Scalars that can be read from the polynomial grammar.
pub trait ParseScalar: Scalar {
    fn from_literal(magnitude: Rational, suffix: Suffix) -> Option<Self>;
}

impl ParseScalar for SupertropicalValue {
    fn from_literal(magnitude: Rational, suffix: Suffix) -> Option<Self> {
        Some(match suffix {
            Suffix::None => SupertropicalValue::tangible(magnitude),
            Suffix::Ghost => SupertropicalValue::ghost(magnitude),
            Suffix::Layer(l) => LayeredValue::new(magnitude, l).to_supertropical(),
        })
    }
}

impl ParseScalar for LayeredValue {
    fn from_literal(magnitude: Rational, suffix: Suffix) -> Option<Self> {
        match suffix {
            Suffix::None => Some(LayeredValue::tangible(magnitude)),
            Suffix::Ghost => None,
            Suffix::Layer(l) => Some(LayeredValue::new(magnitude, l)),
        }
    }
}

pub(crate) fn write_polynomial<C: Scalar>(f: &mut fmt::Formatter<'_>, p: &Polynomial<C>) -> fmt::Result {
    for (i, m) in p.terms().iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        write_monomial(f, m, p.arity())?;
    }
    Ok(())
}

fn write_monomial<C: Scalar>(f: &mut fmt::Formatter<'_>, m: &Monomial<C>, arity: usize) -> fmt::Result {
    let unit = C::from_magnitude(Rational::zero());
    let mut first = true;
    if m.is_constant() || m.coefficient != unit {
        write!(f, "{}", m.coefficient)?;
        first = false;
    }
    for (k, e) in m.exponents.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if arity == 1 {
            f.write_str("x")?;
        } else {
            write!(f, "x{}", k + 1)?;
        }
        if !e.is_one() {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Parses with the arity inferred from the largest variable index.
pub fn parse_polynomial<C: ParseScalar>(text: &str) -> Result<Polynomial<C>> {
    parse_impl(text, None)
}

/// Parses with a fixed arity; variables beyond it are rejected.
pub fn parse_polynomial_with_arity<C: ParseScalar>(text: &str, arity: usize) -> Result<Polynomial<C>> {
    parse_impl(text, Some(arity))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Factor<C> {
    Scalar(C),
    Var { index: usize, bare: bool, exp: Rational },
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
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

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos > s
        };
        if !digits(self) {
            return Err(self.err("expected a number"));
        }
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            if !digits(self) {
                return Err(self.err("expected a denominator"));
            }
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        parse_rational(s, start)
    }

    fn factor<C: ParseScalar>(&mut self) -> Result<Factor<C>> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let (index, bare) = if start == self.pos {
                    (1, true)
                } else {
                    let s = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let k: usize = s.parse().map_err(|_| self.err("bad variable index"))?;
                    if k == 0 {
                        return Err(Error::Parse { pos: start, msg: "variables are numbered from 1".to_string() });
                    }
                    (k, false)
                };
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    if self.peek() == Some(b'(') {
                        self.pos += 1;
                        let e = self.rational()?;
                        if self.peek() != Some(b')') {
                            return Err(self.err("expected `)`"));
                        }
                        self.pos += 1;
                        e
                    } else {
                        self.rational()?
                    }
                } else {
                    Rational::one()
                };
                Ok(Factor::Var { index, bare, exp })
            }
            Some(c) if c.is_ascii_digit() || c == b'-' || c == b'+' => {
                let start = self.pos;
                let q = self.rational()?;
                let suffix = match self.src.get(self.pos) {
                    Some(b'v') => {
                        self.pos += 1;
                        Suffix::Ghost
                    }
                    Some(b'@') => {
                        self.pos += 1;
                        let s = self.pos;
                        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                            self.pos += 1;
                        }
                        let word = core::str::from_utf8(&self.src[s..self.pos]).expect("ascii");
                        let layer: Layer = word.parse().map_err(|_| Error::Parse { pos: s, msg: "bad layer".to_string() })?;
                        Suffix::Layer(layer)
                    }
                    _ => Suffix::None,
                };
                C::from_literal(q, suffix)
                    .map(Factor::Scalar)
                    .ok_or(Error::Parse { pos: start, msg: "suffix not allowed for this coefficient type".to_string() })
            }
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parse_impl<C: ParseScalar>(text: &str, arity: Option<usize>) -> Result<Polynomial<C>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    // (coefficient, [(var index, exponent)])
    let mut raw: Vec<(C, Vec<(usize, Rational)>)> = Vec::new();
    let mut saw_bare = false;
    let mut saw_indexed = false;
    let mut max_index = 0usize;
    loop {
        let mut coeff = C::from_magnitude(Rational::zero());
        let mut vars = Vec::new();
        loop {
            match p.factor::<C>()? {
                Factor::Scalar(c) => coeff = coeff.times(&c),
                Factor::Var { index, bare, exp } => {
                    saw_bare |= bare;
                    saw_indexed |= !bare;
                    max_index = max_index.max(index);
                    if let Some(n) = arity {
                        if index > n {
                            return Err(p.err(format!("variable x{index} exceeds arity {n}")));
                        }
                    }
                    vars.push((index, exp));
                }
            }
            if p.peek() == Some(b'*') {
                p.pos += 1;
            } else {
                break;
            }
        }
        raw.push((coeff, vars));
        match p.peek() {
            Some(b'+') => p.pos += 1,
            None => break,
            Some(c) => return Err(p.err(format!("unexpected character `{}`", c as char))),
        }
    }
    if saw_bare && saw_indexed && max_index > 1 {
        return Err(Error::Parse { pos: 0, msg: "bare `x` mixed with indexed variables".to_string() });
    }
    let n = arity.unwrap_or(max_index.max(1));
    let terms = raw.into_iter().map(|(c, vars)| {
        let mut e = vec![Rational::zero(); n];
        for (k, x) in vars {
            e[k - 1] += x;
        }
        Monomial::new(c, e)
    });
    Polynomial::from_terms(n, terms)
}
