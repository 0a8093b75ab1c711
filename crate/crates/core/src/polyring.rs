//! Exact sparse polynomials over the integers in the indeterminates `a`, `b`, `q`.
//!
//! A [`Polynomial`] is a map from [`Monomial`] exponent triples to nonzero
//! arbitrary-precision coefficients. The map is kept in canonical order
//! (ascending `q` degree, then descending `a`, then descending `b`), which is
//! also the rendering order of [`Polynomial::to_canonical_string`].

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Exponent triple `a^deg_a * b^deg_b * q^deg_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub deg_a: u32,
    pub deg_b: u32,
    pub deg_q: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg_a: 0, deg_b: 0, deg_q: 0 };

    pub const fn new(deg_a: u32, deg_b: u32, deg_q: u32) -> Self {
        Monomial { deg_a, deg_b, deg_q }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// Builds a monomial from signed exponents, or `None` if any is negative.
    pub fn from_signed(deg_a: i64, deg_b: i64, deg_q: i64) -> Option<Self> {
        Some(Monomial {
            deg_a: u32::try_from(deg_a).ok()?,
            deg_b: u32::try_from(deg_b).ok()?,
            deg_q: u32::try_from(deg_q).ok()?,
        })
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial {
            deg_a: self.deg_a + rhs.deg_a,
            deg_b: self.deg_b + rhs.deg_b,
            deg_q: self.deg_q + rhs.deg_q,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg_q
            .cmp(&other.deg_q)
            .then(other.deg_a.cmp(&self.deg_a))
            .then(other.deg_b.cmp(&self.deg_b))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Renders `a^i*b^j*q^k` with unit exponents and absent variables omitted.
    /// The unit monomial renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, deg) in [("a", self.deg_a), ("b", self.deg_b), ("q", self.deg_q)] {
            if deg == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if deg > 1 {
                write!(f, "^{deg}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial in `a`, `b`, `q` with integer coefficients.
///
/// No stored coefficient is ever zero, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(1, m)
    }

    pub fn a() -> Self {
        Self::monomial(Monomial::new(1, 0, 0))
    }

    pub fn b() -> Self {
        Self::monomial(Monomial::new(0, 1, 0))
    }

    pub fn q() -> Self {
        Self::monomial(Monomial::new(0, 0, 1))
    }

    /// `q^k`
    pub fn q_pow(k: u32) -> Self {
        Self::monomial(Monomial::new(0, 0, k))
    }

    /// `(ab)^k`
    pub fn ab_pow(k: u32) -> Self {
        Self::monomial(Monomial::new(k, k, 0))
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg_q).max()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (*k * m, c.clone())).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn scale_q_power(&self, k: u32) -> Polynomial {
        self.mul_monomial(Monomial::new(0, 0, k))
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at the integer point `(a, b, q)`. `0^0` is taken as 1.
    pub fn evaluate(&self, a: i64, b: i64, q: i64) -> BigInt {
        let (a, b, q) = (BigInt::from(a), BigInt::from(b), BigInt::from(q));
        self.terms
            .iter()
            .map(|(m, c)| c * a.pow(m.deg_a) * b.pow(m.deg_b) * q.pow(m.deg_q))
            .sum()
    }

    /// Substitutes integers for the variables that are given, leaving the rest symbolic.
    pub fn specialize(&self, a: Option<i64>, b: Option<i64>, q: Option<i64>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            if let Some(v) = a {
                coeff *= BigInt::from(v).pow(m.deg_a);
                rest.deg_a = 0;
            }
            if let Some(v) = b {
                coeff *= BigInt::from(v).pow(m.deg_b);
                rest.deg_b = 0;
            }
            if let Some(v) = q {
                coeff *= BigInt::from(v).pow(m.deg_q);
                rest.deg_q = 0;
            }
            out.add_term(rest, coeff);
        }
        out
    }

    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s)
    }
}

/// Parses the canonical grammar: signed terms `[int "*"] factor ("*" factor)*`
/// with factors `a`, `b`, `q` and optional `^exp`. Whitespace is ignored
/// between tokens; term order and repeated variables are accepted.
pub fn parse_polynomial(s: &str) -> Result<Polynomial, ParseError> {
    Parser { src: s.as_bytes(), pos: 0 }.polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
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

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let mut out = Polynomial::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return Err(self.err("empty input")),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(self.err(format!("expected '+' or '-', found '{}'", c as char))),
            };
            first = false;
            let (m, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), ParseError> {
        let mut coeff = BigInt::one();
        let mut mono = Monomial::ONE;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.integer()?;
                if self.peek() != Some(b'*') {
                    return Ok((mono, coeff));
                }
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            mono = mono * self.factor()?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn factor(&mut self) -> Result<Monomial, ParseError> {
        let var = match self.peek() {
            Some(c @ (b'a' | b'b' | b'q')) => c,
            Some(c) => return Err(self.err(format!("expected variable a, b or q, found '{}'", c as char))),
            None => return Err(self.err("expected variable, found end of input")),
        };
        self.pos += 1;
        let mut deg = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.integer()?;
            deg = u32::try_from(&e)
                .ok()
                .filter(|d| *d > 0)
                .ok_or(ParseError { position: at, message: format!("exponent {e} out of range") })?;
        }
        Ok(match var {
            b'a' => Monomial::new(deg, 0, 0),
            b'b' => Monomial::new(0, deg, 0),
            _ => Monomial::new(0, 0, deg),
        })
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(*m1 * *m2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        *self += &rhs;
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}
