//! Exact numbers in multiquadratic fields: finite sums `sum c_r sqrt(r)`
//! with rational `c_r` and squarefree integer radicands `r` (negative `r`
//! meaning `i sqrt(|r|)`), with a parser for ASCII expressions such as
//! `4*sqrt(-3) - 6*i - 2*sqrt(3) + 4` and `(1+sqrt(2))^6/2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rug::Float;
use thiserror::Error;

use crate::bigc::{float_from_rational, BigComplex};
use crate::exact::rat_string;

/// Errors raised while parsing or combining radical expressions.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadicalError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by a non-rational quantity")]
    NonRationalDivisor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a non-rational quantity")]
    NestedRadical,
    #[error("radicand {0} out of range")]
    Overflow(String),
}

/// Squarefree decomposition `n = k^2 * s` with `s` squarefree and of the
/// sign of `n`. Returns `(k, s)`.
fn squarefree_split(n: i64) -> (i64, i64) {
    let sign = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut k: u64 = 1;
    let mut s: u64 = 1;
    let mut p: u64 = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            k *= p;
        }
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    s *= m;
    (k as i64, sign * s as i64)
}

/// An exact element of a multiquadratic extension of the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Radical {
    terms: BTreeMap<i64, BigRational>,
}

impl Radical {
    /// Zero.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A rational number.
    pub fn rational(x: BigRational) -> Self {
        let mut r = Self::zero();
        r.push(1, x);
        r
    }

    /// An integer.
    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `sqrt(n)` on the principal branch (`sqrt(-1) = i`).
    pub fn sqrt_int(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (k, s) = squarefree_split(n);
        let mut r = Self::zero();
        r.push(s, BigRational::from_integer(BigInt::from(k)));
        r
    }

    /// `sqrt(x)` for rational `x`, principal branch.
    pub fn sqrt_rational(x: &BigRational) -> Result<Self, RadicalError> {
        let num = (x.numer() * x.denom()).to_i64().ok_or_else(|| RadicalError::Overflow(rat_string(x)))?;
        let d = BigRational::from_integer(x.denom().clone());
        Ok(Self::sqrt_int(num).scale(&d.recip()))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::sqrt_int(-1)
    }

    fn push(&mut self, r: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(r).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&r);
        }
    }

    /// Terms `(radicand, coefficient)` in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    /// True if zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value, if this is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.push(*k, c.clone());
        }
        r
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Radical { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    /// Multiplication by a rational.
    pub fn scale(&self, s: &BigRational) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.push(*k, c * s);
        }
        r
    }

    /// Product, with `sqrt(a) sqrt(b) = -sqrt(ab)` when both are negative.
    pub fn mul(&self, o: &Self) -> Result<Self, RadicalError> {
        let mut r = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let ab = a.checked_mul(*b).ok_or_else(|| RadicalError::Overflow(format!("{a}*{b}")))?;
                let (k, s) = squarefree_split(ab);
                let sign = if *a < 0 && *b < 0 { -1 } else { 1 };
                r.push(s, ca * cb * BigRational::from_integer(BigInt::from(sign * k)));
            }
        }
        Ok(r)
    }

    /// Non-negative integer power.
    pub fn pow(&self, n: u32) -> Result<Self, RadicalError> {
        let mut acc = Self::int(1);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Field automorphism flipping the sign of `sqrt(g)` for each listed
    /// generator `g` (a prime, or `-1` for `i`). A term `sqrt(r)` changes
    /// sign once for each flipped generator dividing `r`.
    pub fn galois(&self, flips: &[i64]) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            let mut odd = false;
            for g in flips {
                let hit = if *g == -1 { *k < 0 } else { k % g == 0 };
                odd ^= hit;
            }
            r.push(*k, if odd { -c } else { c.clone() });
        }
        r
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(&[-1])
    }

    /// Numerical value at `prec` bits.
    pub fn eval(&self, prec: u32) -> BigComplex {
        let mut re = Float::new(prec);
        let mut im = Float::new(prec);
        for (k, c) in &self.terms {
            let root = Float::with_val(prec, k.unsigned_abs()).sqrt();
            let v = root * float_from_rational(c, prec);
            if *k < 0 {
                im += v;
            } else {
                re += v;
            }
        }
        BigComplex { re, im }
    }

    /// Parses an ASCII expression over integers, `i`, `sqrt(rational)`,
    /// `+ - * /`, parentheses and `^` with a non-negative integer exponent.
    /// Division is only allowed by rational quantities.
    pub fn parse(s: &str) -> Result<Self, RadicalError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match *k {
                1 => write!(f, "{}", rat_string(&a))?,
                -1 if a.is_one() => write!(f, "i")?,
                _ if a.is_one() => write!(f, "sqrt({k})")?,
                -1 => write!(f, "{}*i", rat_string(&a))?,
                _ => write!(f, "{}*sqrt({k})", rat_string(&a))?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> RadicalError {
        RadicalError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Radical, RadicalError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Radical, RadicalError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.eat(b'/') {
                let d = self.unary()?.as_rational().ok_or(RadicalError::NonRationalDivisor)?;
                if d.is_zero() {
                    return Err(RadicalError::DivisionByZero);
                }
                acc = acc.scale(&d.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Radical, RadicalError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| self.err("expected exponent"))?;
            return base.pow(n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Radical, RadicalError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii digits")
                    .parse()
                    .expect("digits parse");
                Ok(Radical::rational(BigRational::from_integer(n)))
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                if !self.eat(b'(') {
                    return Err(self.err("expected '(' after sqrt"));
                }
                let arg = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                let x = arg.as_rational().ok_or(RadicalError::NestedRadical)?;
                Radical::sqrt_rational(&x)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Radical::i())
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn p(s: &str) -> Radical {
        Radical::parse(s).unwrap()
    }

    #[test]
    fn products_follow_principal_branch() {
        assert_eq!(p("sqrt(-3)*sqrt(-3)"), Radical::int(-3));
        assert_eq!(p("sqrt(-2)*sqrt(-3)"), p("-sqrt(6)"));
        assert_eq!(p("sqrt(-2)*sqrt(3)"), p("sqrt(-6)"));
        assert_eq!(p("i*i"), Radical::int(-1));
        assert_eq!(p("sqrt(12)"), p("2*sqrt(3)"));
        assert_eq!(p("sqrt(-15)"), p("i*sqrt(15)"));
    }

    #[test]
    fn powers_and_division() {
        assert_eq!(p("(1+sqrt(2))^2"), p("3+2*sqrt(2)"));
        assert_eq!(p("(5*sqrt(13)-18)^2/4"), p("649/4-45*sqrt(13)"));
        assert_eq!(p("sqrt(1/2)"), p("sqrt(2)/2"));
        assert_eq!(Radical::parse("1/sqrt(2)"), Err(RadicalError::NonRationalDivisor));
        assert_eq!(Radical::parse("sqrt(sqrt(2))"), Err(RadicalError::NestedRadical));
        assert!(matches!(Radical::parse("1 +"), Err(RadicalError::Parse { .. })));
    }

    #[test]
    fn galois_flips_generators() {
        let x = p("-112*sqrt(-15)+272*sqrt(-3)+336*sqrt(5)+272");
        let y = x.galois(&[5]);
        assert_eq!(y, p("112*sqrt(-15)+272*sqrt(-3)-336*sqrt(5)+272"));
        assert_eq!(p("3+sqrt(-7)").conj(), p("3-sqrt(-7)"));
    }

    #[test]
    fn evaluation_matches_floats() {
        let v = p("4*sqrt(-3) - 6*i - 2*sqrt(3) + 4").eval(128);
        let re = 4.0 - 2.0 * 3f64.sqrt();
        let im = 4.0 * 3f64.sqrt() - 6.0;
        assert!((v.re.to_f64() - re).abs() < 1e-14);
        assert!((v.im.to_f64() - im).abs() < 1e-14);
    }

    #[test]
    fn display_round_trips() {
        let x = p("31/32 - 3*sqrt(-7)/32 + i + 2*sqrt(5)");
        assert_eq!(p(&x.to_string()), x);
        assert_eq!(Radical::rational(q(-3, 4)).to_string(), "-3/4");
    }
}
