//! Arbitrary-precision complex numbers on top of MPFR floats.
//!
//! Binary operations return a value at the larger of the two operand
//! precisions, so precision is never silently reduced.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Smallest supported working precision in bits.
pub const MIN_PRECISION: u32 = 64;

/// Complex number with MPFR real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    /// Real part.
    pub re: Float,
    /// Imaginary part.
    pub im: Float,
}

/// Converts an exact rational to a float at `prec` bits.
pub fn float_from_rational(x: &BigRational, prec: u32) -> Float {
    let n = Float::with_val(prec, Float::parse(x.numer().to_string()).expect("integer literal"));
    let d = Float::with_val(prec, Float::parse(x.denom().to_string()).expect("integer literal"));
    Float::with_val(prec, n / d)
}

/// Parses a decimal string into a float at `prec` bits.
pub fn float_parse(s: &str, prec: u32) -> Option<Float> {
    Float::parse(s.trim()).ok().map(|v| Float::with_val(prec, v))
}

/// Pi at `prec` bits.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Decimal rendering of a float with `digits` significant digits.
pub fn float_string(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits))
}

impl BigComplex {
    /// Zero at `prec` bits.
    pub fn zero(prec: u32) -> Self {
        BigComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    /// One at `prec` bits.
    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    /// The imaginary unit at `prec` bits.
    pub fn i(prec: u32) -> Self {
        Self::from_f64(0.0, 1.0, prec)
    }

    /// From two `f64` parts (exact conversion).
    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    /// From real and imaginary floats, rounded to `prec` bits.
    pub fn from_parts(re: &Float, im: &Float, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    /// From a real float.
    pub fn from_real(re: &Float) -> Self {
        let prec = re.prec();
        BigComplex { re: re.clone(), im: Float::new(prec) }
    }

    /// From an exact rational.
    pub fn from_rational(x: &BigRational, prec: u32) -> Self {
        BigComplex { re: float_from_rational(x, prec), im: Float::new(prec) }
    }

    /// From an integer.
    pub fn from_i64(n: i64, prec: u32) -> Self {
        BigComplex { re: Float::with_val(prec, n), im: Float::new(prec) }
    }

    /// Working precision (the larger of the two parts).
    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Rounds both parts to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(&self.re, &self.im, prec)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    /// Squared modulus.
    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    /// Modulus.
    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    /// Modulus as `f64` (for diagnostics and tolerances).
    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// True if both parts are finite.
    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// True if both parts are exactly zero.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiplication by a real float.
    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        BigComplex { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    /// Multiplication by an integer.
    pub fn scale_i64(&self, s: i64) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    /// Multiplication by the imaginary unit.
    pub fn mul_i(&self) -> Self {
        BigComplex { re: Float::with_val(self.im.prec(), -&self.im), im: self.re.clone() }
    }

    /// Quotient; the result is non-finite when `other` is zero.
    pub fn div(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        let d = other.norm_sqr();
        let re = Float::with_val(p, &self.re * &other.re) + Float::with_val(p, &self.im * &other.im);
        let im = Float::with_val(p, &self.im * &other.re) - Float::with_val(p, &self.re * &other.im);
        BigComplex { re: Float::with_val(p, re / &d), im: Float::with_val(p, im / &d) }
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Self {
        Self::one(self.prec()).div(self)
    }

    /// Square.
    pub fn square(&self) -> Self {
        self * self
    }

    /// Integer power by repeated squaring (negative exponents invert).
    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex { re: Float::with_val(p, &r * &c), im: Float::with_val(p, &r * &s) }
    }

    /// Principal square root (branch cut on the negative real axis,
    /// `sqrt(-a) = i*sqrt(a)` for `a > 0`).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.im.is_zero() {
            if self.re.is_sign_negative() && !self.re.is_zero() {
                let a = Float::with_val(p, -&self.re);
                return BigComplex { re: Float::new(p), im: a.sqrt() };
            }
            return BigComplex { re: self.re.clone().sqrt(), im: Float::new(p) };
        }
        let m = self.abs();
        let re = Float::with_val(p, Float::with_val(p, &m + &self.re) / 2u32).sqrt();
        let im_abs = Float::with_val(p, Float::with_val(p, &m - &self.re) / 2u32).sqrt();
        let im = if self.im.is_sign_negative() { -im_abs } else { im_abs };
        BigComplex { re, im }
    }

    /// `exp(2*pi*i*self)`.
    pub fn exp_2pi_i(&self) -> Self {
        let p = self.prec();
        let two_pi = Float::with_val(p, pi(p) * 2u32);
        self.scale(&two_pi).mul_i().exp()
    }

    /// Largest absolute deviation of the real and imaginary parts from `other`.
    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).abs_f64()
    }

    /// Decimal string `"re+imi"` with `digits` significant digits per part.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = float_string(&self.re, digits);
        let im = float_string(&self.im, digits);
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }

    /// `log2(|self|)` as `f64`, `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        let a = self.abs();
        if a.is_zero() {
            f64::NEG_INFINITY
        } else {
            a.log2().to_f64()
        }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        BigComplex { re: Float::with_val(p, rr - ii), im: Float::with_val(p, ri + ir) }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, o: BigComplex) -> BigComplex {
        &self + &o
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, o: BigComplex) -> BigComplex {
        &self - &o
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, o: BigComplex) -> BigComplex {
        &self * &o
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

/// Sum of a slice in index order (deterministic regardless of how the
/// terms were produced).
pub fn sum(terms: &[BigComplex], prec: u32) -> BigComplex {
    terms.iter().fold(BigComplex::zero(prec), |acc, t| &acc + t)
}

/// Distance between two projective points: both vectors are divided by
/// their entry at the position where `b` has largest modulus, and the
/// maximum entrywise difference is returned. Returns `f64::INFINITY` when
/// that entry of `a` vanishes.
pub fn projective_dist(a: &[BigComplex], b: &[BigComplex]) -> f64 {
    assert_eq!(a.len(), b.len(), "projective vectors of different length");
    let k = (0..b.len())
        .max_by(|&i, &j| b[i].abs().partial_cmp(&b[j].abs()).expect("finite moduli"))
        .expect("non-empty vector");
    if a[k].is_zero() || b[k].is_zero() {
        return f64::INFINITY;
    }
    let (ak, bk) = (a[k].recip(), b[k].recip());
    a.iter().zip(b).map(|(x, y)| (x * &ak).dist(&(y * &bk))).fold(0.0, f64::max)
}

/// `2^(-bits)` as `f64`, saturating to 0 for large `bits`.
pub fn pow2_neg(bits: i64) -> f64 {
    2f64.pow(-(bits as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let p = 256;
        let ipi = BigComplex { re: Float::new(p), im: pi(p) };
        let e = ipi.exp();
        assert!(e.dist(&BigComplex::from_i64(-1, p)) < 1e-70);
    }

    #[test]
    fn principal_sqrt_branch() {
        let p = 128;
        let m3 = BigComplex::from_i64(-3, p).sqrt();
        assert!(m3.re.is_zero());
        assert!(m3.im > 0);
        let z = BigComplex::from_f64(-1.0, -1e-30, p).sqrt();
        assert!(z.im < 0);
    }

    #[test]
    fn precision_is_not_reduced() {
        let a = BigComplex::one(300);
        let b = BigComplex::one(100);
        assert_eq!((&a + &b).prec(), 300);
        assert_eq!((&b * &a).prec(), 300);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let p = 128;
        let z = BigComplex::from_f64(0.3, -0.7, p);
        let want = &(&(&z * &z) * &z) * &z;
        assert!(z.powi(4).dist(&want) < 1e-35);
        assert!((&z.powi(-2) * &z.powi(2)).dist(&BigComplex::one(p)) < 1e-35);
    }

    #[test]
    fn rational_conversion() {
        let x = crate::exact::q(-7, 3);
        let f = float_from_rational(&x, 200);
        let back = Float::with_val(200, &f * 3u32);
        assert!(Float::with_val(200, back + 7u32).abs() < 1e-55);
    }
}
