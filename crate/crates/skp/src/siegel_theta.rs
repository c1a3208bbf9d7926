//! Theta constants of genus 1 and 2 at arbitrary precision, the lambda and
//! j invariants, and the classical identities used to reduce genus-2 theta
//! values to elliptic ones.
//!
//! Conventions: for a characteristic `m = (m', m'')`,
//! `theta_m(tau) = sum_{n in Z^g} exp(2 pi i (1/2 (n+m') tau (n+m')^t + (n+m') m''^t))`.
//! Series are truncated on a box `|n_i + m'_i| <= R` where `R` is chosen from
//! the smallest eigenvalue of `Im tau` so that the neglected tail is below
//! `2^-(prec + GUARD_BITS)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::bigc::{float_from_rational, pi, BigComplex, MIN_PRECISION};
use crate::exact::{q, rat_string};
use crate::GUARD_BITS;

/// Extra bits used internally on top of `prec + GUARD_BITS` to absorb the
/// rounding of the term recurrences.
const WORK_BITS: u32 = 24;

/// Errors raised by theta evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThetaError {
    #[error("imaginary part is not positive (definite): {0}")]
    NotInUpperHalfSpace(String),
    #[error("precision {0} is below the minimum of {MIN_PRECISION} bits")]
    PrecisionTooLow(u32),
    #[error("lambda = {0} is a pole of j")]
    Pole(String),
    #[error("off-diagonal entry is not an integer")]
    OffDiagonalNotIntegral,
    #[error("truncation radius exceeds {0}")]
    RadiusTooLarge(i64),
}

/// Largest truncation radius accepted before giving up.
pub const MAX_RADIUS: i64 = 4000;

/// A theta characteristic `(m'_1, m'_2, m''_1, m''_2)` (or `(m', m'')` in genus 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaChar {
    /// Entries `m'_1, m'_2, m''_1, m''_2`.
    pub m: [BigRational; 4],
}

impl ThetaChar {
    /// From rationals.
    pub fn new(m: [BigRational; 4]) -> Self {
        ThetaChar { m }
    }

    /// From numerators over 2, e.g. `[0, 0, 1, 0]` is `(0, 0, 1/2, 0)`.
    pub fn halves(h: [i64; 4]) -> Self {
        ThetaChar { m: h.map(|x| q(x, 2)) }
    }

    /// Parity for half-integral characteristics: `Some(true)` if
    /// `4 m' . m''` is even.
    pub fn is_even(&self) -> Option<bool> {
        let four = q(4, 1);
        let v = (&self.m[0] * &self.m[2] + &self.m[1] * &self.m[3]) * four;
        if !v.is_integer() {
            return None;
        }
        Some(v.to_integer() % 2 == num_bigint::BigInt::zero())
    }
}

impl fmt::Display for ThetaChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.m.iter().map(rat_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// The ten even half-integral characteristics, in lexicographic order of
/// their numerators.
pub fn even_chars() -> Vec<ThetaChar> {
    let mut out = Vec::new();
    for a in 0..16i64 {
        let h = [(a >> 3) & 1, (a >> 2) & 1, (a >> 1) & 1, a & 1];
        let c = ThetaChar::halves(h);
        if c.is_even() == Some(true) {
            out.push(c);
        }
    }
    out
}

/// The characteristics `v1..v5`:
/// `(0,0,0,0), (0,0,0,1/2), (0,0,1/2,0), (0,0,1/2,1/2), (0,1/2,0,0)`.
pub fn v_chars() -> [ThetaChar; 5] {
    [
        ThetaChar::halves([0, 0, 0, 0]),
        ThetaChar::halves([0, 0, 0, 1]),
        ThetaChar::halves([0, 0, 1, 0]),
        ThetaChar::halves([0, 0, 1, 1]),
        ThetaChar::halves([0, 1, 0, 0]),
    ]
}

/// A point of the Siegel upper half space of degree 2.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    /// Entry (1,1).
    pub t11: BigComplex,
    /// Entry (1,2) = (2,1).
    pub t12: BigComplex,
    /// Entry (2,2).
    pub t22: BigComplex,
}

/// Serializable rendering of a Siegel point.
#[derive(Clone, Debug, Serialize)]
pub struct SiegelPointJson {
    pub precision_bits: u32,
    pub matrix: [[String; 2]; 2],
}

impl SiegelPoint {
    /// Builds a point, checking that `Im tau` is positive definite.
    pub fn new(t11: BigComplex, t12: BigComplex, t22: BigComplex) -> Result<Self, ThetaError> {
        let p = SiegelPoint { t11, t12, t22 };
        let y11 = p.t11.im.to_f64();
        let det = Float::with_val(
            p.prec(),
            Float::with_val(p.prec(), &p.t11.im * &p.t22.im) - Float::with_val(p.prec(), p.t12.im.clone().square()),
        );
        if y11.is_nan() || y11 <= 0.0 || !det.is_sign_positive() || det.is_zero() {
            return Err(ThetaError::NotInUpperHalfSpace(p.to_string()));
        }
        Ok(p)
    }

    /// Builds a point from a 2x2 matrix, symmetrizing the off-diagonal.
    pub fn from_matrix(m: &CMat2) -> Result<Self, ThetaError> {
        let t12 = (&m.a[0][1] + &m.a[1][0]).scale(&Float::with_val(m.a[0][1].prec(), 0.5));
        Self::new(m.a[0][0].clone(), t12, m.a[1][1].clone())
    }

    /// Working precision.
    pub fn prec(&self) -> u32 {
        self.t11.prec().max(self.t12.prec()).max(self.t22.prec())
    }

    /// The matrix form.
    pub fn matrix(&self) -> CMat2 {
        CMat2 { a: [[self.t11.clone(), self.t12.clone()], [self.t12.clone(), self.t22.clone()]] }
    }

    /// Smallest eigenvalue of `Im tau` (as `f64`).
    pub fn im_min_eigenvalue(&self) -> f64 {
        let p = self.prec();
        let (a, b, c) = (&self.t11.im, &self.t12.im, &self.t22.im);
        let half_tr = Float::with_val(p, Float::with_val(p, a + c) / 2u32);
        let half_diff = Float::with_val(p, Float::with_val(p, a - c) / 2u32);
        let disc = Float::with_val(p, half_diff.square() + Float::with_val(p, b.clone().square())).sqrt();
        Float::with_val(p, half_tr - disc).to_f64()
    }

    /// `k tau` for a positive integer `k`.
    pub fn scaled(&self, k: i64) -> SiegelPoint {
        SiegelPoint { t11: self.t11.scale_i64(k), t12: self.t12.scale_i64(k), t22: self.t22.scale_i64(k) }
    }

    /// `P tau P^t` for an integer 2x2 matrix `P`.
    pub fn transform(&self, p: [[i64; 2]; 2]) -> SiegelPoint {
        let m = self.matrix();
        let pm = CMat2::from_i64(p, self.prec());
        let r = pm.mul(&m).mul(&pm.transpose());
        SiegelPoint { t11: r.a[0][0].clone(), t12: r.a[0][1].clone(), t22: r.a[1][1].clone() }
    }

    /// Largest entrywise distance to another point.
    pub fn dist(&self, other: &SiegelPoint) -> f64 {
        self.t11.dist(&other.t11).max(self.t12.dist(&other.t12)).max(self.t22.dist(&other.t22))
    }

    /// Decimal rendering.
    pub fn to_json(&self, digits: usize) -> SiegelPointJson {
        let s = |z: &BigComplex| z.to_decimal(digits);
        SiegelPointJson {
            precision_bits: self.prec(),
            matrix: [[s(&self.t11), s(&self.t12)], [s(&self.t12), s(&self.t22)]],
        }
    }
}

impl fmt::Display for SiegelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.t11, self.t12, self.t12, self.t22)
    }
}

/// A 2x2 complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat2 {
    /// Entries, row major.
    pub a: [[BigComplex; 2]; 2],
}

impl CMat2 {
    /// From integer entries.
    pub fn from_i64(m: [[i64; 2]; 2], prec: u32) -> Self {
        CMat2 { a: m.map(|r| r.map(|x| BigComplex::from_i64(x, prec))) }
    }

    /// Product.
    pub fn mul(&self, o: &CMat2) -> CMat2 {
        let e = |i: usize, j: usize| &(&self.a[i][0] * &o.a[0][j]) + &(&self.a[i][1] * &o.a[1][j]);
        CMat2 { a: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    /// Sum.
    pub fn add(&self, o: &CMat2) -> CMat2 {
        let e = |i: usize, j: usize| &self.a[i][j] + &o.a[i][j];
        CMat2 { a: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    /// Difference.
    pub fn sub(&self, o: &CMat2) -> CMat2 {
        let e = |i: usize, j: usize| &self.a[i][j] - &o.a[i][j];
        CMat2 { a: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    /// Transpose.
    pub fn transpose(&self) -> CMat2 {
        CMat2 { a: [[self.a[0][0].clone(), self.a[1][0].clone()], [self.a[0][1].clone(), self.a[1][1].clone()]] }
    }

    /// Determinant.
    pub fn det(&self) -> BigComplex {
        &(&self.a[0][0] * &self.a[1][1]) - &(&self.a[0][1] * &self.a[1][0])
    }

    /// Inverse (non-finite entries if singular).
    pub fn inverse(&self) -> CMat2 {
        let d = self.det().recip();
        let a = &self.a;
        CMat2 { a: [[&a[1][1] * &d, -&(&a[0][1] * &d)], [-&(&a[1][0] * &d), &a[0][0] * &d]] }
    }

    /// Largest entrywise distance.
    pub fn dist(&self, o: &CMat2) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max(self.a[i][j].dist(&o.a[i][j]));
            }
        }
        m
    }
}

/// Action `(A tau + B)(C tau + D)^{-1}` of a real 4x4 symplectic matrix
/// given in 2x2 blocks.
pub fn mobius(blocks: [[&CMat2; 2]; 2], tau: &SiegelPoint) -> Result<SiegelPoint, ThetaError> {
    let t = tau.matrix();
    let num = blocks[0][0].mul(&t).add(blocks[0][1]);
    let den = blocks[1][0].mul(&t).add(blocks[1][1]);
    SiegelPoint::from_matrix(&num.mul(&den.inverse()))
}

fn check_prec(prec: u32) -> Result<(), ThetaError> {
    if prec < MIN_PRECISION {
        return Err(ThetaError::PrecisionTooLow(prec));
    }
    Ok(())
}

/// Truncation radius for a genus-1 sum with `Im tau = y`.
pub fn radius_g1(y: f64, bits: u32) -> Result<i64, ThetaError> {
    let target = -(bits as f64) * std::f64::consts::LN_2;
    let pi = std::f64::consts::PI;
    for r in 1..=MAX_RADIUS {
        let rf = r as f64;
        let rho = (-pi * y * (2.0 * rf + 1.0)).exp();
        if rho >= 1.0 {
            continue;
        }
        let log_tail = 2f64.ln() - pi * y * rf * rf - (1.0 - rho).ln();
        if log_tail < target {
            return Ok(r);
        }
    }
    Err(ThetaError::RadiusTooLarge(MAX_RADIUS))
}

/// Truncation radius for a genus-2 box sum with smallest eigenvalue `lambda`.
pub fn radius_g2(lambda: f64, bits: u32) -> Result<i64, ThetaError> {
    let target = -(bits as f64) * std::f64::consts::LN_2;
    let pi = std::f64::consts::PI;
    for r in 1..=MAX_RADIUS {
        let rf = r as f64;
        let rho = 1.5 * (-pi * lambda * (2.0 * rf + 1.0)).exp();
        if rho >= 1.0 {
            continue;
        }
        let log_tail = (16.0 * (rf + 2.0)).ln() - pi * lambda * rf * rf - (1.0 - rho).ln();
        if log_tail < target {
            return Ok(r);
        }
    }
    Err(ThetaError::RadiusTooLarge(MAX_RADIUS))
}

/// `pi * i * z`.
fn pi_i(z: &BigComplex, pi: &Float) -> BigComplex {
    z.scale(pi).mul_i()
}

/// Sum over `v in Z + a, |v| <= R` of `exp(pi i (tau v^2 + 2 v (b + c)))`
/// where `c` is an optional complex shift of the phase. Terms are generated
/// by the ratio recurrence and summed in increasing order of `v`.
fn row_sum(a: &Float, b: &BigComplex, tau: &BigComplex, radius: i64, wp: u32, pi: &Float) -> BigComplex {
    let af = a.to_f64();
    let n_lo = (-(radius as f64) - af).ceil() as i64;
    let n_hi = ((radius as f64) - af).floor() as i64;
    let v0 = Float::with_val(wp, a + n_lo);
    // f(v) = pi i (tau v^2 + 2 b v)
    let f0 = pi_i(&(&tau.scale(&Float::with_val(wp, v0.clone().square())) + &b.scale(&Float::with_val(wp, &v0 * 2u32))), pi);
    let mut term = f0.exp();
    // ratio(v) = exp(pi i (tau (2v+1) + 2 b))
    let two_v1 = Float::with_val(wp, Float::with_val(wp, &v0 * 2u32) + 1u32);
    let mut ratio = pi_i(&(&tau.scale(&two_v1) + &b.scale_i64(2)), pi).exp();
    let step = pi_i(&tau.scale_i64(2), pi).exp();
    let mut acc = BigComplex::zero(wp);
    for n in n_lo..=n_hi {
        acc = &acc + &term;
        if n < n_hi {
            term = &term * &ratio;
            ratio = &ratio * &step;
        }
    }
    acc
}

/// Genus-1 theta constant `theta_{m1,m2}(tau)`.
pub fn theta_g1(m1: &BigRational, m2: &BigRational, tau: &BigComplex, prec: u32) -> Result<BigComplex, ThetaError> {
    check_prec(prec)?;
    if !tau.im.is_sign_positive() || tau.im.is_zero() {
        return Err(ThetaError::NotInUpperHalfSpace(tau.to_string()));
    }
    let out = prec + GUARD_BITS;
    let wp = out + WORK_BITS;
    let radius = radius_g1(tau.im.to_f64(), out)?;
    let pi = pi(wp);
    let tau = tau.with_prec(wp);
    let a = float_from_rational(m1, wp);
    let b = BigComplex::from_rational(m2, wp);
    Ok(row_sum(&a, &b, &tau, radius, wp, &pi).with_prec(out))
}

/// Genus-1 theta constant with a complex lower characteristic `m2`
/// (used by the diagonal factorization, where `m2 = b + tau12 a`).
pub fn theta_g1_complex(m1: &BigRational, m2: &BigComplex, tau: &BigComplex, prec: u32) -> Result<BigComplex, ThetaError> {
    check_prec(prec)?;
    if !tau.im.is_sign_positive() || tau.im.is_zero() {
        return Err(ThetaError::NotInUpperHalfSpace(tau.to_string()));
    }
    let out = prec + GUARD_BITS;
    let wp = out + WORK_BITS;
    let radius = radius_g1(tau.im.to_f64(), out)?;
    let pi = pi(wp);
    let a = float_from_rational(m1, wp);
    Ok(row_sum(&a, &m2.with_prec(wp), &tau.with_prec(wp), radius, wp, &pi).with_prec(out))
}

/// Truncation radius used by [`theta_g2`] at `tau` and `prec`.
pub fn radius_for(tau: &SiegelPoint, prec: u32) -> Result<i64, ThetaError> {
    let lambda = tau.im_min_eigenvalue();
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(ThetaError::NotInUpperHalfSpace(tau.to_string()));
    }
    radius_g2(lambda, prec + GUARD_BITS)
}

/// Genus-2 theta constant `theta_m(tau)`. Rows of the lattice sum are
/// evaluated in parallel and added in increasing row order, so the result
/// does not depend on scheduling.
pub fn theta_g2(m: &ThetaChar, tau: &SiegelPoint, prec: u32) -> Result<BigComplex, ThetaError> {
    check_prec(prec)?;
    let radius = radius_for(tau, prec)?;
    let out = prec + GUARD_BITS;
    let wp = out + WORK_BITS;
    let pi = pi(wp);
    let t11 = tau.t11.with_prec(wp);
    let t12 = tau.t12.with_prec(wp);
    let t22 = tau.t22.with_prec(wp);
    let a1 = float_from_rational(&m.m[0], wp);
    let a2 = float_from_rational(&m.m[1], wp);
    let b1 = BigComplex::from_rational(&m.m[2], wp);
    let b2 = BigComplex::from_rational(&m.m[3], wp);
    let a1f = a1.to_f64();
    let n_lo = (-(radius as f64) - a1f).ceil() as i64;
    let n_hi = ((radius as f64) - a1f).floor() as i64;
    let rows: Vec<BigComplex> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n1| {
            let v1 = Float::with_val(wp, &a1 + n1);
            // Row phase: b2 + tau12 v1; row constant exp(pi i (tau11 v1^2 + 2 b1 v1)).
            let shift = &b2 + &t12.scale(&v1);
            let c = pi_i(
                &(&t11.scale(&Float::with_val(wp, v1.clone().square())) + &b1.scale(&Float::with_val(wp, &v1 * 2u32))),
                &pi,
            )
            .exp();
            &c * &row_sum(&a2, &shift, &t22, radius, wp, &pi)
        })
        .collect();
    let mut acc = BigComplex::zero(wp);
    for r in &rows {
        acc = &acc + r;
    }
    Ok(acc.with_prec(out))
}

/// Fourth powers `theta_{v_i}(tau)^4` for the five characteristics `v1..v5`.
pub fn theta4_vector(tau: &SiegelPoint, prec: u32) -> Result<[BigComplex; 5], ThetaError> {
    let vs = v_chars();
    let vals: Vec<BigComplex> = vs.iter().map(|v| theta_g2(v, tau, prec).map(|t| t.powi(4))).collect::<Result<_, _>>()?;
    Ok(std::array::from_fn(|i| vals[i].clone()))
}

/// `lambda(tau) = theta_{0,1/2}(tau)^4 / theta_{0,0}(tau)^4`.
pub fn lambda(tau: &BigComplex, prec: u32) -> Result<BigComplex, ThetaError> {
    let t00 = theta_g1(&q(0, 1), &q(0, 1), tau, prec)?;
    let t01 = theta_g1(&q(0, 1), &q(1, 2), tau, prec)?;
    Ok(t01.powi(4).div(&t00.powi(4)))
}

/// `j = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)`.
pub fn j_from_lambda(l: &BigComplex) -> Result<BigComplex, ThetaError> {
    let p = l.prec();
    let one = BigComplex::one(p);
    let l2 = l.square();
    let num = (&(&l2 - l) + &one).powi(3).scale_i64(256);
    let den = &l2 * &(l - &one).square();
    if den.is_zero() || den.log2_abs() < -(p as f64) + 8.0 {
        return Err(ThetaError::Pole(l.to_decimal(20)));
    }
    Ok(num.div(&den))
}

/// `j(tau)` via lambda.
pub fn j_invariant(tau: &BigComplex, prec: u32) -> Result<BigComplex, ThetaError> {
    j_from_lambda(&lambda(tau, prec)?)
}

/// Residuals of the genus-1 identities at a point.
#[derive(Clone, Debug, Serialize)]
pub struct G1Identities {
    /// `|theta_{0,1/2}^4 + theta_{1/2,0}^4 - theta_{0,0}^4|`.
    pub jacobi: f64,
    /// `|theta_{1/2,1/2}|`.
    pub odd_vanishing: f64,
    /// `|theta_{0,0}(2 tau)^2 - (theta_{0,0}^2 + theta_{0,1/2}^2)/2|`.
    pub duplication: f64,
    /// `|theta_{0,1/2}(2 tau)^2 - theta_{0,0} theta_{0,1/2}|`.
    pub duplication_odd: f64,
}

/// Evaluates the genus-1 identities at `tau`.
pub fn identities_g1(tau: &BigComplex, prec: u32) -> Result<G1Identities, ThetaError> {
    let (z, h) = (q(0, 1), q(1, 2));
    let t00 = theta_g1(&z, &z, tau, prec)?;
    let t01 = theta_g1(&z, &h, tau, prec)?;
    let t10 = theta_g1(&h, &z, tau, prec)?;
    let t11 = theta_g1(&h, &h, tau, prec)?;
    let tau2 = tau.scale_i64(2);
    let d00 = theta_g1(&z, &z, &tau2, prec)?;
    let d01 = theta_g1(&z, &h, &tau2, prec)?;
    let half = Float::with_val(tau.prec(), 0.5);
    Ok(G1Identities {
        jacobi: (&(&t01.powi(4) + &t10.powi(4)) - &t00.powi(4)).abs_f64(),
        odd_vanishing: t11.abs_f64(),
        duplication: (&d00.square() - &(&t00.square() + &t01.square()).scale(&half)).abs_f64(),
        duplication_odd: (&d01.square() - &(&t00 * &t01)).abs_f64(),
    })
}

/// Residual of the genus-2 doubling identity
/// `theta_{a,b}(tau)^2 = sum_eps s(eps) theta_{eps,0}(2 tau) theta_{eps+a,0}(2 tau)`
/// with `s(eps) = (-1)^{4 (a + eps) . b}`.
pub fn doubling_residual(m: &ThetaChar, tau: &SiegelPoint, prec: u32) -> Result<f64, ThetaError> {
    let lhs = theta_g2(m, tau, prec)?.square();
    let tau2 = tau.scaled(2);
    let mut rhs = BigComplex::zero(lhs.prec());
    for e in 0..4i64 {
        let eps = [q((e >> 1) & 1, 2), q(e & 1, 2)];
        let s = (&m.m[0] + &eps[0]) * &m.m[2] * q(4, 1) + (&m.m[1] + &eps[1]) * &m.m[3] * q(4, 1);
        let sign = if s.to_integer() % 2 == num_bigint::BigInt::zero() { 1 } else { -1 };
        let c1 = ThetaChar::new([eps[0].clone(), eps[1].clone(), q(0, 1), q(0, 1)]);
        let c2 = ThetaChar::new([&eps[0] + &m.m[0], &eps[1] + &m.m[1], q(0, 1), q(0, 1)]);
        let t = &theta_g2(&c1, &tau2, prec)? * &theta_g2(&c2, &tau2, prec)?;
        rhs = &rhs + &t.scale_i64(sign);
    }
    Ok((&lhs - &rhs).abs_f64())
}

/// Residual of the diagonal factorization for `tau` with integral
/// off-diagonal `k`:
/// `theta_{a1,a2,b1,b2}(tau) = e(-k a1 a2) theta_{a1,b1+k a2}(tau11) theta_{a2,b2+k a1}(tau22)`.
pub fn factorization_residual(m: &ThetaChar, tau: &SiegelPoint, prec: u32) -> Result<f64, ThetaError> {
    let k = tau.t12.re.to_f64().round();
    if !tau.t12.im.is_zero() || Float::with_val(tau.prec(), &tau.t12.re - k).abs().to_f64() != 0.0 {
        return Err(ThetaError::OffDiagonalNotIntegral);
    }
    let kq = q(k as i64, 1);
    let lhs = theta_g2(m, tau, prec)?;
    let f1 = theta_g1(&m.m[0], &(&m.m[2] + &kq * &m.m[1]), &tau.t11, prec)?;
    let f2 = theta_g1(&m.m[1], &(&m.m[3] + &kq * &m.m[0]), &tau.t22, prec)?;
    let phase_turns = -(&kq * &m.m[0] * &m.m[1]);
    let phase = BigComplex::from_rational(&phase_turns, lhs.prec()).exp_2pi_i();
    Ok((&lhs - &(&phase * &(&f1 * &f2))).abs_f64())
}

/// Relative residual of `t8 - t4^2 / 4` with `t_k = sum_{m even} theta_m^{2k}`.
pub fn igusa_residual(tau: &SiegelPoint, prec: u32) -> Result<f64, ThetaError> {
    let th: Vec<BigComplex> = even_chars().iter().map(|m| theta_g2(m, tau, prec)).collect::<Result<_, _>>()?;
    let p = th[0].prec();
    let mut t4 = BigComplex::zero(p);
    let mut t8 = BigComplex::zero(p);
    for t in &th {
        let t8th = t.powi(8);
        t8 = &t8 + &t8th.square();
        t4 = &t4 + &t8th;
    }
    let r = &t8 - &t4.square().scale(&Float::with_val(p, 0.25));
    let scale = t8.abs_f64().max(t4.square().abs_f64()).max(1e-300);
    Ok(r.abs_f64() / scale)
}

/// A fixed generic point of the Siegel upper half space.
pub fn sample_point(prec: u32) -> SiegelPoint {
    SiegelPoint::new(
        BigComplex::from_f64(0.125, 1.0, prec),
        BigComplex::from_f64(0.25, 0.375, prec),
        BigComplex::from_f64(-0.25, 1.25, prec),
    )
    .expect("positive definite")
}

/// A random point with real parts in `[-1/2, 1/2]` and imaginary part
/// `[[a, b], [b, c]]` with `a, c` in `[0.8, 1.6]` and `|b| <= 0.3`.
pub fn random_point<R: rand::Rng>(rng: &mut R, prec: u32) -> SiegelPoint {
    let re = |rng: &mut R| rng.gen_range(-0.5..0.5);
    let (a, c) = (rng.gen_range(0.8..1.6), rng.gen_range(0.8..1.6));
    let b = rng.gen_range(-0.3..0.3);
    SiegelPoint::new(
        BigComplex::from_f64(re(rng), a, prec),
        BigComplex::from_f64(re(rng), b, prec),
        BigComplex::from_f64(re(rng), c, prec),
    )
    .expect("positive definite")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_even_characteristics() {
        let e = even_chars();
        assert_eq!(e.len(), 10);
        for v in v_chars() {
            assert!(e.contains(&v));
        }
        assert!(!e.contains(&ThetaChar::halves([1, 0, 1, 0])));
        assert!(!e.contains(&ThetaChar::halves([1, 1, 1, 0])));
        // 4 m'.m'' = 2 for (1/2,1/2,1/2,1/2), so it is even.
        assert!(e.contains(&ThetaChar::halves([1, 1, 1, 1])));
    }

    #[test]
    fn odd_characteristics_vanish() {
        let tau = sample_point(128);
        for h in 0..16i64 {
            let c = ThetaChar::halves([(h >> 3) & 1, (h >> 2) & 1, (h >> 1) & 1, h & 1]);
            let v = theta_g2(&c, &tau, 128).unwrap();
            if c.is_even() == Some(false) {
                assert!(v.abs_f64() < 1e-38, "{c}: {v}");
            } else {
                assert!(v.abs_f64() > 1e-6, "{c}: {v}");
            }
        }
    }

    #[test]
    fn lambda_at_i() {
        let l = lambda(&BigComplex::i(256), 256).unwrap();
        assert!(l.dist(&BigComplex::from_f64(0.5, 0.0, 256)) < 1e-70);
        let j = j_from_lambda(&l).unwrap();
        assert!(j.dist(&BigComplex::from_i64(1728, 256)) < 1e-65);
        assert!(j_from_lambda(&BigComplex::one(128)).is_err());
    }

    #[test]
    fn genus1_identities() {
        let tau = BigComplex::from_f64(0.3, 0.8, 192);
        let r = identities_g1(&tau, 192).unwrap();
        let tol = 2f64.powi(-192 + 20);
        assert!(r.jacobi < tol && r.odd_vanishing < tol && r.duplication < tol && r.duplication_odd < tol, "{r:?}");
    }

    #[test]
    fn genus2_doubling_and_factorization() {
        let tau = sample_point(160);
        let tol = 2f64.powi(-160 + 20);
        for m in even_chars() {
            assert!(doubling_residual(&m, &tau, 160).unwrap() < tol, "{m}");
        }
        let diag = SiegelPoint::new(
            BigComplex::from_f64(0.2, 1.1, 160),
            BigComplex::from_i64(-1, 160),
            BigComplex::from_f64(-0.4, 0.9, 160),
        )
        .unwrap();
        for m in even_chars() {
            assert!(factorization_residual(&m, &diag, 160).unwrap() < tol, "{m}");
        }
        assert!(factorization_residual(&even_chars()[0], &tau, 160).is_err());
    }

    #[test]
    fn rejects_bad_points() {
        let r = SiegelPoint::new(BigComplex::i(128), BigComplex::i(128), BigComplex::i(128));
        assert!(r.is_err());
        assert!(theta_g1(&q(0, 1), &q(0, 1), &BigComplex::from_f64(0.0, -1.0, 128), 128).is_err());
        assert!(theta_g2(&even_chars()[0], &sample_point(128), 32).is_err());
    }
}
