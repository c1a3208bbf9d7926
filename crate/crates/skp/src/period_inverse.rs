//! The combinations `Y1..Y5` of fourth powers of theta constants, the
//! relations `f2, f4, f5` cutting out the image of the Shimura curve, the
//! explicit inverse period map `x -> (t0 : t1)` and the plane and
//! hyperelliptic models of the curve.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::bigc::{float_from_rational, pow2_neg, BigComplex};
use crate::embedding::{phi_dom, EmbeddingError};
use crate::exact::{q, z};
use crate::fuchsian::{normalize_real, DomainError, DomainPoint};
use crate::quartic_family::FiberParam;
use crate::quatalg::{QuatElem, Standard};
use crate::radical::{Radical, RadicalError};
use crate::siegel_theta::{theta4_vector, SiegelPoint, ThetaError};

/// Errors raised by the inverse period map.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum PeriodError {
    #[error("indeterminate 0/0: {0} vanish together")]
    Indeterminate(&'static str),
    #[error("theta vector vanishes identically")]
    ZeroVector,
    #[error("pole: {0} vanishes")]
    Pole(&'static str),
    #[error("rank guard: {0}")]
    RankGuard(String),
    #[error("limit did not converge (spread {0:e})")]
    NoConvergence(f64),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Radical(#[from] RadicalError),
}

/// A homogeneous polynomial in `Y1..Y5` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly5 {
    terms: BTreeMap<[u8; 5], BigInt>,
}

/// A signed permutation of the variables: `Y_k -> sign_k * Y_{perm_k}`.
pub type SignedPerm = [(usize, i8); 5];

impl Poly5 {
    /// From `(exponents, coefficient)` pairs.
    pub fn new(terms: &[([u8; 5], i64)]) -> Self {
        let mut p = Poly5::default();
        for (e, c) in terms {
            p.push(*e, BigInt::from(*c));
        }
        p
    }

    fn push(&mut self, e: [u8; 5], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Terms in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 5], &BigInt)> {
        self.terms.iter()
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Poly5::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e: [u8; 5] = std::array::from_fn(|k| a[k] + b[k]);
                r.push(e, ca * cb);
            }
        }
        r
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Poly5 { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    /// Image under a signed permutation of the variables.
    pub fn substitute(&self, s: &SignedPerm) -> Self {
        let mut r = Poly5::default();
        for (e, c) in &self.terms {
            let mut ne = [0u8; 5];
            let mut sign = 1i64;
            for k in 0..5 {
                let (to, sg) = s[k];
                ne[to] += e[k];
                if sg < 0 && e[k] % 2 == 1 {
                    sign = -sign;
                }
            }
            r.push(ne, c * sign);
        }
        r
    }

    fn monomial_complex(e: &[u8; 5], y: &[BigComplex; 5]) -> BigComplex {
        let prec = y[0].prec();
        let mut m = BigComplex::one(prec);
        for k in 0..5 {
            if e[k] > 0 {
                m = &m * &y[k].powi(e[k] as i64);
            }
        }
        m
    }

    /// Value at a complex point.
    pub fn eval(&self, y: &[BigComplex; 5]) -> BigComplex {
        let prec = y[0].prec();
        let mut acc = BigComplex::zero(prec);
        for (e, c) in &self.terms {
            let cf = Float::with_val(prec, crate::bigc::float_parse(&c.to_string(), prec).expect("integer"));
            acc = &acc + &Self::monomial_complex(e, y).scale(&cf);
        }
        acc
    }

    /// `sum |c_m| |m(y)|`, the natural scale of [`Poly5::eval`].
    pub fn eval_scale(&self, y: &[BigComplex; 5]) -> Float {
        let prec = y[0].prec();
        let mut acc = Float::new(prec);
        for (e, c) in &self.terms {
            let cf = crate::bigc::float_parse(&c.abs().to_string(), prec).expect("integer");
            acc += Self::monomial_complex(e, y).abs() * cf;
        }
        acc
    }

    /// Total degree of the leading term (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&v| v as u32).sum()).max().unwrap_or(0)
    }

    /// `max(sum |c_m| |m(y)|, max_k |y_k|^deg)`: the scale against which
    /// values of `self` are compared. The second term keeps comparisons
    /// meaningful where every monomial vanishes.
    pub fn robust_scale(&self, y: &[BigComplex; 5]) -> Float {
        let prec = y[0].prec();
        let s = self.eval_scale(y);
        let ymax = y.iter().map(|v| v.abs()).fold(Float::new(prec), |a, b| if b > a { b } else { a });
        let floor = Float::with_val(prec, rug::ops::Pow::pow(ymax, self.degree()));
        if floor > s {
            floor
        } else {
            s
        }
    }

    /// `|f(y)| / robust_scale(y)` (0 at the zero vector).
    pub fn relative(&self, y: &[BigComplex; 5]) -> f64 {
        let s = self.robust_scale(y);
        if s.is_zero() {
            return 0.0;
        }
        (self.eval(y).abs() / s).to_f64()
    }

    /// Exact value at a point with multiquadratic coordinates.
    pub fn eval_radical(&self, y: &[Radical; 5]) -> Result<Radical, RadicalError> {
        let mut acc = Radical::zero();
        for (e, c) in &self.terms {
            let mut m = Radical::rational(BigRational::from_integer(c.clone()));
            for k in 0..5 {
                m = m.mul(&y[k].pow(e[k] as u32)?)?;
            }
            acc = acc.add(&m);
        }
        Ok(acc)
    }
}

/// `f2 = Y1^2 - Y2^2 - Y3^2 + Y4^2 + Y5^2`.
pub fn f2() -> Poly5 {
    Poly5::new(&[
        ([2, 0, 0, 0, 0], 1),
        ([0, 2, 0, 0, 0], -1),
        ([0, 0, 2, 0, 0], -1),
        ([0, 0, 0, 2, 0], 1),
        ([0, 0, 0, 0, 2], 1),
    ])
}

/// `f4 = Y1^2 Y4^2 + Y1^2 Y5^2 + Y4^2 Y5^2 - 2 Y1 Y3 Y4 Y5`.
pub fn f4() -> Poly5 {
    Poly5::new(&[([2, 0, 0, 2, 0], 1), ([2, 0, 0, 0, 2], 1), ([0, 0, 0, 2, 2], 1), ([1, 0, 1, 1, 1], -2)])
}

/// The nine degree-5 monomials spanning the relevant graded piece.
pub const F5_MONOMIALS: [[u8; 5]; 9] = [
    [5, 0, 0, 0, 0],
    [3, 2, 0, 0, 0],
    [1, 4, 0, 0, 0],
    [3, 0, 2, 0, 0],
    [1, 2, 2, 0, 0],
    [1, 0, 4, 0, 0],
    [2, 0, 1, 1, 1],
    [0, 2, 1, 1, 1],
    [0, 0, 3, 1, 1],
];

/// Coefficients of `f5` on [`F5_MONOMIALS`].
pub const F5_COEFFS: [i64; 9] = [111375, -180630, -35721, -107280, 65808, -4096, 291600, -84240, -61440];

/// The quintic relation `f5`.
pub fn f5() -> Poly5 {
    let t: Vec<([u8; 5], i64)> = F5_MONOMIALS.iter().copied().zip(F5_COEFFS).collect();
    Poly5::new(&t)
}

/// The substitutions `sigma_1..sigma_4` induced by the level-2 generators.
pub const SIGMAS: [SignedPerm; 4] = [
    [(0, 1), (1, -1), (2, 1), (3, 1), (4, 1)],
    [(0, -1), (1, 1), (2, 1), (3, -1), (4, 1)],
    [(0, 1), (1, 1), (2, 1), (4, 1), (3, 1)],
    [(0, -1), (1, 1), (2, 1), (3, 1), (4, -1)],
];

/// Applies a signed permutation to a point: the `k`-th entry moves to
/// position `perm_k` with sign `sign_k`.
pub fn apply_sigma(s: &SignedPerm, y: &[BigComplex; 5]) -> [BigComplex; 5] {
    let mut out = y.clone();
    for (k, &(to, sg)) in s.iter().enumerate() {
        out[to] = if sg < 0 { -&y[k] } else { y[k].clone() };
    }
    out
}

/// `Y` from `X`: `Y1 = X2 + X3`, `Y2 = X2 - X3`,
/// `Y3 = 2X1 - X2 - X3 + 2X4`, `Y4 = X2 - X3 + 2X5`,
/// `Y5 = 2X1 - X2 + X3 - 2X4 - 2X5`.
pub const Y_FROM_X: [[i64; 5]; 5] =
    [[0, 1, 1, 0, 0], [0, 1, -1, 0, 0], [2, -1, -1, 2, 0], [0, 1, -1, 0, 2], [2, -1, 1, -2, -2]];

/// The combinations `Y1..Y5` of a theta vector.
pub fn theta_combos(x: &[BigComplex; 5]) -> [BigComplex; 5] {
    let prec = x[0].prec();
    std::array::from_fn(|i| {
        let mut acc = BigComplex::zero(prec);
        for j in 0..5 {
            if Y_FROM_X[i][j] != 0 {
                acc = &acc + &x[j].scale_i64(Y_FROM_X[i][j]);
            }
        }
        acc
    })
}

/// Exact combinations `Y1..Y5` of an exact theta vector.
pub fn theta_combos_exact(x: &[Radical; 5]) -> [Radical; 5] {
    std::array::from_fn(|i| {
        let mut acc = Radical::zero();
        for j in 0..5 {
            acc = acc.add(&x[j].scale(&q(Y_FROM_X[i][j], 1)));
        }
        acc
    })
}

/// Fourth powers `X1..X5` of the theta constants at a point together with
/// the combinations `Y1..Y5`.
#[derive(Clone, Debug)]
pub struct ThetaVector {
    pub x: [BigComplex; 5],
    pub y: [BigComplex; 5],
}

impl ThetaVector {
    /// Builds the vector, rejecting the zero vector.
    pub fn new(x: [BigComplex; 5]) -> Result<Self, PeriodError> {
        if x.iter().all(|v| v.is_zero()) {
            return Err(PeriodError::ZeroVector);
        }
        let y = theta_combos(&x);
        Ok(ThetaVector { x, y })
    }

    /// At a Siegel point.
    pub fn at(tau: &SiegelPoint, prec: u32) -> Result<Self, PeriodError> {
        Self::new(theta4_vector(tau, prec)?)
    }
}

/// Pullbacks `X_i = theta_{v_i}(phi_dom(x))^4` at a domain point.
pub fn pullbacks(std: &Standard, x: &DomainPoint, prec: u32) -> Result<ThetaVector, PeriodError> {
    let tau = phi_dom(std, x)?;
    ThetaVector::at(&tau, prec)
}

/// Relative residuals of the three relations.
#[derive(Clone, Debug, Serialize)]
pub struct RelationResiduals {
    pub f2: f64,
    pub f4: f64,
    pub f5: f64,
}

impl RelationResiduals {
    /// Largest of the three.
    pub fn max(&self) -> f64 {
        self.f2.max(self.f4).max(self.f5)
    }
}

/// Relative residuals `|f(Y)| / sum |c_m m(Y)|` of `f2, f4, f5`.
pub fn relation_residuals(y: &[BigComplex; 5]) -> RelationResiduals {
    RelationResiduals { f2: f2().relative(y), f4: f4().relative(y), f5: f5().relative(y) }
}

/// Numerator `N` and denominator `D` of `s` written homogeneously:
/// `N = 324 Y1^4 - 389 Y4^2 Y5^2 + 458 Y1 Y3 Y4 Y5 - 325 Y1^2 Y3^2`,
/// `D = Y4 Y5 (340 Y4 Y5 - 20 Y1 Y3)`.
pub fn s_numerator() -> Poly5 {
    Poly5::new(&[([4, 0, 0, 0, 0], 324), ([0, 0, 0, 2, 2], -389), ([1, 0, 1, 1, 1], 458), ([2, 0, 2, 0, 0], -325)])
}

/// See [`s_numerator`].
pub fn s_denominator() -> Poly5 {
    Poly5::new(&[([0, 0, 0, 2, 2], 340), ([1, 0, 1, 1, 1], -20)])
}

/// The output of the inverse period map at one point.
#[derive(Clone, Debug)]
pub struct InversePeriod {
    pub theta: ThetaVector,
    /// `r1 = Y4 Y5 / (Y1 Y3)` when defined.
    pub r1: Option<BigComplex>,
    /// `r2 = Y1^2 / Y3^2` when defined.
    pub r2: Option<BigComplex>,
    /// `s = N / D` when `D` is nonzero.
    pub s: Option<BigComplex>,
    /// Homogeneous parameter `t0 = 20 (N + 2D)^2`.
    pub t0: BigComplex,
    /// Homogeneous parameter `t1 = -(4 (N - D)^2 + 5 (N + 2D)^2)`.
    pub t1: BigComplex,
}

impl InversePeriod {
    /// `t1 / t0`, or `None` at `t0 = 0` (the value infinity).
    pub fn t_ratio(&self) -> Option<BigComplex> {
        if self.t0.is_zero() || self.t0.log2_abs() < self.t1.log2_abs() - self.t0.prec() as f64 / 2.0 {
            None
        } else {
            Some(self.t1.div(&self.t0))
        }
    }

    /// Exact parameter if `t1/t0` is rational to `tol`.
    pub fn recognize(&self, tol: f64) -> Option<FiberParam> {
        recognize_projective(&self.t0, &self.t1, tol)
    }
}

fn negligible(v: &BigComplex, scale: &Float, prec: u32) -> bool {
    scale.is_zero() || (v.abs() / scale).to_f64() < pow2_neg(prec as i64 / 2)
}

/// The inverse period map applied to a theta vector.
pub fn invert_theta(theta: ThetaVector) -> Result<InversePeriod, PeriodError> {
    let y = &theta.y;
    let prec = y[0].prec();
    let (np, dp) = (s_numerator(), s_denominator());
    let n = np.eval(y);
    let d = dp.eval(y);
    if negligible(&n, &np.robust_scale(y), prec) && negligible(&d, &dp.robust_scale(y), prec) {
        return Err(PeriodError::Indeterminate("numerator and denominator of s"));
    }
    let y1y3 = &y[0] * &y[2];
    let r1 = (!y1y3.is_zero()).then(|| (&y[3] * &y[4]).div(&y1y3));
    let r2 = (!y[2].is_zero()).then(|| y[0].square().div(&y[2].square()));
    let s = (!d.is_zero() && !negligible(&d, &dp.robust_scale(y), prec)).then(|| n.div(&d));
    let n2d = &n + &d.scale_i64(2);
    let nd = &n - &d;
    let t0 = n2d.square().scale_i64(20);
    let t1 = -&(&nd.square().scale_i64(4) + &n2d.square().scale_i64(5));
    Ok(InversePeriod { theta, r1, r2, s, t0, t1 })
}

/// The inverse period map at a domain point.
pub fn invert_period(std: &Standard, x: &DomainPoint, prec: u32) -> Result<InversePeriod, PeriodError> {
    invert_theta(pullbacks(std, x, prec)?)
}

/// Recognizes `(t0 : t1)` as a rational point: `(0 : 1)` when `t0` is
/// negligible, else `t1/t0` by continued fractions to relative tolerance
/// `tol` with denominators below `10^12`.
pub fn recognize_projective(t0: &BigComplex, t1: &BigComplex, tol: f64) -> Option<FiberParam> {
    let a0 = t0.abs_f64();
    let a1 = t1.abs_f64();
    if a0 <= tol * a1 {
        return Some(FiberParam::new(z(0), z(1)));
    }
    let r = t1.div(t0);
    let mag = 1.0 + r.abs_f64();
    if r.im.to_f64().abs() > tol * mag {
        return None;
    }
    let p = recognize_rational(&r.re, tol * mag)?;
    Some(FiberParam::new(p.denom().clone(), p.numer().clone()))
}

/// Continued-fraction reconstruction of a real number as `p/q` with
/// `|x - p/q| <= tol` and `q <= 10^12`.
pub fn recognize_rational(x: &Float, tol: f64) -> Option<BigRational> {
    let prec = x.prec();
    let bound = BigInt::from(10u64.pow(12));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    for _ in 0..80 {
        let a = rest.clone().floor();
        let af = a.to_f64();
        if !af.is_finite() || af.abs() > 9.0e15 {
            return None;
        }
        let ai = BigInt::from(af as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > bound {
            return None;
        }
        let cand = BigRational::new(h2.clone(), k2.clone());
        let err = Float::with_val(prec, x - float_from_rational(&cand, prec)).abs().to_f64();
        if err <= tol {
            return Some(cand);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = Float::with_val(prec, &rest - &a);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
    }
    None
}

/// Limit of `t1/t0` at a rational domain point where `N` and `D` vanish
/// together: values at `x(+h)` and `x(-h)` along a direction orthogonal to
/// `center` are averaged and extrapolated in `h^2` (Richardson) over six
/// halvings of `h` starting at `2^-20`. Works at `prec + 192` bits. Fails
/// when the last two extrapolants differ by more than `2^(-prec/2)`.
pub fn invert_period_limit(std: &Standard, center: &QuatElem, prec: u32) -> Result<BigComplex, PeriodError> {
    let alg = std.algebra();
    let wp = prec + 192;
    let b = |i: usize| alg.square_form(center, &alg.basis(i));
    let (b1, b2, b3) = (b(1), b(2), b(3));
    let dir: [BigRational; 3] = if !(b1.is_zero() && b2.is_zero()) {
        [b2.clone(), -b1.clone(), BigRational::zero()]
    } else {
        [b3.clone(), BigRational::zero(), -b1.clone()]
    };
    let c: [Float; 3] = std::array::from_fn(|i| float_from_rational(&center.c[i + 1], wp));
    let d: [Float; 3] = std::array::from_fn(|i| float_from_rational(&dir[i], wp));
    let levels = 6;
    let h0 = pow2_neg(20);
    let mut table: Vec<Vec<BigComplex>> = Vec::new();
    for k in 0..levels {
        let h = Float::with_val(wp, h0) / Float::with_val(wp, 1u64 << k);
        let mut acc = BigComplex::zero(wp);
        for sign in [1i32, -1] {
            let hs = Float::with_val(wp, &h * sign);
            let pt: [Float; 3] = std::array::from_fn(|i| Float::with_val(wp, &c[i] + &d[i] * &hs));
            let x = normalize_real(std, &pt)?;
            let inv = invert_period(std, &x, wp)?;
            let r = inv.t_ratio().ok_or(PeriodError::Pole("t0"))?;
            acc = &acc + &r;
        }
        let mut row = vec![acc.scale(&Float::with_val(wp, 0.5))];
        for j in 1..=k {
            let f = Float::with_val(wp, 4u64.pow(j as u32) - 1).recip();
            let diff = &row[j - 1] - &table[k - 1][j - 1];
            row.push(&row[j - 1] + &diff.scale(&f));
        }
        table.push(row);
    }
    let last = &table[levels - 1];
    let spread = last[levels - 1].dist(&last[levels - 2]);
    if spread > pow2_neg(prec as i64 / 2) {
        return Err(PeriodError::NoConvergence(spread));
    }
    Ok(last[levels - 1].with_prec(prec))
}

/// Polynomials in one variable over the rationals (coefficient `k` is the
/// coefficient of `x^k`).
pub type UPoly = Vec<BigRational>;

fn up(c: &[i64]) -> UPoly {
    c.iter().map(|&v| q(v, 1)).collect()
}

fn up_trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn up_add(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    up_trim((0..n).map(|k| a.get(k).cloned().unwrap_or_default() + b.get(k).cloned().unwrap_or_default()).collect())
}

fn up_scale(a: &UPoly, s: i64) -> UPoly {
    up_trim(a.iter().map(|c| c * q(s, 1)).collect())
}

fn up_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    up_trim(r)
}

fn up_pow(a: &UPoly, n: u32) -> UPoly {
    (0..n).fold(up(&[1]), |acc, _| up_mul(&acc, a))
}

/// `A = x^2 - 2`.
pub fn poly_a() -> UPoly {
    up(&[-2, 0, 1])
}

/// `B = -(4x^2 - 5)(12x^2 + 1)`.
pub fn poly_b() -> UPoly {
    up_scale(&up_mul(&up(&[-5, 0, 4]), &up(&[1, 0, 12])), -1)
}

/// Exact checks behind the plane model of the curve.
#[derive(Clone, Debug, Serialize)]
pub struct CurveIdentities {
    /// `-2(A + B) = 6(16x^4 - 19x^2 - 1)`.
    pub quadratic_coefficient: bool,
    /// `(A - B)^2 = (48x^4 - 55x^2 - 7)^2`.
    pub constant_coefficient: bool,
    /// `y = sqrt(A) + sqrt(B)` is a root: the quartic reduces to zero in
    /// `Q[x][a, b] / (a^2 - A, b^2 - B)`.
    pub root_identity: bool,
    /// With `x = (u + 1/u)/sqrt(2)` (so `B = -(2u^4 - u^2 + 2)(6u^4 + 13u^2 + 6)/u^4`)
    /// and `u = (Z + 1)/(Z - 1)`, the octic `(2u^4 - u^2 + 2)(6u^4 + 13u^2 + 6)`
    /// times `(Z - 1)^8` equals `(5Z^2+2Z+5)(5Z^2-2Z+5)(3Z^4+26Z^2+3)`.
    pub hyperelliptic_identity: bool,
}

/// Element `c0 + c1 a + c2 b + c3 ab` of `Q[x][a, b]/(a^2 - A, b^2 - B)`.
type Biquad = [UPoly; 4];

fn bq_mul(u: &Biquad, v: &Biquad, a: &UPoly, b: &UPoly) -> Biquad {
    let ab = up_mul(a, b);
    let m = |i: usize, j: usize| up_mul(&u[i], &v[j]);
    // Basis 1, a, b, ab with a^2 = A, b^2 = B.
    let c0 = [m(0, 0), up_mul(&m(1, 1), a), up_mul(&m(2, 2), b), up_mul(&m(3, 3), &ab)];
    let c1 = [m(0, 1), m(1, 0), up_mul(&m(2, 3), b), up_mul(&m(3, 2), b)];
    let c2 = [m(0, 2), m(2, 0), up_mul(&m(1, 3), a), up_mul(&m(3, 1), a)];
    let c3 = [m(0, 3), m(3, 0), m(1, 2), m(2, 1)];
    let sum = |xs: [UPoly; 4]| xs.iter().fold(Vec::new(), |acc, p| up_add(&acc, p));
    [sum(c0), sum(c1), sum(c2), sum(c3)]
}

/// Verifies the plane and hyperelliptic models symbolically.
pub fn curve_identities() -> CurveIdentities {
    let (a, b) = (poly_a(), poly_b());
    let quad = up_scale(&up_add(&a, &b), -2);
    let quad_expected = up_scale(&up(&[-1, 0, -19, 0, 16]), 6);
    let amb = up_add(&a, &up_scale(&b, -1));
    let cst = up_mul(&amb, &amb);
    let c = up(&[-7, 0, -55, 0, 48]);
    let cst_expected = up_mul(&c, &c);

    let y: Biquad = [Vec::new(), up(&[1]), up(&[1]), Vec::new()];
    let y2 = bq_mul(&y, &y, &a, &b);
    let y4 = bq_mul(&y2, &y2, &a, &b);
    let lift = |p: &UPoly| -> Biquad { [p.clone(), Vec::new(), Vec::new(), Vec::new()] };
    let t2 = bq_mul(&lift(&quad), &y2, &a, &b);
    let empty = Vec::new();
    let total: Vec<UPoly> =
        (0..4).map(|k| up_add(&up_add(&y4[k], &t2[k]), if k == 0 { &cst } else { &empty })).collect();
    let root_identity = total.iter().all(|p| p.is_empty());

    let zp1 = up(&[1, 1]);
    let zm1 = up(&[-1, 1]);
    let s = |i: u32, j: u32| up_mul(&up_pow(&zp1, i), &up_pow(&zm1, j));
    let f1 = up_add(&up_add(&up_scale(&s(4, 0), 2), &up_scale(&s(2, 2), -1)), &up_scale(&s(0, 4), 2));
    let f2 = up_add(&up_add(&up_scale(&s(4, 0), 6), &up_scale(&s(2, 2), 13)), &up_scale(&s(0, 4), 6));
    let lhs = up_mul(&f1, &f2);
    let rhs = up_mul(&up_mul(&up(&[5, 2, 5]), &up(&[5, -2, 5])), &up(&[3, 0, 26, 0, 3]));

    CurveIdentities {
        quadratic_coefficient: quad == quad_expected,
        constant_coefficient: cst == cst_expected,
        root_identity,
        hyperelliptic_identity: lhs == rhs,
    }
}

/// Numerical residuals of the curve equations at one point.
#[derive(Clone, Debug, Serialize)]
pub struct ShimuraResiduals {
    /// `x = (s - 1)/(s + 2)` as a decimal string.
    pub x: String,
    /// `r4 = (Y4^2 - Y5^2)/Y3^2` against its expression in `x`.
    pub r4_squared: f64,
    /// `r5 = Y2/Y1` against its expression in `x`.
    pub r5_squared: f64,
    /// The plane quartic at `(x, y)` with `y = sqrt(A) + sqrt(B)` built
    /// from `r4` and `r5`.
    pub plane_curve: f64,
    /// The hyperelliptic model at the corresponding `(Z, Y)`.
    pub hyperelliptic: f64,
    /// `(r1 - 1)^2 - r2 + r3` with `r3 = Y2^2/Y3^2`.
    pub r_identity: f64,
    /// `s^2 - (1 - 1/r1)`.
    pub s_squared: f64,
}

impl ShimuraResiduals {
    /// Largest residual.
    pub fn max(&self) -> f64 {
        [self.r4_squared, self.r5_squared, self.plane_curve, self.hyperelliptic, self.r_identity, self.s_squared]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn rel_diff(a: &BigComplex, b: &BigComplex) -> f64 {
    let s = a.abs_f64() + b.abs_f64();
    if s == 0.0 {
        0.0
    } else {
        a.dist(b) / s
    }
}

fn cpoly(c: &[i64], x: &BigComplex) -> BigComplex {
    let prec = x.prec();
    c.iter().rev().fold(BigComplex::zero(prec), |acc, &k| &(&acc * x) + &BigComplex::from_i64(k, prec))
}

/// Curve residuals from an inverse period evaluation.
pub fn shimura_residuals(inv: &InversePeriod) -> Result<ShimuraResiduals, PeriodError> {
    let y = &inv.theta.y;
    let prec = y[0].prec();
    let s = inv.s.clone().ok_or(PeriodError::Pole("denominator of s"))?;
    let r1 = inv.r1.clone().ok_or(PeriodError::Pole("Y1 Y3"))?;
    let r2 = inv.r2.clone().ok_or(PeriodError::Pole("Y3"))?;
    let one = BigComplex::one(prec);
    let s2 = &s + &BigComplex::from_i64(2, prec);
    if s2.is_zero() {
        return Err(PeriodError::Pole("s + 2"));
    }
    let x = (&s - &one).div(&s2);
    let y3sq = y[2].square();
    let r4 = (&y[3].square() - &y[4].square()).div(&y3sq);
    let r5 = y[1].div(&y[0]);
    let r3 = y[1].square().div(&y3sq);

    let xm1 = &x - &one;
    let xm2 = &x - &BigComplex::from_i64(2, prec);
    let xp2 = &x + &BigComplex::from_i64(2, prec);
    let x2 = x.square();
    let a = cpoly(&[-2, 0, 1], &x);
    let r4_rhs = (&(&xm1.powi(4) * &xm2.square()) * &a).div(&(&x2.square() * &xp2.powi(4)).scale_i64(81));
    let b4 = cpoly(&[-5, 0, 4], &x);
    let b12 = cpoly(&[1, 0, 12], &x);
    let two_x_m1 = cpoly(&[-1, 2], &x);
    let two_x_p3 = cpoly(&[3, 2], &x);
    let r5_rhs = -&(&two_x_m1.square() * &b4).div(&(&two_x_p3.square() * &b12));

    // sqrt(A) and sqrt(B) as rational functions of x, r4, r5.
    let sqrt_a = (&(&x2 * &xp2.square()) * &r4).scale_i64(9).div(&(&xm1.square() * &xm2));
    let sqrt_b = (&(&r5 * &two_x_p3) * &b12).div(&two_x_m1);
    let yy = &sqrt_a + &sqrt_b;
    let yy2 = yy.square();
    let c2 = cpoly(&[-1, 0, -19, 0, 16], &x).scale_i64(6);
    let c0 = cpoly(&[-7, 0, -55, 0, 48], &x).square();
    let terms = [yy2.square(), &c2 * &yy2, c0];
    let total = &(&terms[0] + &terms[1]) + &terms[2];
    let scale: f64 = terms.iter().map(|t| t.abs_f64()).sum();
    let plane_curve = if scale == 0.0 { 0.0 } else { total.abs_f64() / scale };

    // Hyperelliptic model: X = (x - sqrt(A))/sqrt(2), Z = (X + 1)/(X - 1),
    // Y = sqrt(B) (Z^2 - 1)^2.
    let rt2 = BigComplex::from_real(&Float::with_val(prec, 2).sqrt());
    let xx = (&x - &sqrt_a).div(&rt2);
    let zz = (&xx + &one).div(&(&xx - &one));
    let yh = &sqrt_b * &(&zz.square() - &one).square();
    let rhs = -&(&(&cpoly(&[5, 2, 5], &zz) * &cpoly(&[5, -2, 5], &zz)) * &cpoly(&[3, 0, 26, 0, 3], &zz));
    let hyperelliptic = rel_diff(&yh.square(), &rhs);

    let r_id_terms = [(&r1 - &one).square(), -&r2, r3];
    let r_id = &(&r_id_terms[0] + &r_id_terms[1]) + &r_id_terms[2];
    let r_scale: f64 = r_id_terms.iter().map(|t| t.abs_f64()).sum();

    let s_sq = rel_diff(&s.square(), &(&one - &r1.recip()));
    Ok(ShimuraResiduals {
        x: x.to_decimal(30),
        r4_squared: rel_diff(&r4.square(), &r4_rhs),
        r5_squared: rel_diff(&r5.square(), &r5_rhs),
        plane_curve,
        hyperelliptic,
        r_identity: if r_scale == 0.0 { 0.0 } else { r_id.abs_f64() / r_scale },
        s_squared: s_sq,
    })
}

/// True if a polynomial is fixed by a signed permutation up to sign;
/// returns the sign (`1` or `-1`) or `None`.
pub fn semi_invariance(p: &Poly5, s: &SignedPerm) -> Option<i8> {
    let t = p.substitute(s);
    if &t == p {
        Some(1)
    } else if t == p.neg() {
        Some(-1)
    } else {
        None
    }
}

/// True if the rational function `num/den` is fixed by `s`
/// (`s(num) den = num s(den)`).
pub fn fraction_invariant(num: &Poly5, den: &Poly5, s: &SignedPerm) -> bool {
    num.substitute(s).mul(den) == num.mul(&den.substitute(s))
}

/// `r1 = Y4 Y5 / (Y1 Y3)` and `r2 = Y1^2 / Y3^2` as `(num, den)` pairs.
pub fn r_fractions() -> [(Poly5, Poly5); 2] {
    [
        (Poly5::new(&[([0, 0, 0, 1, 1], 1)]), Poly5::new(&[([1, 0, 1, 0, 0], 1)])),
        (Poly5::new(&[([2, 0, 0, 0, 0], 1)]), Poly5::new(&[([0, 0, 2, 0, 0], 1)])),
    ]
}

/// Outcome of the monomial nullspace computation.
#[derive(Clone, Debug, Serialize)]
pub struct NullspaceReport {
    /// Number of rows (points).
    pub rows: usize,
    /// Largest `|c . row| / sum |c_i row_i|` over the rows.
    pub annihilation: f64,
    /// Numerical rank of the rows.
    pub rank: usize,
    /// Dimension of the nullspace.
    pub nullity: usize,
    /// Distance between the normalized nullspace vector and `c`, scaled so
    /// that the first entries agree (only when the nullity is 1).
    pub proportionality: Option<f64>,
}

/// Rows `M_i(Y) / max_i |M_i(Y)|` of the nine monomials.
pub fn monomial_rows(points: &[[BigComplex; 5]]) -> Result<Vec<Vec<BigComplex>>, PeriodError> {
    points
        .iter()
        .map(|y| {
            let row: Vec<BigComplex> =
                F5_MONOMIALS.iter().map(|e| Poly5::new(&[(*e, 1)]).eval(y)).collect();
            let m = row.iter().map(|v| v.abs_f64()).fold(0.0, f64::max);
            if m == 0.0 {
                return Err(PeriodError::RankGuard("a row of monomial values is zero".into()));
            }
            let k = row.iter().position(|v| v.abs_f64() == m).expect("maximum exists");
            let inv = row[k].recip();
            Ok(row.iter().map(|v| v * &inv).collect())
        })
        .collect()
}

/// Gaussian elimination with complete pivoting; returns the rank and a
/// basis of the right nullspace of `m` (entries below `tol` relative to
/// the largest pivot count as zero).
pub fn complex_nullspace(m: &[Vec<BigComplex>], tol: f64) -> (usize, Vec<Vec<BigComplex>>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let prec = m.first().and_then(|r| r.first()).map_or(crate::DEFAULT_PRECISION, |v| v.prec());
    let mut a: Vec<Vec<BigComplex>> = m.to_vec();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    let mut first_pivot = 0.0;
    while rank < rows.min(cols) {
        let mut best = (0.0, rank, rank);
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, v) in row.iter().enumerate().skip(rank) {
                let x = v.abs_f64();
                if x > best.0 {
                    best = (x, i, j);
                }
            }
        }
        if rank == 0 {
            first_pivot = best.0;
        }
        if best.0 <= tol * first_pivot || best.0 == 0.0 {
            break;
        }
        a.swap(rank, best.1);
        for row in a.iter_mut() {
            row.swap(rank, best.2);
        }
        perm.swap(rank, best.2);
        let inv = a[rank][rank].recip();
        let pivot_row: Vec<BigComplex> = a[rank].iter().map(|v| v * &inv).collect();
        a[rank] = pivot_row.clone();
        for i in 0..rows {
            if i != rank && !a[i][rank].is_zero() {
                let f = a[i][rank].clone();
                for j in rank..cols {
                    a[i][j] = &a[i][j] - &(&f * &pivot_row[j]);
                }
            }
        }
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in rank..cols {
        let mut v = vec![BigComplex::zero(prec); cols];
        v[perm[free]] = BigComplex::one(prec);
        for i in 0..rank {
            v[perm[i]] = -&a[i][free];
        }
        basis.push(v);
    }
    (rank, basis)
}

/// Checks that `c = F5_COEFFS` annihilates the monomial rows of the given
/// `Y` vectors and that the numerical nullspace is spanned by `c`.
pub fn monomial_nullspace(points: &[[BigComplex; 5]], tol: f64) -> Result<NullspaceReport, PeriodError> {
    if points.len() < 9 {
        return Err(PeriodError::RankGuard(format!("need at least 9 points, got {}", points.len())));
    }
    let rows = monomial_rows(points)?;
    let prec = rows[0][0].prec();
    let c: Vec<BigComplex> = F5_COEFFS.iter().map(|&v| BigComplex::from_i64(v, prec)).collect();
    let mut annihilation: f64 = 0.0;
    for row in &rows {
        let mut acc = BigComplex::zero(prec);
        let mut scale = 0.0;
        for (ci, ri) in c.iter().zip(row) {
            let t = ci * ri;
            scale += t.abs_f64();
            acc = &acc + &t;
        }
        annihilation = annihilation.max(acc.abs_f64() / scale);
    }
    let (rank, basis) = complex_nullspace(&rows, tol);
    let proportionality = (basis.len() == 1).then(|| {
        let v = &basis[0];
        let f = c[0].div(&v[0]);
        v.iter().zip(&c).map(|(vi, ci)| (vi * &f).dist(ci) / ci.abs_f64()).fold(0.0, f64::max)
    });
    Ok(NullspaceReport { rows: rows.len(), annihilation, rank, nullity: basis.len(), proportionality })
}

/// The `Y` vectors used by the nullspace check: the eight corrected CM
/// quintuples and the Galois conjugates of cases 4 and 7, evaluated at
/// `prec` bits.
pub fn cm_nullspace_points(prec: u32) -> Result<Vec<[BigComplex; 5]>, PeriodError> {
    let mut out = Vec::new();
    let mut conj = Vec::new();
    for case in &crate::cm::CASES {
        let y = theta_combos_exact(&case.corrected_exact()?);
        out.push(y.clone().map(|r| r.eval(prec)));
        if let Some(flips) = case.conjugate_flips {
            conj.push(y.map(|r| r.galois(flips).eval(prec)));
        }
    }
    out.extend(conj);
    Ok(out)
}

/// Exact values of `f2, f4, f5` at a CM quintuple (all zero on the curve).
pub fn exact_relations(x: &[Radical; 5]) -> Result<[Radical; 3], PeriodError> {
    let y = theta_combos_exact(x);
    Ok([f2().eval_radical(&y)?, f4().eval_radical(&y)?, f5().eval_radical(&y)?])
}

/// `t1/t0` as a decimal or `"infinity"`.
pub fn t_ratio_string(inv: &InversePeriod, digits: usize) -> String {
    inv.t_ratio().map_or_else(|| "infinity".to_string(), |r| r.to_decimal(digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(prec: u32) -> [BigComplex; 5] {
        std::array::from_fn(|_| BigComplex::one(prec))
    }

    #[test]
    fn f2_at_ones_is_one() {
        assert_eq!(f2().eval(&ones(64)).re.to_f64(), 1.0);
    }

    #[test]
    fn combos_are_linear() {
        let x: [BigComplex; 5] = std::array::from_fn(|k| BigComplex::from_i64(k as i64 + 1, 64));
        let y = theta_combos(&x);
        let y3 = theta_combos(&x.clone().map(|v| v.scale_i64(3)));
        for k in 0..5 {
            assert!(y3[k].dist(&y[k].scale_i64(3)) < 1e-15);
        }
        // Y3 = 2*1 - 2 - 3 + 2*4 = 5.
        assert_eq!(y[2].re.to_f64(), 5.0);
    }

    #[test]
    fn relations_are_semi_invariant() {
        for s in &SIGMAS {
            assert_eq!(semi_invariance(&f2(), s), Some(1));
            assert_eq!(semi_invariance(&f4(), s), Some(1));
            assert!(semi_invariance(&f5(), s).is_some());
            for (n, d) in r_fractions() {
                assert!(fraction_invariant(&n, &d, s));
            }
        }
    }

    #[test]
    fn curve_identities_hold() {
        let c = curve_identities();
        assert!(c.quadratic_coefficient && c.constant_coefficient && c.root_identity && c.hyperelliptic_identity);
    }

    #[test]
    fn r4_formula_vanishes_at_one() {
        let x = up(&[-1, 1]);
        let num = up_mul(&up_pow(&x, 4), &up_mul(&up_pow(&up(&[-2, 1]), 2), &poly_a()));
        let at_one: BigRational = num.iter().sum();
        assert!(at_one.is_zero());
    }

    #[test]
    fn rational_recognition() {
        let x = Float::with_val(200, -7) / Float::with_val(200, 30);
        assert_eq!(recognize_rational(&x, 1e-40), Some(q(-7, 30)));
        let t0 = BigComplex::from_i64(20, 200);
        let t1 = BigComplex::from_i64(-13, 200);
        assert_eq!(recognize_projective(&t0, &t1, 1e-30), Some(FiberParam::new(z(20), z(-13))));
        assert_eq!(recognize_projective(&BigComplex::zero(200), &t1, 1e-30), Some(FiberParam::new(z(0), z(1))));
    }

    #[test]
    fn nullspace_rejects_zero_rows_and_short_input() {
        let zero: [BigComplex; 5] = std::array::from_fn(|_| BigComplex::zero(64));
        assert!(matches!(monomial_nullspace(&vec![zero.clone(); 9], 1e-20), Err(PeriodError::RankGuard(_))));
        assert!(matches!(monomial_nullspace(&vec![ones(64); 3], 1e-20), Err(PeriodError::RankGuard(_))));
    }

    #[test]
    fn cm_quintuples_satisfy_relations_exactly() {
        for case in &crate::cm::CASES {
            let r = exact_relations(&case.corrected_exact().unwrap()).unwrap();
            for v in &r {
                assert!(v.is_zero(), "case {}: {v}", case.index);
            }
        }
    }
}
