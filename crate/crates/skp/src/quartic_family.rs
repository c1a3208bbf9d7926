//! Singular fibers of the quartic pencil `s1 = t0*s4 + t1*s2^2 = 0` in
//! `P^4`, where `s_k = x1^k + ... + x5^k`.
//!
//! A point of the fiber over `(t0 : t1)` is singular iff the gradient of
//! `F = t0*s4 + t1*s2^2` is proportional to `(1, ..., 1)`, i.e. every
//! coordinate is a root of the same cubic `t0 x^3 + t1 s2 x - mu`. The
//! cubic has no quadratic term, so the coordinates take at most three
//! values and three distinct values sum to zero. [`enumerate_singular_params`]
//! solves each multiplicity pattern exactly.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{q, rat_rank, rat_string, RatMatrix};
use crate::radical::{Radical, RadicalError};

/// Errors from the singularity checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("point is not on the fiber")]
    NotOnFiber,
    #[error("point is not a singular point of the fiber")]
    NotSingular,
    #[error("the parameter (0 : 0) is not a projective point")]
    ZeroParam,
    #[error(transparent)]
    Radical(#[from] RadicalError),
}

/// A point `(t0 : t1)` of the parameter line with coprime integer entries,
/// `t0 >= 0`, and `t1 > 0` when `t0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberParam {
    pub t0: BigInt,
    pub t1: BigInt,
}

impl FiberParam {
    /// Normalizes `(t0 : t1)`. Panics on `(0 : 0)`; see [`FiberParam::try_new`].
    pub fn new(t0: BigInt, t1: BigInt) -> Self {
        Self::try_new(t0, t1).expect("nonzero parameter")
    }

    /// Normalizes `(t0 : t1)`.
    pub fn try_new(t0: BigInt, t1: BigInt) -> Result<Self, FamilyError> {
        if t0.is_zero() && t1.is_zero() {
            return Err(FamilyError::ZeroParam);
        }
        let g = t0.gcd(&t1);
        let (mut a, mut b) = (t0 / &g, t1 / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(FiberParam { t0: a, t1: b })
    }

    /// From a pair of rationals.
    pub fn from_rationals(t0: &BigRational, t1: &BigRational) -> Result<Self, FamilyError> {
        let l = t0.denom().lcm(t1.denom());
        let a = t0 * BigRational::from_integer(l.clone());
        let b = t1 * BigRational::from_integer(l);
        Self::try_new(a.to_integer(), b.to_integer())
    }

    /// `t1/t0`, or `None` for `(0 : 1)`.
    pub fn ratio(&self) -> Option<BigRational> {
        (!self.t0.is_zero()).then(|| BigRational::new(self.t1.clone(), self.t0.clone()))
    }

    fn t0q(&self) -> BigRational {
        BigRational::from_integer(self.t0.clone())
    }

    fn t1q(&self) -> BigRational {
        BigRational::from_integer(self.t1.clone())
    }
}

impl std::fmt::Display for FiberParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}:{})", self.t0, self.t1)
    }
}

/// A projective point of `P^4` with rational coordinates.
pub type Point = [BigRational; 5];

/// Point from integers.
pub fn point(c: [i64; 5]) -> Point {
    c.map(|v| q(v, 1))
}

fn power_sum(p: &Point, k: u32) -> BigRational {
    p.iter().map(|x| num_traits::pow(x.clone(), k as usize)).sum()
}

/// `t0*s4 + t1*s2^2` at `p`.
pub fn quartic_value(t: &FiberParam, p: &Point) -> BigRational {
    let s2 = power_sum(p, 2);
    t.t0q() * power_sum(p, 4) + t.t1q() * &s2 * &s2
}

/// Gradient of `t0*s4 + t1*s2^2`: `4 t0 x_i^3 + 4 t1 s2 x_i`.
pub fn quartic_gradient(t: &FiberParam, p: &Point) -> Vec<BigRational> {
    let s2 = power_sum(p, 2);
    let four = q(4, 1);
    p.iter().map(|x| &four * (t.t0q() * x * x * x + t.t1q() * &s2 * x)).collect()
}

/// Hessian of `t0*s4 + t1*s2^2`:
/// `12 t0 x_i^2 delta_ij + 4 t1 (2 x_i x_j + s2 delta_ij)`.
pub fn quartic_hessian(t: &FiberParam, p: &Point) -> RatMatrix {
    let s2 = power_sum(p, 2);
    (0..5)
        .map(|i| {
            (0..5)
                .map(|j| {
                    let mut h = q(8, 1) * t.t1q() * &p[i] * &p[j];
                    if i == j {
                        h += q(12, 1) * t.t0q() * &p[i] * &p[i] + q(4, 1) * t.t1q() * &s2;
                    }
                    h
                })
                .collect()
        })
        .collect()
}

/// Membership and Jacobian rank at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradientRank {
    /// `s1 = 0` and `t0*s4 + t1*s2^2 = 0`.
    pub on_fiber: bool,
    /// Rank of the `2 x 5` Jacobian of `(s1, t0*s4 + t1*s2^2)`.
    pub rank: usize,
}

impl GradientRank {
    /// On the fiber with rank below 2.
    pub fn singular(&self) -> bool {
        self.on_fiber && self.rank < 2
    }
}

/// Jacobian criterion at `p` on the fiber over `t`.
pub fn gradient_rank(t: &FiberParam, p: &Point) -> Result<GradientRank, FamilyError> {
    if p.iter().all(|x| x.is_zero()) {
        return Err(FamilyError::ZeroPoint);
    }
    let on_fiber = power_sum(p, 1).is_zero() && quartic_value(t, p).is_zero();
    let jac: RatMatrix = vec![vec![BigRational::one(); 5], quartic_gradient(t, p)];
    Ok(GradientRank { on_fiber, rank: rat_rank(&jac) })
}

/// Basis `e_i - e_5` of the hyperplane `s1 = 0`.
fn hyperplane_basis() -> RatMatrix {
    (0..5)
        .map(|i| (0..4).map(|j| if i == j { q(1, 1) } else if i == 4 { q(-1, 1) } else { q(0, 1) }).collect())
        .collect()
}

/// Rank of the Hessian of the quartic restricted to `s1 = 0` (a `4 x 4`
/// matrix; a singular point lies in its kernel by Euler's relation).
pub fn restricted_hessian_rank(t: &FiberParam, p: &Point) -> usize {
    let h = quartic_hessian(t, p);
    let b = hyperplane_basis();
    let bt = crate::exact::transpose(&b, 4);
    let m = crate::exact::rat_mul(&crate::exact::rat_mul(&bt, &h), &b);
    rat_rank(&m)
}

/// True iff the singular point `p` is an ordinary double point: the
/// projective Hessian of the restricted quartic has corank exactly 1.
pub fn a1_check(t: &FiberParam, p: &Point) -> Result<bool, FamilyError> {
    let g = gradient_rank(t, p)?;
    if !g.on_fiber {
        return Err(FamilyError::NotOnFiber);
    }
    if !g.singular() {
        return Err(FamilyError::NotSingular);
    }
    Ok(restricted_hessian_rank(t, p) == 3)
}

/// Projective normal form: scaled so the first nonzero entry is 1.
pub fn projective_normal(p: &Point) -> Option<Point> {
    let k = p.iter().position(|x| !x.is_zero())?;
    let inv = p[k].recip();
    Some(std::array::from_fn(|i| &p[i] * &inv))
}

fn permutations5() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut a = [0, 1, 2, 3, 4];
    fn heap(k: usize, a: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if k == 1 {
            out.push(*a);
            return;
        }
        heap(k - 1, a, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            heap(k - 1, a, out);
        }
    }
    heap(5, &mut a, &mut out);
    out
}

/// All coordinate permutations of `p`.
pub fn permuted(p: &Point) -> Vec<Point> {
    permutations5().iter().map(|s| std::array::from_fn(|i| p[s[i]].clone())).collect()
}

/// Size of the `S5`-orbit of the projective point `p`.
pub fn orbit_size(p: &Point) -> Result<usize, FamilyError> {
    let mut seen = HashSet::new();
    for r in permuted(p) {
        seen.insert(projective_normal(&r).ok_or(FamilyError::ZeroPoint)?);
    }
    Ok(seen.len())
}

/// A singular fiber with a representative singular point.
#[derive(Clone, Debug, Serialize)]
pub struct SingularFiber {
    /// The parameter `(t0 : t1)` as a string.
    pub t: String,
    #[serde(skip)]
    pub param: FiberParam,
    /// Multiplicities of the distinct coordinate values, or `"double quadric"`.
    pub pattern: String,
    /// Representative singular point (empty for the double quadric).
    pub point: Vec<String>,
    /// Number of singular points (`None`: a whole curve is singular).
    pub singular_points: Option<usize>,
    /// Whether every isolated singular point is of type `A1`.
    pub a1: bool,
}

fn solve_pattern(mult: &[usize]) -> Option<(Point, Vec<BigRational>)> {
    // Distinct values v_k with multiplicities mult[k]; three values satisfy
    // v_3 = -(v_1 + v_2).
    let (values, ok) = match mult {
        [a, b] => {
            let (a, b) = (*a as i64, *b as i64);
            (vec![q(b, 1), q(-a, 1)], true)
        }
        [a, b, c] => {
            let (ca, cb) = (*a as i64 - *c as i64, *b as i64 - *c as i64);
            let (al, be) = if cb != 0 { (q(cb, 1), q(-ca, 1)) } else { (q(0, 1), q(1, 1)) };
            let ga = -(&al + &be);
            (vec![al, be, ga], true)
        }
        _ => (Vec::new(), false),
    };
    if !ok {
        return None;
    }
    let mut coords = Vec::with_capacity(5);
    for (v, &m) in values.iter().zip(mult) {
        coords.extend(std::iter::repeat_n(v.clone(), m));
    }
    let p: Point = coords.try_into().ok()?;
    Some((p, values))
}

/// The parameter of the fiber on which all coordinates of `p` are roots of
/// `t0 x^3 + t1 s2 x - mu`, determined by `t1/t0 = e2/s2` from the second
/// elementary symmetric function of the root values.
fn param_for(values: &[BigRational], p: &Point) -> Option<FiberParam> {
    let s2 = power_sum(p, 2);
    let e2 = if values.len() == 3 {
        &values[0] * &values[1] + &values[1] * &values[2] + &values[2] * &values[0]
    } else {
        // Roots a, b and the third root -(a + b).
        let (a, b) = (&values[0], &values[1]);
        -(a * a + a * b + b * b)
    };
    if s2.is_zero() {
        return None;
    }
    FiberParam::from_rationals(&s2, &e2).ok()
}

/// Certifies that the fiber over `(0 : 1)` is the double quadric `s2^2 = 0`:
/// the quartic is the square of `s2` identically, and at points of
/// `s1 = s2 = 0` over `Q(i)` and `Q(sqrt(-3))` the gradient vanishes.
pub fn double_quadric_certificate() -> Result<bool, FamilyError> {
    let t = FiberParam::new(BigInt::zero(), BigInt::one());
    let square = t.t0.is_zero();
    let i = Radical::i();
    let w = Radical::parse("(-1+sqrt(-3))/2")?;
    let w2 = w.mul(&w)?;
    let samples = [
        [Radical::int(1), i.clone(), Radical::int(-1), i.neg(), Radical::int(0)],
        [Radical::int(1), w.clone(), w2, Radical::int(0), Radical::int(0)],
    ];
    let mut ok = square;
    for base in &samples {
        for s in permutations5().iter().step_by(7) {
            let x: Vec<Radical> = (0..5).map(|k| base[s[k]].clone()).collect();
            let mut s1 = Radical::zero();
            let mut s2 = Radical::zero();
            for v in &x {
                s1 = s1.add(v);
                s2 = s2.add(&v.mul(v)?);
            }
            // Gradient of s2^2 is 4 s2 x_i.
            let mut grad_zero = true;
            for v in &x {
                grad_zero &= s2.mul(v)?.is_zero();
            }
            ok &= s1.is_zero() && s2.is_zero() && grad_zero;
        }
    }
    Ok(ok)
}

/// The singular fibers of the pencil, by exact case analysis over the
/// multiplicity patterns of the coordinate values of a singular point,
/// followed by the double quadric over `(0 : 1)`. The isolated cases are
/// sorted by `(t0, t1)`.
pub fn singular_fibers() -> Result<Vec<SingularFiber>, FamilyError> {
    let mut patterns: Vec<Vec<usize>> = Vec::new();
    for a in 1..5 {
        patterns.push(vec![a, 5 - a]);
        for b in 1..5 - a {
            patterns.push(vec![a, b, 5 - a - b]);
        }
    }
    let mut seen: BTreeSet<FiberParam> = BTreeSet::new();
    let mut out = Vec::new();
    for m in &patterns {
        let Some((p, values)) = solve_pattern(m) else { continue };
        let distinct: BTreeSet<BigRational> = values.iter().cloned().collect();
        if distinct.len() != values.len() {
            continue;
        }
        let Some(t) = param_for(&values, &p) else { continue };
        if !gradient_rank(&t, &p)?.singular() || !seen.insert(t.clone()) {
            continue;
        }
        let mut sorted = m.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let pattern = sorted.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        out.push(SingularFiber {
            t: t.to_string(),
            param: t.clone(),
            pattern: format!("({pattern})"),
            point: projective_normal(&p).expect("nonzero").iter().map(rat_string).collect(),
            singular_points: Some(orbit_size(&p)?),
            a1: a1_check(&t, &p)?,
        });
    }
    out.sort_by(|a, b| a.param.cmp(&b.param));
    if double_quadric_certificate()? {
        let t = FiberParam::new(BigInt::zero(), BigInt::one());
        out.push(SingularFiber {
            t: t.to_string(),
            param: t,
            pattern: "double quadric".into(),
            point: Vec::new(),
            singular_points: None,
            a1: false,
        });
    }
    Ok(out)
}

/// The parameters of [`singular_fibers`].
pub fn enumerate_singular_params() -> Result<Vec<FiberParam>, FamilyError> {
    Ok(singular_fibers()?.into_iter().map(|f| f.param).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::z;

    fn fp(a: i64, b: i64) -> FiberParam {
        FiberParam::new(z(a), z(b))
    }

    #[test]
    fn params_normalize() {
        assert_eq!(fp(-8, 2), fp(4, -1));
        assert_eq!(fp(0, -3), fp(0, 1));
        assert!(FiberParam::try_new(z(0), z(0)).is_err());
        assert_eq!(FiberParam::from_rationals(&q(1, 2), &q(-1, 3)).unwrap(), fp(3, -2));
    }

    #[test]
    fn table_points_are_singular() {
        let cases = [
            (fp(4, -1), [1, -1, 1, -1, 0], 15),
            (fp(2, -1), [1, -1, 0, 0, 0], 10),
            (fp(20, -13), [1, 1, 1, 1, -4], 5),
            (fp(30, -7), [2, 2, 2, -3, -3], 10),
        ];
        for (t, p, n) in cases {
            let p = point(p);
            let g = gradient_rank(&t, &p).unwrap();
            assert!(g.on_fiber && g.rank == 1, "{t}");
            assert!(a1_check(&t, &p).unwrap(), "{t}");
            assert_eq!(orbit_size(&p).unwrap(), n);
        }
    }

    #[test]
    fn off_fiber_and_smooth_points() {
        let g = gradient_rank(&fp(1, 0), &point([1, 2, 3, 4, 5])).unwrap();
        assert!(!g.on_fiber);
        assert_eq!(a1_check(&fp(1, 0), &point([1, 2, 3, 4, 5])), Err(FamilyError::NotOnFiber));
        // (1:-1:0:0:0) lies on every fiber with t0 s4 + t1 s2^2 = 2 t0 + 4 t1 = 0
        // only for (2:-1); on (4:-1) it is off the fiber.
        assert!(!gradient_rank(&fp(4, -1), &point([1, -1, 0, 0, 0])).unwrap().on_fiber);
        assert_eq!(gradient_rank(&fp(1, 0), &point([0; 5])), Err(FamilyError::ZeroPoint));
    }

    #[test]
    fn smooth_point_is_rejected_by_a1_check() {
        // On s1 = 0 and s4 = s2^2 ... pick t so that a non-singular point
        // lies on the fiber: t0 s4 + t1 s2^2 = 0 at (1, 2, -3, 0, 0).
        let p = point([1, 2, -3, 0, 0]);
        let (s2, s4) = (power_sum(&p, 2), power_sum(&p, 4));
        let t = FiberParam::from_rationals(&(&s2 * &s2), &(-s4)).unwrap();
        assert_eq!(a1_check(&t, &p), Err(FamilyError::NotSingular));
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&point([1, 1, 1, 1, 1])).unwrap(), 1);
        assert_eq!(orbit_size(&point([2, 2, 2, -3, -3])).unwrap(), 10);
        assert_eq!(orbit_size(&point([1, 2, 3, 4, 5])).unwrap(), 120);
    }

    #[test]
    fn enumeration_matches_table() {
        let got = enumerate_singular_params().unwrap();
        assert_eq!(got, vec![fp(2, -1), fp(4, -1), fp(20, -13), fp(30, -7), fp(0, 1)]);
    }

    #[test]
    fn opposite_pair_pattern_forces_quarter() {
        // Values a, b, -(a + b) with multiplicities (2, 2, 1).
        let (p, values) = solve_pattern(&[2, 2, 1]).unwrap();
        assert!((&values[0] + &values[1]).is_zero());
        assert_eq!(param_for(&values, &p).unwrap(), fp(4, -1));
        let (p, values) = solve_pattern(&[4, 1]).unwrap();
        assert_eq!(param_for(&values, &p).unwrap(), fp(20, -13));
    }

    #[test]
    fn double_quadric_is_certified() {
        assert!(double_quadric_certificate().unwrap());
    }
}
