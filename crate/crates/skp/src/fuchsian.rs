//! The period domain `D(O, I) = {x pure, x^2 = -1, Q(x, I) < 0}`, the five
//! elliptic points with their lifts, the conjugation action, norm classes
//! and the eigenlattices of the elliptic elements inside `T`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::bigc::{float_from_rational, float_string};
use crate::exact::{exact_sqrt, int_kernel, q, reduce_binary_form, squarefree_part, z, IntMatrix};
use crate::lattice_core::{determinant, GramLattice};
use crate::quatalg::{t_lattice, QuatAlgebra, QuatElem, QuatError, Standard};

/// Errors raised by domain computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DomainError {
    #[error("x^2 = {0} is not negative")]
    NotNegative(String),
    #[error(transparent)]
    Quat(#[from] QuatError),
}

/// A point of the period domain: a real pure quaternion with `x^2 = -1`
/// and `Q(x, I) < 0`, stored by its coordinates in `e1, e2, e3`.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainPoint {
    /// Coordinates in `(e1, e2, e3)`.
    pub coords: [Float; 3],
}

impl DomainPoint {
    /// Working precision.
    pub fn prec(&self) -> u32 {
        self.coords.iter().map(|c| c.prec()).max().unwrap_or(crate::DEFAULT_PRECISION)
    }

    /// Coordinates `(0, x1, x2, x3)` as a real quaternion.
    pub fn as_quat(&self) -> Vec<Float> {
        let p = self.prec();
        std::iter::once(Float::new(p)).chain(self.coords.iter().cloned()).collect()
    }

    /// Decimal rendering of the coordinates.
    pub fn to_strings(&self, digits: usize) -> [String; 3] {
        std::array::from_fn(|i| float_string(&self.coords[i], digits))
    }
}

/// The real square form `B(x, y)` on pure coordinates.
pub fn square_form_real(alg: &QuatAlgebra, x: &[Float; 3], y: &[Float; 3]) -> Float {
    let prec = x.iter().chain(y).map(|v| v.prec()).max().unwrap_or(crate::DEFAULT_PRECISION);
    let mut s = Float::new(prec);
    for i in 0..3 {
        for j in 0..3 {
            let b = alg.square_form(&alg.basis(i + 1), &alg.basis(j + 1));
            if b.is_zero() {
                continue;
            }
            s += Float::with_val(prec, &x[i] * &y[j]) * float_from_rational(&b, prec);
        }
    }
    s
}

/// Normalizes a real pure vector with `x^2 < 0` into the domain:
/// `x / sqrt(-x^2)`, negated if needed so that `Q(x, I) < 0`.
pub fn normalize_real(std: &Standard, x: &[Float; 3]) -> Result<DomainPoint, DomainError> {
    let alg = std.algebra();
    let prec = x.iter().map(|v| v.prec()).max().unwrap_or(crate::DEFAULT_PRECISION);
    let x2 = square_form_real(alg, x, x);
    if !x2.is_sign_negative() || x2.is_zero() {
        return Err(DomainError::NotNegative(float_string(&x2, 20)));
    }
    let scale = Float::with_val(prec, -x2).sqrt().recip();
    let mut coords: [Float; 3] = std::array::from_fn(|i| Float::with_val(prec, &x[i] * &scale));
    let ivec: [Float; 3] = std::array::from_fn(|i| float_from_rational(&std.i.c[i + 1], prec));
    if square_form_real(alg, &coords, &ivec).is_sign_positive() {
        for c in coords.iter_mut() {
            *c = Float::with_val(prec, -&*c);
        }
    }
    Ok(DomainPoint { coords })
}

/// Normalizes a rational pure element into the domain at `prec` bits.
pub fn normalize_to_domain(std: &Standard, x: &QuatElem, prec: u32) -> Result<DomainPoint, DomainError> {
    if !x.is_pure() {
        return Err(QuatError::NotPureElement.into());
    }
    let x2 = std.algebra().square_form(x, x);
    if !x2.is_negative() {
        return Err(DomainError::NotNegative(crate::exact::rat_string(&x2)));
    }
    let coords: [Float; 3] = std::array::from_fn(|i| float_from_rational(&x.c[i + 1], prec));
    normalize_real(std, &coords)
}

/// `Q(x, I)` for a real domain point.
pub fn q_with_i(std: &Standard, x: &DomainPoint) -> Float {
    let prec = x.prec();
    let ivec: [Float; 3] = std::array::from_fn(|i| float_from_rational(&std.i.c[i + 1], prec));
    square_form_real(std.algebra(), &x.coords, &ivec)
}

/// `x^2` (a scalar) for a real domain point.
pub fn square_real(std: &Standard, x: &DomainPoint) -> Float {
    square_form_real(std.algebra(), &x.coords, &x.coords)
}

/// The five elliptic points and their lifts.
#[derive(Clone, Debug)]
pub struct EllipticData {
    /// Lifts `g_1..g_5` as pure integral elements (printed sign).
    pub lifts: [QuatElem; 5],
    /// Domain representatives (the normalized negatives of the lifts).
    pub points: Vec<DomainPoint>,
}

/// Integer coordinates of the lifts `g_1..g_5`.
pub const LIFTS: [[i64; 3]; 5] = [[-5, 5, -3], [0, 0, -1], [-6, 4, -3], [-1, -1, -1], [-2, 0, -1]];

/// Lift of the elliptic element `g_nu` (`nu` in `1..=5`).
pub fn lift(nu: usize) -> QuatElem {
    let [a, b, c] = LIFTS[nu - 1];
    QuatElem::pure(a, b, c)
}

/// The five elliptic points at `prec` bits.
pub fn elliptic_data(std: &Standard, prec: u32) -> Result<EllipticData, DomainError> {
    let lifts: [QuatElem; 5] = std::array::from_fn(|k| lift(k + 1));
    let points = lifts.iter().map(|g| normalize_to_domain(std, g, prec)).collect::<Result<_, _>>()?;
    Ok(EllipticData { lifts, points })
}

/// Exact conjugation `g x g^{-1}`.
pub fn conj_action(alg: &QuatAlgebra, g: &QuatElem, x: &QuatElem) -> Result<QuatElem, QuatError> {
    alg.conjugate_by(g, x)
}

/// Conjugation `g x g^{-1}` of a real domain point by a rational element.
pub fn conj_action_real(std: &Standard, g: &QuatElem, x: &DomainPoint) -> Result<DomainPoint, QuatError> {
    let alg = std.algebra();
    let prec = x.prec();
    let gi = alg.inverse(g)?;
    let gf: Vec<Float> = g.c.iter().map(|c| float_from_rational(c, prec)).collect();
    let gif: Vec<Float> = gi.c.iter().map(|c| float_from_rational(c, prec)).collect();
    let y = alg.mul_real(&alg.mul_real(&gf, &x.as_quat()), &gif);
    Ok(DomainPoint { coords: [y[1].clone(), y[2].clone(), y[3].clone()] })
}

/// Signed squarefree class of `Nr(g)` in `Q^x / Q^x2`.
pub fn norm_class(alg: &QuatAlgebra, g: &QuatElem) -> Result<BigInt, QuatError> {
    let n = alg.nr(g);
    if n.is_zero() {
        return Err(QuatError::ZeroNorm);
    }
    Ok(squarefree_part(&(n.numer() * n.denom())))
}

/// Outcome of the group relation checks.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    /// `g_nu^2` is a nonzero scalar for each `nu`.
    pub squares_scalar: [bool; 5],
    /// `g_nu` itself is not scalar for each `nu`.
    pub lifts_non_scalar: [bool; 5],
    /// Coordinates of `g1 g3 g5 g4 g2` as rational strings.
    pub product: [String; 4],
    /// Whether that product is a nonzero scalar.
    pub product_scalar: bool,
    /// Each lift normalizes the extended order.
    pub normalizing: [bool; 5],
}

/// Verifies `g_nu^2 in Q^x` and `g1 g3 g5 g4 g2 in Q^x`.
pub fn relation_check(std: &Standard) -> Result<RelationReport, QuatError> {
    let alg = std.algebra();
    let lifts: [QuatElem; 5] = std::array::from_fn(|k| lift(k + 1));
    let squares_scalar = std::array::from_fn(|k| {
        let s = alg.mul(&lifts[k], &lifts[k]);
        s.is_scalar() && !s.c[0].is_zero()
    });
    let lifts_non_scalar = std::array::from_fn(|k| !lifts[k].is_scalar());
    let p = alg.product(&[lifts[0].clone(), lifts[2].clone(), lifts[4].clone(), lifts[3].clone(), lifts[1].clone()]);
    let normalizing = std::array::from_fn(|k| crate::quatalg::normalizes(&lifts[k], &std.ext_order).unwrap_or(false));
    Ok(RelationReport {
        squares_scalar,
        lifts_non_scalar,
        product_scalar: p.is_scalar() && !p.c[0].is_zero(),
        product: p.to_strings(),
        normalizing,
    })
}

/// Matrix of conjugation by `g` on `Z e1 + Z e2 + Z e3` (columns are images),
/// or `None` if it is not integral.
pub fn conj_matrix(alg: &QuatAlgebra, g: &QuatElem) -> Result<Option<IntMatrix>, QuatError> {
    let mut m = vec![vec![BigInt::zero(); 3]; 3];
    for j in 0..3 {
        let y = alg.conjugate_by(g, &alg.basis(j + 1))?;
        for i in 0..3 {
            let c = &y.c[i + 1];
            if !c.is_integer() {
                return Ok(None);
            }
            m[i][j] = c.to_integer();
        }
    }
    Ok(Some(m))
}

/// Invariants of the eigenlattices of an elliptic element acting on `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenInvariants {
    /// Gram of the +1 eigenlattice (rank 1).
    pub plus: Vec<Vec<i64>>,
    /// Reduced Gram of the -1 eigenlattice (rank 2, positive definite).
    pub minus: Vec<Vec<i64>>,
    /// `[T : L+ (+) L-]`.
    pub index: i64,
    /// Basis of the +1 eigenlattice.
    pub plus_basis: Vec<Vec<i64>>,
    /// Basis of the -1 eigenlattice.
    pub minus_basis: Vec<Vec<i64>>,
}

/// Eigenlattices of conjugation by `g` on the pure lattice with form `T`
/// (`x^2 / 12` in the coordinates `e1, e2, e3`).
pub fn eigen_invariants(alg: &QuatAlgebra, g: &QuatElem) -> Result<Option<EigenInvariants>, QuatError> {
    let Some(m) = conj_matrix(alg, g)? else { return Ok(None) };
    let t = t_lattice();
    let shifted = |s: i64| -> IntMatrix {
        (0..3).map(|i| (0..3).map(|j| &m[i][j] - if i == j { z(s) } else { z(0) }).collect()).collect()
    };
    let plus_basis = int_kernel(&shifted(1), 3);
    let minus_basis = int_kernel(&shifted(-1), 3);
    if plus_basis.len() != 1 || minus_basis.len() != 2 {
        return Ok(None);
    }
    let lp = t.restrict(&plus_basis);
    let lm = t.restrict(&minus_basis);
    let prod = determinant(&lp) * determinant(&lm);
    let ratio = &prod / determinant(&t);
    let index = exact_sqrt(&ratio).expect("index squared divides");
    let to_i64 = |m: &IntMatrix| -> Vec<Vec<i64>> {
        m.iter().map(|r| r.iter().map(|x| i64::try_from(x.clone()).expect("small")).collect()).collect()
    };
    Ok(Some(EigenInvariants {
        plus: to_i64(lp.gram()),
        minus: to_i64(&reduce_binary_form(lm.gram())),
        index: i64::try_from(index).expect("small"),
        plus_basis: to_i64(&plus_basis),
        minus_basis: to_i64(&minus_basis),
    }))
}

/// The +1 and -1 eigenlattices as lattices (in this order).
pub fn eigenlattices(alg: &QuatAlgebra, g: &QuatElem) -> Result<Option<(GramLattice, GramLattice)>, QuatError> {
    let Some(inv) = eigen_invariants(alg, g)? else { return Ok(None) };
    let t = t_lattice();
    let b = |rows: &Vec<Vec<i64>>| -> IntMatrix { rows.iter().map(|r| r.iter().map(|&x| z(x)).collect()).collect() };
    Ok(Some((t.restrict(&b(&inv.plus_basis)), t.restrict(&b(&inv.minus_basis)))))
}

/// A random rational pure element with negative square, coordinates in
/// `[-bound, bound]`.
pub fn random_negative_pure<R: Rng>(std: &Standard, rng: &mut R, bound: i64) -> QuatElem {
    loop {
        let x = QuatElem::pure(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if std.algebra().square_form(&x, &x) < q(0, 1) {
            return x;
        }
    }
}

/// A random domain point with a small rational direction.
pub fn random_domain_point<R: Rng>(std: &Standard, rng: &mut R, prec: u32) -> DomainPoint {
    let x = random_negative_pure(std, rng, 6);
    normalize_to_domain(std, &x, prec).expect("negative square")
}

/// A random domain point in general position: a small rational direction
/// perturbed by uniform noise in `[-1/4, 1/4]` on each coordinate.
pub fn random_generic_point<R: Rng>(std: &Standard, rng: &mut R, prec: u32) -> DomainPoint {
    loop {
        let x = random_negative_pure(std, rng, 6);
        let c: [Float; 3] = std::array::from_fn(|i| {
            float_from_rational(&x.c[i + 1], prec) + Float::with_val(prec, rng.gen_range(-0.25..0.25))
        });
        if let Ok(p) = normalize_real(std, &c) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_classes_of_lifts() {
        let s = Standard::new();
        let want = [10, 15, 15, 30, 3];
        for nu in 1..=5 {
            assert_eq!(norm_class(s.algebra(), &lift(nu)).unwrap(), z(want[nu - 1]));
        }
        let g24 = s.algebra().mul(&lift(2), &lift(4));
        assert_eq!(norm_class(s.algebra(), &g24).unwrap(), z(2));
        assert_eq!(norm_class(s.algebra(), &QuatElem::one()).unwrap(), z(1));
    }

    #[test]
    fn relations_hold() {
        let s = Standard::new();
        let r = relation_check(&s).unwrap();
        assert!(r.squares_scalar.iter().all(|&b| b));
        assert!(r.lifts_non_scalar.iter().all(|&b| b));
        assert!(r.product_scalar, "{:?}", r.product);
        assert!(r.normalizing.iter().all(|&b| b));
    }

    #[test]
    fn domain_points_are_normalized() {
        let s = Standard::new();
        let e = elliptic_data(&s, 256).unwrap();
        for p in &e.points {
            let x2 = square_real(&s, p);
            assert!(Float::with_val(256, x2 + 1u32).abs() < 1e-70);
            assert!(q_with_i(&s, p).is_sign_negative());
        }
        let again = normalize_real(&s, &e.points[0].coords).unwrap();
        assert!(Float::with_val(256, &again.coords[0] - &e.points[0].coords[0]).abs() < 1e-70);
        assert!(normalize_to_domain(&s, &QuatElem::pure(1, 0, 0), 128).is_err());
    }

    #[test]
    fn eigenlattice_table() {
        let s = Standard::new();
        let inv = eigen_invariants(s.algebra(), &lift(2)).unwrap().unwrap();
        assert_eq!(inv.plus, vec![vec![-20]]);
        assert_eq!(inv.minus, vec![vec![4, 1], vec![1, 4]]);
        assert_eq!(inv.index, 1);
    }

    #[test]
    fn lift_fixes_its_point() {
        let s = Standard::new();
        let e = elliptic_data(&s, 200).unwrap();
        let y = conj_action_real(&s, &lift(4), &e.points[3]).unwrap();
        for i in 0..3 {
            assert!(Float::with_val(200, &y.coords[i] - &e.points[3].coords[i]).abs() < 1e-55);
        }
    }
}
