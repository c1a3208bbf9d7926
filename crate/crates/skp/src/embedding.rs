//! The modular embedding of the quaternionic period domain into the Siegel
//! upper half space: left multiplication matrices in the symplectic basis
//! `(a1, a2, b1, b2)`, the period matrix `phi_dom(x)`, the action of the
//! group on period matrices, and the level-2 reductions of the group.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::bigc::{float_from_rational, BigComplex};
use crate::cm::{CmCase, P_REDUCE};
use crate::exact::{exact_sqrt, q, rat_inverse, rat_mul, rat_string, to_int, transpose, IntMatrix, RatMatrix};
use crate::fuchsian::{lift, normalize_to_domain, DomainError, DomainPoint};
use crate::quatalg::{standard_j, QuatAlgebra, QuatElem, QuatError, Standard};
use crate::radical::{Radical, RadicalError};
use crate::siegel_theta::{mobius, CMat2, SiegelPoint, ThetaError};

/// Errors raised by the embedding.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbeddingError {
    #[error("positivity failure: Psi(b, x b) = {0} is not positive")]
    Positivity(String),
    #[error("period matrix is not symmetric (defect {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not integral")]
    NotIntegral,
    #[error("radical scale {0} is not a perfect square")]
    NotSquare(String),
    #[error("element has zero reduced norm")]
    ZeroNorm,
    #[error("element has negative reduced norm and swaps the two components")]
    NegativeNorm,
    #[error("CM index {0} is not in 1..=8")]
    UnknownCase(usize),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Radical(#[from] RadicalError),
}

/// Coordinates of quaternions in the symplectic basis `(a1, a2, b1, b2)`.
#[derive(Clone, Debug)]
pub struct SymplecticCoords {
    /// The basis.
    pub basis: [QuatElem; 4],
    /// Inverse of the matrix whose columns are the basis vectors in
    /// `(1, e1, e2, e3)` coordinates.
    pub inverse: RatMatrix,
}

impl SymplecticCoords {
    /// Coordinates for the standard symplectic basis.
    pub fn new(std: &Standard) -> Self {
        let basis = std.symplectic.clone();
        let cols: RatMatrix = basis.iter().map(|b| b.c.to_vec()).collect();
        let inverse = rat_inverse(&transpose(&cols, 4)).expect("symplectic basis is a basis");
        SymplecticCoords { basis, inverse }
    }

    /// Exact coordinates of `x`.
    pub fn coords(&self, x: &QuatElem) -> [BigRational; 4] {
        std::array::from_fn(|i| (0..4).map(|k| &self.inverse[i][k] * &x.c[k]).sum())
    }

    /// Real coordinates of a real quaternion `x` (4 entries).
    pub fn coords_real(&self, x: &[Float]) -> [Float; 4] {
        let prec = x.iter().map(|v| v.prec()).max().unwrap_or(crate::DEFAULT_PRECISION);
        std::array::from_fn(|i| {
            let mut s = Float::new(prec);
            for (k, xk) in x.iter().enumerate() {
                if !self.inverse[i][k].is_zero() {
                    s += Float::with_val(prec, xk * float_from_rational(&self.inverse[i][k], prec));
                }
            }
            s
        })
    }
}

fn elem_real(x: &QuatElem, prec: u32) -> Vec<Float> {
    x.c.iter().map(|c| float_from_rational(c, prec)).collect()
}

/// Matrix of `v -> g v` in the symplectic basis (columns are images).
pub fn left_mul_matrix(std: &Standard, g: &QuatElem) -> RatMatrix {
    two_sided_matrix(std, g, &QuatElem::one())
}

/// Matrix of `v -> l v r` in the symplectic basis (columns are images).
pub fn two_sided_matrix(std: &Standard, l: &QuatElem, r: &QuatElem) -> RatMatrix {
    let sc = SymplecticCoords::new(std);
    let alg = std.algebra();
    let cols: Vec<Vec<BigRational>> =
        sc.basis.iter().map(|b| sc.coords(&alg.mul(&alg.mul(l, b), r)).to_vec()).collect();
    transpose(&cols, 4)
}

/// Matrix of `v -> g v` for a real quaternion `g` (4 entries).
pub fn left_mul_matrix_real(std: &Standard, g: &[Float]) -> Vec<Vec<Float>> {
    let sc = SymplecticCoords::new(std);
    let alg = std.algebra();
    let prec = g.iter().map(|v| v.prec()).max().unwrap_or(crate::DEFAULT_PRECISION);
    let cols: Vec<[Float; 4]> =
        sc.basis.iter().map(|b| sc.coords_real(&alg.mul_real(g, &elem_real(b, prec)))).collect();
    (0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect()
}

/// True if `M^t J M = J` for the standard symplectic `J`.
pub fn is_symplectic(m: &RatMatrix) -> bool {
    let j = standard_j();
    rat_mul(&rat_mul(&transpose(m, 4), &j), m) == j
}

/// Largest entry of `|M^t J M - J|` for a real matrix.
pub fn symplectic_defect(m: &[Vec<Float>]) -> f64 {
    let j = standard_j();
    let prec = m[0][0].prec();
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let mut s = Float::new(prec);
            for k in 0..4 {
                for l in 0..4 {
                    if !j[k][l].is_zero() {
                        s += Float::with_val(prec, &m[k][a] * &m[l][b]) * float_from_rational(&j[k][l], prec);
                    }
                }
            }
            s -= float_from_rational(&j[a][b], prec);
            worst = worst.max(s.abs().to_f64());
        }
    }
    worst
}

/// `E M E` with `E = diag(-1, -1, 1, 1)`: negates the off-diagonal blocks.
/// This is the matrix through which left multiplication acts on period
/// matrices by `(A tau + B)(C tau + D)^{-1}`.
pub fn block_flip<T: Clone + std::ops::Neg<Output = T>>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    (0..4)
        .map(|i| (0..4).map(|j| if (i < 2) != (j < 2) { -m[i][j].clone() } else { m[i][j].clone() }).collect())
        .collect()
}

fn tr_real(x: &[Float]) -> Float {
    Float::with_val(x[0].prec(), &x[0] * 2u32)
}

fn conj_real(x: &[Float]) -> Vec<Float> {
    x.iter().enumerate().map(|(k, v)| if k == 0 { v.clone() } else { Float::with_val(v.prec(), -v) }).collect()
}

/// The period matrix of a domain point: with `M` the matrix of `v -> x v`
/// and `A`, `C` its upper-left and lower-left blocks,
/// `tau = (i - A) C^{-1}`. Checks `Psi_I(b, x b) > 0` on the basis and the
/// symmetry of `tau`.
pub fn phi_dom(std: &Standard, x: &DomainPoint) -> Result<SiegelPoint, EmbeddingError> {
    let prec = x.prec();
    let alg = std.algebra();
    let xq = x.as_quat();
    let ir = elem_real(&std.i, prec);
    for b in &std.symplectic {
        let br = elem_real(b, prec);
        let xb = alg.mul_real(&xq, &br);
        let v = tr_real(&alg.mul_real(&alg.mul_real(&br, &ir), &conj_real(&xb)));
        if !v.is_sign_positive() || v.is_zero() {
            return Err(EmbeddingError::Positivity(crate::bigc::float_string(&v, 20)));
        }
    }
    let m = left_mul_matrix_real(std, &xq);
    let c = |i: usize, j: usize| BigComplex::from_real(&m[i][j]);
    let a = CMat2 { a: [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]] };
    let cm = CMat2 { a: [[c(2, 0), c(2, 1)], [c(3, 0), c(3, 1)]] };
    let i2 = CMat2 { a: [[BigComplex::i(prec), BigComplex::zero(prec)], [BigComplex::zero(prec), BigComplex::i(prec)]] };
    let tau = i2.sub(&a).mul(&cm.inverse());
    let defect = tau.a[0][1].dist(&tau.a[1][0]);
    let scale = tau.a.iter().flatten().map(|z| z.abs_f64()).fold(1.0, f64::max);
    if defect > scale * crate::bigc::pow2_neg(prec as i64 - 24) {
        return Err(EmbeddingError::NotSymmetric(defect));
    }
    Ok(SiegelPoint::from_matrix(&tau)?)
}

/// The image of the CM point `p~_k` (`k` in `1..=8`).
pub fn cm_image(std: &Standard, k: usize, prec: u32) -> Result<SiegelPoint, EmbeddingError> {
    let case = crate::cm::case(k).ok_or(EmbeddingError::UnknownCase(k))?;
    let [a, b, c] = case.p_tilde;
    phi_dom(std, &normalize_to_domain(std, &QuatElem::pure(a, b, c), prec)?)
}

/// The printed period matrix of a CM case at `prec` bits.
pub fn printed_tau(case: &CmCase, prec: u32) -> Result<SiegelPoint, EmbeddingError> {
    let [a, b, c] = case.tau_exact()?.map(|r: Radical| r.eval(prec));
    Ok(SiegelPoint::new(a, b, c)?)
}

/// Largest entrywise distance between the computed image of a CM point
/// and its printed matrix (after `P tau P^t` when the print is reduced).
pub fn cm_golden_distance(std: &Standard, case: &CmCase, prec: u32) -> Result<f64, EmbeddingError> {
    let mut tau = cm_image(std, case.index, prec)?;
    if case.printed_reduced {
        tau = tau.transform(P_REDUCE);
    }
    Ok(tau.dist(&printed_tau(case, prec)?))
}

/// Action of an element of positive reduced norm on period matrices:
/// `phi_dom(g x g^{-1}) = act_on_tau(g, phi_dom(x))`.
pub fn act_on_tau(std: &Standard, g: &QuatElem, tau: &SiegelPoint) -> Result<SiegelPoint, EmbeddingError> {
    let alg = std.algebra();
    let n = alg.nr(g);
    if n.is_zero() {
        return Err(EmbeddingError::ZeroNorm);
    }
    if n.is_negative() {
        return Err(EmbeddingError::NegativeNorm);
    }
    let prec = tau.prec();
    let s = float_from_rational(&n, prec).sqrt().recip();
    let gr: Vec<Float> = elem_real(g, prec).into_iter().map(|c| c * &s).collect();
    let m = block_flip(&left_mul_matrix_real(std, &gr));
    let blk = |r: usize, c: usize| CMat2 {
        a: [
            [BigComplex::from_real(&m[r][c]), BigComplex::from_real(&m[r][c + 1])],
            [BigComplex::from_real(&m[r + 1][c]), BigComplex::from_real(&m[r + 1][c + 1])],
        ],
    };
    let (a, b, c, d) = (blk(0, 0), blk(0, 2), blk(2, 0), blk(2, 2));
    Ok(mobius([[&a, &b], [&c, &d]], tau)?)
}

/// A quaternion divided by the square root of a positive integer, kept
/// exact by tracking the radicand separately.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledQuat {
    /// Numerator.
    pub elem: QuatElem,
    /// Positive radicand `N`; the value is `elem / sqrt(N)`.
    pub radicand: BigInt,
}

impl ScaledQuat {
    /// `elem / sqrt(|Nr(elem)|)`, of reduced norm `+1` or `-1`.
    pub fn unit(alg: &QuatAlgebra, elem: QuatElem) -> Result<Self, EmbeddingError> {
        let n = alg.nr(&elem);
        if n.is_zero() {
            return Err(EmbeddingError::ZeroNorm);
        }
        if !n.is_integer() {
            return Err(EmbeddingError::NotIntegral);
        }
        Ok(ScaledQuat { elem, radicand: n.to_integer().abs() })
    }

    /// Product, multiplying radicands.
    pub fn mul(&self, alg: &QuatAlgebra, o: &Self) -> Self {
        ScaledQuat { elem: alg.mul(&self.elem, &o.elem), radicand: &self.radicand * &o.radicand }
    }

    /// The exact value if the radicand is a perfect square.
    pub fn exact(&self) -> Result<QuatElem, EmbeddingError> {
        let r = exact_sqrt(&self.radicand).ok_or_else(|| EmbeddingError::NotSquare(self.radicand.to_string()))?;
        Ok(self.elem.scale(&BigRational::new(1.into(), r)))
    }
}

/// `xi_nu = g_nu / sqrt(Nr(g_nu))` for the lift `g_nu`.
pub fn xi(alg: &QuatAlgebra, nu: usize) -> Result<ScaledQuat, EmbeddingError> {
    ScaledQuat::unit(alg, lift(nu))
}

/// The elements `eta_2 = (2e1 + 2e2 + e3)/sqrt(240)` and `eta_4 = xi_4`
/// with their defining identities.
#[derive(Clone, Debug, Serialize)]
pub struct EtaReport {
    /// `eta_nu I conj(eta_nu) = I` for `nu = 2, 4`.
    pub fixes_i: [bool; 2],
    /// `xi_2 eta_2` as coordinates.
    pub xi2_eta2: [String; 4],
    /// `xi_2 eta_2 = 1 + w1`.
    pub xi2_eta2_is_one_plus_w1: bool,
    /// `Nr(xi_2 eta_2)`.
    pub xi2_eta2_norm: String,
    /// `xi_4 eta_4 = -1`.
    pub xi4_eta4_is_minus_one: bool,
    /// `xi_nu eta_nu` lies in the extended order and is a unit there.
    pub units_of_order: [bool; 2],
}

/// `eta_2` and `eta_4`.
pub fn eta_pair(alg: &QuatAlgebra) -> Result<(ScaledQuat, ScaledQuat), EmbeddingError> {
    Ok((ScaledQuat::unit(alg, QuatElem::pure(2, 2, 1))?, xi(alg, 4)?))
}

/// Computes and checks the eta elements.
pub fn eta_elements(std: &Standard) -> Result<EtaReport, EmbeddingError> {
    let alg = std.algebra();
    let (e2, e4) = eta_pair(alg)?;
    let fixes = |e: &ScaledQuat| -> bool {
        let v = alg.mul(&alg.mul(&e.elem, &std.i), &e.elem.conj());
        v.scale(&BigRational::new(1.into(), e.radicand.clone())) == std.i
    };
    let p2 = xi(alg, 2)?.mul(alg, &e2).exact()?;
    let p4 = xi(alg, 4)?.mul(alg, &e4).exact()?;
    let unit = |x: &QuatElem| std.ext_order.contains(x) && alg.nr(x).abs() == q(1, 1);
    Ok(EtaReport {
        fixes_i: [fixes(&e2), fixes(&e4)],
        xi2_eta2: p2.to_strings(),
        xi2_eta2_is_one_plus_w1: p2 == QuatElem::one().add(&std.w[0]),
        xi2_eta2_norm: rat_string(&alg.nr(&p2)),
        xi4_eta4_is_minus_one: p4 == QuatElem::one().scale(&q(-1, 1)),
        units_of_order: [unit(&p2), unit(&p4)],
    })
}

/// A 4x4 matrix over the field with two elements.
pub type Mod2 = [[u8; 4]; 4];

/// The exact integral matrix of `v -> L v R`, where `L` is the product of
/// `left` and `R` the optional right factor, all divided by their
/// combined radical scale.
pub fn grp_matrix(std: &Standard, left: &[ScaledQuat], right: Option<&ScaledQuat>) -> Result<IntMatrix, EmbeddingError> {
    let alg = std.algebra();
    let mut l = ScaledQuat { elem: QuatElem::one(), radicand: 1.into() };
    for f in left {
        l = l.mul(alg, f);
    }
    let one = ScaledQuat { elem: QuatElem::one(), radicand: 1.into() };
    let r = right.unwrap_or(&one);
    let n = &l.radicand * &r.radicand;
    let s = exact_sqrt(&n).ok_or_else(|| EmbeddingError::NotSquare(n.to_string()))?;
    let m = two_sided_matrix(std, &l.elem.scale(&BigRational::new(1.into(), s)), &r.elem);
    to_int(&m).ok_or(EmbeddingError::NotIntegral)
}

/// Reduction mod 2 of [`grp_matrix`].
pub fn grp_mod2(std: &Standard, left: &[ScaledQuat], right: Option<&ScaledQuat>) -> Result<Mod2, EmbeddingError> {
    let m = grp_matrix(std, left, right)?;
    let two = BigInt::from(2);
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| if (&m[i][j] % &two).is_zero() { 0 } else { 1 })))
}

fn mod2_mul(a: &Mod2, b: &Mod2) -> Mod2 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).fold(0, |s, k| s ^ (a[i][k] & b[k][j]))))
}

/// Order of the group generated by invertible mod-2 matrices.
pub fn mod2_group_order(gens: &[Mod2]) -> usize {
    let id: Mod2 = std::array::from_fn(|i| std::array::from_fn(|j| u8::from(i == j)));
    let mut seen: HashSet<Mod2> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mod2_mul(&x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// One published level-2 matrix: the word in the lifts (`[2]` for
/// `g2`, `[1, 3, 1]` for `g1 g3 g1`), the right factor `eta_nu`, and the
/// expected reduction.
#[derive(Clone, Copy, Debug)]
pub struct Mod2Golden {
    pub label: &'static str,
    pub word: &'static [usize],
    pub eta: usize,
    pub expected: Mod2,
}

const SWAP: Mod2 = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]];
const G3M2: Mod2 = [[1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1]];
const G4M4: Mod2 = [[1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
const G131M2: Mod2 = [[0, 1, 0, 0], [1, 0, 0, 0], [1, 1, 0, 1], [1, 1, 1, 0]];

/// The published level-2 matrices.
pub const MOD2_GOLDENS: [Mod2Golden; 6] = [
    Mod2Golden { label: "g2 M2", word: &[2], eta: 2, expected: SWAP },
    Mod2Golden { label: "g1 g2 g1 M2", word: &[1, 2, 1], eta: 2, expected: SWAP },
    Mod2Golden { label: "g3 M2", word: &[3], eta: 2, expected: G3M2 },
    Mod2Golden { label: "g4 M4", word: &[4], eta: 4, expected: G4M4 },
    Mod2Golden { label: "g1 g4 g1 M4", word: &[1, 4, 1], eta: 4, expected: G4M4 },
    Mod2Golden { label: "g1 g3 g1 M2", word: &[1, 3, 1], eta: 2, expected: G131M2 },
];

/// Result of reproducing one published level-2 matrix.
#[derive(Clone, Debug, Serialize)]
pub struct Mod2Result {
    pub label: &'static str,
    pub computed: Mod2,
    pub matches: bool,
}

/// Reproduces every published level-2 matrix.
pub fn mod2_goldens(std: &Standard) -> Result<Vec<Mod2Result>, EmbeddingError> {
    let alg = std.algebra();
    let (e2, e4) = eta_pair(alg)?;
    MOD2_GOLDENS
        .iter()
        .map(|g| {
            let left: Vec<ScaledQuat> = g.word.iter().map(|&nu| xi(alg, nu)).collect::<Result<_, _>>()?;
            let right = if g.eta == 2 { &e2 } else { &e4 };
            let computed = grp_mod2(std, &left, Some(right))?;
            Ok(Mod2Result { label: g.label, computed, matches: computed == g.expected })
        })
        .collect()
}

/// The four distinct published level-2 matrices.
pub fn published_mod2_generators() -> [Mod2; 4] {
    [SWAP, G3M2, G4M4, G131M2]
}

/// The orthogonal basis `y1 = w1`, `y2 = (2e1 + 2e2 + e3)/4`,
/// `y3 = -(e1 + e2 + e3)/2 = -30 I` of the stabilizer computation.
pub fn y_basis(std: &Standard) -> [QuatElem; 3] {
    let alg = std.algebra();
    let e = |i: usize| alg.basis(i);
    [
        std.w[0].clone(),
        e(1).scale(&q(1, 2)).add(&e(2).scale(&q(1, 2))).add(&e(3).scale(&q(1, 4))),
        e(1).add(&e(2)).add(&e(3)).scale(&q(-1, 2)),
    ]
}

/// `y_i I + I y_i` for `i = 1, 2` (both vanish).
pub fn y_anticommutators(std: &Standard) -> [QuatElem; 2] {
    let alg = std.algebra();
    let y = y_basis(std);
    std::array::from_fn(|k| alg.mul(&y[k], &std.i).add(&alg.mul(&std.i, &y[k])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_identity;

    #[test]
    fn identity_maps_to_identity() {
        let s = Standard::new();
        assert_eq!(left_mul_matrix(&s, &QuatElem::one()), rat_identity(4));
        let id: Mod2 = std::array::from_fn(|i| std::array::from_fn(|j| u8::from(i == j)));
        assert_eq!(grp_mod2(&s, &[], None).unwrap(), id);
    }

    #[test]
    fn norm_one_unit_is_symplectic() {
        let s = Standard::new();
        let alg = s.algebra();
        let u = QuatElem::one().add(&s.w[0]);
        let u2 = alg.mul(&u, &u);
        assert_eq!(alg.nr(&u2), q(1, 1));
        assert!(is_symplectic(&left_mul_matrix(&s, &u2)));
    }

    #[test]
    fn domain_point_squares_to_minus_identity() {
        let s = Standard::new();
        let x = normalize_to_domain(&s, &lift(1), 200).unwrap();
        let m = left_mul_matrix_real(&s, &x.as_quat());
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Float::new(200);
                for k in 0..4 {
                    acc += Float::with_val(200, &m[i][k] * &m[k][j]);
                }
                let target = if i == j { -1.0 } else { 0.0 };
                assert!((acc.to_f64() - target).abs() < 1e-50);
            }
        }
    }

    #[test]
    fn tau4_and_tau2() {
        let s = Standard::new();
        for k in [2, 4] {
            let d = cm_golden_distance(&s, crate::cm::case(k).unwrap(), 256).unwrap();
            assert!(d < 1e-60, "case {k}: {d:e}");
        }
    }

    #[test]
    fn eta_identities() {
        let r = eta_elements(&Standard::new()).unwrap();
        assert_eq!(r.fixes_i, [true, true]);
        assert!(r.xi2_eta2_is_one_plus_w1);
        assert_eq!(r.xi2_eta2_norm, "-1");
        assert!(r.xi4_eta4_is_minus_one);
        assert_eq!(r.units_of_order, [true, true]);
    }

    #[test]
    fn y_basis_relations() {
        let s = Standard::new();
        let y = y_basis(&s);
        assert_eq!(y[2], s.i.scale(&q(-30, 1)));
        let expect_y3 = QuatElem::one()
            .scale(&q(2, 1))
            .sub(&s.w[0].scale(&q(3, 1)))
            .sub(&s.w[1].scale(&q(2, 1)))
            .sub(&s.w[2].scale(&q(4, 1)));
        assert_eq!(y[2], expect_y3);
        let ext = &s.ext_order;
        let expect_y2 = QuatElem::one()
            .scale(&q(-1, 1))
            .add(&s.w[0].scale(&q(3, 1)))
            .add(&s.w[1].scale(&q(2, 1)))
            .add(&s.w[2].scale(&q(2, 1)));
        assert_eq!(y[1], expect_y2);
        assert!(ext.contains(&y[1]));
        for a in y_anticommutators(&s) {
            assert_eq!(a, QuatElem::zero());
        }
        let alg = s.algebra();
        assert_eq!(alg.nr(&y[0]), q(-2, 1));
        assert_eq!(alg.nr(&y[1]), q(-15, 1));
        assert_eq!(alg.nr(&y[2]), q(30, 1));
    }

    #[test]
    fn published_level_two_matrices() {
        let s = Standard::new();
        for r in mod2_goldens(&s).unwrap() {
            assert!(r.matches, "{}: {:?}", r.label, r.computed);
        }
        assert_eq!(mod2_group_order(&published_mod2_generators()), 16);
    }

    #[test]
    fn non_square_scale_is_rejected() {
        let s = Standard::new();
        let x = xi(s.algebra(), 2).unwrap();
        assert!(matches!(grp_mod2(&s, &[x], None), Err(EmbeddingError::NotSquare(_))));
    }
}
