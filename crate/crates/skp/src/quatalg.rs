//! Rational quaternion algebras with a basis `(1, e1, e2, e3)` of pure
//! elements, the even Clifford algebra of a ternary lattice, orders given by
//! explicit bases, reduced discriminants, Hilbert symbols, the isometry
//! `eta` between pure quaternions and the dual lattice, and the symplectic
//! form `Psi_I(v, w) = Tr(v I conj(w))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rug::Float;
use serde::Serialize;
use thiserror::Error;

use crate::bigc::float_from_rational;
use crate::exact::{exact_sqrt, factorize, q, qi, rat_det, rat_inverse, rat_string, squarefree_part, valuation, z, RatMatrix};
use crate::lattice_core::{determinant, GramLattice};

/// Errors raised by quaternion computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuatError {
    #[error("multiplication table is not associative on basis triple ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("basis element e{0} is not pure (e_i e_j + e_j e_i must be scalar)")]
    NotPure(usize),
    #[error("lattice must have rank 3 and nonzero determinant")]
    BadLattice,
    #[error("order basis is not linearly independent")]
    Singular,
    #[error("order does not contain 1")]
    MissingOne,
    #[error("order is not closed: product of basis elements {0} and {1} is not integral")]
    NotClosed(usize, usize),
    #[error("trace pairing determinant {0} is not a perfect square")]
    NonSquareDiscriminant(String),
    #[error("element is not pure (nonzero scalar part)")]
    NotPureElement,
    #[error("element has zero reduced norm")]
    ZeroNorm,
    #[error("Hilbert symbol argument is zero")]
    ZeroArgument,
}

/// An element of a quaternion algebra in the basis `(1, e1, e2, e3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElem {
    /// Coordinates.
    pub c: [BigRational; 4],
}

impl QuatElem {
    /// From rational coordinates.
    pub fn new(c: [BigRational; 4]) -> Self {
        QuatElem { c }
    }

    /// From integer coordinates.
    pub fn from_ints(c: [i64; 4]) -> Self {
        QuatElem { c: c.map(|x| q(x, 1)) }
    }

    /// The pure element `a e1 + b e2 + c e3`.
    pub fn pure(a: i64, b: i64, c: i64) -> Self {
        Self::from_ints([0, a, b, c])
    }

    /// The scalar `x`.
    pub fn scalar(x: BigRational) -> Self {
        QuatElem { c: [x, BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    /// Zero.
    pub fn zero() -> Self {
        Self::scalar(BigRational::zero())
    }

    /// One.
    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    /// Canonical involution (negates the pure part).
    pub fn conj(&self) -> Self {
        let c = &self.c;
        QuatElem { c: [c[0].clone(), -c[1].clone(), -c[2].clone(), -c[3].clone()] }
    }

    /// Reduced trace `x + conj(x)`.
    pub fn tr(&self) -> BigRational {
        &self.c[0] * q(2, 1)
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        QuatElem { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        QuatElem { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &BigRational) -> Self {
        QuatElem { c: std::array::from_fn(|i| &self.c[i] * s) }
    }

    /// True if the pure part vanishes.
    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    /// True if the scalar part vanishes.
    pub fn is_pure(&self) -> bool {
        self.c[0].is_zero()
    }

    /// Pure coordinates `(x1, x2, x3)`.
    pub fn pure_part(&self) -> [BigRational; 3] {
        [self.c[1].clone(), self.c[2].clone(), self.c[3].clone()]
    }

    /// Coordinates as rational strings.
    pub fn to_strings(&self) -> [String; 4] {
        std::array::from_fn(|i| rat_string(&self.c[i]))
    }
}

/// A quaternion algebra over Q with structure constants on `(1, e1, e2, e3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatAlgebra {
    /// `table[i][j]` holds the coordinates of `e_i e_j` (with `e_0 = 1`).
    table: Vec<Vec<[BigRational; 4]>>,
}

impl QuatAlgebra {
    /// Builds an algebra from the products `e_i e_j` for `i, j in 1..=3`
    /// (`pure_products[i-1][j-1]`), checking associativity and purity.
    pub fn new(pure_products: [[[BigRational; 4]; 3]; 3]) -> Result<Self, QuatError> {
        let mut table = vec![vec![std::array::from_fn(|_| BigRational::zero()); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                table[i][j] = if i == 0 {
                    unit(j)
                } else if j == 0 {
                    unit(i)
                } else {
                    pure_products[i - 1][j - 1].clone()
                };
            }
        }
        let alg = QuatAlgebra { table };
        for i in 1..4 {
            for j in 1..4 {
                let s = alg.mul(&alg.basis(i), &alg.basis(j)).add(&alg.mul(&alg.basis(j), &alg.basis(i)));
                if !s.is_scalar() {
                    return Err(QuatError::NotPure(i));
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (a, b, c) = (alg.basis(i), alg.basis(j), alg.basis(k));
                    if alg.mul(&alg.mul(&a, &b), &c) != alg.mul(&a, &alg.mul(&b, &c)) {
                        return Err(QuatError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The algebra `(a, b)_Q` with `i^2 = a`, `j^2 = b`, `k = ij`.
    pub fn hilbert(a: &BigRational, b: &BigRational) -> Result<Self, QuatError> {
        let zero = BigRational::zero;
        let e = |c: [BigRational; 4]| c;
        let ab = a * b;
        Self::new([
            [
                e([a.clone(), zero(), zero(), zero()]),
                e([zero(), zero(), zero(), BigRational::one()]),
                e([zero(), zero(), a.clone(), zero()]),
            ],
            [
                e([zero(), zero(), zero(), -BigRational::one()]),
                e([b.clone(), zero(), zero(), zero()]),
                e([zero(), -b.clone(), zero(), zero()]),
            ],
            [
                e([zero(), zero(), -a.clone(), zero()]),
                e([zero(), b.clone(), zero(), zero()]),
                e([-ab, zero(), zero(), zero()]),
            ],
        ])
    }

    /// Basis element `e_i` (`e_0 = 1`).
    pub fn basis(&self, i: usize) -> QuatElem {
        QuatElem { c: unit(i) }
    }

    /// Structure constants of `e_i e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[BigRational; 4] {
        &self.table[i][j]
    }

    /// Product.
    pub fn mul(&self, a: &QuatElem, b: &QuatElem) -> QuatElem {
        let mut out: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        for i in 0..4 {
            if a.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if b.c[j].is_zero() {
                    continue;
                }
                let s = &a.c[i] * &b.c[j];
                for k in 0..4 {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &s * &self.table[i][j][k];
                    }
                }
            }
        }
        QuatElem { c: out }
    }

    /// Product of a sequence of elements (left to right).
    pub fn product(&self, xs: &[QuatElem]) -> QuatElem {
        xs.iter().fold(QuatElem::one(), |acc, x| self.mul(&acc, x))
    }

    /// Reduced norm `x conj(x)`.
    pub fn nr(&self, x: &QuatElem) -> BigRational {
        self.mul(x, &x.conj()).c[0].clone()
    }

    /// Inverse `conj(x) / Nr(x)`.
    pub fn inverse(&self, x: &QuatElem) -> Result<QuatElem, QuatError> {
        let n = self.nr(x);
        if n.is_zero() {
            return Err(QuatError::ZeroNorm);
        }
        Ok(x.conj().scale(&n.recip()))
    }

    /// Conjugation `g x g^{-1}`.
    pub fn conjugate_by(&self, g: &QuatElem, x: &QuatElem) -> Result<QuatElem, QuatError> {
        Ok(self.mul(&self.mul(g, x), &self.inverse(g)?))
    }

    /// Symmetric bilinear form `B(x, y) = (x y + y x) / 2` on pure elements
    /// (the polarization of `x -> x^2`).
    pub fn square_form(&self, x: &QuatElem, y: &QuatElem) -> BigRational {
        let s = self.mul(x, y).add(&self.mul(y, x));
        &s.c[0] / q(2, 1)
    }

    /// Gram matrix of the square form on `e1, e2, e3`.
    pub fn square_gram(&self) -> RatMatrix {
        (1..4).map(|i| (1..4).map(|j| self.square_form(&self.basis(i), &self.basis(j))).collect()).collect()
    }

    /// Product of real (high-precision) elements.
    pub fn mul_real(&self, a: &[Float], b: &[Float]) -> Vec<Float> {
        let prec = a.iter().chain(b).map(|x| x.prec()).max().unwrap_or(crate::DEFAULT_PRECISION);
        let mut out: Vec<Float> = (0..4).map(|_| Float::new(prec)).collect();
        for i in 0..4 {
            for j in 0..4 {
                let s = Float::with_val(prec, &a[i] * &b[j]);
                for k in 0..4 {
                    let t = &self.table[i][j][k];
                    if t.is_zero() {
                        continue;
                    }
                    let tf = float_from_rational(t, prec);
                    out[k] += Float::with_val(prec, &s * &tf);
                }
            }
        }
        out
    }
}

fn unit(i: usize) -> [BigRational; 4] {
    std::array::from_fn(|k| if k == i { BigRational::one() } else { BigRational::zero() })
}

/// Full Clifford algebra element: map from sorted index masks to coefficients.
type Cliff = BTreeMap<u8, BigRational>;

/// Normal-orders a word of generator indices, returning a combination of
/// increasing monomials (bit masks).
fn normalize(word: &[usize], gram: &RatMatrix) -> Cliff {
    for p in 0..word.len().saturating_sub(1) {
        let (i, j) = (word[p], word[p + 1]);
        if i == j {
            let mut w = word.to_vec();
            w.drain(p..p + 2);
            return scale_cliff(&normalize(&w, gram), &gram[i][i]);
        }
        if i > j {
            // v_i v_j = -v_j v_i + 2 <v_i, v_j>
            let mut swapped = word.to_vec();
            swapped.swap(p, p + 1);
            let mut out = scale_cliff(&normalize(&swapped, gram), &q(-1, 1));
            let mut w = word.to_vec();
            w.drain(p..p + 2);
            add_cliff(&mut out, &scale_cliff(&normalize(&w, gram), &(&gram[i][j] * q(2, 1))));
            return out;
        }
    }
    let mask = word.iter().fold(0u8, |m, &i| m | (1 << i));
    let mut out = Cliff::new();
    out.insert(mask, BigRational::one());
    out
}

fn scale_cliff(a: &Cliff, s: &BigRational) -> Cliff {
    a.iter().map(|(k, v)| (*k, v * s)).filter(|(_, v)| !v.is_zero()).collect()
}

fn add_cliff(a: &mut Cliff, b: &Cliff) {
    for (k, v) in b {
        let e = a.entry(*k).or_insert_with(BigRational::zero);
        *e += v;
    }
    a.retain(|_, v| !v.is_zero());
}

fn mask_word(mask: u8) -> Vec<usize> {
    (0..3).filter(|i| mask & (1 << i) != 0).collect()
}

fn mul_cliff(a: &Cliff, b: &Cliff, gram: &RatMatrix) -> Cliff {
    let mut out = Cliff::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let word: Vec<usize> = mask_word(*ka).into_iter().chain(mask_word(*kb)).collect();
            add_cliff(&mut out, &scale_cliff(&normalize(&word, gram), &(va * vb)));
        }
    }
    out
}

/// The even Clifford algebra of a ternary lattice `V` with basis
/// `e1 = v2 v3 - <v2,v3>`, `e2 = v3 v1 - <v3,v1>`, `e3 = v1 v2 - <v1,v2>`.
#[derive(Clone, Debug)]
pub struct CliffordEven {
    /// The lattice `V`.
    pub lattice: GramLattice,
    /// The algebra `Cl+(V) (x) Q`.
    pub algebra: QuatAlgebra,
    /// `e_i` expressed in normal-ordered Clifford monomials.
    basis_map: Vec<Cliff>,
}

/// Builds the even Clifford algebra of a rank-3 non-degenerate lattice.
pub fn clifford_even(v: &GramLattice) -> Result<CliffordEven, QuatError> {
    if v.rank() != 3 || determinant(v).is_zero() {
        return Err(QuatError::BadLattice);
    }
    let g: RatMatrix = v.gram().iter().map(|r| r.iter().map(qi).collect()).collect();
    let pairs = [(1usize, 2usize), (2, 0), (0, 1)];
    let mut basis_map = vec![Cliff::from([(0u8, BigRational::one())])];
    for (a, b) in pairs {
        let mut e = normalize(&[a, b], &g);
        add_cliff(&mut e, &Cliff::from([(0u8, -g[a][b].clone())]));
        basis_map.push(e);
    }
    // Coordinates of even monomials {0, m12, m02, m01} in the e-basis.
    let even_masks = [0u8, 0b110, 0b101, 0b011];
    let m: RatMatrix = (0..4)
        .map(|r| basis_map.iter().map(|e| e.get(&even_masks[r]).cloned().unwrap_or_else(BigRational::zero)).collect())
        .collect();
    let minv = rat_inverse(&m).ok_or(QuatError::BadLattice)?;
    let to_e = |x: &Cliff| -> [BigRational; 4] {
        std::array::from_fn(|i| {
            (0..4).fold(BigRational::zero(), |acc, r| {
                acc + &minv[i][r] * x.get(&even_masks[r]).cloned().unwrap_or_else(BigRational::zero)
            })
        })
    };
    let prods: [[[BigRational; 4]; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| to_e(&mul_cliff(&basis_map[i + 1], &basis_map[j + 1], &g))));
    let algebra = QuatAlgebra::new(prods)?;
    Ok(CliffordEven { lattice: v.clone(), algebra, basis_map })
}

impl CliffordEven {
    /// Pairing vector of a pure element `x`: the `v1 v2 v3` coefficient of
    /// `v_i x` for each basis vector `v_i`.
    fn pairing(&self, x: &QuatElem) -> Vec<BigRational> {
        let g: RatMatrix = self.lattice.gram().iter().map(|r| r.iter().map(qi).collect()).collect();
        let mut xc = Cliff::new();
        for k in 0..4 {
            add_cliff(&mut xc, &scale_cliff(&self.basis_map[k], &x.c[k]));
        }
        (0..3)
            .map(|i| {
                let vi = Cliff::from([(1u8 << i, BigRational::one())]);
                mul_cliff(&vi, &xc, &g).get(&0b111).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect()
    }

    /// `eta(x)` in the coordinates of `V (x) Q`.
    pub fn eta(&self, x: &QuatElem) -> Result<Vec<BigRational>, QuatError> {
        if !x.is_pure() {
            return Err(QuatError::NotPureElement);
        }
        let g: RatMatrix = self.lattice.gram().iter().map(|r| r.iter().map(qi).collect()).collect();
        let ginv = rat_inverse(&g).ok_or(QuatError::BadLattice)?;
        let p = self.pairing(x);
        Ok((0..3).map(|i| -(0..3).fold(BigRational::zero(), |acc, j| acc + &ginv[i][j] * &p[j])).collect())
    }
}

/// The isometry between the pure part of `Cl+(V)` and `V^v[disc V]`.
#[derive(Clone, Debug)]
pub struct EtaIsometry {
    /// Gram of the bilinearized square form `x -> x^2` on `e1, e2, e3`.
    pub square_gram: RatMatrix,
    /// Gram of the bilinearized reduced norm (`-square_gram`).
    pub norm_gram: RatMatrix,
    /// Rows `eta(e1), eta(e2), eta(e3)` in the coordinates of `V`.
    pub eta: RatMatrix,
    /// `disc(V) * <eta(e_i), eta(e_j)>_V`, equal to `norm_gram`.
    pub image_gram: RatMatrix,
}

/// Computes the square and norm Grams of the pure part and the map `eta`.
pub fn eta_isometry(cl: &CliffordEven) -> Result<EtaIsometry, QuatError> {
    let alg = &cl.algebra;
    let square_gram = alg.square_gram();
    let norm_gram: RatMatrix = square_gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let eta: RatMatrix = (1..4).map(|i| cl.eta(&alg.basis(i))).collect::<Result<_, _>>()?;
    let disc = qi(&determinant(&cl.lattice));
    let image_gram = (0..3)
        .map(|i| (0..3).map(|j| cl.lattice.pair(&eta[i], &eta[j]) * &disc).collect())
        .collect();
    Ok(EtaIsometry { square_gram, norm_gram, eta, image_gram })
}

/// An order given by an explicit Z-basis.
#[derive(Clone, Debug)]
pub struct QuatOrder {
    /// Z-basis.
    pub basis: [QuatElem; 4],
    /// Ambient algebra.
    pub algebra: QuatAlgebra,
    inv: RatMatrix,
}

impl QuatOrder {
    /// Builds an order, checking that it contains 1 and is closed under
    /// multiplication, and that traces and norms of basis elements are integral.
    pub fn new(algebra: QuatAlgebra, basis: [QuatElem; 4]) -> Result<Self, QuatError> {
        let m: RatMatrix = basis.iter().map(|b| b.c.to_vec()).collect();
        let inv = rat_inverse(&m).ok_or(QuatError::Singular)?;
        let ord = QuatOrder { basis, algebra, inv };
        if !ord.contains(&QuatElem::one()) {
            return Err(QuatError::MissingOne);
        }
        for i in 0..4 {
            for j in 0..4 {
                if !ord.contains(&ord.algebra.mul(&ord.basis[i], &ord.basis[j])) {
                    return Err(QuatError::NotClosed(i, j));
                }
            }
        }
        Ok(ord)
    }

    /// Coordinates of `x` in the order basis.
    pub fn coords(&self, x: &QuatElem) -> [BigRational; 4] {
        std::array::from_fn(|j| (0..4).fold(BigRational::zero(), |acc, k| acc + &x.c[k] * &self.inv[k][j]))
    }

    /// Element with given order coordinates.
    pub fn from_coords(&self, c: &[BigRational]) -> QuatElem {
        (0..4).fold(QuatElem::zero(), |acc, i| acc.add(&self.basis[i].scale(&c[i])))
    }

    /// Membership test (integral coordinates).
    pub fn contains(&self, x: &QuatElem) -> bool {
        self.coords(x).iter().all(|c| c.is_integer())
    }

    /// Trace pairing matrix `Tr(u_i u_j)`.
    pub fn trace_matrix(&self) -> RatMatrix {
        (0..4).map(|i| (0..4).map(|j| self.algebra.mul(&self.basis[i], &self.basis[j]).tr()).collect()).collect()
    }
}

/// Reduced discriminant: the positive square root of `|det Tr(u_i u_j)|`.
pub fn reduced_discriminant(o: &QuatOrder) -> Result<BigInt, QuatError> {
    let d = rat_det(&o.trace_matrix());
    if !d.is_integer() {
        return Err(QuatError::NonSquareDiscriminant(rat_string(&d)));
    }
    exact_sqrt(&d.to_integer().abs()).ok_or_else(|| QuatError::NonSquareDiscriminant(rat_string(&d)))
}

/// True if `g O g^{-1} = O` (checked on basis elements; `g O g^{-1}` has
/// the same covolume, so inclusion suffices).
pub fn normalizes(g: &QuatElem, o: &QuatOrder) -> Result<bool, QuatError> {
    for b in &o.basis {
        if !o.contains(&o.algebra.conjugate_by(g, b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Place {
    /// A finite prime.
    Prime(u64),
    /// The real place.
    Infinity,
}

/// Ramification set of a quaternion algebra `(a, b)_Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ramification {
    /// Places with Hilbert symbol -1, primes ascending then infinity.
    pub places: Vec<Place>,
    /// Product of the finite ramified primes.
    pub discriminant: u64,
}

/// Squarefree integer in the square class of a nonzero rational.
fn square_class(x: &BigRational) -> BigInt {
    squarefree_part(&(x.numer() * x.denom()))
}

/// Local Hilbert symbol `(a, b)_p` for nonzero integers and a prime `p`
/// (`p = 0` encodes the real place).
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: u64) -> i32 {
    if p == 0 {
        return if a.is_negative() && b.is_negative() { -1 } else { 1 };
    }
    let pz = BigInt::from(p);
    let (al, bl) = (valuation(a, &pz), valuation(b, &pz));
    let u = a / pz.pow(al);
    let v = b / pz.pow(bl);
    if p == 2 {
        let eps = |x: &BigInt| -> u32 { ((x - 1i32) / 2i32).mod_floor(&BigInt::from(2)).to_u32().unwrap() };
        let omega = |x: &BigInt| -> u32 { ((x * x - 1i32) / 8i32).mod_floor(&BigInt::from(2)).to_u32().unwrap() };
        let e = eps(&u) * eps(&v) + al * omega(&v) + bl * omega(&u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let leg = |x: &BigInt| crate::exact::legendre(x, &pz);
    let eps_p = ((p - 1) / 2) as u32;
    let mut s = if (al * bl * eps_p).is_multiple_of(2) { 1 } else { -1 };
    if bl % 2 == 1 {
        s *= leg(&u);
    }
    if al % 2 == 1 {
        s *= leg(&v);
    }
    s
}

/// Places where `(a, b)_v = -1`.
pub fn hilbert_ramification(a: &BigRational, b: &BigRational) -> Result<Ramification, QuatError> {
    if a.is_zero() || b.is_zero() {
        return Err(QuatError::ZeroArgument);
    }
    let (a, b) = (square_class(a), square_class(b));
    let mut primes: Vec<u64> = factorize(&(&a * &b))
        .into_iter()
        .map(|(p, _)| p.to_u64().expect("small prime"))
        .collect();
    if !primes.contains(&2) {
        primes.push(2);
    }
    primes.sort_unstable();
    let mut places = Vec::new();
    let mut disc = 1u64;
    for p in primes {
        if hilbert_symbol(&a, &b, p) == -1 {
            places.push(Place::Prime(p));
            disc *= p;
        }
    }
    if hilbert_symbol(&a, &b, 0) == -1 {
        places.push(Place::Infinity);
    }
    Ok(Ramification { places, discriminant: disc })
}

/// Result of a symplectic basis check.
#[derive(Clone, Debug)]
pub struct SymplecticCheck {
    /// Gram of `Psi_I` on the basis.
    pub gram: RatMatrix,
    /// True if the basis `(a1, a2, b1, b2)` is standard symplectic.
    pub standard: bool,
}

/// `Psi_I(v, w) = Tr(v I conj(w))`.
pub fn psi(alg: &QuatAlgebra, i: &QuatElem, v: &QuatElem, w: &QuatElem) -> BigRational {
    alg.mul(&alg.mul(v, i), &w.conj()).tr()
}

/// Gram of `Psi_I` on a basis and whether it is the standard symplectic
/// matrix `[[0, 1], [-1, 0]]` in 2x2 blocks.
pub fn symplectic_check(alg: &QuatAlgebra, i: &QuatElem, basis: &[QuatElem; 4]) -> Result<SymplecticCheck, QuatError> {
    if !i.is_pure() {
        return Err(QuatError::NotPureElement);
    }
    let gram: RatMatrix = (0..4).map(|a| (0..4).map(|b| psi(alg, i, &basis[a], &basis[b])).collect()).collect();
    let j = standard_j();
    Ok(SymplecticCheck { standard: gram == j, gram })
}

/// The standard symplectic matrix `[[0, I2], [-I2, 0]]`.
pub fn standard_j() -> RatMatrix {
    (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    if b == a + 2 {
                        q(1, 1)
                    } else if a == b + 2 {
                        q(-1, 1)
                    } else {
                        q(0, 1)
                    }
                })
                .collect()
        })
        .collect()
}

/// The lattice `T` with Gram `[[4,1,0],[1,4,0],[0,0,-20]]`.
pub fn t_lattice() -> GramLattice {
    GramLattice::from_rows(&[&[4, 1, 0], &[1, 4, 0], &[0, 0, -20]]).expect("valid Gram")
}

/// The lattice `T* = T^v[-60]` with Gram `[[-16,4,0],[4,-16,0],[0,0,3]]`.
pub fn t_star_lattice() -> GramLattice {
    GramLattice::from_rows(&[&[-16, 4, 0], &[4, -16, 0], &[0, 0, 3]]).expect("valid Gram")
}

/// Named elements of the even Clifford algebra of `T*` and its extended
/// Eichler order.
#[derive(Clone, Debug)]
pub struct Standard {
    /// `Cl+(T*)` with its basis map.
    pub clifford: CliffordEven,
    /// The order `Z + Z e1 + Z e2 + Z e3`.
    pub cl_order: QuatOrder,
    /// The extended order `Z + Z w1 + Z w2 + Z w3`.
    pub ext_order: QuatOrder,
    /// `w1 = (e1 - e2)/6`, `w2 = e2/2`, `w3 = (1 + e3/4)/2`.
    pub w: [QuatElem; 3],
    /// `I = (e1 + e2 + e3)/60`.
    pub i: QuatElem,
    /// Symplectic basis `(a1, a2, b1, b2) = (1, 1 + w1, w1 + w3, w1 + w2 + w3)`.
    pub symplectic: [QuatElem; 4],
}

impl Standard {
    /// Builds all named objects.
    pub fn new() -> Self {
        let clifford = clifford_even(&t_star_lattice()).expect("T* is non-degenerate");
        let alg = clifford.algebra.clone();
        let e = |i: usize| alg.basis(i);
        let cl_order = QuatOrder::new(alg.clone(), [e(0), e(1), e(2), e(3)]).expect("Cl+ is an order");
        let w1 = e(1).sub(&e(2)).scale(&q(1, 6));
        let w2 = e(2).scale(&q(1, 2));
        let w3 = e(0).add(&e(3).scale(&q(1, 4))).scale(&q(1, 2));
        let ext_order =
            QuatOrder::new(alg.clone(), [e(0), w1.clone(), w2.clone(), w3.clone()]).expect("extended order is closed");
        let i = e(1).add(&e(2)).add(&e(3)).scale(&q(1, 60));
        let symplectic = [
            QuatElem::one(),
            QuatElem::one().add(&w1),
            w1.add(&w3),
            w1.add(&w2).add(&w3),
        ];
        Standard { clifford, cl_order, ext_order, w: [w1, w2, w3], i, symplectic }
    }

    /// The algebra.
    pub fn algebra(&self) -> &QuatAlgebra {
        &self.clifford.algebra
    }
}

impl Default for Standard {
    fn default() -> Self {
        Self::new()
    }
}

/// Integer coordinates helper for tests and callers: `z(n)` as a rational.
pub fn qz(n: i64) -> BigRational {
    qi(&z(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: [i64; 4]) -> [BigRational; 4] {
        c.map(qz)
    }

    #[test]
    fn t_star_structure_constants() {
        let s = Standard::new();
        let a = s.algebra();
        assert_eq!(a.structure(1, 1), &v([48, 0, 0, 0]));
        assert_eq!(a.structure(2, 2), &v([48, 0, 0, 0]));
        assert_eq!(a.structure(3, 3), &v([-240, 0, 0, 0]));
        assert_eq!(a.structure(1, 2), &v([12, 0, 0, -3]));
        assert_eq!(a.structure(2, 1), &v([12, 0, 0, 3]));
        assert_eq!(a.structure(2, 3), &v([0, 16, -4, 0]));
        assert_eq!(a.structure(3, 2), &v([0, -16, 4, 0]));
        assert_eq!(a.structure(3, 1), &v([0, -4, 16, 0]));
        assert_eq!(a.structure(1, 3), &v([0, 4, -16, 0]));
    }

    #[test]
    fn discriminants() {
        let s = Standard::new();
        assert_eq!(reduced_discriminant(&s.cl_order).unwrap(), z(2880));
        assert_eq!(reduced_discriminant(&s.ext_order).unwrap(), z(30));
    }

    #[test]
    fn matrix_order_has_discriminant_one() {
        let alg = QuatAlgebra::hilbert(&qz(1), &qz(1)).unwrap();
        let h = q(1, 2);
        let e11 = QuatElem::new([h.clone(), h.clone(), qz(0), qz(0)]);
        let e22 = QuatElem::new([h.clone(), -h.clone(), qz(0), qz(0)]);
        let e12 = QuatElem::new([qz(0), qz(0), h.clone(), h.clone()]);
        let e21 = QuatElem::new([qz(0), qz(0), h.clone(), -h.clone()]);
        let o = QuatOrder::new(alg, [e11, e12, e21, e22]).unwrap();
        assert_eq!(reduced_discriminant(&o).unwrap(), z(1));
    }

    #[test]
    fn hilbert_examples() {
        let r = hilbert_ramification(&qz(3), &qz(5)).unwrap();
        assert_eq!(r.places, vec![Place::Prime(3), Place::Prime(5)]);
        assert_eq!(r.discriminant, 15);
        assert!(hilbert_ramification(&qz(1), &qz(1)).unwrap().places.is_empty());
        let r = hilbert_ramification(&qz(-1), &qz(-1)).unwrap();
        assert_eq!(r.places, vec![Place::Prime(2), Place::Infinity]);
    }

    #[test]
    fn symplectic_basis_is_standard() {
        let s = Standard::new();
        let c = symplectic_check(s.algebra(), &s.i, &s.symplectic).unwrap();
        assert!(c.standard, "{:?}", c.gram);
    }

    #[test]
    fn eta_on_t_star() {
        let s = Standard::new();
        let eta = eta_isometry(&s.clifford).unwrap();
        assert_eq!(eta.eta[0], vec![q(4, 60), q(1, 60), q(0, 1)]);
        let t = t_lattice();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(eta.norm_gram[i][j], qi(&t.gram()[i][j]) * qz(-12));
                assert_eq!(eta.image_gram[i][j], eta.norm_gram[i][j]);
            }
        }
    }

    #[test]
    fn xi2_eta2_is_one_plus_w1() {
        let s = Standard::new();
        let a = s.algebra();
        let p = a.mul(&QuatElem::pure(0, 0, -1), &QuatElem::pure(2, 2, 1)).scale(&q(1, 240));
        assert_eq!(p, QuatElem::one().add(&s.w[0]));
        assert_eq!(a.nr(&p), qz(-1));
    }
}
