//! Integer lattices given by Gram matrices: determinants, discriminant
//! groups and forms, twists, orthogonal complements, even overlattices and
//! the normal form of the odd p-parts of finite quadratic forms.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{
    int_det, int_kernel, int_mul, lattice_basis, legendre, mod_rational, qi, rat_inverse, rat_string, smith,
    to_rat, transpose, valuation, z, IntMatrix, RatMatrix,
};

/// Largest discriminant group handled by [`even_overlattices`].
pub const MAX_GROUP_ORDER: u64 = 20_000;

/// Largest number of subgroups visited by [`even_overlattices`].
pub const MAX_SUBGROUPS: usize = 1_000_000;

/// Errors raised by lattice operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is degenerate (determinant 0)")]
    Degenerate,
    #[error("twisted Gram matrix is not integral")]
    NonIntegralTwist,
    #[error("sublattice is not primitive (elementary divisors {0:?})")]
    NotPrimitive(Vec<String>),
    #[error("vector has {got} coordinates, lattice has rank {rank}")]
    DimensionMismatch { got: usize, rank: usize },
    #[error("orthogonal complement is degenerate")]
    DegenerateComplement,
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("p = {0} is not an odd prime")]
    UnsupportedPrime(i64),
    #[error("lattice is odd; only values mod 1 are available")]
    OddLattice,
}

/// A lattice given by its integer symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: IntMatrix,
}

impl GramLattice {
    /// Builds a lattice from a square symmetric integer matrix.
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(GramLattice { gram })
    }

    /// Builds a lattice from `i64` rows.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| z(x)).collect()).collect())
    }

    /// The rank-0 lattice.
    pub fn zero() -> Self {
        GramLattice { gram: Vec::new() }
    }

    /// Gram matrix.
    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// True if every diagonal entry is even.
    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i].is_even())
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = vec![vec![BigInt::zero(); a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[a + i][a + j] = other.gram[i][j].clone();
            }
        }
        GramLattice { gram: g }
    }

    /// Inner product of two rational coordinate vectors.
    pub fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                s += &x[i] * &y[j] * qi(&self.gram[i][j]);
            }
        }
        s
    }

    /// Inner product of two integer coordinate vectors.
    pub fn pair_int(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                s += &x[i] * &y[j] * &self.gram[i][j];
            }
        }
        s
    }

    /// Gram matrix of the sublattice spanned by the integer rows of `basis`.
    pub fn restrict(&self, basis: &IntMatrix) -> GramLattice {
        let b = basis;
        let g = int_mul(&int_mul(b, &self.gram), &transpose(b, self.rank()));
        GramLattice { gram: g }
    }

    /// Gram matrix as `i64` rows (panics on overflow; entries are small in practice).
    pub fn gram_i64(&self) -> Vec<Vec<i64>> {
        self.gram.iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry fits i64")).collect()).collect()
    }

    fn check_vec(&self, v: &[BigInt]) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch { got: v.len(), rank: self.rank() });
        }
        Ok(())
    }
}

/// The rank-5 negative definite lattice invariant under the symmetric
/// group action on the Niemeier lattice, in the basis of orbit sums.
pub fn s5_invariant_lattice() -> GramLattice {
    GramLattice::from_rows(&[
        &[-2, 1, 2, 0, 0],
        &[1, -2, 0, 0, 0],
        &[2, 0, -4, 0, 0],
        &[0, 0, 0, -30, 15],
        &[0, 0, 0, 15, -10],
    ])
    .expect("valid Gram")
}

/// Determinant of the Gram matrix (1 for the rank-0 lattice).
pub fn determinant(l: &GramLattice) -> BigInt {
    if l.rank() == 0 {
        BigInt::one()
    } else {
        int_det(&l.gram)
    }
}

/// Scales the bilinear form by a rational `lambda`.
pub fn twist(l: &GramLattice, lambda: &BigRational) -> Result<GramLattice, LatticeError> {
    twist_rational(&to_rat(&l.gram), lambda)
}

/// The dual lattice (in the dual basis) with its form scaled by `lambda`.
pub fn dual_twist(l: &GramLattice, lambda: &BigRational) -> Result<GramLattice, LatticeError> {
    let inv = rat_inverse(&to_rat(&l.gram)).ok_or(LatticeError::Degenerate)?;
    twist_rational(&inv, lambda)
}

fn twist_rational(g: &RatMatrix, lambda: &BigRational) -> Result<GramLattice, LatticeError> {
    let mut out = Vec::with_capacity(g.len());
    for row in g {
        let mut r = Vec::with_capacity(row.len());
        for x in row {
            let y = x * lambda;
            if !y.is_integer() {
                return Err(LatticeError::NonIntegralTwist);
            }
            r.push(y.to_integer());
        }
        out.push(r);
    }
    GramLattice::new(out)
}

/// Orthogonal complement of a primitive sublattice together with its basis.
#[derive(Clone, Debug)]
pub struct Complement {
    /// The complement with its induced form.
    pub lattice: GramLattice,
    /// Basis rows in the coordinates of the ambient lattice.
    pub basis: IntMatrix,
}

/// Orthogonal complement of the sublattice spanned by the rows of `s`.
///
/// Basis vectors are normalized so their first nonzero coordinate is positive.
pub fn orthogonal_complement(l: &GramLattice, s: &IntMatrix) -> Result<Complement, LatticeError> {
    let n = l.rank();
    for v in s {
        l.check_vec(v)?;
    }
    if !s.is_empty() {
        let sn = smith(s, n);
        if sn.rank < s.len() || sn.diag.iter().take(sn.rank).any(|d| !d.is_one()) {
            return Err(LatticeError::NotPrimitive(sn.diag.iter().map(|d| d.to_string()).collect()));
        }
    }
    let pairing = int_mul(s, &l.gram);
    let mut basis = if s.is_empty() { crate::exact::int_identity(n) } else { int_kernel(&pairing, n) };
    for row in basis.iter_mut() {
        if let Some(first) = row.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    let lattice = l.restrict(&basis);
    if lattice.rank() > 0 && determinant(&lattice).is_zero() {
        return Err(LatticeError::DegenerateComplement);
    }
    Ok(Complement { lattice, basis })
}

/// A finite quadratic form on `Z/d_1 + ... + Z/d_r` with `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinQuadForm {
    /// Cyclic orders of the chosen generators.
    pub orders: Vec<BigInt>,
    /// Gram of the form on the generators: diagonal mod 2, off-diagonal mod 1
    /// (diagonal mod 1 too when `odd` is set).
    pub values: RatMatrix,
    /// Generators as rational coordinate vectors in the lattice basis.
    pub generators: RatMatrix,
    /// Set when the source lattice is odd.
    pub odd: bool,
    /// Source Gram matrix (for recomputing values on new generators).
    source: IntMatrix,
}

/// JSON shape of a finite quadratic form.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FinQuadFormJson {
    pub orders: Vec<String>,
    pub values: Vec<Vec<String>>,
}

impl FinQuadForm {
    /// Order of the group.
    pub fn group_order(&self) -> BigInt {
        self.orders.iter().fold(BigInt::one(), |a, b| a * b)
    }

    /// Bilinear value `b(x, y) mod 1` of two rational vectors.
    pub fn b(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        mod_rational(&pair_rat(&self.source, x, y), 1)
    }

    /// Quadratic value `q(x) mod 2` (mod 1 for odd lattices).
    pub fn q(&self, x: &[BigRational]) -> BigRational {
        mod_rational(&pair_rat(&self.source, x, x), if self.odd { 1 } else { 2 })
    }

    /// Rebuilds the form on a new generator list with given orders.
    fn on_generators(&self, generators: RatMatrix, orders: Vec<BigInt>) -> FinQuadForm {
        let k = generators.len();
        let mut values = vec![vec![BigRational::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                values[i][j] = if i == j { self.q(&generators[i]) } else { self.b(&generators[i], &generators[j]) };
            }
        }
        FinQuadForm { orders, values, generators, odd: self.odd, source: self.source.clone() }
    }

    /// The p-primary part, generated by the p-parts of the generators.
    pub fn p_part(&self, p: i64) -> FinQuadForm {
        let pz = z(p);
        let mut gens: RatMatrix = Vec::new();
        let mut orders = Vec::new();
        for (g, d) in self.generators.iter().zip(&self.orders) {
            let e = valuation(d, &pz);
            if e == 0 {
                continue;
            }
            let pk = pz.pow(e);
            let cof = qi(&(d / &pk));
            gens.push(g.iter().map(|x| x * &cof).collect());
            orders.push(pk);
        }
        // Sort by order so the divisibility chain is kept.
        let mut idx: Vec<usize> = (0..orders.len()).collect();
        idx.sort_by(|&a, &b| orders[a].cmp(&orders[b]));
        let gens = idx.iter().map(|&i| gens[i].clone()).collect();
        let orders = idx.iter().map(|&i| orders[i].clone()).collect();
        self.on_generators(gens, orders)
    }

    /// Primes dividing the group order.
    pub fn primes(&self) -> Vec<i64> {
        let mut ps: Vec<i64> = crate::exact::factorize(&self.group_order())
            .into_iter()
            .map(|(p, _)| p.to_i64().expect("small prime"))
            .collect();
        ps.sort();
        ps
    }

    /// Serializable form with rational strings.
    pub fn to_json(&self) -> FinQuadFormJson {
        FinQuadFormJson {
            orders: self.orders.iter().map(|d| d.to_string()).collect(),
            values: self.values.iter().map(|r| r.iter().map(rat_string).collect()).collect(),
        }
    }

    /// Enumerates all group elements as coefficient vectors.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>, LatticeError> {
        let ord = self.group_order();
        if ord > BigInt::from(MAX_GROUP_ORDER) {
            return Err(LatticeError::GuardExceeded(format!("group order {ord} > {MAX_GROUP_ORDER}")));
        }
        let ds: Vec<u64> = self.orders.iter().map(|d| d.to_u64().expect("small order")).collect();
        let mut out = vec![vec![]];
        for d in ds {
            out = out.into_iter().flat_map(|v: Vec<u64>| (0..d).map(move |c| [v.clone(), vec![c]].concat())).collect();
        }
        Ok(out)
    }

    /// Rational vector of a coefficient vector.
    pub fn vector(&self, coeffs: &[u64]) -> Vec<BigRational> {
        let n = self.source.len();
        let mut v = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            let c = BigRational::from_integer(BigInt::from(*c));
            for i in 0..n {
                v[i] += &c * &g[i];
            }
        }
        v
    }
}

fn pair_rat(g: &IntMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for i in 0..g.len() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..g.len() {
            s += &x[i] * &y[j] * qi(&g[i][j]);
        }
    }
    s
}

/// Discriminant form of a non-degenerate lattice.
///
/// Generators come from the Smith normal form `U G V = D`: the columns of
/// `V D^{-1}` form a basis of the dual lattice, and those with `d_k > 1`
/// generate `L^v / L` with orders `d_k`. For odd lattices the result is
/// flagged and diagonal values are only meaningful mod 1.
pub fn discriminant_form(l: &GramLattice) -> Result<FinQuadForm, LatticeError> {
    let n = l.rank();
    if determinant(l).is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let s = smith(&l.gram, n);
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for k in 0..n {
        let d = &s.diag[k];
        if d.is_one() {
            continue;
        }
        gens.push((0..n).map(|i| BigRational::new(s.v[i][k].clone(), d.clone())).collect());
        orders.push(d.clone());
    }
    let proto = FinQuadForm {
        orders: Vec::new(),
        values: Vec::new(),
        generators: Vec::new(),
        odd: !l.is_even(),
        source: l.gram.clone(),
    };
    Ok(proto.on_generators(gens, orders))
}

/// An even overlattice of `L` together with its index and basis.
#[derive(Clone, Debug)]
pub struct Overlattice {
    /// The overlattice with its (integral, even) Gram matrix.
    pub lattice: GramLattice,
    /// Index `[M : L]`.
    pub index: u64,
    /// Basis rows in the rational coordinates of `L`.
    pub basis: RatMatrix,
}

/// All even overlattices of an even lattice, one per isotropic subgroup of
/// the discriminant group (the trivial subgroup gives `L` itself).
pub fn even_overlattices(l: &GramLattice) -> Result<Vec<Overlattice>, LatticeError> {
    if !l.is_even() {
        return Err(LatticeError::OddLattice);
    }
    let form = discriminant_form(l)?;
    let elems = form.elements()?;
    let ds: Vec<u64> = form.orders.iter().map(|d| d.to_u64().expect("small order")).collect();
    let index_of = |c: &[u64]| -> usize { c.iter().zip(&ds).fold(0usize, |acc, (x, d)| acc * (*d as usize) + *x as usize) };
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).zip(&ds).map(|((x, y), d)| (x + y) % d).collect() };

    let vecs: Vec<Vec<BigRational>> = elems.iter().map(|c| form.vector(c)).collect();
    let isotropic: Vec<usize> = (0..elems.len()).filter(|&i| form.q(&vecs[i]).is_zero()).collect();

    let zero = vec![0u64; ds.len()];
    let span = |gens: &[usize]| -> Vec<usize> {
        let mut members = vec![index_of(&zero)];
        let mut seen: HashSet<usize> = members.iter().copied().collect();
        let mut frontier = vec![zero.clone()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = add(&x, &elems[g]);
                let iy = index_of(&y);
                if seen.insert(iy) {
                    members.push(iy);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    };

    let mut found: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![index_of(&zero)], Vec::new())];
    let mut seen: HashSet<Vec<usize>> = found.iter().map(|(m, _)| m.clone()).collect();
    let mut cursor = 0;
    while cursor < found.len() {
        let (members, gens) = found[cursor].clone();
        cursor += 1;
        for &h in &isotropic {
            if members.binary_search(&h).is_ok() {
                continue;
            }
            // Isotropy of the span: all pairings between generators integral.
            if gens.iter().chain(std::iter::once(&h)).any(|&g| !form.b(&vecs[g], &vecs[h]).is_zero()) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(h);
            let m = span(&new_gens);
            if seen.insert(m.clone()) {
                if seen.len() > MAX_SUBGROUPS {
                    return Err(LatticeError::GuardExceeded(format!("more than {MAX_SUBGROUPS} subgroups")));
                }
                found.push((m, new_gens));
            }
        }
    }

    let n = l.rank();
    let mut out = Vec::with_capacity(found.len());
    for (members, gens) in found {
        let mut generators: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        generators.extend(gens.iter().map(|&g| vecs[g].clone()));
        let basis = lattice_basis(&generators, n);
        let gram: IntMatrix = basis
            .iter()
            .map(|x| basis.iter().map(|y| pair_rat(&l.gram, x, y).to_integer()).collect())
            .collect();
        out.push(Overlattice { lattice: GramLattice::new(gram)?, index: members.len() as u64, basis });
    }
    Ok(out)
}

/// Square class of a unit modulo an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SquareClass {
    Square,
    NonSquare,
}

/// One cyclic summand `<a/p^k>` of a p-adic normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PComponent {
    /// Exponent `k` of the cyclic order `p^k`.
    pub k: u32,
    /// Whether `a` is a square mod `p`.
    pub class: SquareClass,
}

impl PComponent {
    /// Renders the summand as `<a/p^k>` with `a = 1` for squares and the
    /// least quadratic non-residue otherwise.
    pub fn render(&self, p: i64) -> String {
        let a = match self.class {
            SquareClass::Square => 1,
            SquareClass::NonSquare => (2..p).find(|&a| legendre(&z(a), &z(p)) == -1).unwrap_or(2),
        };
        if self.k == 1 {
            format!("<{a}/{p}>")
        } else {
            format!("<{a}/{p}^{}>", self.k)
        }
    }
}

/// Canonical decomposition of the p-part of `form` for an odd prime `p`:
/// for each exponent `k`, `n_k - 1` square summands and one summand carrying
/// the determinant class of the `p^k` Jordan block. Sorted by `(k, class)`.
pub fn pform_decompose(form: &FinQuadForm, p: i64) -> Result<Vec<PComponent>, LatticeError> {
    if p < 3 || crate::exact::factorize(&z(p)).len() != 1 || crate::exact::factorize(&z(p))[0].1 != 1 {
        return Err(LatticeError::UnsupportedPrime(p));
    }
    let part = form.p_part(p);
    let pz = z(p);
    let mut gens: Vec<Vec<BigRational>> = part.generators.clone();
    let mut blocks: BTreeMap<u32, Vec<SquareClass>> = BTreeMap::new();

    while !gens.is_empty() {
        // Largest p-power denominator among the pairings, preferring a diagonal entry.
        let bij = |x: &[BigRational], y: &[BigRational]| part.b(x, y);
        let order = |v: BigRational| if v.is_zero() { None } else { Some(valuation(v.denom(), &pz)) };
        let mut k_max = None;
        for i in 0..gens.len() {
            for j in i..gens.len() {
                k_max = k_max.max(order(bij(&gens[i], &gens[j])));
            }
        }
        let Some(k) = k_max else {
            break;
        };
        let diag = (0..gens.len()).find(|&i| order(bij(&gens[i], &gens[i])) == Some(k));
        let i = match diag {
            Some(i) => i,
            None => {
                let (i, j) = (0..gens.len())
                    .flat_map(|i| (i + 1..gens.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| order(bij(&gens[i], &gens[j])) == Some(k))
                    .expect("off-diagonal entry of maximal order");
                // b(g_i + g_j) = b_ii + 2 b_ij + b_jj has order p^k since p is odd.
                let gj = gens[j].clone();
                for (x, y) in gens[i].iter_mut().zip(gj) {
                    *x += y;
                }
                i
            }
        };
        let g = gens.remove(i);
        let bgg = bij(&g, &g);
        let pk = pz.pow(k);
        let u = (bgg.numer() * (&pk / bgg.denom())).mod_floor(&pk);
        let class = if legendre(&u, &pz) == 1 { SquareClass::Square } else { SquareClass::NonSquare };
        blocks.entry(k).or_default().push(class);
        let u_inv = u.modinv(&pk).expect("unit mod p^k");
        // Orthogonalize the remaining generators against g.
        let mut kept = Vec::with_capacity(gens.len());
        for mut h in gens {
            let bhg = bij(&h, &g);
            let c = ((bhg * qi(&pk)).to_integer() * &u_inv).mod_floor(&pk);
            let c = qi(&c);
            for (x, y) in h.iter_mut().zip(&g) {
                *x -= &c * y;
            }
            if !is_zero_in_group(&part.source, &h) {
                kept.push(h);
            }
        }
        gens = kept;
    }

    let mut out = Vec::new();
    for (k, classes) in blocks {
        let nonsq = classes.iter().filter(|c| **c == SquareClass::NonSquare).count();
        for _ in 1..classes.len() {
            out.push(PComponent { k, class: SquareClass::Square });
        }
        let class = if nonsq % 2 == 0 { SquareClass::Square } else { SquareClass::NonSquare };
        out.push(PComponent { k, class });
    }
    out.sort();
    Ok(out)
}

/// True if a rational coordinate vector lies in the lattice itself.
fn is_zero_in_group(_gram: &IntMatrix, x: &[BigRational]) -> bool {
    x.iter().all(|v| v.is_integer())
}

/// Renders a p-adic normal form as `<a/p>+<b/p>+...`.
pub fn render_pform(parts: &[PComponent], p: i64) -> String {
    parts.iter().map(|c| c.render(p)).collect::<Vec<_>>().join("+")
}

/// Canonical value of a cyclic p-part: `q` on a generator of the cyclic
/// group `Z/p^k`, minimized over all generators. Used for the 2-part and
/// for displaying cyclic summands.
pub fn cyclic_value(form: &FinQuadForm) -> Option<BigRational> {
    if form.generators.len() != 1 {
        return None;
    }
    let d = form.orders[0].to_u64()?;
    let g = &form.generators[0];
    (1..d)
        .filter(|c| c.gcd(&d) == 1)
        .map(|c| form.q(&g.iter().map(|x| x * BigRational::from_integer(BigInt::from(c))).collect::<Vec<_>>()))
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_matrix, q};

    fn t_lattice() -> GramLattice {
        GramLattice::from_rows(&[&[4, 1, 0], &[1, 4, 0], &[0, 0, -20]]).unwrap()
    }

    #[test]
    fn determinant_of_t() {
        assert_eq!(determinant(&t_lattice()), z(-300));
        assert_eq!(determinant(&GramLattice::from_rows(&[&[7]]).unwrap()), z(7));
    }

    #[test]
    fn dual_twist_of_t() {
        let ts = dual_twist(&t_lattice(), &q(-60, 1)).unwrap();
        assert_eq!(ts.gram(), &int_matrix(&[&[-16, 4, 0], &[4, -16, 0], &[0, 0, 3]]));
        assert_eq!(twist(&t_lattice(), &q(1, 1)).unwrap(), t_lattice());
        assert!(twist(&t_lattice(), &q(1, 3)).is_err());
    }

    #[test]
    fn t_discriminant_parts() {
        let f = discriminant_form(&t_lattice()).unwrap();
        assert_eq!(f.group_order(), z(300));
        assert_eq!(f.p_part(2).orders, vec![z(4)]);
        assert_eq!(f.p_part(3).orders, vec![z(3)]);
        assert_eq!(f.p_part(5).orders, vec![z(5), z(5)]);
        let five = pform_decompose(&f, 5).unwrap();
        assert_eq!(render_pform(&five, 5), "<1/5>+<2/5>");
        assert_eq!(render_pform(&pform_decompose(&f, 3).unwrap(), 3), "<2/3>");
        assert!(pform_decompose(&f, 7).unwrap().is_empty());
        assert!(pform_decompose(&f, 2).is_err());
    }

    #[test]
    fn s5_invariant_lattice_form() {
        let n = s5_invariant_lattice();
        assert_eq!(determinant(&n), z(-300));
        let f = discriminant_form(&n).unwrap();
        assert_eq!(cyclic_value(&f.p_part(2)), Some(q(5, 4)));
        assert_eq!(render_pform(&pform_decompose(&f, 3).unwrap(), 3), "<2/3>");
        assert_eq!(render_pform(&pform_decompose(&f, 5).unwrap(), 5), "<1/5>+<2/5>");
    }

    #[test]
    fn unimodular_has_trivial_group() {
        let h = GramLattice::from_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let f = discriminant_form(&h).unwrap();
        assert!(f.orders.is_empty());
        assert_eq!(even_overlattices(&h).unwrap().len(), 1);
    }

    #[test]
    fn complement_in_t() {
        let s = int_matrix(&[&[2, -2, 1], &[-3, 0, -1]]);
        let c = orthogonal_complement(&t_lattice(), &s).unwrap();
        assert_eq!(c.basis, int_matrix(&[&[6, -4, 3]]));
        let all = orthogonal_complement(&t_lattice(), &crate::exact::int_identity(3)).unwrap();
        assert_eq!(all.lattice.rank(), 0);
        let bad = orthogonal_complement(&t_lattice(), &int_matrix(&[&[2, 0, 0]]));
        assert!(matches!(bad, Err(LatticeError::NotPrimitive(_))));
    }

    #[test]
    fn cyclic_values() {
        let f = discriminant_form(&t_lattice()).unwrap();
        assert!(cyclic_value(&f.p_part(2)).is_some());
        assert_eq!(cyclic_value(&f.p_part(3)), Some(q(2, 3)));
    }
}
