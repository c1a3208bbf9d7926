//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Matrices are `Vec<Vec<_>>` in row-major order. Every routine here is
//! exact; sizes in this crate never exceed a handful of rows, so the
//! straightforward cubic algorithms are used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;
/// Rational matrix, row-major.
pub type RatMatrix = Vec<Vec<BigRational>>;

/// Shorthand for an integer.
pub fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Shorthand for the rational `n / d`.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn qi(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Integer matrix from nested `i64` rows.
pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&v| z(v)).collect()).collect()
}

/// Identity integer matrix.
pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Identity rational matrix.
pub fn rat_identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

/// Converts an integer matrix to a rational one.
pub fn to_rat(m: &IntMatrix) -> RatMatrix {
    m.iter().map(|r| r.iter().map(qi).collect()).collect()
}

/// Returns the integer matrix if every entry of `m` is integral.
pub fn to_int(m: &RatMatrix) -> Option<IntMatrix> {
    m.iter()
        .map(|r| r.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect())
        .collect()
}

/// Transpose of a matrix with `cols` columns (needed when `m` has no rows).
pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Product of two rational matrices.
pub fn rat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigRational::zero();
                    for k in 0..inner {
                        acc += &row[k] * &b[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Product of two integer matrices.
pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..inner {
                        acc += &row[k] * &b[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Rational matrix times vector.
pub fn rat_mul_vec(a: &RatMatrix, v: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Bilinear form `x^T G y` with rational vectors.
pub fn bilinear(g: &RatMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let gy = rat_mul_vec(g, y);
    x.iter().zip(&gy).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn rat_det(m: &RatMatrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in (c + 1)..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Determinant of a square integer matrix.
pub fn int_det(m: &IntMatrix) -> BigInt {
    rat_det(&to_rat(m)).to_integer()
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn rat_inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let pivot = a[c][c].clone();
        for v in a[c].iter_mut() {
            *v /= &pivot;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a rational matrix.
pub fn rat_rank(m: &RatMatrix) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for r in (rank + 1)..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[rank][c];
            for k in c..cols {
                let t = &f * &a[rank][k];
                a[r][k] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Smith normal form `U * A * V = D` of an integer matrix.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Left unimodular transform (rows x rows).
    pub u: IntMatrix,
    /// Diagonal entries `d_1 | d_2 | ...`, non-negative, length `min(rows, cols)`.
    pub diag: Vec<BigInt>,
    /// Right unimodular transform (cols x cols).
    pub v: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

/// Computes the Smith normal form of `a` (`rows x cols`).
pub fn smith(a: &IntMatrix, cols: usize) -> Smith {
    let rows = a.len();
    let mut d = a.clone();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in (t + 1)..rows {
            if d[i][t].is_zero() {
                continue;
            }
            let f = d[i][t].div_floor(&d[t][t]);
            for k in 0..cols {
                let s = &f * &d[t][k];
                d[i][k] -= s;
            }
            for k in 0..rows {
                let s = &f * &u[t][k];
                u[i][k] -= s;
            }
            if !d[i][t].is_zero() {
                clean = false;
            }
        }
        for j in (t + 1)..cols {
            if d[t][j].is_zero() {
                continue;
            }
            let f = d[t][j].div_floor(&d[t][t]);
            for k in 0..rows {
                let s = &f * &d[k][t];
                d[k][j] -= s;
            }
            for k in 0..cols {
                let s = &f * &v[k][t];
                v[k][j] -= s;
            }
            if !d[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold any offending row into row t and retry.
        let mut offender = None;
        'scan: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for k in 0..cols {
                let s = d[i][k].clone();
                d[t][k] += s;
            }
            for k in 0..rows {
                let s = u[i][k].clone();
                u[t][k] += s;
            }
            continue;
        }
        if d[t][t].is_negative() {
            for k in 0..cols {
                d[t][k] = -d[t][k].clone();
            }
            for k in 0..rows {
                u[t][k] = -u[t][k].clone();
            }
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| d[i][i].clone()).collect();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    Smith { u, diag, v, rank }
}

/// A Z-basis (as rows) of the integer kernel `{x in Z^cols : A x = 0}`.
/// The returned basis spans a saturated sublattice.
pub fn int_kernel(a: &IntMatrix, cols: usize) -> IntMatrix {
    let s = smith(a, cols);
    (s.rank..cols).map(|j| (0..cols).map(|i| s.v[i][j].clone()).collect()).collect()
}

/// A Z-basis (as rows) of the lattice spanned by rational generators in `Q^n`.
pub fn lattice_basis(generators: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    let den = generators
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    // Columns are the scaled generators.
    let cols = generators.len();
    let m: IntMatrix = (0..n)
        .map(|i| generators.iter().map(|g| (&g[i] * qi(&den)).to_integer()).collect())
        .collect();
    let s = smith(&m, cols);
    let uinv = rat_inverse(&to_rat(&s.u)).expect("unimodular");
    (0..s.rank)
        .map(|k| (0..n).map(|i| &uinv[i][k] * qi(&s.diag[k]) / qi(&den)).collect())
        .collect()
}

/// Sign-preserving squarefree part of a nonzero integer.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut out = BigInt::one();
    for (p, e) in factorize(&n.abs()) {
        if e % 2 == 1 {
            out *= p;
        }
    }
    sign * out
}

/// Prime factorization of a positive integer by trial division.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Legendre symbol `(a/p)` for an odd prime `p`; 0 if `p | a`.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - BigInt::one()) / BigInt::from(2);
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Exact integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Reduces a rational into `[0, m)` for a positive integer modulus `m`.
pub fn mod_rational(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(z(m));
    let k = (x / &m).floor();
    x - k * m
}

/// Formats a rational as `"p/q"` (or `"p"` when integral).
pub fn rat_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Converts a small rational to `f64` (used only for diagnostics and bounds).
pub fn rat_to_f64(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Reduced representative of a positive-definite binary form `[[a,b],[b,c]]`:
/// `|2b| <= a <= c`, with `b >= 0` when `|2b| = a` or `a = c`.
pub fn reduce_binary_form(g: &IntMatrix) -> IntMatrix {
    let (mut a, mut b, mut c) = (g[0][0].clone(), g[0][1].clone(), g[1][1].clone());
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        let two_b: BigInt = &b * 2;
        if two_b.abs() > a {
            // Translate b into (-a/2, a/2].
            let k = (&two_b + &a).div_floor(&(&a * 2));
            let new_b = &b - &k * &a;
            c = &c - &k * &b * 2 + &k * &k * &a;
            b = new_b;
            continue;
        }
        break;
    }
    if (&b * BigInt::from(2)).abs() == a || a == c {
        b = b.abs();
    }
    vec![vec![a, b.clone()], vec![b, c]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        let a = int_matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a, 3);
        assert_eq!(s.diag, vec![z(2), z(6), z(12)]);
        let d = int_mul(&int_mul(&s.u, &a), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { z(0) };
                assert_eq!(d[i][j], want);
            }
        }
    }

    #[test]
    fn kernel_is_saturated() {
        let a = int_matrix(&[&[2, 4, 6]]);
        let k = int_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        let s = smith(&k, 3);
        assert!(s.diag.iter().all(|d| d.is_one()));
    }

    #[test]
    fn lattice_basis_of_index_two_overlattice() {
        let gens = vec![
            vec![q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1)],
            vec![q(1, 2), q(1, 2)],
        ];
        let b = lattice_basis(&gens, 2);
        assert_eq!(b.len(), 2);
        let det = rat_det(&b);
        assert_eq!(det.abs(), q(1, 2));
    }

    #[test]
    fn binary_reduction() {
        let g = int_matrix(&[&[4, 6], &[6, 19]]);
        assert_eq!(reduce_binary_form(&g), int_matrix(&[&[4, 2], &[2, 11]]));
        let g = int_matrix(&[&[10, 0], &[0, 4]]);
        assert_eq!(reduce_binary_form(&g), int_matrix(&[&[4, 0], &[0, 10]]));
    }

    #[test]
    fn squarefree_and_legendre() {
        assert_eq!(squarefree_part(&z(360)), z(10));
        assert_eq!(squarefree_part(&z(-48)), z(-3));
        assert_eq!(legendre(&z(2), &z(5)), -1);
        assert_eq!(legendre(&z(4), &z(5)), 1);
        assert_eq!(legendre(&z(10), &z(5)), 0);
    }
}
