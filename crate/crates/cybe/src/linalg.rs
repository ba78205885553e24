//! Exact linear algebra over ℚ.
//!
//! Plain Gaussian elimination with the deterministic pivot rule "first
//! nonzero entry in canonical column order". Everything returns exact
//! results; inconsistency is reported as a value, not an error, so callers
//! can *assert* consistency claims made by the theory.

use crate::rat::Rat;
use num_traits::{One, Zero};

/// Dense rational matrix, row major.
pub type QMat = Vec<Vec<Rat>>;
/// Dense rational vector.
pub type QVec = Vec<Rat>;

/// Solution set of a linear system `A·x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum LinSolve {
    /// A particular solution together with a basis of the kernel of `A`.
    Solved { particular: QVec, kernel_basis: Vec<QVec> },
    /// The system has no solution.
    Inconsistent,
}

/// Zero vector of length `n`.
pub fn zeros(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

/// Identity matrix of size `n`.
pub fn identity(n: usize) -> QMat {
    let mut m = vec![zeros(n); n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

/// Matrix–vector product.
pub fn mat_vec(a: &QMat, x: &QVec) -> QVec {
    a.iter()
        .map(|row| {
            let mut acc = Rat::zero();
            for (aij, xj) in row.iter().zip(x) {
                if !aij.is_zero() && !xj.is_zero() {
                    acc += aij.clone() * xj.clone();
                }
            }
            acc
        })
        .collect()
}

/// Matrix product.
pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            let mut out = zeros(cols);
            for (aik, brow) in row.iter().zip(b) {
                if aik.is_zero() {
                    continue;
                }
                for (o, bkj) in out.iter_mut().zip(brow) {
                    if !bkj.is_zero() {
                        *o += aik.clone() * bkj.clone();
                    }
                }
            }
            out
        })
        .collect()
}

/// Reduced row echelon form; returns `(rref, pivot_columns)`.
///
/// Pivot choice is deterministic: scan columns left to right, take the first
/// row with a nonzero entry.
pub fn rref(a: &QMat) -> (QMat, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone().recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = f.clone() * m[r][j].clone();
                    if !sub.is_zero() {
                        m[i][j] = m[i][j].clone() - sub;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Rank of a matrix.
pub fn rank(a: &QMat) -> usize {
    rref(a).1.len()
}

/// Basis of the kernel (nullspace) of `A`.
pub fn kernel_basis(a: &QMat) -> Vec<QVec> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let (r, pivots) = rref(a);
    let mut basis = Vec::new();
    let is_pivot = |c: usize| pivots.contains(&c);
    for free in 0..cols {
        if is_pivot(free) {
            continue;
        }
        let mut v = zeros(cols);
        v[free] = Rat::one();
        for (pi, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[pi][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `A·x = b` exactly.
pub fn solve_linear(a: &QMat, b: &QVec) -> LinSolve {
    let rows = a.len();
    assert_eq!(rows, b.len(), "right-hand side length mismatch");
    let cols = if rows == 0 { 0 } else { a[0].len() };
    // Augment and reduce.
    let aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    // A pivot in the augmented column means inconsistency.
    if pivots.iter().any(|&c| c == cols) {
        return LinSolve::Inconsistent;
    }
    let mut particular = zeros(cols);
    for (pi, &pc) in pivots.iter().enumerate() {
        particular[pc] = m[pi][cols].clone();
    }
    LinSolve::Solved { particular, kernel_basis: kernel_basis(a) }
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    assert!(a.iter().all(|r| r.len() == n), "inverse of non-square matrix");
    let aug: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(identity(n)[i].clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by fraction-free-ish elimination (fine at desk scale).
pub fn det(a: &QMat) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if pr != c {
            m.swap(c, pr);
            d = -d;
        }
        d *= m[c][c].clone();
        let inv = m[c][c].clone().recip();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for j in c..n {
                let sub = f.clone() * m[c][j].clone();
                m[i][j] = m[i][j].clone() - sub;
            }
        }
    }
    d
}

/// Row-space membership: is `v` in the span of `rows`?
pub fn in_row_span(rows: &QMat, v: &QVec) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let base = rank(rows);
    let mut ext = rows.clone();
    ext.push(v.clone());
    rank(&ext) == base
}
