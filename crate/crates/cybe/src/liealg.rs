//! Finite-dimensional simple Lie algebras: sl_n bases, brackets, invariant
//! forms, dual bases, the Casimir element, and triangular decompositions.
//!
//! Only sl_n is constructed natively (every explicit formula in scope is for
//! sl_n); other simple types can be loaded from a structure-constant file and
//! are validated against the full invariant battery on load.

use crate::linalg::{identity, inverse, QMat, QVec};
use crate::rat::{parse_rat, rat_str, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Which invariant bilinear form the algebra carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// Matrix trace form `tr(ab)` (sl_n only).
    Trace,
    /// Killing form `tr(ad a · ad b)`.
    Killing,
}

/// Index partition of the basis into strictly upper / Cartan / strictly
/// lower parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangular {
    pub plus: Vec<usize>,
    pub cartan: Vec<usize>,
    pub minus: Vec<usize>,
}

/// Coordinate vector of an element `a ∈ g` in the fixed basis.
pub type GVec = QVec;

/// Sparse element of `g ⊗ g`.
pub type Tensor2 = BTreeMap<(usize, usize), Rat>;
/// Sparse element of `g ⊗ g ⊗ g`.
pub type Tensor3 = BTreeMap<(usize, usize, usize), Rat>;

/// Errors from Lie algebra construction and validation.
#[derive(Debug, Error)]
pub enum LieError {
    #[error("sl_n needs n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("structure constants violate {0} on basis indices {1:?}")]
    InvariantViolation(&'static str, Vec<usize>),
    #[error("gram matrix is singular")]
    SingularGram,
    #[error("malformed structure-constant file: {0}")]
    BadFile(String),
}

/// A finite-dimensional Lie algebra with a chosen invariant form.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    /// Dimension q.
    pub dim: usize,
    /// Symbolic basis labels (sl_n: `e_{ij}` row-major for i≠j, then `h_i`).
    pub labels: Vec<String>,
    /// Sparse structure constants: `(i, j) → [g_i, g_j]` as (index, coeff).
    pub brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    /// The chosen invariant form.
    pub form_kind: FormKind,
    /// Gram matrix of the form on the basis.
    pub gram: QMat,
    /// Triangular decomposition of the basis indices.
    pub triangular: Triangular,
    /// For natively constructed sl_n: the basis realized as n×n matrices.
    pub matrices: Option<Vec<QMat>>,
    /// For natively constructed sl_n: the rank parameter n.
    pub sl_rank: Option<usize>,
}

impl LieAlgebra {
    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, a: &GVec, b: &GVec) -> GVec {
        assert_eq!(a.len(), self.dim, "dimension mismatch");
        assert_eq!(b.len(), self.dim, "dimension mismatch");
        let mut out = vec![Rat::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                if let Some(terms) = self.brackets.get(&(i, j)) {
                    let c = ai.clone() * bj.clone();
                    for (k, s) in terms {
                        out[*k] += c.clone() * s.clone();
                    }
                }
            }
        }
        out
    }

    /// Bracket of two basis elements as a sparse list.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        self.brackets.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// The invariant form on coordinate vectors.
    pub fn form(&self, a: &GVec, b: &GVec) -> Rat {
        let mut acc = Rat::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += ai.clone() * bj.clone() * self.gram[i][j].clone();
                }
            }
        }
        acc
    }

    /// Basis vector `g_i` as a coordinate vector.
    pub fn basis_vec(&self, i: usize) -> GVec {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    /// The adjoint matrix of basis element `g_i`.
    pub fn ad_matrix(&self, i: usize) -> QMat {
        let mut m = vec![vec![Rat::zero(); self.dim]; self.dim];
        for j in 0..self.dim {
            for (k, c) in self.bracket_basis(i, j) {
                m[k][j] = c;
            }
        }
        m
    }

    /// Dual basis of the full basis: `g_i* = Σ_j (G⁻¹)_{ij} g_j`, so that
    /// `F(g_i*, g_j) = δ_{ij}`.
    pub fn full_dual_basis(&self) -> Result<Vec<GVec>, LieError> {
        let inv = inverse(&self.gram).ok_or(LieError::SingularGram)?;
        Ok((0..self.dim).map(|i| inv[i].clone()).collect())
    }

    /// Dual vectors for a basis subset: `d_i` with `F(d_i, g_j) = δ_{ij}`
    /// for `i, j` ranging over `subset`, with `d_i` supported on `subset`.
    pub fn dual_basis(&self, subset: &[usize]) -> Result<Vec<GVec>, LieError> {
        let k = subset.len();
        let sub: QMat = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.gram[i][j].clone()).collect())
            .collect();
        let inv = inverse(&sub).ok_or(LieError::SingularGram)?;
        let mut out = Vec::with_capacity(k);
        for row in inv.iter().take(k) {
            let mut v = vec![Rat::zero(); self.dim];
            for (c, &j) in row.iter().zip(subset) {
                v[j] = c.clone();
            }
            out.push(v);
        }
        Ok(out)
    }

    /// The Casimir element `γ = Σ g_i* ⊗ g_i` of the chosen form.
    pub fn casimir(&self) -> Result<Tensor2, LieError> {
        let duals = self.full_dual_basis()?;
        let mut t = Tensor2::new();
        for (i, d) in duals.iter().enumerate() {
            for (j, c) in d.iter().enumerate() {
                if !c.is_zero() {
                    add_t2(&mut t, (j, i), c.clone());
                }
            }
        }
        Ok(t)
    }

    /// `[a ⊗ 1 + 1 ⊗ a, t]` for a basis element `a = g_i` — the adjoint
    /// action on 2-tensors, used to assert Casimir ad-invariance.
    pub fn ad_on_tensor2(&self, i: usize, t: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::new();
        for (&(p, q), c) in t {
            for (k, s) in self.bracket_basis(i, p) {
                add_t2(&mut out, (k, q), c.clone() * s);
            }
            for (k, s) in self.bracket_basis(i, q) {
                add_t2(&mut out, (p, k), c.clone() * s);
            }
        }
        out
    }

    /// Verify antisymmetry, the Jacobi identity, gram symmetry and
    /// invertibility, form invariance, and abelianity of the Cartan part.
    pub fn validate(&self) -> Result<(), LieError> {
        let q = self.dim;
        // Antisymmetry.
        for i in 0..q {
            for j in 0..q {
                let ij = self.bracket(&self.basis_vec(i), &self.basis_vec(j));
                let ji = self.bracket(&self.basis_vec(j), &self.basis_vec(i));
                if ij.iter().zip(&ji).any(|(a, b)| a.clone() + b.clone() != Rat::zero()) {
                    return Err(LieError::InvariantViolation("antisymmetry", vec![i, j]));
                }
            }
        }
        // Jacobi on all basis triples.
        for i in 0..q {
            for j in 0..q {
                for k in 0..q {
                    let mut acc = vec![Rat::zero(); q];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket(&self.basis_vec(a), &self.basis_vec(b));
                        let outer = self.bracket(&inner, &self.basis_vec(c));
                        for (x, y) in acc.iter_mut().zip(outer) {
                            *x += y;
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::InvariantViolation("jacobi", vec![i, j, k]));
                    }
                }
            }
        }
        // Gram symmetric and invertible.
        for i in 0..q {
            for j in 0..q {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(LieError::InvariantViolation("gram symmetry", vec![i, j]));
                }
            }
        }
        if inverse(&self.gram).is_none() {
            return Err(LieError::SingularGram);
        }
        // Form invariance F([a,b],c) = F(a,[b,c]).
        for i in 0..q {
            for j in 0..q {
                for k in 0..q {
                    let lhs = self.form(
                        &self.bracket(&self.basis_vec(i), &self.basis_vec(j)),
                        &self.basis_vec(k),
                    );
                    let rhs = self.form(
                        &self.basis_vec(i),
                        &self.bracket(&self.basis_vec(j), &self.basis_vec(k)),
                    );
                    if lhs != rhs {
                        return Err(LieError::InvariantViolation("form invariance", vec![i, j, k]));
                    }
                }
            }
        }
        // Cartan indices span an abelian subalgebra.
        for &i in &self.triangular.cartan {
            for &j in &self.triangular.cartan {
                if !self.bracket_basis(i, j).is_empty() {
                    return Err(LieError::InvariantViolation("abelian cartan", vec![i, j]));
                }
            }
        }
        Ok(())
    }
}

/// Add into a sparse 2-tensor, dropping zeros.
pub fn add_t2(t: &mut Tensor2, key: (usize, usize), c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(key).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// Add into a sparse 3-tensor, dropping zeros.
pub fn add_t3(t: &mut Tensor3, key: (usize, usize, usize), c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(key).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// Swap the two legs of a 2-tensor.
pub fn swap_t2(t: &Tensor2) -> Tensor2 {
    t.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect()
}

/// Construct sl_n with the matrix-unit/Cartan basis.
///
/// Basis order: `e_{ij}` for all i≠j in row-major order, then
/// `h_i = e_{ii} − e_{i+1,i+1}` for i = 1..n−1.
pub fn make_sl(n: usize, form_kind: FormKind) -> Result<LieAlgebra, LieError> {
    if n < 2 {
        return Err(LieError::RankTooSmall(n));
    }
    let q = n * n - 1;
    let mut labels = Vec::with_capacity(q);
    let mut mats: Vec<QMat> = Vec::with_capacity(q);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(format!("e_{{{},{}}}", i + 1, j + 1));
                let mut m = vec![vec![Rat::zero(); n]; n];
                m[i][j] = Rat::one();
                mats.push(m);
            }
        }
    }
    for i in 0..(n - 1) {
        labels.push(format!("h_{{{}}}", i + 1));
        let mut m = vec![vec![Rat::zero(); n]; n];
        m[i][i] = Rat::one();
        m[i + 1][i + 1] = -Rat::one();
        mats.push(m);
    }

    // Structure constants from matrix commutators.
    let mut brackets = BTreeMap::new();
    for a in 0..q {
        for b in 0..q {
            let comm = mat_comm(&mats[a], &mats[b]);
            let coords = sl_coords(n, &comm);
            let sparse: Vec<(usize, Rat)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !sparse.is_empty() {
                brackets.insert((a, b), sparse);
            }
        }
    }

    // Triangular decomposition by matrix-unit position.
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut idx = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                if i < j {
                    plus.push(idx);
                } else {
                    minus.push(idx);
                }
                idx += 1;
            }
        }
    }
    let cartan: Vec<usize> = (q - (n - 1)..q).collect();

    // Gram matrix.
    let mut alg = LieAlgebra {
        dim: q,
        labels,
        brackets,
        form_kind,
        gram: identity(q),
        triangular: Triangular { plus, cartan, minus },
        matrices: Some(mats.clone()),
        sl_rank: Some(n),
    };
    alg.gram = match form_kind {
        FormKind::Trace => {
            let mut g = vec![vec![Rat::zero(); q]; q];
            for a in 0..q {
                for b in 0..q {
                    g[a][b] = mat_trace(&crate::linalg::mat_mul(&mats[a], &mats[b]));
                }
            }
            g
        }
        FormKind::Killing => killing_gram(&alg),
    };
    Ok(alg)
}

/// Killing form Gram matrix `tr(ad g_i · ad g_j)` from structure constants.
pub fn killing_gram(alg: &LieAlgebra) -> QMat {
    let q = alg.dim;
    let ads: Vec<QMat> = (0..q).map(|i| alg.ad_matrix(i)).collect();
    let mut g = vec![vec![Rat::zero(); q]; q];
    for a in 0..q {
        for b in 0..q {
            g[a][b] = mat_trace(&crate::linalg::mat_mul(&ads[a], &ads[b]));
        }
    }
    g
}

/// Matrix commutator `AB − BA`.
pub fn mat_comm(a: &QMat, b: &QMat) -> QMat {
    let ab = crate::linalg::mat_mul(a, b);
    let ba = crate::linalg::mat_mul(b, a);
    ab.into_iter()
        .zip(ba)
        .map(|(ra, rb)| ra.into_iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

/// Trace of a square matrix.
pub fn mat_trace(a: &QMat) -> Rat {
    (0..a.len()).map(|i| a[i][i].clone()).fold(Rat::zero(), |s, x| s + x)
}

/// Coordinates of a traceless n×n matrix in the sl_n basis.
///
/// # Panics
/// Panics when the matrix has nonzero trace.
pub fn sl_coords(n: usize, m: &QMat) -> GVec {
    assert!(mat_trace(m).is_zero(), "matrix is not traceless");
    let q = n * n - 1;
    let mut v = vec![Rat::zero(); q];
    let mut idx = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                v[idx] = m[i][j].clone();
                idx += 1;
            }
        }
    }
    // Diagonal part: m_diag = Σ c_k h_k with c_k = Σ_{j ≤ k} m_{jj}.
    let mut partial = Rat::zero();
    for k in 0..(n - 1) {
        partial += m[k][k].clone();
        v[idx + k] = partial.clone();
    }
    v
}

/// Traceless n×n matrix with the given sl_n coordinates (inverse of
/// [`sl_coords`]).
pub fn sl_matrix(n: usize, v: &GVec) -> QMat {
    let mut m = vec![vec![Rat::zero(); n]; n];
    let mut idx = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[i][j] = v[idx].clone();
                idx += 1;
            }
        }
    }
    for k in 0..(n - 1) {
        let c = v[idx + k].clone();
        m[k][k] += c.clone();
        m[k + 1][k + 1] -= c;
    }
    m
}

/// Index of the matrix unit `e_{ij}` (1-based i, j) in the sl_n basis.
pub fn sl_unit_index(n: usize, i: usize, j: usize) -> usize {
    assert!(i != j && 1 <= i && i <= n && 1 <= j && j <= n);
    let (i0, j0) = (i - 1, j - 1);
    let mut idx = 0;
    for a in 0..n {
        for b in 0..n {
            if a != b {
                if (a, b) == (i0, j0) {
                    return idx;
                }
                idx += 1;
            }
        }
    }
    unreachable!()
}

/// Index of `h_i` (1-based) in the sl_n basis.
pub fn sl_cartan_index(n: usize, i: usize) -> usize {
    assert!(1 <= i && i < n);
    n * n - n + (i - 1)
}

// ---------------------------------------------------------------------------
// Structure-constant file loading
// ---------------------------------------------------------------------------

/// JSON schema for a structure-constant file.
#[derive(Debug, Serialize, Deserialize)]
pub struct LieAlgebraFile {
    pub dim: usize,
    pub labels: Vec<String>,
    /// Entries `[i, j, [[k, "p/q"], …]]` giving `[g_i, g_j]`.
    pub brackets: Vec<(usize, usize, Vec<(usize, String)>)>,
    pub form: FormKind,
    /// Triangular partition of basis indices.
    pub plus: Vec<usize>,
    pub cartan: Vec<usize>,
    pub minus: Vec<usize>,
}

/// Load and fully re-validate a Lie algebra from its JSON file model.
pub fn load_lie_algebra(file: &LieAlgebraFile) -> Result<LieAlgebra, LieError> {
    let q = file.dim;
    if file.labels.len() != q {
        return Err(LieError::BadFile(format!(
            "{} labels for dimension {q}",
            file.labels.len()
        )));
    }
    let mut brackets = BTreeMap::new();
    for (i, j, terms) in &file.brackets {
        if *i >= q || *j >= q {
            return Err(LieError::BadFile(format!("bracket index out of range: ({i},{j})")));
        }
        let mut sparse = Vec::new();
        for (k, s) in terms {
            if *k >= q {
                return Err(LieError::BadFile(format!("bracket target out of range: {k}")));
            }
            let c = parse_rat(s).map_err(LieError::BadFile)?;
            if !c.is_zero() {
                sparse.push((*k, c));
            }
        }
        if !sparse.is_empty() {
            brackets.insert((*i, *j), sparse);
        }
    }
    let mut alg = LieAlgebra {
        dim: q,
        labels: file.labels.clone(),
        brackets,
        form_kind: file.form,
        gram: identity(q),
        triangular: Triangular {
            plus: file.plus.clone(),
            cartan: file.cartan.clone(),
            minus: file.minus.clone(),
        },
        matrices: None,
        sl_rank: None,
    };
    // Only the Killing form can be computed from structure constants alone.
    alg.gram = match file.form {
        FormKind::Killing => killing_gram(&alg),
        FormKind::Trace => {
            return Err(LieError::BadFile(
                "trace form requires a native sl_n construction".into(),
            ))
        }
    };
    alg.validate()?;
    Ok(alg)
}

/// Serialize a 2-tensor with string rationals (for JSON interfaces).
pub fn tensor2_to_json(t: &Tensor2) -> Vec<(usize, usize, String)> {
    t.iter().map(|(&(i, j), c)| (i, j, rat_str(c))).collect()
}
