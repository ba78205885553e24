//! Truncated Manin-triple machinery on M = L × L‡: the form F, the standard
//! Lagrangian W°, the twist ↔ Lagrangian-subspace correspondence, the
//! standard cobracket and the twist-equation residual, the W^trg_{(c,d)}
//! subalgebras, the nodal and cuspidal dual-basis recipes, formal series
//! expansion, and Stolin constant Manin triples.
//!
//! Conventions: an element f = az^k of L embeds diagonally as
//! (a z₊^k, a z₋^{−k}); F((f₊,f₋),(g₊,g₋)) = B(f₊,g₊) − B‡(f₋,g₋). All
//! subspace computations are windowed: degrees live in [−N, N] and every
//! assertion is made on a band where truncation is provably sound.

use crate::grading::identity_auto;
use crate::liealg::{make_sl, FormKind, GVec, LieAlgebra, Tensor2};
use crate::linalg::{in_row_span, rank, solve_linear, LinSolve, QMat, QVec};
use crate::loops::{LoopAlgebra, LoopElt};
use crate::rat::{Rat, ratz};
use crate::rtensor::{cybe_residual, Denom, RMatElem, Tensor3Poly};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from the Manin-triple machinery, each naming the violated axiom
/// or truncation limit.
#[derive(Debug, Error)]
pub enum ManinError {
    #[error("window {0} too small: {1}")]
    WindowTooSmall(i64, String),
    #[error("subspace is not complementary to the diagonal: {0}")]
    NotComplementary(String),
    #[error("subspace is not Lagrangian (isotropy fails)")]
    NotLagrangian,
    #[error("numerator is not divisible by the denominator (element outside L or bad pole)")]
    NotDivisible,
    #[error("dual element has a non-diagonal correction part")]
    NonDiagonalH,
    #[error("nonzero h at the window boundary band (window too small to certify finiteness)")]
    BoundaryH,
    #[error("pole is not normalized: leading series term is not the Casimir")]
    PoleNormalization,
    #[error("loop-algebra failure: {0}")]
    Loop(String),
    #[error("recipe requires the identity grading (m = 1), got m = {0}")]
    GradingOrder(usize),
    #[error("linear solve failed: {0}")]
    Linear(String),
}

// ---------------------------------------------------------------------------
// Pairs and truncated subspaces
// ---------------------------------------------------------------------------

/// An element of M = L × L‡; `plus` is graded by σ, `minus` by σ^{−1}
/// (degree k carries the (−k)-residue eigenspace).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopPair {
    pub plus: LoopElt,
    pub minus: LoopElt,
}

impl LoopPair {
    pub fn zero() -> Self {
        LoopPair { plus: LoopElt::zero(), minus: LoopElt::zero() }
    }

    /// The diagonal embedding f ↦ (f, f‡).
    pub fn diag(f: &LoopElt) -> Self {
        LoopPair { plus: f.clone(), minus: f.dagger() }
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    pub fn add(&mut self, other: &LoopPair) {
        self.plus.add(&other.plus);
        self.minus.add(&other.minus);
    }

    pub fn scale(&self, c: &Rat) -> LoopPair {
        LoopPair { plus: self.plus.scale(c), minus: self.minus.scale(c) }
    }
}

/// A window-truncated subspace of M given by spanning pairs.
#[derive(Debug, Clone)]
pub struct TruncSubspace {
    pub window: i64,
    pub vectors: Vec<LoopPair>,
    pub reduced: bool,
}

/// Flatten a pair into window coordinates (plus block then minus block).
pub fn pair_coords(la: &LoopAlgebra, p: &LoopPair, window: i64) -> Result<QVec, ManinError> {
    let mut v = la
        .window_coords(&p.plus, window)
        .map_err(|e| ManinError::WindowTooSmall(window, e.to_string()))?;
    let w = la
        .window_coords(&p.minus, window)
        .map_err(|e| ManinError::WindowTooSmall(window, e.to_string()))?;
    v.extend(w);
    Ok(v)
}

/// Rebuild a pair from window coordinates.
pub fn pair_from_coords(la: &LoopAlgebra, v: &QVec, window: i64) -> LoopPair {
    let q = la.alg.dim;
    let width = (2 * window + 1) as usize;
    let mut plus = LoopElt::zero();
    let mut minus = LoopElt::zero();
    for k_off in 0..width {
        let k = k_off as i64 - window;
        let mut a = vec![Rat::zero(); q];
        let mut b = vec![Rat::zero(); q];
        let mut nz_a = false;
        let mut nz_b = false;
        for i in 0..q {
            let ca = v[k_off * q + i].clone();
            let cb = v[width * q + k_off * q + i].clone();
            if !ca.is_zero() {
                nz_a = true;
            }
            if !cb.is_zero() {
                nz_b = true;
            }
            a[i] = ca;
            b[i] = cb;
        }
        if nz_a {
            plus.add_term(k, &a);
        }
        if nz_b {
            minus.add_term(k, &b);
        }
    }
    LoopPair { plus, minus }
}

impl TruncSubspace {
    /// Coordinate matrix of the spanning vectors.
    pub fn coords(&self, la: &LoopAlgebra) -> Result<QMat, ManinError> {
        self.vectors.iter().map(|p| pair_coords(la, p, self.window)).collect()
    }

    /// Row-reduce the spanning set, dropping dependent vectors.
    pub fn reduce(&mut self, la: &LoopAlgebra) -> Result<(), ManinError> {
        let m = self.coords(la)?;
        let (rr, pivots) = crate::linalg::rref(&m);
        self.vectors = rr
            .iter()
            .take(pivots.len())
            .map(|row| pair_from_coords(la, row, self.window))
            .collect();
        self.reduced = true;
        Ok(())
    }

    pub fn rank(&self, la: &LoopAlgebra) -> Result<usize, ManinError> {
        Ok(rank(&self.coords(la)?))
    }

    /// Membership of a pair in the window span.
    pub fn contains(&self, la: &LoopAlgebra, p: &LoopPair) -> Result<bool, ManinError> {
        let m = self.coords(la)?;
        let v = pair_coords(la, p, self.window)?;
        Ok(in_row_span(&m, &v))
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// JSON schema for a pair: `{plus: LoopEltFile, minus: LoopEltFile}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct LoopPairFile {
    pub plus: crate::loops::LoopEltFile,
    pub minus: crate::loops::LoopEltFile,
}

/// JSON schema for a truncated subspace: `{window, vectors}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct TruncSubspaceFile {
    pub window: i64,
    pub vectors: Vec<LoopPairFile>,
}

/// Serialize a truncated subspace.
pub fn trunc_to_file(la: &LoopAlgebra, w: &TruncSubspace) -> TruncSubspaceFile {
    TruncSubspaceFile {
        window: w.window,
        vectors: w
            .vectors
            .iter()
            .map(|p| LoopPairFile {
                plus: crate::loops::loop_elt_to_file(la, &p.plus),
                minus: crate::loops::loop_elt_to_file(la, &p.minus),
            })
            .collect(),
    }
}

/// Deserialize and grading-check a truncated subspace; minus components
/// are checked against the daggered grading.
pub fn trunc_from_file(
    la: &LoopAlgebra,
    file: &TruncSubspaceFile,
) -> Result<TruncSubspace, ManinError> {
    let mut vectors = Vec::new();
    for pf in &file.vectors {
        let plus = crate::loops::loop_elt_from_file(la, &pf.plus)
            .map_err(|e| ManinError::Loop(e.to_string()))?;
        // Reuse the element parser but re-check with the daggered flag.
        let minus = crate::loops::loop_elt_from_file_daggered(la, &pf.minus)
            .map_err(|e| ManinError::Loop(e.to_string()))?;
        vectors.push(LoopPair { plus, minus });
    }
    Ok(TruncSubspace { window: file.window, vectors, reduced: false })
}

// ---------------------------------------------------------------------------
// The form F and the standard Lagrangian
// ---------------------------------------------------------------------------

/// F((f₊,f₋),(g₊,g₋)) = B(f₊,g₊) − B‡(f₋,g₋).
pub fn form_f(la: &LoopAlgebra, p: &LoopPair, q: &LoopPair) -> Rat {
    la.form_b(&p.plus, &q.plus) - la.form_b(&p.minus, &q.minus)
}

/// The window basis of the diagonal D: diag(g_i z^k) for |k| ≤ N, with
/// only σ-graded (k, i) combinations.
pub fn diagonal_basis(la: &LoopAlgebra, window: i64) -> Vec<LoopPair> {
    let q = la.alg.dim;
    let mut out = Vec::new();
    for k in -window..=window {
        let res = la.auto.residue_of_degree(k);
        for i in 0..q {
            if la.auto.residues[i] == res {
                out.push(LoopPair::diag(&LoopElt::single(k, la.alg.basis_vec(i))));
            }
        }
    }
    out
}

/// The standard Lagrangian W° = {(f₊,f₋) ∈ B₊×B₋ : π₊(f₊) + π₋(f₋) = 0},
/// truncated to the window: positive-degree blocks on both sides, the
/// degree-0 nilpotent parts, and the Cartan antidiagonal (h, −h).
pub fn standard_w(la: &LoopAlgebra, window: i64) -> Result<TruncSubspace, ManinError> {
    if window < 1 {
        return Err(ManinError::WindowTooSmall(window, "need window >= 1".into()));
    }
    let mut vectors = Vec::new();
    let auto = &la.auto;
    for k in 1..=window {
        let res_p = auto.residue_of_degree(k);
        for i in 0..la.alg.dim {
            if auto.residues[i] == res_p {
                vectors.push(LoopPair {
                    plus: LoopElt::single(k, la.alg.basis_vec(i)),
                    minus: LoopElt::zero(),
                });
            }
        }
        // Minus side: degree k in z₋ carries g‡_k = g_{−k}.
        let res_m = auto.residue_of_degree(-k);
        for i in 0..la.alg.dim {
            if auto.residues[i] == res_m {
                vectors.push(LoopPair {
                    plus: LoopElt::zero(),
                    minus: LoopElt::single(k, la.alg.basis_vec(i)),
                });
            }
        }
    }
    for &i in &auto.g0_plus {
        vectors.push(LoopPair {
            plus: LoopElt::single(0, la.alg.basis_vec(i)),
            minus: LoopElt::zero(),
        });
    }
    for &i in &auto.g0_minus {
        vectors.push(LoopPair {
            plus: LoopElt::zero(),
            minus: LoopElt::single(0, la.alg.basis_vec(i)),
        });
    }
    for &i in &auto.g0_cartan {
        let h = la.alg.basis_vec(i);
        vectors.push(LoopPair {
            plus: LoopElt::single(0, h.clone()),
            minus: LoopElt::single(0, h).neg_pair(),
        });
    }
    Ok(TruncSubspace { window, vectors, reduced: true })
}

// A small extension trait-free helper: LoopElt negation via scale.
trait NegPair {
    fn neg_pair(self) -> LoopElt;
}
impl NegPair for LoopElt {
    fn neg_pair(self) -> LoopElt {
        self.neg()
    }
}

// ---------------------------------------------------------------------------
// Twist ↔ subspace correspondence
// ---------------------------------------------------------------------------

/// Decompose a loop-compatible twist tensor (denominator One) into
/// elementary diagonal pairs (aᵢ, bᵢ) of M.
fn twist_elementaries(la: &LoopAlgebra, t: &RMatElem) -> Vec<(LoopPair, LoopPair, Rat)> {
    let mut out = Vec::new();
    for (&(i, j, a, b), c) in &t.terms {
        let ai = LoopPair::diag(&LoopElt::single(a, la.alg.basis_vec(i)));
        let bj = LoopPair::diag(&LoopElt::single(b, la.alg.basis_vec(j)));
        out.push((ai, bj, c.clone()));
    }
    out
}

/// W_t = {w + f_t(w) : w ∈ W°} with f_t(w) = Σ F(w, aᵢ)·bᵢ.
pub fn w_from_twist(
    la: &LoopAlgebra,
    t: &RMatElem,
    w0: &TruncSubspace,
) -> Result<TruncSubspace, ManinError> {
    let elems = twist_elementaries(la, t);
    let mut vectors = Vec::new();
    for w in &w0.vectors {
        let mut v = w.clone();
        for (ai, bj, c) in &elems {
            let coef = form_f(la, w, ai) * c.clone();
            if !coef.is_zero() {
                v.add(&bj.scale(&coef));
            }
        }
        // Window check: f_t images must stay inside.
        pair_coords(la, &v, w0.window)?;
        vectors.push(v);
    }
    Ok(TruncSubspace { window: w0.window, vectors, reduced: false })
}

/// Reconstruct the unique t with W = W_t. Works band-by-band: for each
/// diagonal basis element d_{(k,i)} with |k| ≤ band, the F-dual element of
/// W° is decomposed along M = W ∔ D, and the D-component assembles t.
pub fn twist_from_w(
    la: &LoopAlgebra,
    w: &TruncSubspace,
    w0: &TruncSubspace,
    band: i64,
) -> Result<RMatElem, ManinError> {
    let window = w.window;
    if band > window {
        return Err(ManinError::WindowTooSmall(window, "band exceeds window".into()));
    }
    let q = la.alg.dim;
    let diag = diagonal_basis(la, window);
    // F-Gram of W° spanning vectors against the diagonal band elements.
    let band_diag: Vec<(i64, usize, LoopPair)> = {
        let mut out = Vec::new();
        for k in -band..=band {
            let res = la.auto.residue_of_degree(k);
            for i in 0..q {
                if la.auto.residues[i] == res {
                    out.push((k, i, LoopPair::diag(&LoopElt::single(k, la.alg.basis_vec(i)))));
                }
            }
        }
        out
    };
    // Solve for dual elements w^{(k,i)} ∈ span(W°) with
    // F(w^{(k,i)}, d_{(l,j)}) = δ over the full diagonal window.
    let gram: QMat = w0
        .vectors
        .iter()
        .map(|v| diag.iter().map(|d| form_f(la, v, d)).collect())
        .collect();
    // Rows: one equation per diagonal window element; unknowns: W° coefficients.
    let rows: QMat = (0..diag.len())
        .map(|r| (0..w0.vectors.len()).map(|c| gram[c][r].clone()).collect())
        .collect();
    let wcoords = w.coords(la)?;
    let dcoords: QMat = diag
        .iter()
        .map(|d| pair_coords(la, d, window))
        .collect::<Result<_, _>>()?;
    let mut t = RMatElem::zero(la.auto.m, Denom::One);
    for (k, i, d_target) in &band_diag {
        // Dual element in W°.
        let rhs: QVec = diag
            .iter()
            .map(|d| {
                if form_f(la, d_target, d).is_zero() && !std::ptr::eq(d, d_target) {
                    Rat::zero()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        let mut rhs = rhs;
        // The right-hand side is the delta at (k, i)'s position in `diag`.
        let pos = diag
            .iter()
            .position(|d| {
                d.plus.terms.len() == 1
                    && d.plus.terms.get(k).map_or(false, |v| {
                        v.iter().enumerate().all(|(l, c)| (l == *i) == c.is_one() && (c.is_one() || c.is_zero()))
                    })
            })
            .ok_or_else(|| ManinError::Linear("diagonal element not found".into()))?;
        rhs[pos] = Rat::one();
        let sol = match solve_linear(&rows, &rhs) {
            LinSolve::Solved { particular, .. } => particular,
            LinSolve::Inconsistent => {
                return Err(ManinError::NotComplementary(
                    "F-dual system for W° is singular".into(),
                ))
            }
        };
        let mut dual = LoopPair::zero();
        for (a, c) in sol.iter().enumerate() {
            if !c.is_zero() {
                dual.add(&w0.vectors[a].scale(c));
            }
        }
        // Decompose dual = v − d with v ∈ W, d ∈ D: solve over [W | D].
        let mut sys: QMat = wcoords.clone();
        sys.extend(dcoords.iter().cloned());
        let target = pair_coords(la, &dual, window)?;
        // Transpose: columns are the generators.
        let ncols = sys.len();
        let nrows = target.len();
        let mat: QMat = (0..nrows)
            .map(|r| (0..ncols).map(|c| sys[c][r].clone()).collect())
            .collect();
        let sol = match solve_linear(&mat, &target) {
            LinSolve::Solved { particular, .. } => particular,
            LinSolve::Inconsistent => {
                return Err(ManinError::NotComplementary(
                    "W + D does not span the dual element".into(),
                ))
            }
        };
        // f_t(w^{(k,i)}) = −(D-part): dual = v + Σ y_b d_b ⟹ v = dual − Σ y_b d_b
        // lies in W and dual = v + d with d = Σ y_b d_b, so f_t = d.
        let mut ft = LoopElt::zero();
        for (b, c) in sol.iter().skip(wcoords.len()).enumerate() {
            if !c.is_zero() {
                ft.add(&diag[b].plus.scale(&-c.clone()));
            }
        }
        // t += g_i z^k ⊗ ft.
        for (l, v) in &ft.terms {
            for (j, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    t.add_term((*i, j, *k, *l), c.clone());
                }
            }
        }
    }
    Ok(t)
}

/// Manin-triple report for a windowed subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManinReport {
    pub isotropy: bool,
    pub diagonal_complement: bool,
    pub bracket_closure: bool,
}

/// Check the three Manin-triple conditions within the safe window.
pub fn check_manin(la: &LoopAlgebra, w: &TruncSubspace) -> Result<ManinReport, ManinError> {
    let n = w.vectors.len();
    let mut isotropy = true;
    for i in 0..n {
        for j in i..n {
            if !form_f(la, &w.vectors[i], &w.vectors[j]).is_zero() {
                isotropy = false;
            }
        }
    }
    // D-window ⊕ W-window = M-window by rank.
    let diag = diagonal_basis(la, w.window);
    let mut all: QMat = w.coords(la)?;
    let w_rank = rank(&all);
    for d in &diag {
        all.push(pair_coords(la, d, w.window)?);
    }
    let total = rank(&all);
    let m_dim = {
        // Number of graded coordinates on both sides of the window.
        let mut c = 0usize;
        for k in -w.window..=w.window {
            c += la.auto.eigenspace(la.auto.residue_of_degree(k)).len();
            c += la.auto.eigenspace(la.auto.residue_of_degree(-k)).len();
        }
        c
    };
    let diagonal_complement = total == m_dim && w_rank + diag.len() == total;
    // Bracket closure on pairs whose bracket stays inside the window.
    let coords = w.coords(la)?;
    let mut bracket_closure = true;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let br = LoopPair {
                plus: la.bracket(&w.vectors[i].plus, &w.vectors[j].plus),
                minus: la.bracket(&w.vectors[i].minus, &w.vectors[j].minus),
            };
            let in_window = pair_coords(la, &br, w.window);
            match in_window {
                Ok(v) => {
                    if !in_row_span(&coords, &v) {
                        bracket_closure = false;
                        break 'outer;
                    }
                }
                Err(_) => continue, // outside the window: not testable
            }
        }
    }
    Ok(ManinReport { isotropy, diagonal_complement, bracket_closure })
}

/// Projection report for a windowed subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectReport {
    pub w_plus_rank: usize,
    pub w_minus_rank: usize,
    pub v_plus_rank: usize,
    pub v_minus_rank: usize,
    pub quotient_dim: usize,
    pub v_intersection_dim: usize,
    pub stable_plus: bool,
    pub stable_minus: bool,
}

/// Images W_± under the projections M → L_±, the pullbacks V_± ⊂ L, and
/// ℂ[t]-stability of W_± within the safe window.
pub fn project_w(la: &LoopAlgebra, w: &TruncSubspace) -> Result<ProjectReport, ManinError> {
    let window = w.window;
    let plus_rows: QMat = w
        .vectors
        .iter()
        .map(|p| la.window_coords(&p.plus, window))
        .collect::<Result<_, _>>()
        .map_err(|e| ManinError::WindowTooSmall(window, e.to_string()))?;
    let minus_rows: QMat = w
        .vectors
        .iter()
        .map(|p| la.window_coords(&p.minus, window))
        .collect::<Result<_, _>>()
        .map_err(|e| ManinError::WindowTooSmall(window, e.to_string()))?;
    let w_rank = w.rank(la)?;
    let w_plus_rank = rank(&plus_rows);
    let w_minus_rank = rank(&minus_rows);
    // V₊ = {f₊ : (f₊, 0) ∈ W}: combinations with vanishing minus part.
    let v_plus = pullback(&plus_rows, &minus_rows);
    let v_minus_raw = pullback(&minus_rows, &plus_rows);
    // V₋ pulled back to L via the dagger (an involution).
    let v_minus: QMat = v_minus_raw
        .iter()
        .map(|row| {
            let f = loop_elt_from_window(la, row, window);
            la.window_coords(&f.dagger(), window).unwrap()
        })
        .collect();
    let v_plus_rank = rank(&v_plus);
    let v_minus_rank = rank(&v_minus);
    let mut both = v_plus.clone();
    both.extend(v_minus.iter().cloned());
    let v_union = rank(&both);
    let v_intersection_dim = v_plus_rank + v_minus_rank - v_union;
    let quotient_dim = w_plus_rank + w_minus_rank - w_rank;
    let m = la.auto.m as i64;
    let stable_plus = shift_stable(la, &plus_rows, window, m);
    let stable_minus = shift_stable(la, &minus_rows, window, m);
    Ok(ProjectReport {
        w_plus_rank,
        w_minus_rank,
        v_plus_rank,
        v_minus_rank,
        quotient_dim,
        v_intersection_dim,
        stable_plus,
        stable_minus,
    })
}

fn loop_elt_from_window(la: &LoopAlgebra, row: &QVec, window: i64) -> LoopElt {
    let q = la.alg.dim;
    let mut f = LoopElt::zero();
    for k_off in 0..(2 * window + 1) as usize {
        let k = k_off as i64 - window;
        let a: GVec = (0..q).map(|i| row[k_off * q + i].clone()).collect();
        if a.iter().any(|c| !c.is_zero()) {
            f.add_term(k, &a);
        }
    }
    f
}

/// Rows of `numer` whose companions in `other` vanish (combinations with
/// zero second component), as a basis in `numer` coordinates.
fn pullback(numer: &QMat, other: &QMat) -> QMat {
    // Solve x·other = 0 and return x·numer.
    let n = numer.len();
    if n == 0 {
        return Vec::new();
    }
    let cols = other[0].len();
    let mat: QMat = (0..cols).map(|c| (0..n).map(|r| other[r][c].clone()).collect()).collect();
    let kernel = crate::linalg::kernel_basis(&mat);
    kernel
        .iter()
        .map(|x| {
            let mut row = vec![Rat::zero(); numer[0].len()];
            for (r, c) in x.iter().enumerate() {
                if !c.is_zero() {
                    for (l, v) in numer[r].iter().enumerate() {
                        row[l] += c.clone() * v.clone();
                    }
                }
            }
            row
        })
        .collect()
}

/// z^m-shift stability of a window span, tested on vectors whose shift
/// stays inside the window.
fn shift_stable(la: &LoopAlgebra, rows: &QMat, window: i64, m: i64) -> bool {
    for row in rows {
        let f = loop_elt_from_window(la, row, window);
        if f.is_zero() {
            continue;
        }
        let shifted = f.shift(m);
        if let Some((_, hi)) = shifted.degree_range() {
            if hi > window {
                continue; // outside the window: not testable
            }
        }
        let v = la.window_coords(&shifted, window).unwrap();
        if !in_row_span(rows, &v) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// The standard cobracket and the twist equation
// ---------------------------------------------------------------------------

/// Exact division of a Laurent-polynomial tensor numerator by the
/// denominator x^m − y^m; errors when the pole does not cancel.
fn divide_denominator(
    terms: &BTreeMap<(usize, usize, i64, i64), Rat>,
    m: i64,
) -> Result<BTreeMap<(usize, usize, i64, i64), Rat>, ManinError> {
    let mut rem = terms.clone();
    let mut quot: BTreeMap<(usize, usize, i64, i64), Rat> = BTreeMap::new();
    let min_a = terms.keys().map(|k| k.2).min().unwrap_or(0);
    let floor = min_a - 64 * m;
    loop {
        rem.retain(|_, c| !c.is_zero());
        // Highest x-exponent term.
        let Some((&(i, j, a, b), c)) = rem.iter().max_by_key(|(k, _)| k.2) else {
            return Ok(quot);
        };
        let c = c.clone();
        if a - m < floor {
            return Err(ManinError::NotDivisible);
        }
        // Emit quotient term c·x^{a−m}y^b and subtract c·x^{a−m}y^b(x^m−y^m).
        *quot.entry((i, j, a - m, b)).or_insert_with(Rat::zero) += c.clone();
        rem.remove(&(i, j, a, b));
        let e = rem.entry((i, j, a - m, b + m)).or_insert_with(Rat::zero);
        *e += c;
    }
}

/// The cobracket δ(f) = [f(x)⊗1 + 1⊗f(y), r(x,y)] with the pole divided
/// out exactly; the result is a denominator-free tensor.
pub fn delta_cobracket(
    la: &LoopAlgebra,
    r: &RMatElem,
    f: &LoopElt,
) -> Result<RMatElem, ManinError> {
    let alg = &la.alg;
    let mut numer: BTreeMap<(usize, usize, i64, i64), Rat> = BTreeMap::new();
    for (&(p, q, a, b), c) in &r.terms {
        for (k, v) in &f.terms {
            for (l, vl) in v.iter().enumerate() {
                if vl.is_zero() {
                    continue;
                }
                // [f(x) ⊗ 1, ·]: bracket on the first leg.
                for (t, sc) in alg.bracket_basis(l, p) {
                    let e = numer.entry((t, q, a + k, b)).or_insert_with(Rat::zero);
                    *e += vl.clone() * sc * c.clone();
                }
                // [1 ⊗ f(y), ·]: bracket on the second leg.
                for (t, sc) in alg.bracket_basis(l, q) {
                    let e = numer.entry((p, t, a, b + k)).or_insert_with(Rat::zero);
                    *e += vl.clone() * sc * c.clone();
                }
            }
        }
    }
    numer.retain(|_, c| !c.is_zero());
    let divided = match r.denom {
        Denom::One => numer,
        Denom::XmY => divide_denominator(&numer, 1)?,
        Denom::XmYm => divide_denominator(&numer, r.m as i64)?,
    };
    let mut out = RMatElem::zero(r.m, Denom::One);
    for (k, c) in divided {
        out.add_term(k, c);
    }
    Ok(out)
}

/// alt(a⊗b⊗c) = a⊗b⊗c + c⊗a⊗b + b⊗c⊗a applied termwise.
fn alt3(t: &Tensor3Poly) -> Tensor3Poly {
    let mut out = Tensor3Poly::zero();
    for (&(i, j, l, a, b, c), v) in &t.terms {
        out.add_term((i, j, l, a, b, c), v.clone());
        out.add_term((l, i, j, c, a, b), v.clone());
        out.add_term((j, l, i, b, c, a), v.clone());
    }
    out
}

/// The twist-equation residual alt((δ_◦⊗1)(t)) − [[t,t]] as an exact
/// Laurent polynomial in (x₁, x₂, x₃); zero iff δ_t is a Lie bialgebra
/// cobracket.
pub fn twist_equation_residual(
    la: &LoopAlgebra,
    t: &RMatElem,
    r0: &RMatElem,
) -> Result<Tensor3Poly, ManinError> {
    let alg = &la.alg;
    // (δ_◦ ⊗ 1)(t): cobracket on the first leg, third leg carried along.
    let mut dt = Tensor3Poly::zero();
    for (&(i, j, a, b), c) in &t.terms {
        let f = LoopElt::single(a, alg.basis_vec(i));
        let d = delta_cobracket(la, r0, &f)?;
        for (&(p, q, e1, e2), dc) in &d.terms {
            dt.add_term((p, q, j, e1, e2, b), dc.clone() * c.clone());
        }
    }
    let mut res = alt3(&dt);
    // [[t,t]] is the Yang–Baxter expression of the constant-denominator t.
    let tt = cybe_residual(alg, t);
    for (&k, c) in &tt.terms {
        res.add_term(k, -c.clone());
    }
    Ok(res)
}

// ---------------------------------------------------------------------------
// W^trg_{(c,d)} and recipe input builders
// ---------------------------------------------------------------------------

/// The Lagrangian subalgebra Ŵ^trg_{(c,d)} ⊂ ĝ((u₊)) × ĝ((u₋)) of the
/// quasi-trigonometric solutions, truncated to the window:
/// (1 × Ad_T)((u₊g[[u₊]] × 0) + (0 × u₋g[[u₋]]) + d_{(c,d)}) with
/// K block-antidiagonal and T = diag(I_c, u₋^{−1}I_d).
pub fn w_trg(c: usize, d: usize, window: i64) -> Result<(LoopAlgebra, TruncSubspace), ManinError> {
    if window < 2 {
        return Err(ManinError::WindowTooSmall(window, "Ad_T shifts degrees by ±1".into()));
    }
    let n = c + d;
    let alg = make_sl(n, FormKind::Trace).map_err(|e| ManinError::Loop(e.to_string()))?;
    let auto = identity_auto(&alg);
    let la = LoopAlgebra { alg: alg.clone(), auto };
    // T-degree of row/column index (0-based): 0 for < c, −1 for ≥ c.
    let t_deg = |i: usize| -> i64 {
        if i < c {
            0
        } else {
            -1
        }
    };
    // Ad_T of a matrix: entry (i, j) is shifted by u₋^{t_i − t_j}.
    let ad_t = |mat: &QMat| -> LoopElt {
        let mut out = LoopElt::zero();
        let mut by_shift: BTreeMap<i64, QMat> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if mat[i][j].is_zero() {
                    continue;
                }
                let s = t_deg(i) - t_deg(j);
                let e = by_shift
                    .entry(s)
                    .or_insert_with(|| vec![vec![Rat::zero(); n]; n]);
                e[i][j] = mat[i][j].clone();
            }
        }
        for (s, m) in by_shift {
            out.add_term(s, &crate::liealg::sl_coords(n, &m));
        }
        out
    };
    // K: block antidiagonal permutation [[0, I_d], [I_c, 0]].
    let mut kmat = vec![vec![Rat::zero(); n]; n];
    for i in 0..c {
        kmat[d + i][i] = Rat::one();
    }
    for i in 0..d {
        kmat[i][c + i] = Rat::one();
    }
    let kinv: QMat = {
        // Permutation: inverse is the transpose.
        (0..n).map(|i| (0..n).map(|j| kmat[j][i].clone()).collect()).collect()
    };
    let basis_mat = |v: &GVec| -> QMat { crate::liealg::sl_matrix(n, v) };
    let mat_mul3 = |a: &QMat, b: &QMat, c_: &QMat| -> QMat {
        crate::linalg::mat_mul(&crate::linalg::mat_mul(a, b), c_)
    };
    let mut vectors = Vec::new();
    // (u₊^k a, 0), k ≥ 1.
    for k in 1..=window {
        for i in 0..alg.dim {
            vectors.push(LoopPair {
                plus: LoopElt::single(k, alg.basis_vec(i)),
                minus: LoopElt::zero(),
            });
        }
    }
    // (0, Ad_T(u₋^k a)), k ≥ 1. Each sl_n basis element shifts by a single
    // degree in {−1, 0, 1} under Ad_T, so filter per element to keep the
    // full window band Ad_T(u₋g[[u₋]]) ∩ window.
    for k in 1..=(window + 1) {
        for i in 0..alg.dim {
            let m = basis_mat(&alg.basis_vec(i));
            let shifted = ad_t(&m).shift(k);
            if let Some((lo, hi)) = shifted.degree_range() {
                if lo >= -window && hi <= window {
                    vectors.push(LoopPair { plus: LoopElt::zero(), minus: shifted });
                }
            }
        }
    }
    // d_{(c,d)}: (a, Ad_T(K a K^{−1})) for basis a.
    for i in 0..alg.dim {
        let m = basis_mat(&alg.basis_vec(i));
        let conj = mat_mul3(&kmat, &m, &kinv);
        vectors.push(LoopPair {
            plus: LoopElt::single(0, alg.basis_vec(i)),
            minus: ad_t(&conj),
        });
    }
    Ok((la, TruncSubspace { window, vectors, reduced: false }))
}

/// The nodal subalgebra of a quasi-constant (trigonometric) Stolin triple:
/// x₊g[[x₊]] + x₋g[[x₋]] + w, with w ⊂ g×g given by degree-0 pairs.
pub fn quasi_constant_w(
    la: &LoopAlgebra,
    w0: &[(GVec, GVec)],
    window: i64,
) -> TruncSubspace {
    let mut vectors = Vec::new();
    for k in 1..=window {
        for i in 0..la.alg.dim {
            vectors.push(LoopPair {
                plus: LoopElt::single(k, la.alg.basis_vec(i)),
                minus: LoopElt::zero(),
            });
            vectors.push(LoopPair {
                plus: LoopElt::zero(),
                minus: LoopElt::single(k, la.alg.basis_vec(i)),
            });
        }
    }
    for (a, b) in w0 {
        vectors.push(LoopPair {
            plus: LoopElt::single(0, a.clone()),
            minus: LoopElt::single(0, b.clone()),
        });
    }
    TruncSubspace { window, vectors, reduced: false }
}

// ---------------------------------------------------------------------------
// Dual-basis recipes
// ---------------------------------------------------------------------------

/// The nodal dual-basis recipe: for each (k, i) in the safe band solve for
/// b_{(k,i)} ∈ W with F(b_{(k,i)}, a_{(k',i')}) = −δδ, decompose
/// b = w_{(k,i)} + h_{(k,i)} with h diagonal, and emit
/// y/(x−y)·Σ cᵢ*⊗cᵢ + Σ h_{(k,i)}(x) ⊗ y^k cᵢ.
pub fn nodal_recipe(la: &LoopAlgebra, w: &TruncSubspace) -> Result<RMatElem, ManinError> {
    if la.auto.m != 1 {
        return Err(ManinError::GradingOrder(la.auto.m));
    }
    let alg = &la.alg;
    let window = w.window;
    let band = window / 2;
    let q = alg.dim;
    let duals = alg.full_dual_basis().map_err(|e| ManinError::Loop(e.to_string()))?;
    let diag = diagonal_basis(la, window);
    let dcoords: QMat = diag
        .iter()
        .map(|d| pair_coords(la, d, window))
        .collect::<Result<_, _>>()?;
    let wcoords = w.coords(la)?;
    // Decomposition system: columns are W then D generators.
    let ncols = wcoords.len() + dcoords.len();
    let nrows = if wcoords.is_empty() { 0 } else { wcoords[0].len() };
    let mat: QMat = (0..nrows)
        .map(|r| {
            (0..ncols)
                .map(|c| {
                    if c < wcoords.len() {
                        wcoords[c][r].clone()
                    } else {
                        dcoords[c - wcoords.len()][r].clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut r = RMatElem::zero(1, Denom::XmY);
    // Pole part y·γ, times the denominator handled by encoding directly.
    let gamma = alg.casimir().map_err(|e| ManinError::Loop(e.to_string()))?;
    for (&(i, j), c) in &gamma {
        r.add_term((i, j, 0, 1), c.clone());
    }
    let mut h_tail = RMatElem::zero(1, Denom::One);
    for k in -band..=band {
        for i in 0..q {
            // w_{(k,i)} per the dual-element formula.
            let wk = if k >= 1 {
                LoopPair { plus: LoopElt::zero(), minus: LoopElt::single(k, duals[i].clone()) }
            } else {
                LoopPair {
                    plus: LoopElt::single(-k, duals[i].clone()).scale(&-Rat::one()),
                    minus: LoopElt::zero(),
                }
            };
            // Decompose w_{(k,i)} = b − d with b ∈ W, d ∈ D; then
            // b_{(k,i)} = w_{(k,i)} + d and h_{(k,i)} = d (diagonal).
            let target = pair_coords(la, &wk, window)?;
            let sol = match solve_linear(&mat, &target) {
                LinSolve::Solved { particular, .. } => particular,
                LinSolve::Inconsistent => {
                    return Err(ManinError::NotComplementary(format!(
                        "dual system singular at (k, i) = ({k}, {i})"
                    )))
                }
            };
            let mut h = LoopElt::zero();
            for (b, c) in sol.iter().skip(wcoords.len()).enumerate() {
                if !c.is_zero() {
                    h.add(&diag[b].plus.scale(&-c.clone()));
                }
            }
            if h.is_zero() {
                continue;
            }
            // Finiteness: no nonzero h on the boundary band.
            if k.abs() == band && band > 1 {
                return Err(ManinError::BoundaryH);
            }
            // Σ h_{(k,i)}(x) ⊗ y^k cᵢ.
            for (l, v) in &h.terms {
                for (p, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        h_tail.add_term((p, i, *l, k), c.clone());
                    }
                }
            }
        }
    }
    let r = r
        .add(&h_tail.promote(Denom::XmY).map_err(|e| ManinError::Loop(e.to_string()))?)
        .map_err(|e| ManinError::Loop(e.to_string()))?;
    Ok(r)
}

/// The cuspidal dual-basis recipe over g((z^{−1})): W is a window span of
/// loop elements complementary to g[z]; duals b_{(k,i)} = cᵢ*z^{−k−1} + h
/// with F(az^k, bz^l) = δ_{k+l+1,0}κ(a,b); emits
/// 1/(x−y)·Σ cᵢ*⊗cᵢ + Σ h_{(k,i)}(x) ⊗ y^k cᵢ.
pub fn cuspidal_recipe(
    la: &LoopAlgebra,
    w: &[LoopElt],
    window: i64,
) -> Result<RMatElem, ManinError> {
    if la.auto.m != 1 {
        return Err(ManinError::GradingOrder(la.auto.m));
    }
    let alg = &la.alg;
    let q = alg.dim;
    let band = window / 2;
    let duals = alg.full_dual_basis().map_err(|e| ManinError::Loop(e.to_string()))?;
    // D-analog: g[z]-window, degrees 0..window.
    let mut dvecs: Vec<LoopElt> = Vec::new();
    for k in 0..=window {
        for i in 0..q {
            dvecs.push(LoopElt::single(k, alg.basis_vec(i)));
        }
    }
    let wcoords: QMat = w
        .iter()
        .map(|f| la.window_coords(f, window))
        .collect::<Result<_, _>>()
        .map_err(|e| ManinError::WindowTooSmall(window, e.to_string()))?;
    let dcoords: QMat = dvecs
        .iter()
        .map(|f| la.window_coords(f, window))
        .collect::<Result<_, _>>()
        .map_err(|e| ManinError::WindowTooSmall(window, e.to_string()))?;
    let ncols = wcoords.len() + dcoords.len();
    let nrows = if wcoords.is_empty() { 0 } else { wcoords[0].len() };
    let mat: QMat = (0..nrows)
        .map(|r| {
            (0..ncols)
                .map(|c| {
                    if c < wcoords.len() {
                        wcoords[c][r].clone()
                    } else {
                        dcoords[c - wcoords.len()][r].clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut r = RMatElem::zero(1, Denom::XmY);
    let gamma = alg.casimir().map_err(|e| ManinError::Loop(e.to_string()))?;
    for (&(i, j), c) in &gamma {
        r.add_term((i, j, 0, 0), c.clone());
    }
    let mut h_tail = RMatElem::zero(1, Denom::One);
    for k in 0..=band {
        for i in 0..q {
            let wk = LoopElt::single(-k - 1, duals[i].clone());
            let target = la
                .window_coords(&wk, window)
                .map_err(|e| ManinError::WindowTooSmall(window, e.to_string()))?;
            let sol = match solve_linear(&mat, &target) {
                LinSolve::Solved { particular, .. } => particular,
                LinSolve::Inconsistent => {
                    return Err(ManinError::NotComplementary(format!(
                        "dual system singular at (k, i) = ({k}, {i})"
                    )))
                }
            };
            let mut h = LoopElt::zero();
            for (b, c) in sol.iter().skip(wcoords.len()).enumerate() {
                if !c.is_zero() {
                    h.add(&dvecs[b].scale(&-c.clone()));
                }
            }
            if h.is_zero() {
                continue;
            }
            if k == band && band > 1 {
                return Err(ManinError::BoundaryH);
            }
            for (l, v) in &h.terms {
                for (p, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        h_tail.add_term((p, i, *l, k), c.clone());
                    }
                }
            }
        }
    }
    let r = r
        .add(&h_tail.promote(Denom::XmY).map_err(|e| ManinError::Loop(e.to_string()))?)
        .map_err(|e| ManinError::Loop(e.to_string()))?;
    Ok(r)
}

// ---------------------------------------------------------------------------
// Stolin constant Manin triples
// ---------------------------------------------------------------------------

/// Which constant Manin-triple shape a Lagrangian lives in: trig = g×g with
/// F = κ−κ, rat = g[ε]/(ε²) with the ε-pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StolinKind {
    Trig,
    Rat,
}

/// The constant tensor of a Stolin Lagrangian complement: trig t = Σ gᵢ⊗wᵢ⁺
/// from duals (wᵢ⁺, wᵢ⁻) of (gᵢ, gᵢ); rat t = Σ gᵢ⊗hᵢ from duals hᵢ + εgᵢ*.
/// Pairs (a, b) encode (a, b) ∈ g×g resp. a + εb.
pub fn stolin_constant(
    alg: &LieAlgebra,
    w: &[(GVec, GVec)],
    kind: StolinKind,
) -> Result<Tensor2, ManinError> {
    let q = alg.dim;
    let form = |p: &(GVec, GVec), r: &(GVec, GVec)| -> Rat {
        match kind {
            StolinKind::Trig => alg.form(&p.0, &r.0) - alg.form(&p.1, &r.1),
            StolinKind::Rat => alg.form(&p.0, &r.1) + alg.form(&r.0, &p.1),
        }
    };
    // Lagrangian check.
    for i in 0..w.len() {
        for j in i..w.len() {
            if !form(&w[i], &w[j]).is_zero() {
                return Err(ManinError::NotLagrangian);
            }
        }
    }
    // Duals against the (anti)diagonal targets.
    let targets: Vec<(GVec, GVec)> = (0..q)
        .map(|j| match kind {
            StolinKind::Trig => (alg.basis_vec(j), alg.basis_vec(j)),
            StolinKind::Rat => (alg.basis_vec(j), vec![Rat::zero(); q]),
        })
        .collect();
    let gram: QMat = targets
        .iter()
        .map(|tg| w.iter().map(|v| form(v, tg)).collect())
        .collect();
    let mut t = Tensor2::new();
    for i in 0..q {
        let mut rhs = vec![Rat::zero(); q];
        rhs[i] = Rat::one();
        let sol = match solve_linear(&gram, &rhs) {
            LinSolve::Solved { particular, .. } => particular,
            LinSolve::Inconsistent => {
                return Err(ManinError::NotComplementary(
                    "Stolin dual system is singular".into(),
                ))
            }
        };
        // First component of the dual element.
        let mut first = vec![Rat::zero(); q];
        for (a, c) in sol.iter().enumerate() {
            if !c.is_zero() {
                for (l, v) in w[a].0.iter().enumerate() {
                    first[l] += c.clone() * v.clone();
                }
            }
        }
        for (l, c) in first.iter().enumerate() {
            if !c.is_zero() {
                let e = t.entry((i, l)).or_insert_with(Rat::zero);
                *e += c.clone();
            }
        }
    }
    // t has first leg gᵢ: transpose the accumulation into gᵢ ⊗ (dual part).
    Ok(t)
}

// ---------------------------------------------------------------------------
// Formal series expansion
// ---------------------------------------------------------------------------

/// A truncated double (Laurent × power) series Σ c·(gᵢ⊗gⱼ)x^a y^b, exact
/// for b ≤ order and a + b ≤ prec.
#[derive(Debug, Clone)]
pub struct SeriesRep {
    pub order: i64,
    pub prec: i64,
    pub terms: BTreeMap<(usize, usize, i64, i64), Rat>,
}

/// Exact series expansion of a rational r with denominator x − y (m = 1):
/// each numerator monomial contributes one term per y-order, so every
/// coefficient is exact (prec is unbounded in practice).
pub fn expand_rational(r: &RMatElem, order: i64) -> Result<SeriesRep, ManinError> {
    let m_exp = match r.denom {
        Denom::One => 0,
        Denom::XmY => 1,
        Denom::XmYm => r.m as i64,
    };
    if m_exp > 1 {
        return Err(ManinError::GradingOrder(r.m));
    }
    let mut terms: BTreeMap<(usize, usize, i64, i64), Rat> = BTreeMap::new();
    for (&(i, j, a, b), c) in &r.terms {
        if m_exp == 0 {
            if b <= order {
                let e = terms.entry((i, j, a, b)).or_insert_with(Rat::zero);
                *e += c.clone();
            }
            continue;
        }
        // c·x^a y^b / (x−y) = Σ_{s≥0} c·x^{a−1−s} y^{b+s}.
        let mut s = 0i64;
        while b + s <= order {
            let e = terms.entry((i, j, a - 1 - s, b + s)).or_insert_with(Rat::zero);
            *e += c.clone();
            s += 1;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(SeriesRep { order, prec: 1 << 40, terms })
}

/// Truncated bivariate power series keyed by (u-degree, v-degree), total
/// degree ≤ prec; nonnegative exponents only.
type PSeries = BTreeMap<(i64, i64), Rat>;

fn ps_mul(a: &PSeries, b: &PSeries, prec: i64) -> PSeries {
    let mut out: PSeries = BTreeMap::new();
    for (&(p, q), ca) in a {
        for (&(r, s), cb) in b {
            if p + q + r + s <= prec {
                let e = out.entry((p + r, q + s)).or_insert_with(Rat::zero);
                *e += ca.clone() * cb.clone();
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// exp(c·u) as a univariate series in the first variable, to total prec.
fn ps_exp_u(c: &Rat, prec: i64, second: bool) -> PSeries {
    let mut out: PSeries = BTreeMap::new();
    let mut coef = Rat::one();
    for n in 0..=prec {
        if n > 0 {
            coef = coef * c.clone() / ratz(n);
        }
        let key = if second { (0, n) } else { (n, 0) };
        out.insert(key, coef.clone());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Multiplicative inverse of a power series with unit constant term.
fn ps_inv(a: &PSeries, prec: i64) -> PSeries {
    let mut inv: PSeries = BTreeMap::new();
    inv.insert((0, 0), Rat::one());
    // Newton-free iteration by total degree: collect homogeneous slices.
    for d in 1..=prec {
        // coefficient of each (p, q) with p + q = d: −Σ_{e≥1} a_e · inv_{d−e}.
        let mut slice: Vec<((i64, i64), Rat)> = Vec::new();
        for p in 0..=d {
            let q = d - p;
            let mut acc = Rat::zero();
            for (&(r, s), ca) in a {
                if r + s >= 1 && r <= p && s <= q {
                    if let Some(ci) = inv.get(&(p - r, q - s)) {
                        acc += ca.clone() * ci.clone();
                    }
                }
            }
            if !acc.is_zero() {
                slice.push(((p, q), -acc));
            }
        }
        for (k, c) in slice {
            inv.insert(k, c);
        }
    }
    inv
}

/// Exact exp-substitution normalization: x = exp(u/m), y = exp(v/m) maps a
/// trigonometric r with denominator x^m − y^m to the normalized form
/// γ/(u−v) + holomorphic, as a truncated double series.
pub fn normalize_exp(r: &RMatElem, order: i64, prec: i64) -> Result<SeriesRep, ManinError> {
    let m = match r.denom {
        Denom::One => return Err(ManinError::PoleNormalization),
        Denom::XmY => 1i64,
        Denom::XmYm => r.m as i64,
    };
    // e^u − e^v = (u − v)·E(u, v); compute E and invert.
    let mut e_ser: PSeries = BTreeMap::new();
    let mut fact = Rat::one();
    for n in 1..=(prec + 1) {
        fact = fact * ratz(n);
        // (u^n − v^n)/(u − v) = Σ_{i+j = n−1} u^i v^j.
        for i in 0..n {
            let j = n - 1 - i;
            if i + j <= prec {
                let e = e_ser.entry((i, j)).or_insert_with(Rat::zero);
                *e += fact.clone().recip();
            }
        }
    }
    let e_inv = ps_inv(&e_ser, prec);
    // Numerator with x^a ↦ exp(a·u/m), y^b ↦ exp(b·v/m).
    let mut terms: BTreeMap<(usize, usize, i64, i64), Rat> = BTreeMap::new();
    for (&(i, j, a, b), c) in &r.terms {
        let eu = ps_exp_u(&(ratz(a) / ratz(m)), prec, false);
        let ev = ps_exp_u(&(ratz(b) / ratz(m)), prec, true);
        let mut num = ps_mul(&eu, &ev, prec);
        num = ps_mul(&num, &e_inv, prec);
        // Multiply by c and expand 1/(u−v) = Σ_{s≥0} v^s u^{−s−1}.
        for (&(p, q), nv) in &num {
            let coeff = c.clone() * nv.clone();
            let mut s = 0i64;
            while q + s <= order {
                let key = (i, j, p - 1 - s, q + s);
                // Validity: the contribution is exact only when p + q ≤ prec
                // (guaranteed by construction).
                let e = terms.entry(key).or_insert_with(Rat::zero);
                *e += coeff.clone();
                s += 1;
            }
        }
    }
    terms.retain(|_, c| !c.is_zero());
    // Exactness band: a term at (a, b) receives contributions from
    // monomials with p + q = a + b + 1 ≤ prec.
    Ok(SeriesRep { order, prec: prec - 1, terms })
}

/// Report of the formal-series analysis of a normalized solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub shape_ok: bool,
    pub gram_ok: bool,
    pub constraints_ok: bool,
    pub checked_order: i64,
}

/// Extract r_k(x) (the y^k coefficient) from a series.
fn series_coeff(s: &SeriesRep, k: i64) -> BTreeMap<(usize, usize, i64), Rat> {
    let mut out = BTreeMap::new();
    for (&(i, j, a, b), c) in &s.terms {
        if b == k {
            out.insert((i, j, a), c.clone());
        }
    }
    out
}

/// Formal-series analysis per the order-by-order theory: w-basis shape
/// (gᵢ* x^{−k−1} + regular tail), duality Gram = δδ, and the order-by-order
/// CYBE constraints, all up to order K on the valid band.
pub fn series_w(alg: &LieAlgebra, s: &SeriesRep, k_max: i64) -> Result<SeriesReport, ManinError> {
    if k_max > s.order {
        return Err(ManinError::WindowTooSmall(s.order, "order exceeds series truncation".into()));
    }
    let gamma = alg.casimir().map_err(|e| ManinError::Loop(e.to_string()))?;
    // Shape and Gram: w_{(k,i)} is the second-leg-gᵢ column of r_k.
    let mut shape_ok = true;
    let mut gram_ok = true;
    for k in 0..=k_max {
        let rk = series_coeff(s, k);
        // No exponents below −k−1.
        for (&(_, _, a), _) in &rk {
            if a < -k - 1 {
                shape_ok = false;
            }
        }
        // The −k−1 slice must be γ.
        let mut lead = Tensor2::new();
        for (&(i, j, a), c) in &rk {
            if a == -k - 1 {
                lead.insert((i, j), c.clone());
            }
        }
        if lead != gamma {
            shape_ok = false;
        }
        // Gram row against g_{i''}x^{k''}: F picks the −k''−1 slice; the
        // shape conditions above make it δδ, but we verify the pairing
        // numerically: κ(coef_{−k''−1}(w_{(k,i)}), g_{i''}) = δδ.
        for kpp in 0..=k_max {
            let mut slice = Tensor2::new();
            for (&(i, j, a), c) in &rk {
                if a == -kpp - 1 {
                    slice.insert((i, j), c.clone());
                }
            }
            // Pair the first leg with g via the form: result (i'', j) must
            // be δ in the appropriate sense. Concretely Σᵢ κ(gᵢ, g_{i''})
            // against the w-decomposition reproduces the duality; for the
            // δδ statement it suffices that the slice is γ at kpp = k and
            // zero otherwise (shape already enforces the rest).
            if kpp == k {
                if slice != gamma {
                    gram_ok = false;
                }
            } else if !slice.is_empty() {
                gram_ok = false;
            }
        }
    }
    // Order-by-order CYBE constraints:
    // [r_k¹³(x₁) + r_k²³(x₂), r¹²(x₁,x₂)] = Σ_{k'+k''=k} [r_{k'}¹³, r_{k''}²³].
    let mut constraints_ok = true;
    for k in 0..=k_max {
        let rk = series_coeff(s, k);
        let mut lhs: BTreeMap<(usize, usize, usize, i64, i64), Rat> = BTreeMap::new();
        for (&(i, l, e), cv) in &rk {
            for (&(p, q, a, b), cr) in &s.terms {
                // [r_k¹³(x₁), r¹²]: bracket on leg 1.
                for (m_, sc) in alg.bracket_basis(i, p) {
                    let key = (m_, q, l, e + a, b);
                    let en = lhs.entry(key).or_insert_with(Rat::zero);
                    *en += cv.clone() * sc * cr.clone();
                }
                // [r_k²³(x₂), r¹²]: bracket on leg 2.
                for (m_, sc) in alg.bracket_basis(i, q) {
                    let key = (p, m_, l, a, e + b);
                    let en = lhs.entry(key).or_insert_with(Rat::zero);
                    *en += cv.clone() * sc * cr.clone();
                }
            }
        }
        let mut rhs: BTreeMap<(usize, usize, usize, i64, i64), Rat> = BTreeMap::new();
        for kp in 0..=k {
            let kq = k - kp;
            let rp = series_coeff(s, kp);
            let rq = series_coeff(s, kq);
            for (&(i, l1, e1), c1) in &rp {
                for (&(j, l2, e2), c2) in &rq {
                    // [a⊗1⊗b, 1⊗c⊗d] = a⊗c⊗[b,d].
                    for (m_, sc) in alg.bracket_basis(l1, l2) {
                        let key = (i, j, m_, e1, e2);
                        let en = rhs.entry(key).or_insert_with(Rat::zero);
                        *en += c1.clone() * sc * c2.clone();
                    }
                }
            }
        }
        // Compare on the valid band.
        let region = |x1: i64, x2: i64| -> bool {
            x1 + x2 <= s.prec - k - 1 && x2 <= s.order - k - 1 && x1 <= s.prec - k
        };
        let mut diff = lhs;
        for (key, c) in rhs {
            let e = diff.entry(key).or_insert_with(Rat::zero);
            *e -= c;
        }
        for (&(_, _, _, x1, x2), c) in &diff {
            if region(x1, x2) && !c.is_zero() {
                constraints_ok = false;
            }
        }
    }
    Ok(SeriesReport { shape_ok, gram_ok, constraints_ok, checked_order: k_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::coxeter_auto;
    use crate::liealg::{add_t2, sl_cartan_index, sl_unit_index};
    use crate::linalg::inverse;
    use crate::rat::rat;
    use crate::rtensor::skew_residual;
    use crate::solutions::{
        bd_twist, cg_solution, lambda1, quasi_constant, solve_consistency, standard_r, BDQuadruple,
        BDTriple, QcKind,
    };

    fn sl2_id() -> LoopAlgebra {
        let alg = make_sl(2, FormKind::Trace).unwrap();
        let auto = identity_auto(&alg);
        LoopAlgebra { alg, auto }
    }

    fn borel_lagrangian(alg: &LieAlgebra) -> Vec<(GVec, GVec)> {
        // Degree-0 part of W°: (e, 0), (0, f), (h, −h).
        let e = sl_unit_index(2, 1, 2);
        let f = sl_unit_index(2, 2, 1);
        let h = sl_cartan_index(2, 1);
        let z = vec![Rat::zero(); alg.dim];
        vec![
            (alg.basis_vec(e), z.clone()),
            (z.clone(), alg.basis_vec(f)),
            (alg.basis_vec(h), alg.basis_vec(h).iter().map(|c| -c.clone()).collect()),
        ]
    }

    #[test]
    fn form_f_diagonal_isotropic() {
        let la = sl2_id();
        for k in -2..=2i64 {
            for i in 0..la.alg.dim {
                for l in -2..=2i64 {
                    for j in 0..la.alg.dim {
                        let p = LoopPair::diag(&LoopElt::single(k, la.alg.basis_vec(i)));
                        let q = LoopPair::diag(&LoopElt::single(l, la.alg.basis_vec(j)));
                        assert!(form_f(&la, &p, &q).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn standard_w_shape_and_manin() {
        let la = sl2_id();
        let w = standard_w(&la, 3).unwrap();
        let e = sl_unit_index(2, 1, 2);
        let f = sl_unit_index(2, 2, 1);
        let h = sl_cartan_index(2, 1);
        // Contains (e, 0), (0, f), (h, −h).
        let pe = LoopPair { plus: LoopElt::single(0, la.alg.basis_vec(e)), minus: LoopElt::zero() };
        let pf = LoopPair { plus: LoopElt::zero(), minus: LoopElt::single(0, la.alg.basis_vec(f)) };
        let ph = LoopPair {
            plus: LoopElt::single(0, la.alg.basis_vec(h)),
            minus: LoopElt::single(0, la.alg.basis_vec(h)).neg(),
        };
        assert!(w.contains(&la, &pe).unwrap());
        assert!(w.contains(&la, &pf).unwrap());
        assert!(w.contains(&la, &ph).unwrap());
        // Pairwise isotropy of the spanning set.
        let rep = check_manin(&la, &w).unwrap();
        assert!(rep.isotropy);
        assert!(rep.diagonal_complement);
        assert!(rep.bracket_closure);
        // F nondegenerate on the window: Gram of D against W invertible.
        let diag = diagonal_basis(&la, 3);
        assert_eq!(diag.len(), w.vectors.len());
        let gram: QMat = diag
            .iter()
            .map(|d| w.vectors.iter().map(|v| form_f(&la, d, v)).collect())
            .collect();
        assert!(inverse(&gram).is_some());
    }

    #[test]
    fn coxeter_standard_w_manin() {
        let alg = make_sl(2, FormKind::Trace).unwrap();
        let auto = coxeter_auto(&alg).unwrap();
        let la = LoopAlgebra { alg, auto };
        let w = standard_w(&la, 4).unwrap();
        let rep = check_manin(&la, &w).unwrap();
        assert!(rep.isotropy && rep.diagonal_complement && rep.bracket_closure);
    }

    #[test]
    fn twist_subspace_round_trip() {
        let la = sl2_id();
        let w0 = standard_w(&la, 4).unwrap();
        // t = 0 → unchanged span.
        let t0 = RMatElem::zero(1, Denom::One);
        let w = w_from_twist(&la, &t0, &w0).unwrap();
        assert_eq!(w.rank(&la).unwrap(), w0.rank(&la).unwrap());
        let rec = twist_from_w(&la, &w, &w0, 2).unwrap();
        assert!(rec.is_zero());
        // Small skew t: e∧f + ¼ h⊗h − ¼ h⊗h pattern; any antisymmetric
        // constant works for the linear round trip.
        let e = sl_unit_index(2, 1, 2);
        let f = sl_unit_index(2, 2, 1);
        let h = sl_cartan_index(2, 1);
        let mut t = RMatElem::zero(1, Denom::One);
        t.add_term((e, f, 1, 0), ratz(2));
        t.add_term((f, e, 0, 1), ratz(-2));
        t.add_term((h, h, 1, -1), rat(1, 3));
        t.add_term((h, h, -1, 1), rat(-1, 3));
        let w = w_from_twist(&la, &t, &w0).unwrap();
        let rec = twist_from_w(&la, &w, &w0, 2).unwrap();
        assert_eq!(rec, t);
    }

    #[test]
    fn twist_from_w_trg_is_cg_difference() {
        let (la, w) = w_trg(1, 1, 5).unwrap();
        let w0 = standard_w(&la, 5).unwrap();
        let rec = twist_from_w(&la, &w, &w0, 2).unwrap();
        let (_, cg) = cg_solution(1, 1).unwrap();
        let r0 = standard_r(&la.alg, &la.auto).unwrap();
        let diff = cg.promote(Denom::XmYm).unwrap().add(&r0.scale(&-Rat::one())).unwrap();
        // The difference is denominator-free: divide exactly.
        let divided = divide_denominator(&diff.terms, 1).unwrap();
        let mut expect = RMatElem::zero(1, Denom::One);
        for (k, c) in divided {
            expect.add_term(k, c);
        }
        assert_eq!(rec, expect);
    }

    #[test]
    fn delta_cobracket_patterns() {
        let la = sl2_id();
        let r0 = standard_r(&la.alg, &la.auto).unwrap();
        let e = sl_unit_index(2, 1, 2);
        let f = sl_unit_index(2, 2, 1);
        let h = sl_cartan_index(2, 1);
        // δ_◦(h) = 0.
        let dh = delta_cobracket(&la, &r0, &LoopElt::single(0, la.alg.basis_vec(h))).unwrap();
        assert!(dh.is_zero());
        // δ_◦(e) ∝ h ∧ e: the simple-generator pattern, with the constant
        // ½ fixed by the constant part γ₀/2 + γ₋ of the standard solution.
        let de = delta_cobracket(&la, &r0, &LoopElt::single(0, la.alg.basis_vec(e))).unwrap();
        let mut expect = RMatElem::zero(1, Denom::One);
        expect.add_term((h, e, 0, 0), rat(1, 2));
        expect.add_term((e, h, 0, 0), rat(-1, 2));
        assert_eq!(de, expect);
        // Cocycle identity δ([f,g]) = (ad_f⊗1 + 1⊗ad_f)δ(g) − (f ↔ g) on a
        // sampled pair: f = e z, g = f.
        let fz = LoopElt::single(1, la.alg.basis_vec(e));
        let g0 = LoopElt::single(0, la.alg.basis_vec(f));
        let lhs = delta_cobracket(&la, &r0, &la.bracket(&fz, &g0)).unwrap();
        let df = delta_cobracket(&la, &r0, &fz).unwrap();
        let dg = delta_cobracket(&la, &r0, &g0).unwrap();
        let act = |x: &LoopElt, d: &RMatElem| -> RMatElem {
            let mut out = RMatElem::zero(1, Denom::One);
            for (&(p, q, a, b), c) in &d.terms {
                for (k, v) in &x.terms {
                    for (l, vl) in v.iter().enumerate() {
                        if vl.is_zero() {
                            continue;
                        }
                        for (t, sc) in la.alg.bracket_basis(l, p) {
                            out.add_term((t, q, a + k, b), vl.clone() * sc.clone() * c.clone());
                        }
                        for (t, sc) in la.alg.bracket_basis(l, q) {
                            out.add_term((p, t, a, b + k), vl.clone() * sc * c.clone());
                        }
                    }
                }
            }
            out
        };
        let rhs = act(&fz, &dg).add(&act(&g0, &df).scale(&-Rat::one())).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_equation_battery() {
        let la = sl2_id();
        let r0 = standard_r(&la.alg, &la.auto).unwrap();
        let w0 = standard_w(&la, 4).unwrap();
        // t = 0 → 0.
        let t0 = RMatElem::zero(1, Denom::One);
        assert!(twist_equation_residual(&la, &t0, &r0).unwrap().is_zero());
        // The Cremmer–Gervais twist solves the twist equation.
        let (_, cg) = cg_solution(1, 1).unwrap();
        let diff = cg.promote(Denom::XmYm).unwrap().add(&r0.scale(&-Rat::one())).unwrap();
        let mut tq = RMatElem::zero(1, Denom::One);
        for (k, c) in divide_denominator(&diff.terms, 1).unwrap() {
            tq.add_term(k, c);
        }
        assert!(twist_equation_residual(&la, &tq, &r0).unwrap().is_zero());
        assert!(check_manin(&la, &w_from_twist(&la, &tq, &w0).unwrap()).unwrap().bracket_closure);
        // Invalid twist: t = e∧f·(x/y − y/x).
        let e = sl_unit_index(2, 1, 2);
        let f = sl_unit_index(2, 2, 1);
        let mut bad = RMatElem::zero(1, Denom::One);
        bad.add_term((e, f, 1, -1), Rat::one());
        bad.add_term((f, e, -1, 1), -Rat::one());
        bad.add_term((e, f, -1, 1), -Rat::one());
        bad.add_term((f, e, 1, -1), Rat::one());
        assert!(skew_residual(&bad).is_zero());
        let res = twist_equation_residual(&la, &bad, &r0).unwrap();
        assert!(!res.is_zero());
        let rbad = r0.add(&bad.promote(Denom::XmYm).unwrap()).unwrap();
        assert!(!cybe_residual(&la.alg, &rbad).is_zero());
        assert!(!check_manin(&la, &w_from_twist(&la, &bad, &w0).unwrap())
            .unwrap()
            .bracket_closure);
    }

    #[test]
    fn twist_equation_for_bd_quadruples() {
        // Coxeter sl_2: every enumerated quadruple satisfies the twist
        // equation, and the equivalence with the CYBE residual holds.
        let alg = make_sl(2, FormKind::Trace).unwrap();
        let auto = coxeter_auto(&alg).unwrap();
        let la = LoopAlgebra { alg: alg.clone(), auto: auto.clone() };
        let r0 = standard_r(&alg, &auto).unwrap();
        let l1 = lambda1(&alg, &auto).unwrap();
        let comp = crate::grading::casimir_components(&alg, &auto).unwrap();
        let triple = BDTriple { gamma1: vec![0], gamma2: vec![1], tau: vec![1] };
        let pairs = vec![(l1[1].alpha.clone(), l1[0].alpha.clone())];
        let sol = solve_consistency(&auto.g0_cartan, &pairs, &comp.gamma0_zero).unwrap();
        let q = BDQuadruple { triple, s: sol.particular };
        let t = bd_twist(&alg, &auto, &q).unwrap();
        assert!(twist_equation_residual(&la, &t, &r0).unwrap().is_zero());
        assert!(cybe_residual(&alg, &r0.add(&t.promote(Denom::XmYm).unwrap()).unwrap()).is_zero());
    }

    #[test]
    fn project_w_reports() {
        let la = sl2_id();
        let w0 = standard_w(&la, 4).unwrap();
        let rep = project_w(&la, &w0).unwrap();
        // W₊ = B₊-window: degrees 1..4 full (12) + Borel at 0 (2).
        assert_eq!(rep.w_plus_rank, 4 * 3 + 2);
        assert_eq!(rep.w_minus_rank, 4 * 3 + 2);
        // V₊ drops the Cartan direction (paired with −h on the minus side).
        assert_eq!(rep.v_plus_rank, 4 * 3 + 1);
        assert_eq!(rep.v_minus_rank, 4 * 3 + 1);
        // The quotient W/(V₊ × V₋) is the Cartan graph direction (h, −h).
        assert_eq!(rep.quotient_dim, 1);
        assert_eq!(rep.v_intersection_dim, 0);
        assert!(rep.stable_plus && rep.stable_minus);
        // Stability for a twisted subspace.
        let (_, cg) = cg_solution(1, 1).unwrap();
        let r0 = standard_r(&la.alg, &la.auto).unwrap();
        let diff = cg.promote(Denom::XmYm).unwrap().add(&r0.scale(&-Rat::one())).unwrap();
        let mut tq = RMatElem::zero(1, Denom::One);
        for (k, c) in divide_denominator(&diff.terms, 1).unwrap() {
            tq.add_term(k, c);
        }
        let wt = w_from_twist(&la, &tq, &w0).unwrap();
        let rep = project_w(&la, &wt).unwrap();
        assert!(rep.stable_plus && rep.stable_minus);
    }

    #[test]
    fn w_trg_11_span_and_manin() {
        let (la, w) = w_trg(1, 1, 4).unwrap();
        let e = sl_unit_index(2, 1, 2);
        let f = sl_unit_index(2, 2, 1);
        let h = sl_cartan_index(2, 1);
        let bv = |i: usize| la.alg.basis_vec(i);
        let neg = |v: &GVec| -> GVec { v.iter().map(|c| -c.clone()).collect() };
        // The printed spanning elements of Ŵ^trg_{(1,1)}.
        let listed = vec![
            LoopPair { plus: LoopElt::zero(), minus: LoopElt::single(1, bv(h)) },
            LoopPair { plus: LoopElt::zero(), minus: LoopElt::single(1, bv(f)) },
            LoopPair { plus: LoopElt::zero(), minus: LoopElt::single(0, bv(f)) },
            LoopPair { plus: LoopElt::single(0, bv(f)), minus: LoopElt::single(1, bv(e)) },
            LoopPair { plus: LoopElt::single(0, bv(e)), minus: LoopElt::single(-1, bv(f)) },
            LoopPair { plus: LoopElt::single(0, bv(h)), minus: LoopElt::single(0, neg(&bv(h))) },
        ];
        for p in &listed {
            assert!(w.contains(&la, p).unwrap());
        }
        let rep = check_manin(&la, &w).unwrap();
        assert!(rep.isotropy && rep.diagonal_complement && rep.bracket_closure);
    }

    #[test]
    fn nodal_recipe_standard() {
        let la = sl2_id();
        let w = standard_w(&la, 8).unwrap();
        let r = nodal_recipe(&la, &w).unwrap();
        let expect = standard_r(&la.alg, &la.auto).unwrap();
        assert_eq!(r.promote(Denom::XmYm).unwrap(), expect);
    }

    #[test]
    fn nodal_recipe_w_trg_11() {
        let (la, w) = w_trg(1, 1, 8).unwrap();
        let r = nodal_recipe(&la, &w).unwrap();
        let (_, expect) = cg_solution(1, 1).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn nodal_recipe_quasi_constant() {
        let la = sl2_id();
        let w0 = borel_lagrangian(&la.alg);
        let t = stolin_constant(&la.alg, &w0, StolinKind::Trig).unwrap();
        let w = quasi_constant_w(&la, &w0, 8);
        let r = nodal_recipe(&la, &w).unwrap();
        let expect = quasi_constant(&la.alg, &t, QcKind::Trig).unwrap();
        assert_eq!(r, expect);
        assert!(cybe_residual(&la.alg, &r).is_zero());
    }

    #[test]
    fn cuspidal_recipe_yang_and_stolin() {
        let la = sl2_id();
        let q = la.alg.dim;
        // W = z^{−1} g[z^{−1}]-window → Yang.
        let mut w: Vec<LoopElt> = Vec::new();
        for k in 1..=8i64 {
            for i in 0..q {
                w.push(LoopElt::single(-k, la.alg.basis_vec(i)));
            }
        }
        let r = cuspidal_recipe(&la, &w, 8).unwrap();
        let gamma = la.alg.casimir().unwrap();
        let mut expect = RMatElem::zero(1, Denom::XmY);
        for (&(i, j), c) in &gamma {
            expect.add_term((i, j, 0, 0), c.clone());
        }
        assert_eq!(r, expect);
        assert!(cybe_residual(&la.alg, &r).is_zero());
        // Stolin type (b): Ŵ = z^{−2}g[[z^{−1}]] + w with w the graph of a
        // rational Lagrangian; take w = ⟨h + εg*⟩ built from the Borel
        // triple's rational analog: x = e + εf*, etc. Use w = εg (h = 0)
        // first: recipe gives exactly Yang.
        let mut w: Vec<LoopElt> = Vec::new();
        for k in 2..=8i64 {
            for i in 0..q {
                w.push(LoopElt::single(-k, la.alg.basis_vec(i)));
            }
        }
        for i in 0..q {
            w.push(LoopElt::single(-1, la.alg.basis_vec(i)));
        }
        let r = cuspidal_recipe(&la, &w, 8).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn stolin_trig_borel() {
        let la = sl2_id();
        let w0 = borel_lagrangian(&la.alg);
        let t = stolin_constant(&la.alg, &w0, StolinKind::Trig).unwrap();
        // t + t²¹ = γ.
        let gamma = la.alg.casimir().unwrap();
        let mut sym = Tensor2::new();
        for (&(i, j), c) in &t {
            add_t2(&mut sym, (i, j), c.clone());
            add_t2(&mut sym, (j, i), c.clone());
        }
        assert_eq!(sym, gamma);
        // The quasi-constant solution passes CYBE.
        let r = quasi_constant(&la.alg, &t, QcKind::Trig).unwrap();
        assert!(cybe_residual(&la.alg, &r).is_zero());
    }

    #[test]
    fn stolin_rat_trivial_and_nontrivial() {
        let la = sl2_id();
        let q = la.alg.dim;
        // w = εg → t = 0.
        let z = vec![Rat::zero(); q];
        let w: Vec<(GVec, GVec)> = (0..q).map(|i| (z.clone(), la.alg.basis_vec(i))).collect();
        let t = stolin_constant(&la.alg, &w, StolinKind::Rat).unwrap();
        assert!(t.is_empty());
        let r = quasi_constant(&la.alg, &t, QcKind::Rat).unwrap();
        assert!(cybe_residual(&la.alg, &r).is_zero());
        // Nontrivial: the graph w = {[e, b] + εb : b ∈ g}, Lagrangian by
        // invariance of κ (κ([e,b], b') = −κ(b, [e,b'])) and complementary
        // to g since the ε-part runs over all of g.
        let e = sl_unit_index(2, 1, 2);
        let w: Vec<(GVec, GVec)> = (0..q)
            .map(|i| {
                let b = la.alg.basis_vec(i);
                (la.alg.bracket(&la.alg.basis_vec(e), &b), b)
            })
            .collect();
        let t = stolin_constant(&la.alg, &w, StolinKind::Rat).unwrap();
        let r = quasi_constant(&la.alg, &t, QcKind::Rat).unwrap();
        assert!(cybe_residual(&la.alg, &r).is_zero());
        assert!(!t.is_empty());
    }

    #[test]
    fn series_yang_exact() {
        let la = sl2_id();
        let gamma = la.alg.casimir().unwrap();
        let mut yang = RMatElem::zero(1, Denom::XmY);
        for (&(i, j), c) in &gamma {
            yang.add_term((i, j, 0, 0), c.clone());
        }
        let s = expand_rational(&yang, 10).unwrap();
        let rep = series_w(&la.alg, &s, 6).unwrap();
        assert!(rep.shape_ok && rep.gram_ok && rep.constraints_ok);
        // w_{(k,i)} = gᵢ* x^{−k−1} exactly: the series is just the pole.
        for (&(_, _, a, b), _) in &s.terms {
            assert_eq!(a, -b - 1);
        }
    }

    #[test]
    fn series_normalized_standard_sl2() {
        let la = sl2_id();
        let r = standard_r(&la.alg, &la.auto).unwrap();
        let s = normalize_exp(&r, 8, 20).unwrap();
        let rep = series_w(&la.alg, &s, 6).unwrap();
        assert!(rep.shape_ok, "shape");
        assert!(rep.gram_ok, "gram");
        assert!(rep.constraints_ok, "constraints");
    }

    #[test]
    fn series_cg_11_constraints() {
        let (alg, r) = cg_solution(1, 1).unwrap();
        let s = normalize_exp(&r, 8, 20).unwrap();
        let rep = series_w(&alg, &s, 6).unwrap();
        assert!(rep.shape_ok && rep.gram_ok && rep.constraints_ok);
    }
}
