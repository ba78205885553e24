//! (g⊗g)- and (g⊗g⊗g)-valued Laurent rational functions.
//!
//! The central type [`RMatElem`] stores a candidate r-matrix as a sparse
//! numerator over one of three closed-form denominators {1, x−y, x^m−y^m}.
//! The CYBE residual is computed exactly: the bracket sum
//! [r¹²,r¹³] + [r¹²,r²³] + [r¹³,r²³] is cleared by the triple product
//! D(x₁,x₂)·D(x₁,x₃)·D(x₂,x₃) and returned as a Laurent polynomial that is
//! identically zero iff r solves the CYBE away from its poles. Skew-symmetry
//! and the constant CYBE get the same treatment, and gauge/substitution
//! transformations preserve all of it.

use crate::grading::GradedAuto;
use crate::liealg::{add_t2, add_t3, swap_t2, LieAlgebra, Tensor2, Tensor3};
use crate::linalg::{inverse, mat_mul, QMat};
use crate::poly::pow_rat;
use crate::rat::{parse_rat, rat_str, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from r-matrix operations.
#[derive(Debug, Error)]
pub enum RtError {
    #[error("denominator mismatch: {0} vs {1}")]
    DenomMismatch(String, String),
    #[error("gauge matrix is not a Lie algebra automorphism")]
    NotAutomorphism,
    #[error("substitution exponent must be ≥ 1")]
    BadSubstitution,
    #[error("evaluation at a pole: D({0}, {1}) = 0")]
    PoleEvaluation(String, String),
    #[error("malformed r-matrix file: {0}")]
    BadFile(String),
    #[error("numerator term violates loop compatibility at {0:?}")]
    NotLoopCompatible((usize, usize, i64, i64)),
}

/// The closed denominator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Denom {
    /// 1 (constant tensors, twists).
    One,
    /// x − y.
    #[serde(rename = "xy")]
    XmY,
    /// x^m − y^m.
    #[serde(rename = "xmym")]
    XmYm,
}

impl Denom {
    fn label(self) -> &'static str {
        match self {
            Denom::One => "1",
            Denom::XmY => "x-y",
            Denom::XmYm => "x^m-y^m",
        }
    }

    /// The degree shift used when multiplying by this denominator:
    /// D = x^e − y^e with e as below (e = 0 encodes D = 1).
    pub fn exponent(self, m: usize) -> i64 {
        match self {
            Denom::One => 0,
            Denom::XmY => 1,
            Denom::XmYm => m as i64,
        }
    }

    /// Evaluate D(x₀, y₀).
    pub fn eval(self, m: usize, x0: &Rat, y0: &Rat) -> Rat {
        let e = self.exponent(m);
        if e == 0 {
            Rat::one()
        } else {
            pow_rat(x0, e) - pow_rat(y0, e)
        }
    }
}

/// A (g⊗g)-valued Laurent rational function N(x,y)/D(x,y): the map sends
/// (i, j, a, b) to the coefficient of (g_i ⊗ g_j)·x^a y^b in the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatElem {
    pub m: usize,
    pub denom: Denom,
    pub terms: BTreeMap<(usize, usize, i64, i64), Rat>,
}

/// A sparse (g⊗g⊗g)-valued Laurent polynomial in x₁, x₂, x₃: the map sends
/// (i, j, k, a, b, c) to the coefficient of (g_i⊗g_j⊗g_k)·x₁^a x₂^b x₃^c.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor3Poly {
    pub terms: BTreeMap<(usize, usize, usize, i64, i64, i64), Rat>,
}

impl Tensor3Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// True when identically zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Accumulate a term, dropping exact cancellations.
    pub fn add_term(&mut self, key: (usize, usize, usize, i64, i64, i64), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Evaluate at a rational point, returning a numeric g^{⊗3} tensor.
    pub fn eval(&self, x1: &Rat, x2: &Rat, x3: &Rat) -> Tensor3 {
        let mut out = Tensor3::new();
        for (&(i, j, k, a, b, c), coef) in &self.terms {
            let v = coef.clone() * pow_rat(x1, a) * pow_rat(x2, b) * pow_rat(x3, c);
            add_t3(&mut out, (i, j, k), v);
        }
        out
    }
}

impl RMatElem {
    /// The zero element with a chosen denominator tag.
    pub fn zero(m: usize, denom: Denom) -> Self {
        RMatElem { m, denom, terms: BTreeMap::new() }
    }

    /// True when the numerator vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Accumulate a numerator term.
    pub fn add_term(&mut self, key: (usize, usize, i64, i64), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// A constant tensor t over denominator 1.
    pub fn from_tensor2(t: &Tensor2, m: usize) -> Self {
        let mut r = RMatElem::zero(m, Denom::One);
        for (&(i, j), c) in t {
            r.add_term((i, j, 0, 0), c.clone());
        }
        r
    }

    /// Add two elements over the same denominator.
    pub fn add(&self, other: &RMatElem) -> Result<RMatElem, RtError> {
        if self.denom != other.denom || self.m != other.m {
            return Err(RtError::DenomMismatch(
                self.denom.label().into(),
                other.denom.label().into(),
            ));
        }
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    /// Scale by a rational.
    pub fn scale(&self, c: &Rat) -> RMatElem {
        if c.is_zero() {
            return RMatElem::zero(self.m, self.denom);
        }
        RMatElem {
            m: self.m,
            denom: self.denom,
            terms: self.terms.iter().map(|(&k, v)| (k, v.clone() * c.clone())).collect(),
        }
    }

    /// Rewrite a denominator-1 or x−y element over x^m − y^m by multiplying
    /// numerator and denominator with the cofactor. Used to bring summands
    /// to a common denominator exactly.
    pub fn promote(&self, target: Denom) -> Result<RMatElem, RtError> {
        if self.denom == target {
            return Ok(self.clone());
        }
        let m = self.m as i64;
        let mut out = RMatElem::zero(self.m, target);
        match (self.denom, target) {
            (Denom::One, Denom::XmY) => {
                // N/1 = N·(x−y)/(x−y).
                for (&(i, j, a, b), c) in &self.terms {
                    out.add_term((i, j, a + 1, b), c.clone());
                    out.add_term((i, j, a, b + 1), -c.clone());
                }
            }
            (Denom::One, Denom::XmYm) => {
                for (&(i, j, a, b), c) in &self.terms {
                    out.add_term((i, j, a + m, b), c.clone());
                    out.add_term((i, j, a, b + m), -c.clone());
                }
            }
            (Denom::XmY, Denom::XmYm) => {
                // (x^m−y^m)/(x−y) = Σ_{k=0}^{m−1} x^{m−1−k} y^k.
                for (&(i, j, a, b), c) in &self.terms {
                    for k in 0..m {
                        out.add_term((i, j, a + m - 1 - k, b + k), c.clone());
                    }
                }
            }
            _ => {
                return Err(RtError::DenomMismatch(
                    self.denom.label().into(),
                    target.label().into(),
                ))
            }
        }
        Ok(out)
    }

    /// Evaluate at a non-pole point, returning a numeric tensor in g⊗g.
    pub fn eval(&self, x0: &Rat, y0: &Rat) -> Result<Tensor2, RtError> {
        let d = self.denom.eval(self.m, x0, y0);
        if d.is_zero() {
            return Err(RtError::PoleEvaluation(rat_str(x0), rat_str(y0)));
        }
        let mut out = Tensor2::new();
        for (&(i, j, a, b), c) in &self.terms {
            let v = c.clone() * pow_rat(x0, a) * pow_rat(y0, b) / d.clone();
            add_t2(&mut out, (i, j), v);
        }
        Ok(out)
    }

    /// Check loop compatibility: g_i ∈ g_{a mod m} and g_j ∈ g_{b mod m} for
    /// every monomial.
    pub fn check_loop_compatible(&self, auto: &GradedAuto) -> Result<(), RtError> {
        for &(i, j, a, b) in self.terms.keys() {
            if auto.residues[i] != auto.residue_of_degree(a)
                || auto.residues[j] != auto.residue_of_degree(b)
            {
                return Err(RtError::NotLoopCompatible((i, j, a, b)));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Residuals
// ---------------------------------------------------------------------------

/// Multiply a three-variable tensor polynomial by D(x_p, x_q) where D is
/// the denominator of `r` (legs indexed 0, 1, 2).
fn mul_denom_pair(t: &Tensor3Poly, p: usize, q: usize, denom: Denom, m: usize) -> Tensor3Poly {
    let e = denom.exponent(m);
    if e == 0 {
        return t.clone();
    }
    let mut out = Tensor3Poly::zero();
    for (&(i, j, k, a, b, c), coef) in &t.terms {
        let mut exps = [a, b, c];
        exps[p] += e;
        out.add_term((i, j, k, exps[0], exps[1], exps[2]), coef.clone());
        let mut exps = [a, b, c];
        exps[q] += e;
        out.add_term((i, j, k, exps[0], exps[1], exps[2]), -coef.clone());
    }
    out
}

/// The leg-pair bracket sums making up the CYBE left-hand side, as
/// numerator-level polynomials (denominators not yet cleared).
fn bracket_1213(alg: &LieAlgebra, r: &RMatElem) -> Tensor3Poly {
    // [r¹²(x₁,x₂), r¹³(x₁,x₃)] = Σ [g_i, g_k]⊗g_j⊗g_l · x₁^{a+c} x₂^b x₃^d.
    let mut out = Tensor3Poly::zero();
    for (&(i, j, a, b), c1) in &r.terms {
        for (&(k, l, cc, d), c2) in &r.terms {
            let coef = c1.clone() * c2.clone();
            for (bi, sc) in alg.bracket_basis(i, k) {
                out.add_term((bi, j, l, a + cc, b, d), coef.clone() * sc);
            }
        }
    }
    out
}

fn bracket_1223(alg: &LieAlgebra, r: &RMatElem) -> Tensor3Poly {
    // [r¹²(x₁,x₂), r²³(x₂,x₃)] = Σ g_i⊗[g_j, g_k]⊗g_l · x₁^a x₂^{b+c} x₃^d.
    let mut out = Tensor3Poly::zero();
    for (&(i, j, a, b), c1) in &r.terms {
        for (&(k, l, cc, d), c2) in &r.terms {
            let coef = c1.clone() * c2.clone();
            for (bi, sc) in alg.bracket_basis(j, k) {
                out.add_term((i, bi, l, a, b + cc, d), coef.clone() * sc);
            }
        }
    }
    out
}

fn bracket_1323(alg: &LieAlgebra, r: &RMatElem) -> Tensor3Poly {
    // [r¹³(x₁,x₃), r²³(x₂,x₃)] = Σ g_i⊗g_k⊗[g_j, g_l] · x₁^a x₂^c x₃^{b+d}.
    let mut out = Tensor3Poly::zero();
    for (&(i, j, a, b), c1) in &r.terms {
        for (&(k, l, cc, d), c2) in &r.terms {
            let coef = c1.clone() * c2.clone();
            for (bi, sc) in alg.bracket_basis(j, l) {
                out.add_term((i, k, bi, a, cc, b + d), coef.clone() * sc);
            }
        }
    }
    out
}

/// The cleared CYBE residual:
/// D(x₁,x₂)·D(x₁,x₃)·D(x₂,x₃)·([r¹²,r¹³] + [r¹²,r²³] + [r¹³,r²³]).
///
/// Identically zero iff r solves the CYBE away from its poles. Each bracket
/// sum carries two of the three denominators already, so exactly the missing
/// factor is applied to each.
pub fn cybe_residual(alg: &LieAlgebra, r: &RMatElem) -> Tensor3Poly {
    let (denom, m) = (r.denom, r.m);
    let t1213 = mul_denom_pair(&bracket_1213(alg, r), 1, 2, denom, m);
    let t1223 = mul_denom_pair(&bracket_1223(alg, r), 0, 2, denom, m);
    let t1323 = mul_denom_pair(&bracket_1323(alg, r), 0, 1, denom, m);
    let mut out = Tensor3Poly::zero();
    for t in [t1213, t1223, t1323] {
        for (k, c) in t.terms {
            out.add_term(k, c);
        }
    }
    out
}

/// Evaluate the CYBE left-hand side at a rational triple, computing each
/// bracket from the pointwise tensors r(x₁,x₂), r(x₁,x₃), r(x₂,x₃). This is
/// an independent oracle for [`cybe_residual`].
pub fn cybe_eval_at(
    alg: &LieAlgebra,
    r: &RMatElem,
    x1: &Rat,
    x2: &Rat,
    x3: &Rat,
) -> Result<Tensor3, RtError> {
    let r12 = r.eval(x1, x2)?;
    let r13 = r.eval(x1, x3)?;
    let r23 = r.eval(x2, x3)?;
    let mut out = Tensor3::new();
    for (&(i, j), c1) in &r12 {
        for (&(k, l), c2) in &r13 {
            let coef = c1.clone() * c2.clone();
            for (bi, sc) in alg.bracket_basis(i, k) {
                add_t3(&mut out, (bi, j, l), coef.clone() * sc);
            }
        }
    }
    for (&(i, j), c1) in &r12 {
        for (&(k, l), c2) in &r23 {
            let coef = c1.clone() * c2.clone();
            for (bi, sc) in alg.bracket_basis(j, k) {
                add_t3(&mut out, (i, bi, l), coef.clone() * sc);
            }
        }
    }
    for (&(i, j), c1) in &r13 {
        for (&(k, l), c2) in &r23 {
            let coef = c1.clone() * c2.clone();
            for (bi, sc) in alg.bracket_basis(j, l) {
                add_t3(&mut out, (i, k, bi), coef.clone() * sc);
            }
        }
    }
    Ok(out)
}

/// The skew residual r(x,y) + r²¹(y,x), over the same denominator (the
/// denominators in the closed set are antisymmetric, D(y,x) = −D(x,y),
/// except D = 1 which is symmetric). Zero iff r is skew-symmetric.
pub fn skew_residual(r: &RMatElem) -> RMatElem {
    let sign = match r.denom {
        Denom::One => Rat::one(),
        Denom::XmY | Denom::XmYm => -Rat::one(),
    };
    let mut out = r.clone();
    for (&(i, j, a, b), c) in &r.terms {
        out.add_term((j, i, b, a), c.clone() * sign.clone());
    }
    out
}

/// Residuals of the constant CYBE: `yb = [[t,t]]` and `sym = t + t²¹ − λγ`.
/// A constant tensor t solves the constant equation iff both vanish.
pub fn constant_cybe_residual(alg: &LieAlgebra, t: &Tensor2, lambda: &Rat) -> (Tensor3, Tensor2) {
    let r = RMatElem::from_tensor2(t, 1);
    // For a constant tensor the cleared residual with D = 1 is [[t,t]]
    // itself, with all exponents zero.
    let poly = cybe_residual(alg, &r);
    let mut yb = Tensor3::new();
    for (&(i, j, k, _, _, _), c) in &poly.terms {
        add_t3(&mut yb, (i, j, k), c.clone());
    }
    let mut sym = t.clone();
    for (&(i, j), c) in &swap_t2(t) {
        add_t2(&mut sym, (i, j), c.clone());
    }
    if !lambda.is_zero() {
        for (&(i, j), c) in &alg.casimir().unwrap() {
            add_t2(&mut sym, (i, j), -(lambda.clone() * c.clone()));
        }
    }
    (yb, sym)
}

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

/// Verify that a matrix (acting on basis coordinates) is a Lie algebra
/// automorphism: invertible and φ([g_i, g_j]) = [φ g_i, φ g_j].
pub fn is_automorphism(alg: &LieAlgebra, phi: &QMat) -> bool {
    if inverse(phi).is_none() {
        return false;
    }
    let col = |b: usize| -> Vec<Rat> { (0..alg.dim).map(|r| phi[r][b].clone()).collect() };
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            // φ([g_i, g_j]).
            let mut lhs = vec![Rat::zero(); alg.dim];
            for (k, c) in alg.bracket_basis(i, j) {
                for (l, x) in col(k).into_iter().enumerate() {
                    lhs[l] += c.clone() * x;
                }
            }
            let rhs = alg.bracket(&col(i), &col(j));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Gauge transform (φ⊗φ)r with a constant automorphism φ.
pub fn transform_gauge(alg: &LieAlgebra, r: &RMatElem, phi: &QMat) -> Result<RMatElem, RtError> {
    if !is_automorphism(alg, phi) {
        return Err(RtError::NotAutomorphism);
    }
    let mut out = RMatElem::zero(r.m, r.denom);
    for (&(i, j, a, b), c) in &r.terms {
        for k in 0..alg.dim {
            if phi[k][i].is_zero() {
                continue;
            }
            for l in 0..alg.dim {
                if phi[l][j].is_zero() {
                    continue;
                }
                out.add_term((k, l, a, b), c.clone() * phi[k][i].clone() * phi[l][j].clone());
            }
        }
    }
    Ok(out)
}

/// Change of variables r(x^d, y^d), d ≥ 1. Exponents scale by d; the
/// denominator x^e − y^e becomes x^{ed} − y^{ed}, recorded by scaling the
/// grading order (XmY with d > 1 is promoted to XmYm).
pub fn transform_substitute(r: &RMatElem, d: i64) -> Result<RMatElem, RtError> {
    if d < 1 {
        return Err(RtError::BadSubstitution);
    }
    if d == 1 {
        return Ok(r.clone());
    }
    let (denom, m) = match r.denom {
        Denom::One => (Denom::One, r.m * d as usize),
        Denom::XmY => (Denom::XmYm, d as usize),
        Denom::XmYm => (Denom::XmYm, r.m * d as usize),
    };
    let mut out = RMatElem::zero(m, denom);
    for (&(i, j, a, b), c) in &r.terms {
        out.add_term((i, j, a * d, b * d), c.clone());
    }
    Ok(out)
}

/// Pointwise nondegeneracy: true iff the q×q coefficient matrix of
/// r(x₀, y₀) (equivalently, the map κ̃(r(x₀,y₀)): g* → g composed with the
/// invertible Gram matrix) is invertible.
pub fn nondegenerate_at(
    alg: &LieAlgebra,
    r: &RMatElem,
    x0: &Rat,
    y0: &Rat,
) -> Result<bool, RtError> {
    let t = r.eval(x0, y0)?;
    let mut c = vec![vec![Rat::zero(); alg.dim]; alg.dim];
    for (&(i, j), v) in &t {
        c[i][j] = v.clone();
    }
    // κ̃(r) as a matrix is C·G (pairing the second leg); G is invertible, so
    // invertibility of C·G equals invertibility of C — both are checked to
    // keep the definition honest.
    let cg = mat_mul(&c, &alg.gram);
    Ok(inverse(&cg).is_some())
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// JSON schema: `{m, denom: "one"|"xy"|"xmym", terms: [[i, j, a, b, "p/q"], …]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct RMatFile {
    pub m: usize,
    pub denom: Denom,
    pub terms: Vec<(usize, usize, i64, i64, String)>,
}

/// Serialize.
pub fn rmat_to_file(r: &RMatElem) -> RMatFile {
    RMatFile {
        m: r.m,
        denom: r.denom,
        terms: r
            .terms
            .iter()
            .map(|(&(i, j, a, b), c)| (i, j, a, b, rat_str(c)))
            .collect(),
    }
}

/// Deserialize.
pub fn rmat_from_file(file: &RMatFile) -> Result<RMatElem, RtError> {
    let mut r = RMatElem::zero(file.m, file.denom);
    for (i, j, a, b, s) in &file.terms {
        r.add_term((*i, *j, *a, *b), parse_rat(s).map_err(RtError::BadFile)?);
    }
    Ok(r)
}
