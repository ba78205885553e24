//! Multivariate Laurent polynomials over ℚ.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors, so the
//! canonical term order is lexicographic on exponents by the fixed variable
//! order — every operation produces the same canonical form, which the
//! serializers and the determinism tests rely on.
//!
//! No zero coefficients are ever stored; the zero polynomial is the empty
//! term map.

use crate::rat::{rat_str, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors produced by Laurent-polynomial operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    /// Binary operation on polynomials over different variable lists.
    #[error("variable-list mismatch: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    /// Exact division failed: the dividend has a genuine pole at the divisor.
    #[error("not divisible: remainder has leading term {0}")]
    NotDivisible(String),
    /// Division by the zero polynomial.
    #[error("division by zero polynomial")]
    DivisionByZero,
}

/// A multivariate Laurent polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    /// Ordered variable names; exponent vectors index into this list.
    pub vars: Vec<String>,
    /// Map from exponent vector to nonzero coefficient.
    pub terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    /// The zero polynomial in the given variables.
    pub fn zero(vars: &[&str]) -> Self {
        LaurentPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// A single monomial `c · x^e`.
    pub fn monomial(vars: &[&str], exps: &[i64], c: Rat) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        p.add_term(exps.to_vec(), c);
        p
    }

    /// A constant polynomial.
    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let exps = vec![0i64; vars.len()];
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    /// True when this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c · x^e` into this polynomial, keeping canonical form.
    pub fn add_term(&mut self, exps: Vec<i64>, c: Rat) {
        assert_eq!(exps.len(), self.vars.len(), "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(())
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero_like(self);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        let mut out = Self::zero_like(self);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero_like(self);
        }
        let mut out = Self::zero_like(self);
        for (e, k) in &self.terms {
            out.terms.insert(e.clone(), k.clone() * c.clone());
        }
        out
    }

    fn zero_like(p: &Self) -> Self {
        LaurentPoly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Leading term under the canonical (lex) order: the *last* map entry.
    fn leading(&self) -> Option<(&Vec<i64>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `q` with `self = q · b`, or
    /// [`PolyError::NotDivisible`] when the quotient does not exist.
    ///
    /// Greedy leading-term elimination under the lex order. When `self` is a
    /// genuine multiple of `b` the leading term of the remainder is always a
    /// monomial multiple of the leading term of `b` (Laurent monomials are
    /// invertible, so "multiple" is automatic), and each step strictly
    /// decreases the remainder's leading monomial; termination follows
    /// because every intermediate remainder is a sub-sum of `(q - q̂)·b` for
    /// partial quotients q̂, whose exponents live in a fixed finite box.
    pub fn exact_div(&self, b: &Self) -> Result<Self, PolyError> {
        self.check_vars(b)?;
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (lb_e, lb_c) = b.leading().expect("nonzero divisor has leading term");
        let lb_e = lb_e.clone();
        let lb_c = lb_c.clone();
        // Exponent box the quotient must live in: for self = q·b, every
        // monomial of q has exponents between min(self)-max(b) and
        // max(self)-min(b) in each variable. Bail out (NotDivisible) if the
        // remainder ever demands a quotient term outside the box.
        let bounds = div_bounds(self, b);
        let mut rem = self.clone();
        let mut quot = Self::zero_like(self);
        while let Some((lr_e, lr_c)) = rem.leading() {
            let qe: Vec<i64> = lr_e.iter().zip(&lb_e).map(|(a, b)| a - b).collect();
            if let Some((lo, hi)) = &bounds {
                if qe.iter().zip(lo).any(|(e, l)| e < l) || qe.iter().zip(hi).any(|(e, h)| e > h) {
                    return Err(PolyError::NotDivisible(format!("{lr_e:?} -> {}", rat_str(lr_c))));
                }
            }
            let qc = lr_c.clone() / lb_c.clone();
            quot.add_term(qe.clone(), qc.clone());
            // rem -= qc * x^qe * b
            for (eb, cb) in &b.terms {
                let e: Vec<i64> = qe.iter().zip(eb).map(|(a, b)| a + b).collect();
                rem.add_term(e, -(qc.clone() * cb.clone()));
            }
        }
        Ok(quot)
    }

    /// Evaluate at a rational point. Exponents may be negative; the point
    /// coordinates must then be nonzero.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "evaluation point arity");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &k) in point.iter().zip(e) {
                term *= pow_rat(xi, k);
            }
            acc += term;
        }
        acc
    }

    /// Substitute each variable by a monomial power of itself: `x_i ↦ x_i^d`.
    pub fn substitute_powers(&self, d: i64) -> Self {
        assert!(d >= 1, "substitution degree must be positive");
        let mut out = Self::zero_like(self);
        for (e, c) in &self.terms {
            out.add_term(e.iter().map(|k| k * d).collect(), c.clone());
        }
        out
    }
}

/// Exponent box for quotient terms in exact division, or `None` when either
/// polynomial is zero.
fn div_bounds(a: &LaurentPoly, b: &LaurentPoly) -> Option<(Vec<i64>, Vec<i64>)> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let n = a.vars.len();
    let mut amin = vec![i64::MAX; n];
    let mut amax = vec![i64::MIN; n];
    for e in a.terms.keys() {
        for i in 0..n {
            amin[i] = amin[i].min(e[i]);
            amax[i] = amax[i].max(e[i]);
        }
    }
    let mut bmin = vec![i64::MAX; n];
    let mut bmax = vec![i64::MIN; n];
    for e in b.terms.keys() {
        for i in 0..n {
            bmin[i] = bmin[i].min(e[i]);
            bmax[i] = bmax[i].max(e[i]);
        }
    }
    let lo: Vec<i64> = (0..n).map(|i| amin[i] - bmax[i]).collect();
    let hi: Vec<i64> = (0..n).map(|i| amax[i] - bmin[i]).collect();
    Some((lo, hi))
}

/// Exact integer power of a rational, allowing negative exponents.
pub fn pow_rat(x: &Rat, k: i64) -> Rat {
    use num_traits::One;
    if k == 0 {
        return Rat::one();
    }
    let mut base = if k > 0 {
        x.clone()
    } else {
        assert!(!x.is_zero(), "negative power of zero");
        x.recip()
    };
    let mut n = k.unsigned_abs();
    let mut acc = Rat::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        n >>= 1;
    }
    acc
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", rat_str(c))?;
            for (v, &k) in self.vars.iter().zip(e) {
                if k != 0 {
                    write!(f, "*{v}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratz};

    const XY: [&str; 2] = ["x", "y"];

    fn x_minus_y() -> LaurentPoly {
        let mut p = LaurentPoly::zero(&XY);
        p.add_term(vec![1, 0], ratz(1));
        p.add_term(vec![0, 1], ratz(-1));
        p
    }

    fn x_plus_y() -> LaurentPoly {
        let mut p = LaurentPoly::zero(&XY);
        p.add_term(vec![1, 0], ratz(1));
        p.add_term(vec![0, 1], ratz(1));
        p
    }

    #[test]
    fn difference_of_squares() {
        // (x − y)(x + y) = x² − y²  — ring identity.
        let prod = x_minus_y().mul(&x_plus_y()).unwrap();
        let mut expect = LaurentPoly::zero(&XY);
        expect.add_term(vec![2, 0], ratz(1));
        expect.add_term(vec![0, 2], ratz(-1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn additive_identity() {
        let p = x_minus_y();
        let z = LaurentPoly::zero(&XY);
        assert_eq!(p.add(&z).unwrap(), p);
    }

    #[test]
    fn expand_vs_factor_multiply_cross_check() {
        // x² − y² computed by expansion agrees with the schoolbook product
        // accumulated term by term in the opposite order.
        let a = x_minus_y();
        let b = x_plus_y();
        let mut manual = LaurentPoly::zero(&XY);
        for (ea, ca) in b.terms.iter().rev() {
            for (eb, cb) in a.terms.iter().rev() {
                manual.add_term(
                    ea.iter().zip(eb).map(|(u, v)| u + v).collect(),
                    ca.clone() * cb.clone(),
                );
            }
        }
        assert_eq!(manual, a.mul(&b).unwrap());
    }

    #[test]
    fn exact_division_succeeds() {
        // (x² − y²)/(x − y) = x + y.
        let num = x_minus_y().mul(&x_plus_y()).unwrap();
        assert_eq!(num.exact_div(&x_minus_y()).unwrap(), x_plus_y());
    }

    #[test]
    fn exact_division_detects_pole() {
        // x/(x − y) is a genuine pole.
        let x = LaurentPoly::monomial(&XY, &[1, 0], ratz(1));
        assert!(matches!(
            x.exact_div(&x_minus_y()),
            Err(PolyError::NotDivisible(_))
        ));
    }

    #[test]
    fn laurent_division_with_negative_exponents() {
        // (x⁻¹ − y⁻¹) = -(x - y)·x⁻¹y⁻¹, so division by (x−y) must succeed.
        let mut p = LaurentPoly::zero(&XY);
        p.add_term(vec![-1, 0], ratz(1));
        p.add_term(vec![0, -1], ratz(-1));
        let q = p.exact_div(&x_minus_y()).unwrap();
        assert_eq!(q, LaurentPoly::monomial(&XY, &[-1, -1], ratz(-1)));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let p = LaurentPoly::constant(&["x"], ratz(1));
        let q = LaurentPoly::constant(&["y"], ratz(1));
        assert!(matches!(p.add(&q), Err(PolyError::VarMismatch(_, _))));
    }

    #[test]
    fn eval_with_negative_exponents() {
        let p = LaurentPoly::monomial(&XY, &[-2, 1], rat(3, 2));
        // 3/2 · x⁻² y at (2, 4) = 3/2 · 1/4 · 4 = 3/2.
        assert_eq!(p.eval(&[ratz(2), ratz(4)]), rat(3, 2));
    }
}
