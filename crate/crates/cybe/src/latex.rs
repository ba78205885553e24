//! LaTeX rendering of solutions: each tensor is emitted as a standalone
//! fragment Σ c·(g_i ⊗ g_j)·x^a y^b over the denominator, with canonical
//! term order (the BTreeMap key order) so output is byte-identical across
//! runs.

use crate::liealg::{LieAlgebra, Tensor2};
use crate::rat::Rat;
use crate::rtensor::{Denom, RMatElem};
use num_traits::{One, Signed, Zero};

/// Render a rational coefficient, omitting "1" and folding the sign into
/// the separator; returns (sign_is_minus, magnitude_string).
fn coeff_parts(c: &Rat) -> (bool, String) {
    let neg = c.is_negative();
    let a = c.abs();
    let s = if a.is_one() {
        String::new()
    } else if a.is_integer() {
        format!("{}", a.numer())
    } else {
        format!("\\tfrac{{{}}}{{{}}}", a.numer(), a.denom())
    };
    (neg, s)
}

/// x^a as a LaTeX factor (empty for a = 0).
fn power(var: &str, a: i64) -> String {
    match a {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{{{a}}}"),
    }
}

/// The denominator of an [`RMatElem`] as LaTeX, or `None` for denominator 1.
pub fn latex_denom(denom: Denom, m: usize) -> Option<String> {
    match denom {
        Denom::One => None,
        Denom::XmY => Some("x - y".to_string()),
        Denom::XmYm => {
            if m == 1 {
                Some("x - y".to_string())
            } else {
                Some(format!("x^{{{m}}} - y^{{{m}}}"))
            }
        }
    }
}

/// Render a constant tensor Σ c·g_i ⊗ g_j with the algebra's basis labels.
pub fn latex_tensor2(alg: &LieAlgebra, t: &Tensor2) -> String {
    let mut out = String::new();
    for (&(i, j), c) in t {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = coeff_parts(c);
        if out.is_empty() {
            if neg {
                out.push_str("- ");
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_empty() {
            out.push_str(&mag);
            out.push_str(" \\, ");
        }
        out.push_str(&format!("{} \\otimes {}", alg.labels[i], alg.labels[j]));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Render an r-matrix as a standalone fragment
/// `\frac{1}{D(x,y)} \Bigl( ... \Bigr)` in canonical term order.
pub fn latex_rmat(alg: &LieAlgebra, r: &RMatElem) -> String {
    let mut body = String::new();
    for (&(i, j, a, b), c) in &r.terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = coeff_parts(c);
        if body.is_empty() {
            if neg {
                body.push_str("- ");
            }
        } else if neg {
            body.push_str(" - ");
        } else {
            body.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_empty() {
            factors.push(mag);
        }
        let px = power("x", a);
        if !px.is_empty() {
            factors.push(px);
        }
        let py = power("y", b);
        if !py.is_empty() {
            factors.push(py);
        }
        if !factors.is_empty() {
            body.push_str(&factors.join(" "));
            body.push_str(" \\, ");
        }
        body.push_str(&format!("{} \\otimes {}", alg.labels[i], alg.labels[j]));
    }
    if body.is_empty() {
        body.push('0');
    }
    match latex_denom(r.denom, r.m) {
        None => body,
        Some(d) => format!("\\frac{{1}}{{{d}}} \\Bigl( {body} \\Bigr)"),
    }
}

/// Wrap a fragment in a display-math environment for standalone inclusion.
pub fn latex_display(fragment: &str) -> String {
    format!("\\[\n{fragment}\n\\]\n")
}
