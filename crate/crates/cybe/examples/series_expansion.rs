//! Formal series analysis: expand solutions as r̃(x; y) = Σ_k r_k(x) y^k,
//! check the dual-basis shape w_(k,i) = g_i* x^{−k−1} + tail, the duality
//! Gram, and the order-by-order CYBE constraints.

use cybe::grading::identity_auto;
use cybe::liealg::{make_sl, FormKind};
use cybe::manin::{expand_rational, normalize_exp, series_w};
use cybe::rtensor::{Denom, RMatElem};
use cybe::solutions::{cg_solution, standard_r};

fn main() {
    let alg = make_sl(2, FormKind::Trace).unwrap();

    // Yang's solution γ/(x−y): the expansion is the bare pole series, all
    // coefficients exact.
    let gamma = alg.casimir().unwrap();
    let mut yang = RMatElem::zero(1, Denom::XmY);
    for (&(i, j), c) in &gamma {
        yang.add_term((i, j, 0, 0), c.clone());
    }
    let s = expand_rational(&yang, 10).unwrap();
    let rep = series_w(&alg, &s, 6).unwrap();
    assert!(rep.shape_ok && rep.gram_ok && rep.constraints_ok);
    println!("Yang: shape ok, Gram = δδ, constraints 0..6 hold ({} terms)", s.terms.len());

    // The standard sl_2 solution after the normalization x = exp(u),
    // y = exp(v): the pole becomes γ/(u−v) and the same checks pass on the
    // truncated band.
    let auto = identity_auto(&alg);
    let r = standard_r(&alg, &auto).unwrap();
    let s = normalize_exp(&r, 8, 20).unwrap();
    let rep = series_w(&alg, &s, 6).unwrap();
    assert!(rep.shape_ok && rep.gram_ok && rep.constraints_ok);
    println!(
        "standard sl_2 (normalized): duality + constraints to order {} on prec {}",
        rep.checked_order, s.prec
    );

    // Same battery for the Cremmer–Gervais (1,1) solution.
    let (alg11, r11) = cg_solution(1, 1).unwrap();
    let s = normalize_exp(&r11, 8, 20).unwrap();
    let rep = series_w(&alg11, &s, 6).unwrap();
    assert!(rep.shape_ok && rep.gram_ok && rep.constraints_ok);
    println!("cg(1,1) (normalized): duality + constraints to order {}", rep.checked_order);
}
