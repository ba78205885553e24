//! Truncated Manin triples on M = L × L‡: the standard Lagrangian W°, the
//! twist ↔ Lagrangian-subspace correspondence, and the equivalence between
//! bracket closure of W_t and the twist equation for t.

use cybe::grading::identity_auto;
use cybe::liealg::{make_sl, sl_unit_index, FormKind};
use cybe::loops::LoopAlgebra;
use cybe::manin::{
    check_manin, standard_w, twist_equation_residual, twist_from_w, w_from_twist,
};
use cybe::rat::{rat, ratz, Rat};
use cybe::rtensor::{Denom, RMatElem};
use cybe::solutions::standard_r;
use num_traits::One;

fn main() {
    let alg = make_sl(2, FormKind::Trace).unwrap();
    let auto = identity_auto(&alg);
    let la = LoopAlgebra { alg: alg.clone(), auto };

    // W° is Lagrangian, complementary to the diagonal, and closed under
    // the componentwise bracket — all checked inside the safe window.
    let w0 = standard_w(&la, 4).unwrap();
    let report = check_manin(&la, &w0).unwrap();
    println!(
        "W° window 4: isotropy={} complement={} closure={}",
        report.isotropy, report.diagonal_complement, report.bracket_closure
    );
    assert!(report.isotropy && report.diagonal_complement && report.bracket_closure);

    // Twist ↔ subspace round trip: W_t = {w + f_t(w)} determines t back.
    let e = sl_unit_index(2, 1, 2);
    let f = sl_unit_index(2, 2, 1);
    let mut t = RMatElem::zero(1, Denom::One);
    t.add_term((e, f, 1, 0), ratz(2));
    t.add_term((f, e, 0, 1), ratz(-2));
    let wt = w_from_twist(&la, &t, &w0).unwrap();
    let rec = twist_from_w(&la, &wt, &w0, 2).unwrap();
    assert_eq!(rec, t);
    println!("twist -> W_t -> twist round trip exact");

    // A skew tensor failing the twist equation produces a W_t that is NOT
    // a subalgebra; the two failures are detected together.
    let mut bad = RMatElem::zero(1, Denom::One);
    bad.add_term((e, f, 1, -1), Rat::one());
    bad.add_term((f, e, -1, 1), -Rat::one());
    bad.add_term((e, f, -1, 1), -rat(1, 1));
    bad.add_term((f, e, 1, -1), rat(1, 1));
    let r0 = standard_r(&la.alg, &la.auto).unwrap();
    let teq = twist_equation_residual(&la, &bad, &r0).unwrap();
    let wb = w_from_twist(&la, &bad, &w0).unwrap();
    let rb = check_manin(&la, &wb).unwrap();
    assert!(!teq.is_zero());
    assert!(!rb.bracket_closure);
    println!(
        "invalid twist: twist-eq residual nonzero ({} terms), bracket closure fails",
        teq.terms.len()
    );
}
