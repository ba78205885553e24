//! The nodal dual-basis recipe: reconstruct solutions from Lagrangian
//! subalgebras of M = L × L‡. Three golden inputs — the standard W°, the
//! quasi-trigonometric W^trg_(1,1), and a quasi-constant Stolin triple —
//! reproduce r_◦, cg(1,1), and y/(x−y)γ + t exactly.

use cybe::grading::identity_auto;
use cybe::liealg::{make_sl, sl_cartan_index, sl_unit_index, FormKind, GVec};
use cybe::loops::LoopAlgebra;
use cybe::manin::{
    nodal_recipe, quasi_constant_w, standard_w, stolin_constant, w_trg, StolinKind,
};
use cybe::rat::Rat;
use cybe::rtensor::{cybe_residual, Denom};
use cybe::solutions::{cg_solution, quasi_constant, standard_r, QcKind};
use num_traits::Zero;

fn main() {
    // Golden 1: the standard Lagrangian reproduces r_◦.
    let alg = make_sl(2, FormKind::Trace).unwrap();
    let auto = identity_auto(&alg);
    let la = LoopAlgebra { alg: alg.clone(), auto };
    let w0 = standard_w(&la, 8).unwrap();
    let r = nodal_recipe(&la, &w0).unwrap();
    let expect = standard_r(&la.alg, &la.auto).unwrap();
    assert_eq!(r.promote(Denom::XmYm).unwrap(), expect);
    println!("nodal_recipe(W°, window 8) = standard r_◦  [exact]");

    // Golden 2: the quasi-trigonometric subalgebra gives cg(1,1).
    let (la_trg, w_11) = w_trg(1, 1, 8).unwrap();
    let r = nodal_recipe(&la_trg, &w_11).unwrap();
    let (_, cg) = cg_solution(1, 1).unwrap();
    assert_eq!(r, cg);
    println!("nodal_recipe(W^trg_(1,1), window 8) = cg(1,1)  [exact]");

    // Golden 3: a quasi-constant triple built from the Borel Lagrangian
    // ⟨(e,0), (0,f), (h,−h)⟩ ⊂ g × g gives y/(x−y)γ + t.
    let e = sl_unit_index(2, 1, 2);
    let f = sl_unit_index(2, 2, 1);
    let h = sl_cartan_index(2, 1);
    let z: GVec = vec![Rat::zero(); la.alg.dim];
    let neg = |v: &GVec| -> GVec { v.iter().map(|c| -c.clone()).collect() };
    let borel = vec![
        (la.alg.basis_vec(e), z.clone()),
        (z.clone(), la.alg.basis_vec(f)),
        (la.alg.basis_vec(h), neg(&la.alg.basis_vec(h))),
    ];
    let t = stolin_constant(&la.alg, &borel, StolinKind::Trig).unwrap();
    let w = quasi_constant_w(&la, &borel, 8);
    let r = nodal_recipe(&la, &w).unwrap();
    let expect = quasi_constant(&la.alg, &t, QcKind::Trig).unwrap();
    assert_eq!(r, expect);
    assert!(cybe_residual(&la.alg, &r).is_zero());
    println!("nodal_recipe(quasi-constant Borel triple) = y/(x−y)γ + t  [exact]");
    println!("constant part t has {} terms", t.len());
}
