//! The cuspidal recipe inside g((z⁻¹)) and Stolin's constant Manin triples:
//! Yang's solution from the naive complement, a type-(b) triple giving
//! γ/(x−y) + constant tail, and constant tensors from Lagrangian graphs.

use cybe::grading::identity_auto;
use cybe::liealg::{make_sl, sl_unit_index, FormKind, GVec};
use cybe::loops::{LoopAlgebra, LoopElt};
use cybe::manin::{cuspidal_recipe, stolin_constant, StolinKind};
use cybe::rat::Rat;
use cybe::rtensor::{cybe_residual, Denom, RMatElem};
use cybe::solutions::{quasi_constant, QcKind};
use num_traits::Zero;

fn main() {
    let alg = make_sl(2, FormKind::Trace).unwrap();
    let auto = identity_auto(&alg);
    let la = LoopAlgebra { alg: alg.clone(), auto };
    let q = la.alg.dim;

    // W = z⁻¹ g[z⁻¹] (window span) is the complement of g[z] whose dual
    // basis has no corrections: the recipe returns exactly γ/(x−y).
    let mut w: Vec<LoopElt> = Vec::new();
    for k in 1..=8i64 {
        for i in 0..q {
            w.push(LoopElt::single(-k, la.alg.basis_vec(i)));
        }
    }
    let r = cuspidal_recipe(&la, &w, 8).unwrap();
    let gamma = la.alg.casimir().unwrap();
    let mut yang = RMatElem::zero(1, Denom::XmY);
    for (&(i, j), c) in &gamma {
        yang.add_term((i, j, 0, 0), c.clone());
    }
    assert_eq!(r, yang);
    assert!(cybe_residual(&la.alg, &r).is_zero());
    println!("cuspidal_recipe(z⁻¹g[z⁻¹]) = γ/(x−y)  [Yang, exact]");

    // Stolin's rational triples live in g[ε]/(ε²). The graph of ad_e is a
    // Lagrangian complement of g; its constant tensor is a nontrivial
    // rational solution tail.
    let e = sl_unit_index(2, 1, 2);
    let graph: Vec<(GVec, GVec)> = (0..q)
        .map(|i| {
            let b = la.alg.basis_vec(i);
            (la.alg.bracket(&la.alg.basis_vec(e), &b), b)
        })
        .collect();
    let t = stolin_constant(&la.alg, &graph, StolinKind::Rat).unwrap();
    assert!(!t.is_empty());
    let r = quasi_constant(&la.alg, &t, QcKind::Rat).unwrap();
    assert!(cybe_residual(&la.alg, &r).is_zero());
    println!("Stolin rational graph of ad_e: γ/(x−y) + t solves CYBE, t ≠ 0");

    // The trivial complement εg gives t = 0 back.
    let z: GVec = vec![Rat::zero(); q];
    let triv: Vec<(GVec, GVec)> = (0..q).map(|i| (z.clone(), la.alg.basis_vec(i))).collect();
    let t0 = stolin_constant(&la.alg, &triv, StolinKind::Rat).unwrap();
    assert!(t0.is_empty());
    println!("Stolin rational εg: t = 0 (pure Yang)");
}
