//! Enumerate Belavin–Drinfeld triples for affine sl_2 (Coxeter grading),
//! solve the consistency system, build the twists, and verify both the
//! twist equation and the CYBE for every quadruple.

use cybe::grading::{casimir_components, coxeter_auto};
use cybe::liealg::{make_sl, FormKind};
use cybe::loops::LoopAlgebra;
use cybe::manin::twist_equation_residual;
use cybe::rat::Rat;
use cybe::rtensor::{cybe_residual, skew_residual, Denom};
use cybe::solutions::{
    bd_twist, covector_gram, enumerate_bd_triples, lambda1, solve_consistency, standard_r,
    BDQuadruple,
};

fn main() {
    let alg = make_sl(2, FormKind::Trace).unwrap();
    let auto = coxeter_auto(&alg).unwrap();
    let la = LoopAlgebra { alg: alg.clone(), auto: auto.clone() };

    // Λ₁ carries the affine simple-root data; its covector Gram matrix is
    // the affine A_1 Cartan-type matrix up to scale.
    let l1 = lambda1(&alg, &auto).unwrap();
    let alphas: Vec<Vec<Rat>> = l1.iter().map(|e| e.alpha.clone()).collect();
    let gram = covector_gram(&alg, &auto.g0_cartan, &alphas).unwrap();
    println!("affine sl_2 Gram: {:?}", gram);

    let triples = enumerate_bd_triples(&gram);
    println!("{} admissible triples (empty + two swaps)", triples.len());
    assert_eq!(triples.len(), 3);

    let comp = casimir_components(&alg, &auto).unwrap();
    let r0 = standard_r(&alg, &auto).unwrap();

    for triple in &triples {
        // Pair list (τ(α), α) for the consistency system on s ∈ h∧h.
        let pairs: Vec<(Vec<Rat>, Vec<Rat>)> = triple
            .gamma1
            .iter()
            .zip(&triple.tau)
            .map(|(&a, &b)| (l1[b].alpha.clone(), l1[a].alpha.clone()))
            .collect();
        let sol = solve_consistency(&auto.g0_cartan, &pairs, &comp.gamma0_zero).unwrap();
        let q = BDQuadruple { triple: triple.clone(), s: sol.particular };

        let t = bd_twist(&alg, &auto, &q).unwrap();
        assert!(skew_residual(&t).is_zero());

        // The twist equation alt((δ_◦ ⊗ 1)(t)) = [[t, t]] holds exactly…
        let teq = twist_equation_residual(&la, &t, &r0).unwrap();
        assert!(teq.is_zero());

        // …and so does the CYBE for r_◦ + t.
        let r = r0.add(&t.promote(Denom::XmYm).unwrap()).unwrap();
        assert!(cybe_residual(&alg, &r).is_zero());
        println!(
            "triple Γ₁={:?} τ={:?}: twist eq = 0, CYBE(r_◦ + t) = 0, {} twist terms",
            triple.gamma1,
            triple.tau,
            t.terms.len()
        );
    }
}
