//! Build the standard (quasi-)trigonometric solution r_◦ for sl_n with the
//! identity and Coxeter gradings, and verify the classical Yang–Baxter
//! equation exactly and at sampled points.

use cybe::grading::{coxeter_auto, identity_auto};
use cybe::latex::latex_rmat;
use cybe::liealg::{make_sl, FormKind};
use cybe::rat::rat;
use cybe::rtensor::{cybe_eval_at, cybe_residual, skew_residual};
use cybe::solutions::standard_r;
use num_traits::Zero;

fn main() {
    for n in [2usize, 3, 4] {
        let alg = make_sl(n, FormKind::Trace).unwrap();
        let auto = identity_auto(&alg);
        let r = standard_r(&alg, &auto).unwrap();

        // The CYBE residual is an exact Laurent polynomial; zero means the
        // identity holds as rational functions, not just numerically.
        assert!(cybe_residual(&alg, &r).is_zero());
        assert!(skew_residual(&r).is_zero());
        println!("sl_{n} (sigma = id): CYBE residual = 0, skew residual = 0");

        // Independent cross-check: evaluate the left-hand side pointwise.
        let (x1, x2, x3) = (rat(5, 2), rat(7, 3), rat(11, 4));
        let lhs = cybe_eval_at(&alg, &r, &x1, &x2, &x3).unwrap();
        assert!(lhs.values().all(|c| c.is_zero()));
        println!("sl_{n}: pointwise evaluation at (5/2, 7/3, 11/4) vanishes");
    }

    // The Coxeter grading gives the genuinely trigonometric form with
    // denominator x^n − y^n.
    for n in [2usize, 3] {
        let alg = make_sl(n, FormKind::Trace).unwrap();
        let auto = coxeter_auto(&alg).unwrap();
        let r = standard_r(&alg, &auto).unwrap();
        assert!(cybe_residual(&alg, &r).is_zero());
        assert!(skew_residual(&r).is_zero());
        println!("sl_{n} (Coxeter, m = {n}): CYBE residual = 0");
    }

    // Render the sl_2 solution as LaTeX.
    let alg = make_sl(2, FormKind::Trace).unwrap();
    let auto = coxeter_auto(&alg).unwrap();
    let r = standard_r(&alg, &auto).unwrap();
    println!("\nr_standard(sl_2, Coxeter) = {}", latex_rmat(&alg, &r));
}
