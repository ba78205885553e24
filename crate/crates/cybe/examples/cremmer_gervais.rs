//! The (c, d) family of Cremmer–Gervais type: reproduce the printed (1, 1)
//! formula exactly and verify CYBE + skew-symmetry across the family.

use cybe::latex::latex_rmat;
use cybe::liealg::{sl_cartan_index, sl_unit_index};
use cybe::rat::{rat, ratz};
use cybe::rtensor::{cybe_residual, skew_residual, Denom, RMatElem};
use cybe::solutions::cg_solution;
use num_traits::One;

fn main() {
    // r_(1,1)(u, v) = ¼ (u+v)/(u−v) h⊗h + u/(u−v) f⊗e + v/(u−v) e⊗f
    //               + (v−u) f⊗f.
    let (alg, r) = cg_solution(1, 1).unwrap();
    let e = sl_unit_index(2, 1, 2);
    let f = sl_unit_index(2, 2, 1);
    let h = sl_cartan_index(2, 1);

    let mut expect = RMatElem::zero(1, Denom::XmY);
    expect.add_term((h, h, 1, 0), rat(1, 4));
    expect.add_term((h, h, 0, 1), rat(1, 4));
    expect.add_term((f, e, 1, 0), ratz(1));
    expect.add_term((e, f, 0, 1), ratz(1));
    // (v−u) f⊗f over (u−v): numerator −(u−v)² = −u² + 2uv − v².
    expect.add_term((f, f, 2, 0), -cybe::rat::Rat::one());
    expect.add_term((f, f, 1, 1), ratz(2));
    expect.add_term((f, f, 0, 2), -cybe::rat::Rat::one());
    assert_eq!(r, expect);
    println!("cg(1,1) matches the printed formula coefficient-for-coefficient");
    println!("r_(1,1) = {}\n", latex_rmat(&alg, &r));

    // The whole coprime family at desk scale.
    for (c, d) in [(1usize, 1usize), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3)] {
        let (alg, r) = cg_solution(c, d).unwrap();
        assert!(cybe_residual(&alg, &r).is_zero());
        assert!(skew_residual(&r).is_zero());
        println!("cg({c},{d}) on sl_{}: CYBE residual = 0, skew = 0", c + d);
    }

    // Non-coprime input is rejected.
    assert!(cg_solution(2, 2).is_err());
    println!("cg(2,2) rejected: (c, d) must be coprime");
}
