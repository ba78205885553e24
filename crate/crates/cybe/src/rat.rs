//! Exact rational scalars.
//!
//! All arithmetic in this crate happens over ℚ. The scalar type is
//! [`num_rational::BigRational`], which keeps values in lowest terms with a
//! positive denominator — exactly the canonical form the rest of the crate
//! relies on for bit-exact comparisons and deterministic serialization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Build a rational from an integer pair `p/q`.
///
/// # Panics
/// Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Build a rational from an integer.
pub fn ratz(p: i64) -> Rat {
    Rat::from(BigInt::from(p))
}

/// Parse a rational from the canonical string form `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|e| format!("bad denominator {d:?}: {e}"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Render a rational in the canonical string form `"p"` or `"p/q"`.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render a rational as a LaTeX fragment (`\frac` for non-integers).
pub fn rat_latex(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -r.numer(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_lowest_terms() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert_eq!(rat_str(&r), "-3/2");
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn canonical_zero() {
        let z = rat(0, 7);
        assert_eq!(rat_str(&z), "0");
        assert!(z.denom().is_one());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["5", "-7/3", "0", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_str(&r), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
