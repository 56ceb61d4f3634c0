//! Exact scalar types and small helpers shared by every module.
//!
//! `Rat` is an arbitrary-precision rational, always stored in lowest terms
//! with a positive denominator. `CRat` is a rational complex number; it
//! carries the entries of the complex images of quaternion matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rat = num_rational::BigRational;
pub type CRat = num_complex::Complex<Rat>;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string form, `"p"` for integers and `"p/q"` otherwise.
pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    Rat::from_str(s).ok()
}

/// True when `r` is an integer.
pub fn is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Integer value of an integral rational. Panics otherwise.
pub fn rat_as_int(r: &Rat) -> i64 {
    assert!(r.denom().is_one(), "expected an integer, got {r}");
    i64::try_from(r.numer().clone()).expect("value fits in i64")
}

/// `r` reduced modulo 1 into `[0, 1)`.
pub fn fract_mod_one(r: &Rat) -> Rat {
    let f = r - r.floor();
    debug_assert!(!f.is_negative() && f < Rat::one());
    f
}

/// Zero vector of the given length.
pub fn zero_vec(len: usize) -> Vec<Rat> {
    vec![Rat::zero(); len]
}

/// Dot product of two equal-length rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

/// Convex combination `(1 - s) a + s b`.
pub fn vec_lerp(a: &[Rat], b: &[Rat], s: &Rat) -> Vec<Rat> {
    let t = Rat::one() - s;
    a.iter().zip(b).map(|(x, y)| &t * x + s * y).collect()
}

pub fn vec_str(a: &[Rat]) -> String {
    let parts: Vec<String> = a.iter().map(rat_str).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prat(p: i64, q: i64) -> Rat {
        rat(p, q)
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = prat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat_str(&r), "-3/2");
        assert_eq!(rat_str(&prat(4, 2)), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/4", "-22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_str(&r), s);
        }
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn fract_reduces_into_unit_interval() {
        assert_eq!(fract_mod_one(&prat(-1, 3)), prat(2, 3));
        assert_eq!(fract_mod_one(&prat(7, 3)), prat(1, 3));
        assert!(fract_mod_one(&rat_int(5)).is_zero());
    }

    proptest! {
        #[test]
        fn add_commutes(a in -1000i64..1000, b in 1i64..60, c in -1000i64..1000, d in 1i64..60) {
            let (x, y) = (prat(a, b), prat(c, d));
            prop_assert_eq!(&x + &y, &y + &x);
        }

        #[test]
        fn mul_associates(a in -100i64..100, b in 1i64..30, c in -100i64..100,
                          d in 1i64..30, e in -100i64..100, f in 1i64..30) {
            let (x, y, z) = (prat(a, b), prat(c, d), prat(e, f));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
        }

        #[test]
        fn results_stay_reduced(a in -500i64..500, b in 1i64..40, c in -500i64..500, d in 1i64..40) {
            let r = prat(a, b) * prat(c, d) + prat(a, d);
            let g = num_integer::Integer::gcd(r.numer(), r.denom());
            prop_assert_eq!(g, BigInt::from(1));
            prop_assert!(r.denom() > &BigInt::from(0));
        }
    }
}
