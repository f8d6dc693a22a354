//! Small exact-arithmetic helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rational numbers used for phases, weights, ages and exponents.
pub type Q = Ratio<i64>;

/// Reduces `x` into `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

pub fn lcm_all<I: IntoIterator<Item = i64>>(it: I) -> i64 {
    it.into_iter().fold(1, |acc, x| acc.lcm(&x))
}

/// Order of `x` in `Q/Z`.
pub fn order_mod_one(x: Q) -> i64 {
    *frac(x).denom()
}

/// Parses `"a/b"`, `"a"` or `"-a/b"`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().ok()?;
            let b: i64 = b.trim().parse().ok()?;
            if b == 0 {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => s.parse::<i64>().ok().map(Q::from_integer),
    }
}

/// Formats a rational as `"a/b"` (integers as `"a/1"`).
pub fn fmt_rational(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn fmt_big_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn bq(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn q_to_big(x: &Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

pub fn big_to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

pub fn big_rat_to_q(x: &BigRational) -> Option<Q> {
    Some(Q::new(x.numer().to_i64()?, x.denom().to_i64()?))
}

pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

pub fn sign_pow(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() {
        b.abs()
    } else {
        a.gcd(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_reduces_into_unit_interval() {
        assert_eq!(frac(Q::new(7, 5)), Q::new(2, 5));
        assert_eq!(frac(Q::new(-1, 3)), Q::new(2, 3));
        assert_eq!(frac(Q::from_integer(4)), Q::zero());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational(" 2/4 "), Some(Q::new(1, 2)));
        assert_eq!(parse_rational("0"), Some(Q::zero()));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&Q::new(3, 1)), "3/1");
    }

    #[test]
    fn orders() {
        assert_eq!(order_mod_one(Q::new(3, 7)), 7);
        assert_eq!(order_mod_one(Q::new(3, 3)), 1);
        assert_eq!(lcm_all([4, 6]), 12);
    }
}
