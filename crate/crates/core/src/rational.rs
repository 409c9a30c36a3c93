//! Exact rational scalars.
//!
//! Every quantity in this crate is a rational number; nothing is ever rounded.
//! The scalar type is [`num_rational::BigRational`], which keeps values in
//! lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational p/q. Panics on q = 0.
pub fn ratio(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders `p/q` with the `/q` part omitted for integers. Never a decimal.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or `-p/q`. Whitespace around the slash is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let mk_err = || ParseRationalError(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| mk_err())?;
            let q: BigInt = q.parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(mk_err());
            }
            Ok(Rational::new(p, q))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal: {0:?}")]
pub struct ParseRationalError(pub String);

/// Exact integer extraction; `None` when the denominator is not 1.
pub fn to_integer(x: &Rational) -> Option<BigInt> {
    x.denom().is_one().then(|| x.numer().clone())
}

/// Exact i64 extraction for small integral rationals.
pub fn to_i64(x: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    to_integer(x).and_then(|n| n.to_i64())
}

/// x^k for k >= 0.
pub fn pow(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Least common multiple of the denominators of a slice.
pub fn denominator_lcm(xs: &[Rational]) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-22/7", "100000000000000000001/3"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(format_rational(&x), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rational("4/2").unwrap(), rat(2));
        assert_eq!(parse_rational("-4/-2").unwrap(), rat(2));
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a/2", "1/2/3", "1.5"] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn denominator_lcm_of_mixed() {
        let xs = [ratio(1, 6), ratio(3, 4), rat(5)];
        assert_eq!(denominator_lcm(&xs), BigInt::from(12));
    }
}
