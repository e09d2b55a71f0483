use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

/// `n/d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` (optional sign on `p`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes() {
        let r = parse_rational("-10/-4").unwrap();
        assert_eq!(format_rational(&r), "5/2");
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert_eq!(format_rational(&parse_rational("0/7").unwrap()), "0");
        assert_eq!(parse_rational(" 4752/125 ").unwrap(), rat(4752, 125));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
