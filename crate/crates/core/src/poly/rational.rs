//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"` or `"p/q"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(0, format!("invalid rational numerator in {s:?}")))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::parse(0, format!("invalid rational denominator in {s:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::parse(0, format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` text (`"p"` for integers).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational(" -2 ").unwrap(), int(-2));
        assert_eq!(parse_rational("3/-6").unwrap(), frac(-1, 2));
        assert_eq!(format_rational(&frac(-2, 4)), "-1/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }
}
