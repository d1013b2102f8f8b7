//! Text grammar for polynomials:
//!
//! ```text
//! poly   := sign? term (("+" | "-") term)*
//! term   := factor ("*"? factor)*
//! factor := int ("/" int)? | "x" int ("^" int)?
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Poly, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }
}

pub(super) fn parse_poly(s: &str, nvars: usize) -> Result<Poly> {
    let mut cur = Cursor {
        src: s.as_bytes(),
        pos: 0,
    };
    let mut out = Poly::zero(nvars);
    if cur.peek().is_none() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut sign = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            -Rational::one()
        }
        Some(b'+') => {
            cur.pos += 1;
            Rational::one()
        }
        _ => Rational::one(),
    };
    loop {
        let (mono, coeff) = parse_term(&mut cur, nvars)?;
        out.add_term(mono, sign * coeff);
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                sign = Rational::one();
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -Rational::one();
            }
            Some(c) => {
                return Err(Error::parse(
                    cur.pos,
                    format!("unexpected character {:?}", c as char),
                ))
            }
        }
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor<'_>, nvars: usize) -> Result<(Monomial, Rational)> {
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; nvars];
    let mut factors = 0;
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = cur.digits()?.parse().unwrap();
                let mut value = Rational::from_integer(num);
                if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    let at = cur.pos;
                    let den: BigInt = cur.digits()?.parse().unwrap();
                    if den.is_zero() {
                        return Err(Error::parse(at, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                coeff *= value;
            }
            Some(b'x') => {
                cur.pos += 1;
                let at = cur.pos;
                let idx: usize = cur
                    .digits()?
                    .parse()
                    .map_err(|_| Error::parse(at, "variable index too large"))?;
                if idx == 0 || idx > nvars {
                    return Err(Error::parse(
                        at,
                        format!("variable x{idx} outside x1..x{nvars}"),
                    ));
                }
                let mut e = 1u32;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    let at = cur.pos;
                    e = cur
                        .digits()?
                        .parse()
                        .map_err(|_| Error::parse(at, "exponent too large"))?;
                }
                exps[idx - 1] += e;
            }
            _ => {
                return Err(Error::parse(cur.pos, "expected a coefficient or variable"));
            }
        }
        factors += 1;
        match cur.peek() {
            Some(b'*') => {
                cur.pos += 1;
            }
            Some(c) if c.is_ascii_digit() || c == b'x' => {}
            _ => break,
        }
    }
    debug_assert!(factors > 0);
    Ok((Monomial::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::super::{frac, int};
    use super::*;

    #[test]
    fn grammar_example() {
        let p = Poly::parse("3/2*x1^2*x2 - x3", 3).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 1, 0])), frac(3, 2));
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 0, 1])), int(-1));
    }

    #[test]
    fn implicit_multiplication_and_repeats() {
        let a = Poly::parse("2 x1 x1 x2^2", 2).unwrap();
        let b = Poly::parse("2*x1^2*x2^2", 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_offsets() {
        match Poly::parse("x1 + x3", 2) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Poly::parse("", 2).is_err());
        assert!(Poly::parse("x1 +", 2).is_err());
        assert!(Poly::parse("1/0", 2).is_err());
        assert!(Poly::parse("x1 ) ", 2).is_err());
        assert!(Poly::parse("x0", 2).is_err());
    }

    #[test]
    fn leading_sign() {
        assert_eq!(
            Poly::parse("-x1 + 2", 1).unwrap(),
            Poly::parse("2 - x1", 1).unwrap()
        );
        assert_eq!(
            Poly::parse("+0", 1).unwrap(),
            Poly::zero(1)
        );
    }
}
