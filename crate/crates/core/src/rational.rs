//! Exact rationals used for every magnitude, exponent and coordinate.

use alloc::string::ToString;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = num_rational::Ratio<i128>;

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Parses `-3`, `7/2`, `+1/3`. Offsets in errors are relative to `base`.
pub fn parse_rational(s: &str, base: usize) -> Result<Rational> {
    let err = |msg: &str| Error::Parse { pos: base, msg: msg.to_string() };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let n = i128::from_str(num).map_err(|_| err("invalid integer"))?;
    let d = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(err("denominator must be unsigned"));
            }
            i128::from_str(d).map_err(|_| err("invalid denominator"))?
        }
        None => 1,
    };
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> i128 {
    qs.into_iter().fold(1i128, |acc, q| num_integer::lcm(acc, *q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("-3/6", 0).unwrap(), frac(-1, 2));
        assert_eq!(format!("{}", parse_rational("4", 0).unwrap()), "4");
        assert_eq!(format!("{}", frac(3, 2)), "3/2");
        assert!(parse_rational("1/0", 0).is_err());
        assert!(parse_rational("1/-2", 0).is_err());
        assert!(parse_rational("x", 0).is_err());
    }
}
