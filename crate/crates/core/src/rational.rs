//! Exact rationals and their textual form.
//!
//! The canonical text of a rational is `p` when it is an integer and `p/q`
//! otherwise, with `q > 1` and `gcd(p, q) = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Parses `p` or `p/q`. The fraction must already be in lowest terms with a
/// positive denominator; `4/2` and `1/-2` are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            if q.starts_with('-') {
                return Err(bad());
            }
            let q = parse_int(q)?;
            if !q.is_positive() || !p.gcd(&q).is_one() {
                return Err(bad());
            }
            Ok(Rational::new_raw(p, q))
        }
    }
}

pub fn format_rational(x: &Rational) -> String {
    if is_integral(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Representative of `x` modulo 1 in `[0, 1)`.
pub fn fract_part(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}
