//! Exact integer and rational scalars plus dense matrices over them.

mod det;
mod matrix;
mod smith;

pub use det::{det, det_int, inverse, is_unimodular, solve};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use smith::{smith_normal_form, SmithForm};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_from_int(v: Integer) -> Rational {
    Rational::from_integer(v)
}

/// Canonical text form: `p/q` in lowest terms, or `p` when `q = 1`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, with optional sign on either part and surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let parse_int = |part: &str| -> Result<Integer> {
        let part = part.trim();
        let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::MalformedRational(text.to_string()));
        }
        part.parse::<Integer>()
            .map_err(|_| Error::MalformedRational(text.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator(text.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Greatest integer not exceeding `q`.
pub fn floor(q: &Rational) -> Integer {
    // div_floor rounds toward negative infinity for either sign
    q.numer().div_floor(q.denom())
}

/// Least positive `r` with `r * a` integral.
pub fn lcm_of_denominators(a: &RatMatrix) -> Integer {
    a.entries()
        .iter()
        .fold(Integer::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational matrix by an integer and returns the integral result.
///
/// Fails if some entry of `scale * a` is not an integer.
pub fn scale_to_integer(a: &RatMatrix, scale: &Integer) -> Result<IntMatrix> {
    let s = rat_from_int(scale.clone());
    a.try_map(|x| {
        let y = x * &s;
        if y.is_integer() {
            Ok(y.to_integer())
        } else {
            Err(Error::NonIntegral(format_rational(&y)))
        }
    })
}

pub fn to_rational(a: &IntMatrix) -> RatMatrix {
    a.map(|x| rat_from_int(x.clone()))
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}
