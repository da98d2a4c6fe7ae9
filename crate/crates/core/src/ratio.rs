//! Small helpers for exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn frac(p: impl Into<BigInt>, q: impl Into<BigInt>) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or a terminating decimal such as `0.25`.
pub fn parse(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p.trim().parse().ok()?, q));
    }
    if let Some((whole, digits)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" { BigInt::zero() } else { whole.parse().ok()? };
        if !digits.chars().all(|c| c.is_ascii_digit()) || digits.is_empty() {
            return None;
        }
        let scale = BigInt::from(10).pow(digits.len() as u32);
        let part = BigRational::new(digits.parse().ok()?, scale);
        let mag = BigRational::from_integer(whole.abs()) + part;
        return Some(if negative { -mag } else { mag });
    }
    Some(int(s.parse::<BigInt>().ok()?))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn max_one(r: BigRational) -> BigRational {
    if r < BigRational::one() {
        BigRational::one()
    } else {
        r
    }
}

pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("1/3"), Some(frac(1, 3)));
        assert_eq!(parse("2/4"), Some(frac(1, 2)));
        assert_eq!(parse("0.25"), Some(frac(1, 4)));
        assert_eq!(parse("-1.5"), Some(frac(-3, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(to_string(&frac(6, 4)), "3/2");
        assert_eq!(to_string(&int(-2)), "-2");
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [frac(1, 4), frac(5, 6), int(3)];
        assert_eq!(common_denominator(&v), BigInt::from(12));
    }
}
