//! Exact integer polynomials, rational functions and real root isolation.

mod intpoly;
mod ratfunc;
mod roots;

pub use intpoly::{bracket, bracket_product, cyclotomic, IntPoly};
pub use ratfunc::RatFunc;
pub use roots::{rational_to_f64, sign_at, smallest_positive_root, RootInterval, SturmSequence};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("bracket [k] needs k >= 1, got {0}")]
    BadBracket(u32),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial has no positive real root")]
    NoPositiveRoot,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("rational function has a pole at 0")]
    PoleAtZero,
    #[error("power series has non-integral coefficients")]
    NonIntegralSeries,
}

/// `10^-12`, the default isolation width.
pub fn default_eps() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(12))
}

/// Parses a decimal such as `1e-12`, `0.0005` or `3` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("1e-12"), Some(default_eps()));
        assert_eq!(parse_decimal("0.5"), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_decimal("-2.5e1"), Some(BigRational::from_integer((-25).into())));
        assert_eq!(parse_decimal("abc"), None);
        assert_eq!(parse_decimal("."), None);
    }
}
