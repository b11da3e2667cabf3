use num_bigint::BigInt;
use num_rational::BigRational;

use super::ScalarError;

/// Arbitrary-precision rational; always stored reduced with positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `7`, `-3/2` or `+4`.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let err = |msg: &str| ScalarError::Parse {
        pos: 0,
        msg: format!("{msg}: `{text}`"),
    };
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("invalid integer"))?;
    let den: BigInt = den.parse().map_err(|_| err("invalid integer"))?;
    if den == BigInt::from(0) {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("-3/2").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational("4/8").unwrap(), rational(1, 2));
        assert_eq!(parse_rational(" 5 ").unwrap(), rational(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
