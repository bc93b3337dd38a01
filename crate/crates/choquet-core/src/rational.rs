//! Exact rational arithmetic used throughout the crate.
//!
//! Everything is computed over arbitrary-precision rationals; no floating
//! point enters any evaluation or decision path.

use num_bigint::BigInt;

/// The scalar type for capacities, function values, and integrals.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor for a rational from machine integers.
///
/// Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from a machine integer.
pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Rational from an unsigned machine integer.
pub fn rat_u64(value: u64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parse a rational written as `p/q` or as a plain integer `p`.
///
/// `p` may carry a sign; `q` must be a positive integer. The result is
/// stored reduced with a positive denominator.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty rational".to_string());
    }
    match text.split_once('/') {
        None => text
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| format!("invalid integer `{text}`")),
        Some((num, den)) => {
            let numer = num
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("invalid numerator `{num}`"))?;
            let denom = den
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("invalid denominator `{den}`"))?;
            if denom <= BigInt::from(0) {
                return Err(format!("denominator must be positive in `{text}`"));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Canonical rendering: reduced `p/q` with `q >= 2`, integers without `/1`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("7/10").unwrap(), rat(7, 10));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("4").unwrap(), rat_int(4));
        assert_eq!(parse_rational("  0 ").unwrap(), rat_int(0));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn format_is_reduced_and_integerless() {
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(8, 4)), "2");
        assert_eq!(format_rational(&rat(-7, 10)), "-7/10");
        assert_eq!(format_rational(&rat_int(0)), "0");
    }
}
