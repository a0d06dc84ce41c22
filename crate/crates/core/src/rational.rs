//! Exact rational arithmetic, backed by arbitrary-precision integers.
//!
//! All power values in this crate are rationals; nothing user-facing is ever
//! rounded. Helpers here cover construction from integers, parsing of the
//! `"num/den"` / integer / decimal forms accepted on the command line, and
//! the canonical lowest-terms `"num/den"` rendering used in serialized
//! output.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer pair; `den` must be nonzero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Canonical lowest-terms rendering, always with an explicit denominator:
/// `0` becomes `"0/1"`, `5/8` becomes `"5/8"`.
pub fn to_fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Approximate value for display columns; exact values stay rational.
pub fn to_f64(value: &Rational) -> f64 {
    let numer = value.numer();
    let denom = value.denom();
    // Round-trip through strings would lose less for huge values, but power
    // values here are bounded by small integers, so direct conversion is fine.
    str_to_f64(&numer.to_string()) / str_to_f64(&denom.to_string())
}

fn str_to_f64(digits: &str) -> f64 {
    digits.parse::<f64>().unwrap_or(f64::NAN)
}

/// Parses `"a/b"`, an integer `"a"`, or a decimal `"0.25"` into an exact
/// rational. Decimal input is interpreted exactly (`0.25` -> `1/4`).
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator {num:?}"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator {den:?}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let whole: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| format!("bad number {text:?}"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {text:?}"));
        }
        let digits: BigInt = frac.parse().map_err(|_| format!("bad decimal {text:?}"))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rational::new(whole.abs() * &scale + digits, scale) * Rational::from_integer(sign));
    }
    let value: BigInt = text.parse().map_err(|_| format!("bad number {text:?}"))?;
    Ok(Rational::from_integer(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_string_is_always_num_slash_den() {
        assert_eq!(to_fraction_string(&int(0)), "0/1");
        assert_eq!(to_fraction_string(&int(3)), "3/1");
        assert_eq!(to_fraction_string(&ratio(10, 16)), "5/8");
        assert_eq!(to_fraction_string(&ratio(-1, 2)), "-1/2");
    }

    #[test]
    fn parses_fraction_integer_and_decimal_forms() {
        assert_eq!(parse_rational("5/8").unwrap(), ratio(5, 8));
        assert_eq!(parse_rational(" 2 / 6 ").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("1.").is_err(), true);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn f64_view_matches_small_values() {
        assert!((to_f64(&ratio(53, 96)) - 53.0 / 96.0).abs() < 1e-12);
    }
}
