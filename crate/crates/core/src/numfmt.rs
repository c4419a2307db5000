//! Decimal formatting shared by the text file formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of significant digits used when a caller does not choose one.
pub const DEFAULT_SIGNIFICANT_DIGITS: usize = 12;

/// Formats `value` rounded to `digits` significant digits, using the shortest
/// decimal string that reads back as the rounded value.
///
/// Rounding is idempotent, so a value read back from the output formats to
/// the same bytes again.
pub fn format_sig(value: f64, digits: usize) -> String {
    if !value.is_finite() || value == 0.0 {
        return format!("{}", if value == 0.0 { 0.0 } else { value });
    }
    let digits = digits.clamp(1, 17);
    let rounded: f64 = format!("{:.*e}", digits - 1, value)
        .parse()
        .expect("scientific notation parses");
    format!("{rounded}")
}

/// Parses a decimal literal (`-12.5`, `3e-2`, `7`) or a fraction `a/b` into
/// an exact rational.
pub fn parse_exact(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let scale = exponent - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(digits);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Writes an exact rational as a terminating decimal when it has one and as
/// `a/b` otherwise.
pub fn format_exact(value: &BigRational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let mut den = value.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut twos = 0usize;
    let mut fives = 0usize;
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let shift = twos.max(fives);
    let scaled = value * BigRational::from_integer(num_traits::pow(BigInt::from(10), shift));
    let digits = scaled.numer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = shift + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - shift);
    let sign = if value.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}
