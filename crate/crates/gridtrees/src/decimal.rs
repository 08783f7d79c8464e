//! Exact decimal rendering of rationals with round-half-even semantics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use std::cmp::Ordering;

/// Rounds `value * 10^places` to the nearest integer, ties to even.
pub fn round_scaled(value: &BigRational, places: u32) -> BigInt {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value * BigRational::from_integer(scale);
    let (quot, rem) = scaled.numer().div_mod_floor(scaled.denom());
    // rem is in [0, denom); compare 2*rem against denom to decide the half.
    match (&rem * BigInt::from(2)).cmp(scaled.denom()) {
        Ordering::Less => quot,
        Ordering::Greater => quot + 1,
        Ordering::Equal => {
            if quot.is_even() {
                quot
            } else {
                quot + 1
            }
        }
    }
}

/// Renders `value` with exactly `places` digits after the decimal point,
/// rounding half to even.
pub fn rational_to_decimal(value: &BigRational, places: u32) -> String {
    format_scaled(&round_scaled(value, places), places)
}

/// Formats an integer that carries `places` implicit decimal digits,
/// e.g. `format_scaled(-60000, 5) == "-0.60000"`.
pub fn format_scaled(scaled: &BigInt, places: u32) -> String {
    let sign = if scaled.is_negative() { "-" } else { "" };
    let digits = scaled.abs().to_string();
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let places = places as usize;
    if digits.len() <= places {
        format!("{sign}0.{digits:0>places$}")
    } else {
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        format!("{sign}{int_part}.{frac_part}")
    }
}
