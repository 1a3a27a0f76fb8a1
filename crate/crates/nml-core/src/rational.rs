//! Exact rational helpers. Every probability and index in this crate is a
//! ratio of integers whose denominator divides n·q^n, so nothing is ever
//! rounded except for display.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, Zero};

pub type Rational = BigRational;

/// `num/den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ratio_u64(num: u64, den: u64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn whole(value: u64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

/// Canonical `num/den` rendering; the denominator is always printed so the
/// form round-trips without ambiguity ("1/1", "3/4", "-2/5").
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Fixed-point decimal rendering with `places` digits, rounding half away
/// from zero.
pub fn decimal_string(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = r.numer().abs() * &scale;
    let (mut quot, rem) = scaled.div_rem(r.denom());
    if &rem * BigInt::from(2) >= *r.denom() {
        quot += 1;
    }
    let int_part = &quot / &scale;
    let frac_part = &quot % &scale;
    let sign = if r.numer().is_negative() && !quot.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    let pad = "0".repeat(places as usize - frac.len());
    format!("{sign}{int_part}.{pad}{frac}")
}
