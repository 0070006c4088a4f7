//! High-precision reals for display values and transcendental bounds.

use dashu_float::round::mode::HalfEven;
use dashu_float::{DBig, FBig};
use dashu_int::IBig;

use super::Rational;

/// Binary float with round-half-even.
pub type Real = FBig<HalfEven, 2>;

/// Working precision in bits.
pub const PRECISION: usize = 160;

/// Digits shown by [`format_sig`] callers by default.
pub const DISPLAY_DIGITS: usize = 15;

pub fn int(x: i64) -> Real {
    Real::from(IBig::from(x)).with_precision(PRECISION).value()
}

pub fn from_rational(x: &Rational) -> Real {
    let num = Real::from(x.numerator().clone())
        .with_precision(PRECISION)
        .value();
    let den = Real::from(x.denominator().clone())
        .with_precision(PRECISION)
        .value();
    num / den
}

/// `base^exponent` for positive `base`.
pub fn powr(base: &Rational, exponent: &Rational) -> Real {
    (from_rational(base).ln() * from_rational(exponent)).exp()
}

/// Rounds to `digits` significant decimal digits.
pub fn format_sig(x: &Real, digits: usize) -> String {
    let d: DBig = x.to_decimal().value();
    d.with_precision(digits).value().to_string()
}

/// Decimal rendering of an exact rational with `digits` significant digits.
pub fn format_rational(x: &Rational, digits: usize) -> String {
    let work = digits + 40;
    let num = DBig::from(x.numerator().clone())
        .with_precision(work)
        .value();
    let den = DBig::from(x.denominator().clone())
        .with_precision(work)
        .value();
    (num / den).with_precision(digits).value().to_string()
}
