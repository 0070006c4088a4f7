//! Exact evaluation of the covering coefficients and the closed-form bounds.
//!
//! A coefficient `c_r` is the constant in `f_r(n) ≤ c_r (1 + o(1)) C(n, ⌊r/2⌋)`.
//! All coefficient arithmetic is over exact rationals; comparisons against
//! fractional powers of rationals are decided by raising both sides to a
//! common integer power. Floating point only appears in display values.

mod coefficients;
mod formulas;
pub mod real;
mod trace;

pub use coefficients::{
    coefficient_table, even_coefficients, even_residual, odd_coefficient, odd_coefficient_with,
    smallest_odd_below_one, Coefficient, CoefficientKind, CoefficientMap, PairChoice, PairOption,
    PairRule, Threshold,
};
pub use formulas::{
    closed_form_coefficient, crossover_even, crossover_holds, lemma3_bound,
    lower_bound_coefficient, middle_pair_closed_form, prior_coefficient, theorem1_closed_form,
    ScaledPower,
};
pub use trace::{finite_bound_trace, TracePoint};

use dashu_int::UBig;
use dashu_ratio::RBig;
use thiserror::Error;

pub type Rational = RBig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("coefficient c_{r} is needed but has not been computed")]
    MissingDependency { r: usize },
    #[error("no odd r <= {r_max} has c_r < 1")]
    NotFound { r_max: usize },
    #[error("{0}")]
    DomainError(String),
}

pub(crate) fn ratio(a: i64, b: i64) -> Rational {
    Rational::from(a) / Rational::from(b)
}

/// The cited coefficient 14/15 for r = 4.
pub fn fourteen_fifteenths() -> Rational {
    ratio(14, 15)
}

pub(crate) fn big_binomial(n: u64, k: u64) -> UBig {
    if k > n {
        return UBig::ZERO;
    }
    let k = k.min(n - k);
    (0..k).fold(UBig::ONE, |acc, i| {
        acc * UBig::from(n - i) / UBig::from(i + 1)
    })
}

pub(crate) fn pow2(e: usize) -> UBig {
    UBig::ONE << e
}
