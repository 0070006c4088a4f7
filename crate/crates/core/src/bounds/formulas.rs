use std::cmp::Ordering;

use dashu_int::{IBig, UBig};
use serde::Serialize;

use super::real::{self, Real};
use super::{big_binomial, fourteen_fifteenths, ratio, BoundsError, Rational};

/// `scale · base^(num/den)` with positive `scale` and `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaledPower {
    #[serde(serialize_with = "ser_rational")]
    pub scale: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub base: Rational,
    pub num: u32,
    pub den: u32,
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn rpow(x: &Rational, e: u64) -> Rational {
    x.pow(e as isize)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ScaledPower {
    /// Value raised to the integer power `den · mult`.
    fn lifted(&self, mult: u64) -> Rational {
        rpow(&self.scale, self.den as u64 * mult) * rpow(&self.base, self.num as u64 * mult)
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if *x <= Rational::ZERO {
            return Ordering::Greater;
        }
        self.lifted(1).cmp(&rpow(x, self.den as u64))
    }

    /// Exact comparison of two scaled powers.
    pub fn cmp_power(&self, other: &ScaledPower) -> Ordering {
        let (a, b) = (self.den as u64, other.den as u64);
        let l = a / gcd(a, b) * b;
        self.lifted(l / self.den as u64)
            .cmp(&other.lifted(l / other.den as u64))
    }

    pub fn to_real(&self) -> Real {
        real::from_rational(&self.scale)
            * real::powr(&self.base, &ratio(self.num as i64, self.den as i64))
    }
}

/// `(14/15)^{⌊r/2⌋/3}`; for even r this is `(14/15)^{r/6}`.
pub fn closed_form_coefficient(r: usize) -> ScaledPower {
    ScaledPower {
        scale: Rational::ONE,
        base: fourteen_fifteenths(),
        num: (r / 2) as u32,
        den: 3,
    }
}

/// Earlier general upper coefficient `(r/2)(14/15)^{r/4}`.
pub fn prior_coefficient(r: usize) -> ScaledPower {
    ScaledPower {
        scale: ratio(r as i64, 2),
        base: fourteen_fifteenths(),
        num: r as u32,
        den: 4,
    }
}

/// Leading cost of covering the middle pair of r = 4d+1 by products when the
/// even factor uses its closed form: `2 (14/15)^{2d/6} · c_{2d+1}` with
/// `c_{2d+1} = 1`.
pub fn middle_pair_closed_form(r: usize) -> Result<ScaledPower, BoundsError> {
    if r % 4 != 1 || r < 5 {
        return Err(BoundsError::DomainError(format!(
            "middle-pair product needs r = 4d+1, got {r}"
        )));
    }
    Ok(ScaledPower {
        scale: ratio(2, 1),
        base: fourteen_fifteenths(),
        num: ((r - 1) / 2) as u32,
        den: 6,
    })
}

/// `2 / C(2⌊r/2⌋, ⌊r/2⌋)`.
pub fn lower_bound_coefficient(r: usize) -> Rational {
    let h = (r / 2) as u64;
    Rational::from(2) / Rational::from(big_binomial(2 * h, h))
}

/// `(14/15)^{m/6} n^{m/2} / (m/2)! + n^{m/2-1} ln n` for even m ≥ 6, n ≥ m.
pub fn theorem1_closed_form(m: usize, n: u64) -> Result<Real, BoundsError> {
    if m < 6 || m % 2 == 1 {
        return Err(BoundsError::DomainError(format!(
            "closed form needs even m >= 6, got {m}"
        )));
    }
    if n < m as u64 {
        return Err(BoundsError::DomainError(format!(
            "n = {n} is below m = {m}"
        )));
    }
    let half = (m / 2) as u32;
    let n_big = UBig::from(n);
    let factorial = (1..=half as u64).fold(UBig::ONE, |acc, i| acc * UBig::from(i));
    let lead = Rational::from(n_big.pow(half as usize)) / Rational::from(factorial);
    let lead = real::from_rational(&lead) * closed_form_coefficient(m).to_real();
    let tail = real::from_rational(&Rational::from(n_big.pow(half as usize - 1)))
        * real::int(n as i64).ln();
    Ok(lead + tail)
}

/// `1 - (1 - α) / e^{r/2}`.
pub fn lemma3_bound(r: usize, alpha: &Rational) -> Result<Real, BoundsError> {
    if *alpha <= Rational::ZERO || alpha > &Rational::ONE {
        return Err(BoundsError::DomainError(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let decay = (real::int(-(r as i64)) / real::int(2)).exp();
    Ok(real::int(1) - real::from_rational(&(Rational::ONE - alpha)) * decay)
}

/// Whether `(14/15)^{r/6} < (r/2)(14/15)^{r/4}`, i.e. `2^12 · 15^r < r^12 · 14^r`.
pub fn crossover_holds(r: usize) -> bool {
    let lhs = IBig::from(2).pow(12) * IBig::from(15).pow(r);
    let rhs = IBig::from(r).pow(12) * IBig::from(14).pow(r);
    lhs < rhs
}

/// Largest even r ≤ `r_limit` where the even closed form beats the prior
/// coefficient.
pub fn crossover_even(r_limit: usize) -> Option<usize> {
    let top = r_limit - r_limit % 2;
    (2..=top).rev().step_by(2).find(|&r| crossover_holds(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound_coefficient(2), ratio(1, 1));
        assert_eq!(lower_bound_coefficient(4), ratio(1, 3));
        assert_eq!(lower_bound_coefficient(5), ratio(1, 3));
    }

    #[test]
    fn prior_coefficient_comparisons() {
        let one = Rational::ONE;
        assert_eq!(prior_coefficient(295).cmp_rational(&one), Ordering::Less);
        assert_eq!(prior_coefficient(4).cmp_rational(&one), Ordering::Greater);
        assert_eq!(prior_coefficient(113).cmp_rational(&one), Ordering::Greater);
    }

    #[test]
    fn crossover_boundary() {
        assert!(crossover_holds(1096));
        assert!(!crossover_holds(1098));
        assert!(crossover_holds(8));
        assert_eq!(crossover_even(2000), Some(1096));
        assert_eq!(crossover_even(1097), Some(1096));
        assert_eq!(crossover_even(2), None);
    }

    #[test]
    fn crossover_agrees_with_generic_comparison() {
        for r in [4, 8, 100, 1094, 1096, 1098, 1200] {
            let generic =
                closed_form_coefficient(r).cmp_power(&prior_coefficient(r)) == Ordering::Less;
            assert_eq!(generic, crossover_holds(r), "r={r}");
        }
    }

    #[test]
    fn middle_pair_product_below_0981() {
        let v = middle_pair_closed_form(125).unwrap();
        assert_eq!(v.cmp_rational(&ratio(981, 1000)), Ordering::Less);
        assert_eq!(v.cmp_rational(&ratio(980, 1000)), Ordering::Greater);
        assert!(middle_pair_closed_form(127).is_err());
    }

    #[test]
    fn closed_form_values() {
        let v6 = theorem1_closed_form(6, 6).unwrap().to_f64().value();
        let expect = 14.0 / 15.0 * 36.0 + 36.0 * 6f64.ln();
        assert!((v6 - expect).abs() < 1e-9);
        assert!(v6 >= 1.0);
        assert!(theorem1_closed_form(6, 5).is_err());
        assert!(theorem1_closed_form(4, 10).is_err());
    }

    #[test]
    fn lemma3_values() {
        assert_eq!(lemma3_bound(125, &Rational::ONE).unwrap(), real::int(1));
        let b = lemma3_bound(125, &ratio(981, 1000)).unwrap();
        assert!(b < real::int(1));
        assert!(b > real::int(1) - real::from_rational(&ratio(1, 1_000_000_000)));
        assert!(lemma3_bound(5, &ratio(0, 1)).is_err());
    }
}
