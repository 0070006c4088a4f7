use std::collections::BTreeMap;

use serde::Serialize;

use super::{big_binomial, fourteen_fifteenths, pow2, BoundsError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientKind {
    /// c_0..c_3: no improvement over the baseline construction.
    Baseline,
    /// c_4 = 14/15, taken as an input.
    Cited,
    EvenRecurrence,
    OddPairing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairOption {
    Intervals,
    Product,
}

/// Record of how one profile pair of an odd arity was costed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairChoice {
    pub t: usize,
    pub option: PairOption,
    /// Leading cost of the product option, when it was evaluated.
    #[serde(serialize_with = "ser_opt_rational")]
    pub product_value: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coefficient {
    pub r: usize,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub kind: CoefficientKind,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pair_choices: Vec<PairChoice>,
}

impl Coefficient {
    fn plain(r: usize, value: Rational, kind: CoefficientKind) -> Self {
        Coefficient {
            r,
            value,
            kind,
            pair_choices: Vec::new(),
        }
    }
}

pub type CoefficientMap = BTreeMap<usize, Coefficient>;

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Even coefficients c_0, c_2, …, c_{max_m}.
///
/// c_0 = c_2 = 1 and c_4 = 14/15; for m ≥ 6 the value is the fixed point of
/// the leading term of the halving recurrence,
/// `c_m (2^{m/2} - 2) = Σ_{j=1}^{m/2-1} C(m/2, j) c_{2j} c_{m-2j}`.
pub fn even_coefficients(max_m: usize) -> CoefficientMap {
    let mut out = CoefficientMap::new();
    out.insert(
        0,
        Coefficient::plain(0, Rational::ONE, CoefficientKind::Baseline),
    );
    out.insert(
        2,
        Coefficient::plain(2, Rational::ONE, CoefficientKind::Baseline),
    );
    if max_m >= 4 {
        out.insert(
            4,
            Coefficient::plain(4, fourteen_fifteenths(), CoefficientKind::Cited),
        );
    }
    for m in (6..=max_m).step_by(2) {
        let half = m / 2;
        let rhs = even_convolution(m, &out);
        let weight = Rational::from(pow2(half) - 2u8);
        out.insert(
            m,
            Coefficient::plain(m, rhs / weight, CoefficientKind::EvenRecurrence),
        );
    }
    out
}

fn even_convolution(m: usize, evens: &CoefficientMap) -> Rational {
    let half = m / 2;
    (1..half)
        .map(|j| {
            let w = Rational::from(big_binomial(half as u64, j as u64));
            w * &evens[&(2 * j)].value * &evens[&(m - 2 * j)].value
        })
        .fold(Rational::ZERO, |acc, x| acc + x)
}

/// `c_m (2^{m/2} - 2) - Σ_j C(m/2, j) c_{2j} c_{m-2j}`; zero for every computed m ≥ 6.
pub fn even_residual(m: usize, evens: &CoefficientMap) -> Option<Rational> {
    let c = &evens.get(&m)?.value;
    let weight = Rational::from(pow2(m / 2) - 2u8);
    Some(c * weight - even_convolution(m, evens))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRule {
    /// Take the cheaper of intervals and products for every inner pair.
    Best,
    /// Interval blocks for every pair.
    IntervalsOnly,
}

/// Pairing coefficient for odd r ≥ 5 with the default [`PairRule::Best`].
pub fn odd_coefficient(
    r: usize,
    evens: &CoefficientMap,
    memo: &CoefficientMap,
) -> Result<Coefficient, BoundsError> {
    odd_coefficient_with(r, evens, memo, PairRule::Best)
}

/// `c_r = 2^{-k} Σ_{t=0}^{k} C(k, t) m_t` with k = (r-1)/2.
///
/// The outer pairs t = 0 and t = k always take intervals (m = 1). An inner
/// pair costs `min(1, c_{2t} c_{r-2t} + c_{2t+1} c_{r-2t-1})`, with c_1 = c_3 = 1
/// and other odd values looked up in `memo`.
pub fn odd_coefficient_with(
    r: usize,
    evens: &CoefficientMap,
    memo: &CoefficientMap,
    rule: PairRule,
) -> Result<Coefficient, BoundsError> {
    if r < 5 || r % 2 == 0 {
        return Err(BoundsError::DomainError(format!(
            "odd coefficient needs odd r >= 5, got {r}"
        )));
    }
    let lookup = |j: usize| -> Result<Rational, BoundsError> {
        if j == 1 || j == 3 {
            return Ok(Rational::ONE);
        }
        let map = if j % 2 == 0 { evens } else { memo };
        map.get(&j)
            .map(|c| c.value.clone())
            .ok_or(BoundsError::MissingDependency { r: j })
    };
    let k = (r - 1) / 2;
    let mut total = Rational::ZERO;
    let mut choices = Vec::with_capacity(k + 1);
    for t in 0..=k {
        let mut cost = Rational::ONE;
        let mut choice = PairChoice {
            t,
            option: PairOption::Intervals,
            product_value: None,
        };
        if rule == PairRule::Best && t > 0 && t < k {
            let product =
                lookup(2 * t)? * lookup(r - 2 * t)? + lookup(2 * t + 1)? * lookup(r - 2 * t - 1)?;
            if product < cost {
                cost = product.clone();
                choice.option = PairOption::Product;
            }
            choice.product_value = Some(product);
        }
        total += Rational::from(big_binomial(k as u64, t as u64)) * cost;
        choices.push(choice);
    }
    let value = total / Rational::from(pow2(k));
    Ok(Coefficient {
        r,
        value,
        kind: CoefficientKind::OddPairing,
        pair_choices: choices,
    })
}

/// Coefficients for every r in `1..=r_max`, odd ones computed in ascending order.
pub fn coefficient_table(r_max: usize) -> Result<CoefficientMap, BoundsError> {
    let evens = even_coefficients(r_max - r_max % 2);
    let mut odds = CoefficientMap::new();
    for r in [1, 3] {
        if r <= r_max {
            odds.insert(
                r,
                Coefficient::plain(r, Rational::ONE, CoefficientKind::Baseline),
            );
        }
    }
    for r in (5..=r_max).step_by(2) {
        let c = odd_coefficient(r, &evens, &odds)?;
        odds.insert(r, c);
    }
    let mut all = evens;
    all.extend(odds);
    all.retain(|&r, _| r >= 1 && r <= r_max);
    Ok(all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub r_star: usize,
    /// Odd coefficients for 5 ≤ r ≤ r_max.
    pub table: Vec<Coefficient>,
}

/// Smallest odd r ≤ `r_max` with c_r < 1, together with every odd coefficient.
pub fn smallest_odd_below_one(r_max: usize) -> Result<Threshold, BoundsError> {
    if r_max < 5 || r_max % 2 == 0 {
        return Err(BoundsError::DomainError(format!(
            "threshold search needs odd r_max >= 5, got {r_max}"
        )));
    }
    let all = coefficient_table(r_max)?;
    let table: Vec<Coefficient> = all
        .into_values()
        .filter(|c| c.r >= 5 && c.r % 2 == 1)
        .collect();
    let one = Rational::ONE;
    match table.iter().find(|c| c.value < one) {
        Some(c) => Ok(Threshold { r_star: c.r, table }),
        None => Err(BoundsError::NotFound { r_max }),
    }
}
