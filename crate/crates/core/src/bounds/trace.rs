//! Finite block-count recurrence at n = 2^k, used as a numerical cross-check
//! of the asymptotic coefficients.

use dashu_int::UBig;
use serde::Serialize;

use super::real;
use super::{big_binomial, fourteen_fifteenths, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TracePoint {
    pub k: u32,
    pub n: u64,
    #[serde(serialize_with = "ser_display")]
    pub bound: UBig,
    /// `bound / C(n, ⌊r/2⌋)`.
    #[serde(serialize_with = "ser_display")]
    pub ratio: Rational,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn baseline_count(n: u64, r: u64) -> UBig {
    match r {
        0 => UBig::ONE,
        _ if r > n => UBig::ZERO,
        _ if r % 2 == 0 => big_binomial(n - r / 2, r / 2),
        _ => big_binomial(n - (r + 1) / 2, (r - 1) / 2),
    }
}

/// `⌈(14/15) n²/2 + n ln n⌉` for n = 2^k.
fn cited_r4(k: u32) -> UBig {
    let n = 1u64 << k;
    let lead =
        fourteen_fifteenths() * Rational::from(UBig::from(n) * UBig::from(n)) / Rational::from(2);
    let log = real::int(n as i64) * real::int(k as i64) * real::int(2).ln();
    let value = real::from_rational(&lead) + log;
    UBig::try_from(value.ceil().to_int().value()).expect("positive")
}

/// Block-count bounds `B(r, 2^k)` for k = 0..=k_max.
///
/// `B(r, n)` is the minimum of the baseline count and the halving recurrence
/// at n/2: for even r the profile sum `Σ_i B(i) B(r-i)`, for odd r ≥ 5 the sum
/// over pairs of `min(C(n/2,t) C(n/2,k-t), B(2t) B(r-2t) + B(2t+1) B(r-2t-1))`.
/// For r = 4 the cited bound `⌈(14/15) n²/2 + n ln n⌉` also competes.
/// Only points with n ≥ r are returned.
pub fn finite_bound_trace(r: usize, k_max: u32) -> Vec<TracePoint> {
    // levels[k][a] = B(a, 2^k)
    let mut levels: Vec<Vec<UBig>> = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let n = 1u64 << k;
        let mut row = Vec::with_capacity(r + 1);
        for a in 0..=r as u64 {
            let mut best = baseline_count(n, a);
            if k > 0 && a > 0 && a <= n {
                let prev = &levels[k as usize - 1];
                let half = n / 2;
                let alt = if a % 2 == 0 {
                    Some(
                        (0..=a)
                            .map(|i| &prev[i as usize] * &prev[(a - i) as usize])
                            .fold(UBig::ZERO, |acc, x| acc + x),
                    )
                } else if a >= 5 {
                    let kk = (a - 1) / 2;
                    Some(
                        (0..=kk)
                            .map(|t| {
                                let intervals = big_binomial(half, t) * big_binomial(half, kk - t);
                                let product = &prev[(2 * t) as usize] * &prev[(a - 2 * t) as usize]
                                    + &prev[(2 * t + 1) as usize] * &prev[(a - 2 * t - 1) as usize];
                                intervals.min(product)
                            })
                            .fold(UBig::ZERO, |acc, x| acc + x),
                    )
                } else {
                    None
                };
                if let Some(alt) = alt {
                    best = best.min(alt);
                }
                if a == 4 {
                    best = best.min(cited_r4(k));
                }
            }
            row.push(best);
        }
        levels.push(row);
    }
    levels
        .into_iter()
        .enumerate()
        .filter_map(|(k, row)| {
            let n = 1u64 << k;
            if n < r as u64 {
                return None;
            }
            let bound = row[r].clone();
            let ratio =
                Rational::from(bound.clone()) / Rational::from(big_binomial(n, (r / 2) as u64));
            Some(TracePoint {
                k: k as u32,
                n,
                bound,
                ratio,
            })
        })
        .collect()
}
