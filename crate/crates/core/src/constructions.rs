//! Explicit exact covers of complete r-uniform hypergraphs.
//!
//! Every construction starts from an ordered vertex list, so covers built on
//! a sub-list inherit the global vertex order.
//!
//! * [`baseline_cover`] fixes the vertices at even positions of each edge.
//! * [`lemma1_cover`] covers two adjacent split profiles `(a, b+1)` and
//!   `(a+1, b)` at once with interval blocks.
//! * [`product_cover`] combines covers of two disjoint ground sets.
//! * [`halving_cover`] splits the vertex list in two and covers every profile
//!   `(i, m-i)` by a product, recursing on even arities.
//! * [`odd_pairing_cover`] pairs consecutive profiles of an odd arity and
//!   covers each pair by intervals or by products.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::hypergraph::{Block, Cover, EdgeFamily, HypergraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid arity r={r} for {n} vertices")]
    InvalidArity { n: usize, r: usize },
    #[error("profile sizes must be even, got a={a}, b={b}")]
    OddProfile { a: usize, b: usize },
    #[error("ground sets too small: need |S| > {a} and |T| > {b}, got {s} and {t}")]
    TooSmall {
        a: usize,
        b: usize,
        s: usize,
        t: usize,
    },
    #[error("ground sets share vertex {vertex}")]
    GroundSetOverlap { vertex: VertexId },
    #[error("product needs covers of complete families on their ground sets")]
    NotComplete,
    #[error("base threshold {threshold} is below the arity {r}")]
    InvalidThreshold { threshold: usize, r: usize },
    #[error(transparent)]
    Block(#[from] HypergraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    Baseline,
    Halving,
    OddPairing,
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyKind::Baseline => "baseline",
            StrategyKind::Halving => "halving",
            StrategyKind::OddPairing => "odd-pairing",
        })
    }
}

/// Which profile pairs of an odd arity are covered by products rather than
/// interval blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairingPlan {
    /// Products for the middle pair when r ≡ 1 (mod 4), intervals elsewhere.
    Default,
    IntervalsOnly,
    Products(BTreeSet<usize>),
}

impl PairingPlan {
    fn product_pairs(&self, r: usize) -> BTreeSet<usize> {
        match self {
            PairingPlan::Default if r % 4 == 1 => BTreeSet::from([(r - 1) / 4]),
            PairingPlan::Default | PairingPlan::IntervalsOnly => BTreeSet::new(),
            PairingPlan::Products(set) => set.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionStrategy {
    pub kind: StrategyKind,
    /// Vertex lists of at most this size fall back to the baseline cover.
    pub base_threshold: usize,
    pub pairing: PairingPlan,
}

impl ConstructionStrategy {
    /// Strategy with the default threshold `max(2r, 8)`.
    pub fn new(kind: StrategyKind, r: usize) -> Self {
        ConstructionStrategy {
            kind,
            base_threshold: (2 * r).max(8),
            pairing: PairingPlan::Default,
        }
    }

    pub fn with_threshold(mut self, threshold: usize, r: usize) -> Result<Self, ConstructionError> {
        if threshold < r {
            return Err(ConstructionError::InvalidThreshold { threshold, r });
        }
        self.base_threshold = threshold;
        Ok(self)
    }

    pub fn with_pairing(mut self, pairing: PairingPlan) -> Self {
        self.pairing = pairing;
        self
    }
}

/// Builds the cover selected by `strategy` on the vertex list.
pub fn construct(
    vertices: &[VertexId],
    r: usize,
    strategy: &ConstructionStrategy,
) -> Result<Cover, ConstructionError> {
    match strategy.kind {
        StrategyKind::Baseline => baseline_cover(vertices, r),
        StrategyKind::Halving => halving_cover(vertices, r, strategy),
        StrategyKind::OddPairing => odd_pairing_cover(vertices, r, strategy),
    }
}

/// Even-position fixing cover of all r-subsets of `vertices`.
///
/// For each choice of fixed vertices `u_1 < … < u_k` (k = ⌊r/2⌋) the block is
/// `[<u_1], {u_1}, (u_1, u_2), {u_2}, …, {u_k}` plus, for odd r, the tail
/// `(u_k, end]`. Only choices leaving every interval nonempty are emitted:
/// `C(n - r/2, r/2)` blocks for even r and `C(n - (r+1)/2, (r-1)/2)` for odd r.
pub fn baseline_cover(vertices: &[VertexId], r: usize) -> Result<Cover, ConstructionError> {
    let n = vertices.len();
    if r < 1 || r > n {
        return Err(ConstructionError::InvalidArity { n, r });
    }
    let k = r / 2;
    let odd = r % 2 == 1;
    // Compressed positions q_0 < … < q_{k-1} map to fixed indices q_i + i + 1,
    // which leaves at least one vertex before each fixed vertex (and after the
    // last one when r is odd).
    let slots = n - k - usize::from(odd);
    let mut blocks = Vec::new();
    for q in (0..slots).combinations(k) {
        let mut parts: Vec<Vec<VertexId>> = Vec::with_capacity(r);
        let mut start = 0;
        for (i, &qi) in q.iter().enumerate() {
            let fixed = qi + i + 1;
            parts.push(vertices[start..fixed].to_vec());
            parts.push(vec![vertices[fixed]]);
            start = fixed + 1;
        }
        if odd {
            parts.push(vertices[start..].to_vec());
        }
        blocks.push(Block::new(parts)?);
    }
    Ok(Cover::new(
        "baseline",
        EdgeFamily::complete_on(vertices, r),
        blocks,
    ))
}

/// Interval blocks for the profile pair `(a, b+1)`, `(a+1, b)` over `(s, t)`.
/// Total in the set sizes; small sets simply yield fewer blocks.
fn interval_pair_blocks(
    s: &[VertexId],
    t: &[VertexId],
    a: usize,
    b: usize,
) -> Result<Vec<Block>, ConstructionError> {
    let mut blocks = Vec::new();
    for si in (0..s.len()).combinations(a / 2) {
        for tj in (0..t.len()).combinations(b / 2) {
            let mut parts: Vec<Vec<VertexId>> = Vec::with_capacity(a + b + 1);
            let s_rest = push_intervals(s, &si, &mut parts);
            let t_rest = push_intervals(t, &tj, &mut parts);
            let mut tail = s[s_rest..].to_vec();
            tail.extend_from_slice(&t[t_rest..]);
            parts.push(tail);
            if parts.iter().all(|p| !p.is_empty()) {
                blocks.push(Block::new(parts)?);
            }
        }
    }
    Ok(blocks)
}

/// Pushes `[before p_1], {p_1}, [between], {p_2}, …` and returns the index
/// just past the last pick.
fn push_intervals(list: &[VertexId], picks: &[usize], parts: &mut Vec<Vec<VertexId>>) -> usize {
    let mut start = 0;
    for &p in picks {
        parts.push(list[start..p].to_vec());
        parts.push(vec![list[p]]);
        start = p + 1;
    }
    start
}

fn check_disjoint(s: &[VertexId], t: &[VertexId]) -> Result<(), ConstructionError> {
    let seen: BTreeSet<_> = s.iter().collect();
    match t.iter().find(|v| seen.contains(v)) {
        Some(&vertex) => Err(ConstructionError::GroundSetOverlap { vertex }),
        None => Ok(()),
    }
}

/// Interval cover of the profiles `(a, b+1)` and `(a+1, b)` over the split
/// `(s, t)`, using at most `C(|S|, a/2)·C(|T|, b/2)` blocks.
pub fn lemma1_cover(
    s: &[VertexId],
    t: &[VertexId],
    a: usize,
    b: usize,
) -> Result<Cover, ConstructionError> {
    if a % 2 == 1 || b % 2 == 1 {
        return Err(ConstructionError::OddProfile { a, b });
    }
    if s.len() <= a || t.len() <= b {
        return Err(ConstructionError::TooSmall {
            a,
            b,
            s: s.len(),
            t: t.len(),
        });
    }
    check_disjoint(s, t)?;
    let family = EdgeFamily::mixed(s.to_vec(), t.to_vec(), [(a, b + 1), (a + 1, b)])?;
    let blocks = interval_pair_blocks(s, t, a, b)?;
    Ok(Cover::new(format!("lemma1(a={a},b={b})"), family, blocks))
}

/// All unions of one block of `ca` with one block of `cb`.
///
/// Both covers must cover every r-subset of their (disjoint) ground sets.
/// The result covers the profile `(r_A, r_B)` over `(A, B)`; a cover on an
/// empty ground set (such as [`Cover::identity`]) is a two-sided identity.
pub fn product_cover(ca: &Cover, cb: &Cover) -> Result<Cover, ConstructionError> {
    let (ga, ra) = ca
        .family
        .as_complete()
        .ok_or(ConstructionError::NotComplete)?;
    let (gb, rb) = cb
        .family
        .as_complete()
        .ok_or(ConstructionError::NotComplete)?;
    check_disjoint(&ga, &gb)?;
    if ga.is_empty() {
        return Ok(cb.clone());
    }
    if gb.is_empty() {
        return Ok(ca.clone());
    }
    let mut blocks = Vec::with_capacity(ca.len() * cb.len());
    for x in &ca.blocks {
        for y in &cb.blocks {
            blocks.push(x.union(y)?);
        }
    }
    let family = EdgeFamily::mixed(ga, gb, [(ra, rb)])?;
    Ok(Cover::new("product", family, blocks))
}

/// Cover of all j-subsets of `vertices` used for a factor of a product:
/// identity for j = 0, baseline for odd j and j ≤ 4, halving otherwise.
fn factor_cover(
    vertices: &[VertexId],
    j: usize,
    strategy: &ConstructionStrategy,
) -> Result<Cover, ConstructionError> {
    if j == 0 {
        Ok(Cover::identity())
    } else if j % 2 == 1 || j <= 4 {
        baseline_cover(vertices, j)
    } else {
        halving_cover(vertices, j, strategy)
    }
}

fn split_halves(vertices: &[VertexId]) -> (&[VertexId], &[VertexId]) {
    vertices.split_at(vertices.len().div_ceil(2))
}

/// Product cover of the profile `(i, r - i)` over the split, or `None` when
/// the profile is empty.
fn profile_product(
    s: &[VertexId],
    t: &[VertexId],
    i: usize,
    r: usize,
    strategy: &ConstructionStrategy,
) -> Result<Option<Cover>, ConstructionError> {
    if i > s.len() || r - i > t.len() {
        return Ok(None);
    }
    let left = factor_cover(s, i, strategy)?;
    let right = factor_cover(t, r - i, strategy)?;
    product_cover(&left, &right).map(Some)
}

/// Halving-recurrence cover of all m-subsets of `vertices` (m even).
///
/// Lists no longer than `strategy.base_threshold` get the baseline cover.
/// Otherwise the list is split into halves of sizes ⌈n/2⌉ and ⌊n/2⌋ and each
/// profile `(i, m-i)` is covered by a product of factor covers.
pub fn halving_cover(
    vertices: &[VertexId],
    m: usize,
    strategy: &ConstructionStrategy,
) -> Result<Cover, ConstructionError> {
    let n = vertices.len();
    if m < 2 || m % 2 == 1 || m > n {
        return Err(ConstructionError::InvalidArity { n, r: m });
    }
    if strategy.base_threshold < m {
        return Err(ConstructionError::InvalidThreshold {
            threshold: strategy.base_threshold,
            r: m,
        });
    }
    let label = format!("halving(m={m},threshold={})", strategy.base_threshold);
    if n <= strategy.base_threshold {
        let base = baseline_cover(vertices, m)?;
        return Ok(Cover::new(label, base.family, base.blocks));
    }
    let (a, b) = split_halves(vertices);
    let mut blocks = Vec::new();
    for i in 0..=m {
        if let Some(cover) = profile_product(a, b, i, m, strategy)? {
            blocks.extend(cover.blocks);
        }
    }
    Ok(Cover::new(
        label,
        EdgeFamily::complete_on(vertices, m),
        blocks,
    ))
}

/// Pairing cover of all r-subsets of `vertices` for odd r ≥ 5.
///
/// With k = (r-1)/2 and the split `(S, T)`, pair t covers the profiles
/// `(2t, r-2t)` and `(2t+1, r-2t-1)`, either by interval blocks or, for pairs
/// selected by `strategy.pairing`, by two product covers.
pub fn odd_pairing_cover(
    vertices: &[VertexId],
    r: usize,
    strategy: &ConstructionStrategy,
) -> Result<Cover, ConstructionError> {
    let n = vertices.len();
    if r < 5 || r % 2 == 0 || r > n {
        return Err(ConstructionError::InvalidArity { n, r });
    }
    let k = (r - 1) / 2;
    let products = strategy.pairing.product_pairs(r);
    let (s, t) = split_halves(vertices);
    let mut blocks = Vec::new();
    for pair in 0..=k {
        let a = 2 * pair;
        if products.contains(&pair) {
            for i in [a, a + 1] {
                if let Some(cover) = profile_product(s, t, i, r, strategy)? {
                    blocks.extend(cover.blocks);
                }
            }
        } else {
            blocks.extend(interval_pair_blocks(s, t, a, r - 1 - a)?);
        }
    }
    let label = format!(
        "odd-pairing(r={r},threshold={},products=[{}])",
        strategy.base_threshold,
        products.iter().join(",")
    );
    Ok(Cover::new(
        label,
        EdgeFamily::complete_on(vertices, r),
        blocks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{binomial, make_block};
    use crate::verify::verify_exact_cover;

    fn range(lo: u32, hi: u32) -> Vec<VertexId> {
        (lo..hi).collect()
    }

    fn assert_exact(cover: &Cover) {
        let report = verify_exact_cover(cover, &cover.family).unwrap();
        assert!(
            report.is_exact,
            "{} not exact: {report:?}",
            cover.construction
        );
    }

    /// Interval-block count: choices of `t` picks in a list of `p` with a
    /// nonempty interval before each pick, counted as C(p-t, t); those whose
    /// last pick is the final element number C(p-t-1, t-1).
    fn interval_choices(p: usize, t: usize) -> (u128, u128) {
        if t == 0 {
            return (1, 0);
        }
        if p < t {
            return (0, 0);
        }
        (
            binomial(p - t, t),
            binomial((p - t).saturating_sub(1), t - 1),
        )
    }

    fn lemma1_count(p: usize, q: usize, a: usize, b: usize) -> u128 {
        let (ns, es) = interval_choices(p, a / 2);
        let (nt, et) = interval_choices(q, b / 2);
        // a=0 (resp. b=0) puts all of S (resp. T) in the tail
        let es = if p == 0 { ns } else { es };
        let et = if q == 0 { nt } else { et };
        ns * nt - es * et
    }

    fn baseline_count(n: usize, r: usize) -> u128 {
        if r == 0 {
            1
        } else if r > n {
            0
        } else if r % 2 == 0 {
            binomial(n - r / 2, r / 2)
        } else {
            binomial(n - (r + 1) / 2, (r - 1) / 2)
        }
    }

    #[test]
    fn baseline_examples() {
        let c = baseline_cover(&range(0, 4), 2).unwrap();
        let expect = vec![
            make_block(vec![vec![0], vec![1]]).unwrap(),
            make_block(vec![vec![0, 1], vec![2]]).unwrap(),
            make_block(vec![vec![0, 1, 2], vec![3]]).unwrap(),
        ];
        assert!(c.same_blocks(&Cover::new("x", c.family.clone(), expect)));
        assert_eq!(baseline_cover(&range(0, 5), 5).unwrap().len(), 1);
        assert_eq!(baseline_cover(&range(0, 6), 4).unwrap().len(), 6);
        assert_eq!(baseline_cover(&range(0, 5), 3).unwrap().len(), 3);
        let one = baseline_cover(&range(0, 4), 1).unwrap();
        assert_eq!(one.blocks, vec![make_block(vec![range(0, 4)]).unwrap()]);
    }

    #[test]
    fn baseline_arity_errors() {
        assert_eq!(
            baseline_cover(&range(0, 3), 4),
            Err(ConstructionError::InvalidArity { n: 3, r: 4 })
        );
        assert!(baseline_cover(&range(0, 3), 0).is_err());
    }

    #[test]
    fn baseline_counts_and_exactness() {
        for n in 1..=12 {
            for r in 1..=n.min(6) {
                let c = baseline_cover(&range(0, n as u32), r).unwrap();
                assert_eq!(c.len() as u128, baseline_count(n, r), "n={n} r={r}");
                assert_exact(&c);
            }
        }
    }

    #[test]
    fn baseline_on_offset_vertices() {
        let c = baseline_cover(&range(10, 16), 3).unwrap();
        assert_eq!(c.family.as_complete(), Some((range(10, 16), 3)));
        assert_exact(&c);
    }

    #[test]
    fn lemma1_examples() {
        let single = lemma1_cover(&[0, 1], &[2, 3], 0, 0).unwrap();
        assert_eq!(single.blocks, vec![make_block(vec![range(0, 4)]).unwrap()]);
        assert_exact(&single);

        let c = lemma1_cover(&[0, 1, 2], &[3, 4], 2, 0).unwrap();
        let expect = vec![
            make_block(vec![vec![0], vec![1], vec![2, 3, 4]]).unwrap(),
            make_block(vec![vec![0, 1], vec![2], vec![3, 4]]).unwrap(),
        ];
        assert_eq!(c.blocks, expect);
        assert_eq!(c.family.edge_count(), 7);
        assert_exact(&c);

        let c = lemma1_cover(&range(0, 4), &range(4, 8), 2, 2).unwrap();
        assert!(c.len() as u128 <= binomial(4, 1) * binomial(4, 1));
        assert_exact(&c);
    }

    #[test]
    fn lemma1_errors() {
        assert_eq!(
            lemma1_cover(&range(0, 4), &range(4, 8), 1, 2),
            Err(ConstructionError::OddProfile { a: 1, b: 2 })
        );
        assert!(matches!(
            lemma1_cover(&range(0, 2), &range(4, 8), 2, 0),
            Err(ConstructionError::TooSmall { .. })
        ));
        assert_eq!(
            lemma1_cover(&range(0, 4), &range(3, 8), 0, 0),
            Err(ConstructionError::GroundSetOverlap { vertex: 3 })
        );
    }

    #[test]
    fn lemma1_matrix_matches_count_formula() {
        for p in 1..=8 {
            for q in 1..=8 {
                for a in [0, 2, 4] {
                    for b in [0, 2, 4] {
                        if p <= a || q <= b {
                            continue;
                        }
                        let s = range(0, p as u32);
                        let t = range(p as u32, (p + q) as u32);
                        let c = lemma1_cover(&s, &t, a, b).unwrap();
                        assert_eq!(c.len() as u128, lemma1_count(p, q, a, b), "{p} {q} {a} {b}");
                        assert!(c.len() as u128 <= binomial(p, a / 2) * binomial(q, b / 2));
                    }
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let a = baseline_cover(&range(0, 4), 2).unwrap();
        let b = baseline_cover(&range(4, 8), 2).unwrap();
        let p = product_cover(&a, &b).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(p.family.edge_count(), 36);
        assert_exact(&p);

        let c3 = baseline_cover(&range(0, 4), 2).unwrap();
        let c4 = baseline_cover(&range(4, 10), 3).unwrap();
        assert_eq!(c4.len(), 4);
        assert_eq!(product_cover(&c3, &c4).unwrap().len(), 12);

        let id = Cover::identity();
        assert_eq!(product_cover(&id, &c4).unwrap(), c4);
        assert_eq!(product_cover(&c4, &id).unwrap(), c4);
    }

    #[test]
    fn product_rejects_overlap() {
        let a = baseline_cover(&range(0, 4), 2).unwrap();
        let b = baseline_cover(&range(3, 7), 2).unwrap();
        assert_eq!(
            product_cover(&a, &b),
            Err(ConstructionError::GroundSetOverlap { vertex: 3 })
        );
        let mixed = lemma1_cover(&[0, 1, 2], &[3, 4], 2, 0).unwrap();
        assert_eq!(
            product_cover(&mixed, &baseline_cover(&range(5, 8), 2).unwrap()),
            Err(ConstructionError::NotComplete)
        );
    }

    #[test]
    fn halving_examples() {
        let strat = ConstructionStrategy::new(StrategyKind::Halving, 4)
            .with_threshold(4, 4)
            .unwrap();
        let c = halving_cover(&range(0, 8), 4, &strat).unwrap();
        assert_eq!(c.len(), 15);
        assert_exact(&c);

        for m in [2, 4, 6, 8] {
            let strat = ConstructionStrategy::new(StrategyKind::Halving, m);
            let c = halving_cover(&range(0, m as u32), m, &strat).unwrap();
            assert_eq!(c.len(), 1);
        }
    }

    #[test]
    fn halving_count_is_recurrence_sum() {
        let strat = ConstructionStrategy::new(StrategyKind::Halving, 6);
        let c = halving_cover(&range(0, 16), 6, &strat).unwrap();
        // halves of 8 are at or below the threshold 12, so every factor is a baseline
        let expected: u128 = (0..=6)
            .map(|i| baseline_count(8, i) * baseline_count(8, 6 - i))
            .sum();
        assert_eq!(c.len() as u128, expected);
        assert_exact(&c);
    }

    #[test]
    fn halving_odd_split_and_deeper_recursion() {
        let strat = ConstructionStrategy::new(StrategyKind::Halving, 6)
            .with_threshold(6, 6)
            .unwrap();
        for n in [7, 13, 15] {
            let c = halving_cover(&range(0, n), 6, &strat).unwrap();
            assert_exact(&c);
        }
    }

    #[test]
    fn halving_rejects_odd() {
        let strat = ConstructionStrategy::new(StrategyKind::Halving, 5);
        assert!(halving_cover(&range(0, 10), 5, &strat).is_err());
        assert!(ConstructionStrategy::new(StrategyKind::Halving, 6)
            .with_threshold(4, 6)
            .is_err());
    }

    #[test]
    fn odd_pairing_default_r5() {
        let strat = ConstructionStrategy::new(StrategyKind::OddPairing, 5);
        let c = odd_pairing_cover(&range(0, 12), 5, &strat).unwrap();
        // outer pairs by intervals, middle pair by baseline_2(6)·baseline_3(6) twice
        let outer = lemma1_count(6, 6, 0, 4) + lemma1_count(6, 6, 4, 0);
        assert_eq!(outer, 12);
        assert_eq!(c.len() as u128, outer + 2 * 5 * 4);
        assert_eq!(c.len(), 52);
        assert_exact(&c);
    }

    #[test]
    fn odd_pairing_intervals_only() {
        let strat = ConstructionStrategy::new(StrategyKind::OddPairing, 5)
            .with_pairing(PairingPlan::IntervalsOnly);
        let c = odd_pairing_cover(&range(0, 12), 5, &strat).unwrap();
        let expected: u128 = (0..=2).map(|t| lemma1_count(6, 6, 2 * t, 4 - 2 * t)).sum();
        assert_eq!(c.len() as u128, expected);
        assert!(c.len() as u128 <= binomial(12, 2));
        assert_exact(&c);
    }

    #[test]
    fn odd_pairing_r7_and_small_halves() {
        let strat = ConstructionStrategy::new(StrategyKind::OddPairing, 7);
        for n in [7, 10, 14] {
            let c = odd_pairing_cover(&range(0, n), 7, &strat).unwrap();
            assert_exact(&c);
        }
        let all = ConstructionStrategy::new(StrategyKind::OddPairing, 9)
            .with_pairing(PairingPlan::Products((0..=4).collect()));
        assert_exact(&odd_pairing_cover(&range(0, 12), 9, &all).unwrap());
    }

    #[test]
    fn odd_pairing_rejects_even() {
        let strat = ConstructionStrategy::new(StrategyKind::OddPairing, 6);
        assert!(odd_pairing_cover(&range(0, 12), 6, &strat).is_err());
        assert!(odd_pairing_cover(&range(0, 12), 3, &strat).is_err());
    }
}
