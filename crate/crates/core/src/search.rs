//! Exact f_r(n) for tiny instances by branch-and-bound exact-cover search.
//!
//! Edges of the complete r-graph on `0..n` are indexed by colex rank and each
//! candidate block is a `u128` mask over those ranks, so instances are
//! limited to C(n, r) ≤ 128.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::baseline_cover;
use crate::hypergraph::{binomial, Block, Cover, EdgeFamily, VertexId};

pub const MAX_SEARCH_EDGES: u128 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid arity r={r} for {n} vertices")]
    InvalidArity { n: usize, r: usize },
    #[error("C({n},{r}) edges exceed the search limit of {MAX_SEARCH_EDGES}")]
    TooLarge { n: usize, r: usize },
    #[error("search budget exhausted; best cover found has {} blocks", .best.minimum)]
    BudgetExceeded { best: Box<SearchResult> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
            time_limit: Duration::from_secs(300),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub minimum: usize,
    pub witness: Cover,
    pub nodes_explored: u64,
    /// True iff the search completed, proving `minimum` optimal.
    pub exhausted: bool,
}

/// Every canonical block with exactly `r` nonempty parts on some subset of
/// `0..n`: all partitions into `r` parts of every subset of size ≥ r.
pub fn enumerate_blocks(n: usize, r: usize) -> Result<Vec<Block>, SearchError> {
    if r < 1 || r > n || n > 24 {
        return Err(SearchError::InvalidArity { n, r });
    }
    let mut out = Vec::new();
    for subset in 0u32..(1 << n) {
        if (subset.count_ones() as usize) < r {
            continue;
        }
        let members: Vec<VertexId> = (0..n as VertexId)
            .filter(|v| subset >> v & 1 == 1)
            .collect();
        let mut labels = vec![0usize; members.len()];
        partitions_into(&members, r, 0, 0, &mut labels, &mut out);
    }
    out.sort_unstable();
    Ok(out)
}

/// Restricted growth strings over `members` with exactly `r` labels.
fn partitions_into(
    members: &[VertexId],
    r: usize,
    pos: usize,
    used: usize,
    labels: &mut Vec<usize>,
    out: &mut Vec<Block>,
) {
    let remaining = members.len() - pos;
    if used + remaining < r {
        return;
    }
    if pos == members.len() {
        let mut parts = vec![Vec::new(); r];
        for (&v, &l) in members.iter().zip(labels.iter()) {
            parts[l].push(v);
        }
        out.push(Block::new(parts).expect("labels form a partition"));
        return;
    }
    for l in 0..=used.min(r - 1) {
        labels[pos] = l;
        partitions_into(members, r, pos + 1, used.max(l + 1), labels, out);
    }
}

fn colex_rank(sorted: &[VertexId]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as usize, i + 1) as usize)
        .sum()
}

fn block_mask(block: &Block) -> u128 {
    let mut mask = 0u128;
    let mut buf = Vec::with_capacity(block.arity());
    block.for_each_transversal(|t| {
        buf.clear();
        buf.extend_from_slice(t);
        buf.sort_unstable();
        mask |= 1u128 << colex_rank(&buf);
    });
    mask
}

struct Candidate {
    block: Block,
    mask: u128,
}

struct Search<'a> {
    candidates: &'a [Candidate],
    by_edge: Vec<Vec<usize>>,
    full: u128,
    max_edges: u32,
    best: Vec<usize>,
    best_len: usize,
    improved: bool,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
    aborted: bool,
}

impl Search<'_> {
    fn dfs(&mut self, covered: u128, chosen: &mut Vec<usize>) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes % 4096 == 0 && self.started.elapsed() > self.budget.time_limit)
        {
            self.aborted = true;
            return;
        }
        if covered == self.full {
            if chosen.len() < self.best_len {
                self.best_len = chosen.len();
                self.best = chosen.clone();
                self.improved = true;
            }
            return;
        }
        let uncovered = (self.full & !covered).count_ones();
        let lower = uncovered.div_ceil(self.max_edges) as usize;
        if chosen.len() + lower >= self.best_len {
            return;
        }
        let edge = (self.full & !covered).trailing_zeros() as usize;
        for i in 0..self.by_edge[edge].len() {
            let c = self.by_edge[edge][i];
            let mask = self.candidates[c].mask;
            if mask & covered != 0 {
                continue;
            }
            chosen.push(c);
            self.dfs(covered | mask, chosen);
            chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

/// Minimum number of blocks partitioning the complete r-graph on `0..n`.
pub fn exact_min_cover(
    n: usize,
    r: usize,
    budget: SearchBudget,
) -> Result<SearchResult, SearchError> {
    let blocks = enumerate_blocks(n, r)?;
    exact_min_cover_with_blocks(n, r, blocks, budget)
}

/// As [`exact_min_cover`], over a caller-supplied candidate list. The list is
/// canonicalized first, so the result does not depend on its order.
pub fn exact_min_cover_with_blocks(
    n: usize,
    r: usize,
    mut blocks: Vec<Block>,
    budget: SearchBudget,
) -> Result<SearchResult, SearchError> {
    if r < 1 || r > n {
        return Err(SearchError::InvalidArity { n, r });
    }
    let edges = binomial(n, r);
    if edges > MAX_SEARCH_EDGES {
        return Err(SearchError::TooLarge { n, r });
    }
    let family = EdgeFamily::complete(n, r);
    let full = if edges == 128 {
        u128::MAX
    } else {
        (1u128 << edges) - 1
    };

    blocks.sort_unstable();
    blocks.dedup();
    let mut candidates: Vec<Candidate> = blocks
        .into_iter()
        .filter(|b| b.arity() == r && b.vertices().all(|v| (v as usize) < n))
        .map(|block| Candidate {
            mask: block_mask(&block),
            block,
        })
        .collect();
    // Larger blocks first; ties keep canonical order.
    candidates.sort_by(|x, y| {
        y.mask
            .count_ones()
            .cmp(&x.mask.count_ones())
            .then_with(|| x.block.cmp(&y.block))
    });
    let mut by_edge = vec![Vec::new(); edges as usize];
    for (i, c) in candidates.iter().enumerate() {
        let mut m = c.mask;
        while m != 0 {
            by_edge[m.trailing_zeros() as usize].push(i);
            m &= m - 1;
        }
    }
    let max_edges = candidates
        .iter()
        .map(|c| c.mask.count_ones())
        .max()
        .unwrap_or(1);

    let vertices: Vec<VertexId> = (0..n as VertexId).collect();
    let incumbent = baseline_cover(&vertices, r).expect("r <= n");

    let mut search = Search {
        candidates: &candidates,
        by_edge,
        full,
        max_edges,
        best: Vec::new(),
        best_len: incumbent.len(),
        improved: false,
        nodes: 0,
        budget,
        started: Instant::now(),
        aborted: false,
    };
    // Bound is strict (< incumbent), so search for covers one smaller than
    // baseline and fall back to it when none exists.
    search.dfs(0, &mut Vec::new());

    let witness = if search.improved {
        let chosen = search
            .best
            .iter()
            .map(|&i| candidates[i].block.clone())
            .collect();
        Cover::new("exact-search", family, chosen)
    } else {
        Cover::new("exact-search", family, incumbent.blocks)
    };
    let result = SearchResult {
        minimum: witness.len(),
        witness,
        nodes_explored: search.nodes,
        exhausted: !search.aborted,
    };
    if search.aborted {
        Err(SearchError::BudgetExceeded {
            best: Box::new(result),
        })
    } else {
        Ok(result)
    }
}
