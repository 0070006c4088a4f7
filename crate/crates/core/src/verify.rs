//! Brute-force exact-cover check.
//!
//! Every transversal of every block is tallied against the target family.
//! Tallies are kept in a dense array indexed by colex rank when the rank
//! space is small enough, and in a hash map otherwise.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{binomial, family_edges, Cover, Edge, EdgeFamily, VertexId};

/// Sample lists in a report are truncated to this many entries.
pub const SAMPLE_LIMIT: usize = 20;

const DENSE_RANK_LIMIT: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("block {index} has {parts} parts but the family has r={r}")]
    ArityMismatch {
        index: usize,
        parts: usize,
        r: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family_size: u64,
    pub covered_once: u64,
    /// Total number of block edges, counted with multiplicity.
    pub block_edge_total: u64,
    pub uncovered: Vec<Edge>,
    pub multiply_covered: Vec<(Edge, u32)>,
    pub foreign: Vec<Edge>,
    pub is_exact: bool,
}

#[derive(Default, Clone, Copy)]
struct Slot {
    count: u32,
    member: bool,
}

enum Tally {
    Dense {
        table: Vec<Slot>,
        choose: Vec<Vec<u64>>,
    },
    Sparse(HashMap<Vec<VertexId>, Slot>),
}

impl Tally {
    fn new(universe: usize, r: usize) -> Self {
        if binomial(universe, r) <= DENSE_RANK_LIMIT {
            let choose = (0..=universe)
                .map(|v| (0..=r).map(|i| binomial(v, i) as u64).collect())
                .collect();
            Tally::Dense {
                table: vec![Slot::default(); binomial(universe, r) as usize],
                choose,
            }
        } else {
            Tally::Sparse(HashMap::new())
        }
    }

    /// `sorted` must be strictly increasing.
    fn slot(&mut self, sorted: &[VertexId]) -> &mut Slot {
        match self {
            Tally::Dense { table, choose } => {
                let rank: u64 = sorted
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| choose[v as usize][i + 1])
                    .sum();
                &mut table[rank as usize]
            }
            Tally::Sparse(map) => map.entry(sorted.to_vec()).or_default(),
        }
    }
}

/// Checks that the blocks of `cover` partition exactly the edges of `family`.
pub fn verify_exact_cover(
    cover: &Cover,
    family: &EdgeFamily,
) -> Result<VerificationReport, VerifyError> {
    let r = family.r();
    if let Some((index, b)) = cover
        .blocks
        .iter()
        .enumerate()
        .find(|(_, b)| b.arity() != r)
    {
        return Err(VerifyError::ArityMismatch {
            index,
            parts: b.arity(),
            r,
        });
    }
    let members = family_edges(family);
    let universe = members
        .iter()
        .flat_map(|e| e.vertices().iter())
        .chain(cover.blocks.iter().flat_map(|b| b.parts().iter().flatten()))
        .map(|&v| v as usize + 1)
        .max()
        .unwrap_or(0);

    let mut tally = Tally::new(universe, r);
    for e in &members {
        tally.slot(e.vertices()).member = true;
    }

    let mut foreign = BTreeSet::new();
    let mut block_edge_total = 0u64;
    let mut sorted = Vec::with_capacity(r);
    for block in &cover.blocks {
        block.for_each_transversal(|t| {
            sorted.clear();
            sorted.extend_from_slice(t);
            sorted.sort_unstable();
            block_edge_total += 1;
            let slot = tally.slot(&sorted);
            slot.count += 1;
            if !slot.member {
                foreign.insert(sorted.clone());
            }
        });
    }

    let mut covered_once = 0u64;
    let mut uncovered = Vec::new();
    let mut multiply = BTreeMap::new();
    let mut bad_counts = 0usize;
    for e in &members {
        match tally.slot(e.vertices()).count {
            1 => covered_once += 1,
            0 => {
                bad_counts += 1;
                if uncovered.len() < SAMPLE_LIMIT {
                    uncovered.push(e.clone());
                }
            }
            k => {
                bad_counts += 1;
                if multiply.len() < SAMPLE_LIMIT {
                    multiply.insert(e.clone(), k);
                }
            }
        }
    }

    let is_exact = bad_counts == 0 && foreign.is_empty();
    let foreign = foreign
        .into_iter()
        .take(SAMPLE_LIMIT)
        .filter_map(Edge::new)
        .collect();
    Ok(VerificationReport {
        family_size: members.len() as u64,
        covered_once,
        block_edge_total,
        uncovered,
        multiply_covered: multiply.into_iter().collect(),
        foreign,
        is_exact,
    })
}

pub fn count_blocks(cover: &Cover) -> usize {
    cover.blocks.len()
}
