//! Vertices, edges, complete r-partite blocks, edge families and covers.
//!
//! A [`Block`] is a complete r-partite r-graph: `r` pairwise-disjoint nonempty
//! vertex sets, whose edges are the transversals picking one vertex per part.
//! A [`Cover`] is a list of blocks together with the [`EdgeFamily`] it is meant
//! to partition.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 0-based vertex index.
pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("block part {index} is empty")]
    EmptyPart { index: usize },
    #[error("vertex {vertex} appears in more than one part")]
    OverlappingParts { vertex: VertexId },
    #[error("invalid edge family: {0}")]
    InvalidFamily(String),
}

/// An r-subset of the vertex set, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vec<VertexId>);

impl Edge {
    /// Builds an edge from any vertex order. Returns `None` on repeated vertices.
    pub fn new(mut vertices: Vec<VertexId>) -> Option<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Edge(vertices))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// A complete r-partite r-graph in canonical form: every part sorted, parts
/// ordered by their minimum element.
///
/// The block with zero parts is allowed. It has exactly one edge (the empty
/// set) and acts as the identity for [`crate::constructions::product_cover`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Block {
    parts: Vec<Vec<VertexId>>,
}

impl Block {
    pub fn new<I, P>(parts: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = P>,
        P: IntoIterator<Item = VertexId>,
    {
        let mut parts: Vec<Vec<VertexId>> = parts
            .into_iter()
            .map(|p| {
                let mut v: Vec<VertexId> = p.into_iter().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        if let Some(index) = parts.iter().position(Vec::is_empty) {
            return Err(HypergraphError::EmptyPart { index });
        }
        let mut seen = BTreeSet::new();
        for &v in parts.iter().flatten() {
            if !seen.insert(v) {
                return Err(HypergraphError::OverlappingParts { vertex: v });
            }
        }
        parts.sort_unstable_by_key(|p| p[0]);
        Ok(Block { parts })
    }

    /// The zero-part block.
    pub fn empty() -> Self {
        Block { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    /// Number of parts, i.e. the uniformity of the block's edges.
    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    /// Number of edges: the product of the part sizes.
    pub fn edge_count(&self) -> u128 {
        self.parts.iter().map(|p| p.len() as u128).product()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.parts.iter().flatten().copied()
    }

    /// Disjoint union of two blocks (parts concatenated).
    pub fn union(&self, other: &Block) -> Result<Block, HypergraphError> {
        Block::new(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    /// Calls `f` once per transversal with the (unsorted) picked vertices.
    pub fn for_each_transversal<F: FnMut(&[VertexId])>(&self, mut f: F) {
        let r = self.parts.len();
        let mut idx = vec![0usize; r];
        let mut picked: Vec<VertexId> = self.parts.iter().map(|p| p[0]).collect();
        loop {
            f(&picked);
            // odometer, last part fastest
            let mut i = r;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < self.parts[i].len() {
                    picked[i] = self.parts[i][idx[i]];
                    break;
                }
                idx[i] = 0;
                picked[i] = self.parts[i][0];
            }
        }
    }
}

impl<'de> Deserialize<'de> for Block {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<Vec<VertexId>>::deserialize(d)?;
        Block::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.parts
                .iter()
                .map(|p| format!("{{{}}}", p.iter().join(",")))
                .join(",")
        )
    }
}

/// Builds a canonical block, rejecting empty or overlapping parts.
pub fn make_block<P>(parts: Vec<P>) -> Result<Block, HypergraphError>
where
    P: IntoIterator<Item = VertexId>,
{
    Block::new(parts)
}

/// All edges of `block`, each sorted, in lexicographic order.
pub fn block_edges(block: &Block) -> Vec<Edge> {
    let mut out = Vec::with_capacity(block.edge_count() as usize);
    block.for_each_transversal(|t| {
        let mut v = t.to_vec();
        v.sort_unstable();
        out.push(Edge(v));
    });
    out.sort_unstable();
    out
}

/// The target edge set of a cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeFamily {
    /// All r-subsets of `0..n`.
    Complete { n: usize, r: usize },
    /// All X ⊆ S ∪ T with (|X ∩ S|, |X ∩ T|) among `profiles`.
    MixedProfile {
        s: Vec<VertexId>,
        t: Vec<VertexId>,
        profiles: BTreeSet<(usize, usize)>,
    },
}

impl EdgeFamily {
    pub fn complete(n: usize, r: usize) -> Self {
        EdgeFamily::Complete { n, r }
    }

    /// All r-subsets of an arbitrary vertex list. Collapses to `Complete` when
    /// the list is exactly `0..n`.
    pub fn complete_on(vertices: &[VertexId], r: usize) -> Self {
        if vertices.iter().enumerate().all(|(i, &v)| v as usize == i) {
            return EdgeFamily::Complete {
                n: vertices.len(),
                r,
            };
        }
        EdgeFamily::MixedProfile {
            s: vertices.to_vec(),
            t: Vec::new(),
            profiles: BTreeSet::from([(r, 0)]),
        }
    }

    pub fn mixed(
        s: Vec<VertexId>,
        t: Vec<VertexId>,
        profiles: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, HypergraphError> {
        let fam = EdgeFamily::MixedProfile {
            s,
            t,
            profiles: profiles.into_iter().collect(),
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn validate(&self) -> Result<(), HypergraphError> {
        match self {
            EdgeFamily::Complete { .. } => Ok(()),
            EdgeFamily::MixedProfile { s, t, profiles } => {
                let ss: BTreeSet<_> = s.iter().collect();
                if ss.len() != s.len() || t.iter().collect::<BTreeSet<_>>().len() != t.len() {
                    return Err(HypergraphError::InvalidFamily("repeated vertex".into()));
                }
                if t.iter().any(|v| ss.contains(v)) {
                    return Err(HypergraphError::InvalidFamily("S and T intersect".into()));
                }
                let sums: BTreeSet<usize> = profiles.iter().map(|(a, b)| a + b).collect();
                if sums.len() > 1 {
                    return Err(HypergraphError::InvalidFamily(
                        "profiles have different sizes".into(),
                    ));
                }
                if let Some(&(a, b)) = profiles.iter().find(|(a, b)| *a > s.len() || *b > t.len()) {
                    return Err(HypergraphError::InvalidFamily(format!(
                        "profile ({a},{b}) exceeds |S|={}, |T|={}",
                        s.len(),
                        t.len()
                    )));
                }
                Ok(())
            }
        }
    }

    /// Uniformity of member edges (0 for a mixed family with no profiles).
    pub fn r(&self) -> usize {
        match self {
            EdgeFamily::Complete { r, .. } => *r,
            EdgeFamily::MixedProfile { profiles, .. } => {
                profiles.iter().next().map_or(0, |(a, b)| a + b)
            }
        }
    }

    /// The ground vertex list, in order.
    pub fn ground(&self) -> Vec<VertexId> {
        match self {
            EdgeFamily::Complete { n, .. } => (0..*n as VertexId).collect(),
            EdgeFamily::MixedProfile { s, t, .. } => s.iter().chain(t).copied().collect(),
        }
    }

    /// If every r-subset of the ground set is a member, returns the ground
    /// list and r.
    pub fn as_complete(&self) -> Option<(Vec<VertexId>, usize)> {
        match self {
            EdgeFamily::Complete { r, .. } => Some((self.ground(), *r)),
            EdgeFamily::MixedProfile { s, t, profiles } => {
                let r = self.r();
                let full = (0..=r)
                    .filter(|&a| a <= s.len() && r - a <= t.len())
                    .all(|a| profiles.contains(&(a, r - a)));
                full.then(|| (self.ground(), r))
            }
        }
    }

    pub fn edge_count(&self) -> u128 {
        match self {
            EdgeFamily::Complete { n, r } => binomial(*n, *r),
            EdgeFamily::MixedProfile { s, t, profiles } => profiles
                .iter()
                .map(|&(a, b)| binomial(s.len(), a) * binomial(t.len(), b))
                .sum(),
        }
    }

    pub fn contains(&self, edge: &Edge) -> bool {
        match self {
            EdgeFamily::Complete { n, r } => {
                edge.len() == *r && edge.0.iter().all(|&v| (v as usize) < *n)
            }
            EdgeFamily::MixedProfile { s, t, profiles } => {
                let mut a = 0;
                let mut b = 0;
                for v in &edge.0 {
                    if s.contains(v) {
                        a += 1;
                    } else if t.contains(v) {
                        b += 1;
                    } else {
                        return false;
                    }
                }
                profiles.contains(&(a, b))
            }
        }
    }
}

/// Enumerates every member edge exactly once, in lexicographic order.
pub fn family_edges(family: &EdgeFamily) -> Vec<Edge> {
    let mut out: Vec<Edge> = match family {
        EdgeFamily::Complete { n, r } => (0..*n as VertexId).combinations(*r).map(Edge).collect(),
        EdgeFamily::MixedProfile { s, t, profiles } => {
            let mut out = Vec::new();
            for &(a, b) in profiles {
                for xs in s.iter().copied().combinations(a) {
                    for ys in t.iter().copied().combinations(b) {
                        let mut v = xs.clone();
                        v.extend_from_slice(&ys);
                        v.sort_unstable();
                        out.push(Edge(v));
                    }
                }
            }
            out
        }
    };
    out.sort_unstable();
    out
}

/// A list of blocks intended to partition `family`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub n: usize,
    pub r: usize,
    pub construction: String,
    pub family: EdgeFamily,
    pub blocks: Vec<Block>,
}

impl Cover {
    pub fn new(
        construction: impl Into<String>,
        family: EdgeFamily,
        mut blocks: Vec<Block>,
    ) -> Self {
        blocks.sort_unstable();
        Cover {
            n: family.ground().len(),
            r: family.r(),
            construction: construction.into(),
            family,
            blocks,
        }
    }

    /// The one-block cover whose single block has no parts.
    pub fn identity() -> Self {
        Cover::new("identity", EdgeFamily::complete(0, 0), vec![Block::empty()])
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Equality as multisets of canonical blocks.
    pub fn same_blocks(&self, other: &Cover) -> bool {
        let mut a = self.blocks.clone();
        let mut b = other.blocks.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

#[derive(Serialize, Deserialize)]
struct CoverRepr {
    n: usize,
    r: usize,
    construction: String,
    blocks: Vec<Block>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<EdgeFamily>,
}

impl Serialize for Cover {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let family = match self.family {
            EdgeFamily::Complete { n, r } if n == self.n && r == self.r => None,
            _ => Some(self.family.clone()),
        };
        CoverRepr {
            n: self.n,
            r: self.r,
            construction: self.construction.clone(),
            blocks: self.blocks.clone(),
            family,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cover {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CoverRepr::deserialize(d)?;
        let family = repr.family.unwrap_or(EdgeFamily::Complete {
            n: repr.n,
            r: repr.r,
        });
        family.validate().map_err(serde::de::Error::custom)?;
        let mut blocks = repr.blocks;
        blocks.sort_unstable();
        Ok(Cover {
            n: repr.n,
            r: repr.r,
            construction: repr.construction,
            family,
            blocks,
        })
    }
}

/// Binomial coefficient in `u128`; 0 when `k > n`. Panics on overflow.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128).expect("binomial overflow") / (i as u128 + 1);
    }
    acc
}
