//! Exact covers of complete r-uniform hypergraphs by complete r-partite
//! r-graphs, a brute-force verifier for them, exact minimum search on tiny
//! instances, and exact-arithmetic evaluation of the covering coefficients.

pub mod bounds;
pub mod constructions;
pub mod hypergraph;
pub mod search;
pub mod verify;

pub use constructions::{
    baseline_cover, construct, halving_cover, lemma1_cover, odd_pairing_cover, product_cover,
    ConstructionError, ConstructionStrategy, PairingPlan, StrategyKind,
};
pub use hypergraph::{
    block_edges, family_edges, make_block, Block, Cover, Edge, EdgeFamily, HypergraphError,
    VertexId,
};
pub use search::{enumerate_blocks, exact_min_cover, SearchBudget, SearchError, SearchResult};
pub use verify::{count_blocks, verify_exact_cover, VerificationReport, VerifyError};
