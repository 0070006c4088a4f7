//! Shared inputs for the criterion benches.

use gpbounds::VertexId;

/// The ordered vertex list `0..n`.
pub fn vertices(n: usize) -> Vec<VertexId> {
    (0..n as VertexId).collect()
}
