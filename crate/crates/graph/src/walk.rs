use std::collections::HashMap;

use crate::Graph;

/// A walk as a vertex sequence; consecutive vertices must be adjacent in the
/// host graph (checkable with [`Walk::is_valid_in`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<u32>,
}

impl Walk {
    pub fn new(vertices: Vec<u32>) -> Self {
        Walk { vertices }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Multiset of traversed undirected edges, keyed by canonical `(min, max)`
    /// endpoint pairs.
    pub fn edge_multiset(&self) -> HashMap<(u32, u32), usize> {
        let mut counts = HashMap::new();
        for pair in self.vertices.windows(2) {
            let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            *counts.entry(key).or_insert(0) += 1;
        }
        counts
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.vertices.windows(2).all(|p| g.has_edge(p[0], p[1]))
            && self.vertices.iter().all(|&v| (v as usize) < g.vertex_count())
    }

    /// Distinct vertices visited.
    pub fn support(&self) -> Vec<u32> {
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}
