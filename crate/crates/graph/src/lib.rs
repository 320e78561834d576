//! Finite simple undirected graphs with canonical edge indexing, BFS metric
//! queries, and the double-cover Eulerian walk.

mod vertex_set;
mod walk;

pub use vertex_set::VertexSet;
pub use walk::Walk;

use thiserror::Error;

/// Marker for unreachable vertices in distance vectors.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: u32, vertex_count: usize },
    #[error("operation requires a connected graph")]
    Disconnected,
}

/// Immutable simple graph. Edges are stored once as `(u, v)` with `u < v`,
/// sorted lexicographically; the position in `edge_list` is the edge's stable
/// canonical index, so edge bit-vectors are reproducible across runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    adjacency: Vec<Vec<u32>>,
    edge_list: Vec<(u32, u32)>,
    collapsed: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Loops are discarded and duplicate
    /// edges collapsed; how many such entries were dropped is reported by
    /// [`Graph::collapsed_count`].
    pub fn new(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut canonical: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        let mut collapsed = 0usize;
        for &(a, b) in edges {
            for v in [a, b] {
                if v as usize >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: v, vertex_count });
                }
            }
            if a == b {
                collapsed += 1;
                continue;
            }
            canonical.push((a.min(b), a.max(b)));
        }
        canonical.sort_unstable();
        let before = canonical.len();
        canonical.dedup();
        collapsed += before - canonical.len();

        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &canonical {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { vertex_count, adjacency, edge_list: canonical, collapsed })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_list.len()
    }

    /// Edges in canonical order; the index of a pair in this slice is its
    /// stable edge index.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edge_list
    }

    /// Number of loops and duplicate edges dropped at construction.
    pub fn collapsed_count(&self) -> usize {
        self.collapsed
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Canonical index of the edge `{u, v}`, if present.
    pub fn edge_index(&self, u: u32, v: u32) -> Option<usize> {
        if u == v {
            return None;
        }
        let key = (u.min(v), u.max(v));
        self.edge_list.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edge_index(u, v).is_some()
    }

    fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if (v as usize) < self.vertex_count {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count })
        }
    }

    /// BFS distances from `o`; unreachable vertices get [`UNREACHABLE`].
    pub fn bfs_distances(&self, o: u32) -> Result<Vec<u32>, GraphError> {
        self.check_vertex(o)?;
        let mut dist = vec![UNREACHABLE; self.vertex_count];
        dist[o as usize] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(o);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbors(u) {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// The ball `B(o, n) = {v : d(o, v) <= n}`.
    pub fn ball(&self, o: u32, n: u32) -> Result<VertexSet, GraphError> {
        let dist = self.bfs_distances(o)?;
        let mut set = VertexSet::new(self.vertex_count);
        for (v, &d) in dist.iter().enumerate() {
            if d != UNREACHABLE && d <= n {
                set.insert(v as u32);
            }
        }
        Ok(set)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        match self.bfs_distances(0) {
            Ok(dist) => dist.iter().all(|&d| d != UNREACHABLE),
            Err(_) => false,
        }
    }

    /// Max distance from `v` to any vertex. For vertex-transitive graphs this
    /// equals the diameter; callers on huge transitive inputs should prefer it
    /// over the all-pairs scan.
    pub fn eccentricity(&self, v: u32) -> Result<u32, GraphError> {
        let dist = self.bfs_distances(v)?;
        let mut max = 0;
        for &d in &dist {
            if d == UNREACHABLE {
                return Err(GraphError::Disconnected);
            }
            max = max.max(d);
        }
        Ok(max)
    }

    /// Exact diameter by BFS from every vertex.
    pub fn diameter(&self) -> Result<u32, GraphError> {
        if self.vertex_count == 0 {
            return Err(GraphError::Disconnected);
        }
        let mut best = 0;
        for v in 0..self.vertex_count {
            best = best.max(self.eccentricity(v as u32)?);
        }
        Ok(best)
    }

    /// Edges with exactly one endpoint in `a`, as canonical edge indices.
    pub fn edge_boundary(&self, a: &VertexSet) -> Vec<usize> {
        self.edge_list
            .iter()
            .enumerate()
            .filter(|&(_, &(u, v))| a.contains(u) != a.contains(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// External vertex boundary: vertices outside `a` adjacent to `a`.
    pub fn vertex_boundary(&self, a: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.vertex_count);
        for &(u, v) in &self.edge_list {
            if a.contains(u) && !a.contains(v) {
                out.insert(v);
            } else if a.contains(v) && !a.contains(u) {
                out.insert(u);
            }
        }
        out
    }

    /// Closed walk from `start` visiting every vertex and crossing each edge
    /// exactly twice: an Eulerian circuit of the doubled multigraph. Neighbor
    /// order is the sorted adjacency, so the walk is deterministic.
    pub fn double_cover_walk_from(&self, start: u32) -> Result<Walk, GraphError> {
        self.check_vertex(start)?;
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        // Each undirected edge has two copies; slot 2e and 2e+1. A copy is
        // spent once no matter which direction it is crossed in.
        let mut incidence: Vec<Vec<(u32, usize)>> = vec![Vec::new(); self.vertex_count];
        for v in 0..self.vertex_count {
            for &w in &self.adjacency[v] {
                let e = self.edge_index(v as u32, w).unwrap();
                incidence[v].push((w, 2 * e));
                incidence[v].push((w, 2 * e + 1));
            }
        }
        let mut used = vec![false; 2 * self.edge_count()];
        let mut ptr = vec![0usize; self.vertex_count];
        let mut stack = vec![start];
        let mut circuit = Vec::with_capacity(2 * self.edge_count() + 1);
        while let Some(&v) = stack.last() {
            let inc = &incidence[v as usize];
            let p = &mut ptr[v as usize];
            while *p < inc.len() && used[inc[*p].1] {
                *p += 1;
            }
            if *p == inc.len() {
                circuit.push(v);
                stack.pop();
            } else {
                let (w, slot) = inc[*p];
                used[slot] = true;
                stack.push(w);
            }
        }
        circuit.reverse();
        Ok(Walk::new(circuit))
    }

    pub fn double_cover_walk(&self) -> Result<Walk, GraphError> {
        self.double_cover_walk_from(0)
    }
}
