//! Graph families for percolation experiments: Cayley graphs of concrete
//! finite groups (Abelian mixed-radix products, Heisenberg mod n), Euclidean
//! boxes and elongated tori, quotient graphs, snake Hamiltonian orderings,
//! and the central-subgroup grid embedding.

mod abelian;
mod boxes;
mod embedding;
mod heisenberg;

pub use abelian::{AbelianGroup, GroupElement};
pub use boxes::{box_graph, elongated_torus, snake_hamiltonian, BoxGraph};
pub use embedding::{central_box_embedding, GridEmbedding};
pub use heisenberg::HeisenbergGroup;

use perc_graph::Graph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("generating set does not generate the group")]
    NonGenerating,
    #[error("element list is not a subgroup")]
    InvalidSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("subgroup is not connected in the radius-{radius} word ball")]
    NotQuasiconnected { radius: u32 },
}

/// A finite group whose elements are dense indices `0..order`, with the
/// identity at index 0.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn identity(&self) -> usize {
        0
    }
}

/// A generating set as element indices. The symmetrization `S ∪ {id} ∪ S⁻¹`
/// drives Cayley-graph adjacency and word-metric balls.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    gens: Vec<usize>,
}

impl GeneratingSet {
    pub fn new(mut gens: Vec<usize>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        GeneratingSet { gens }
    }

    pub fn from_coords(group: &AbelianGroup, coords: &[Vec<i64>]) -> Self {
        Self::new(coords.iter().map(|c| group.index(c)).collect())
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `Ŝ = S ∪ {id} ∪ S⁻¹`, sorted.
    pub fn symmetrized<G: FiniteGroup>(&self, group: &G) -> Vec<usize> {
        let mut hat = vec![group.identity()];
        for &s in &self.gens {
            hat.push(s);
            hat.push(group.inv(s));
        }
        hat.sort_unstable();
        hat.dedup();
        hat
    }

    /// BFS closure over `Ŝ` reaches the whole group.
    pub fn generates<G: FiniteGroup>(&self, group: &G) -> bool {
        let hat = self.symmetrized(group);
        let mut seen = vec![false; group.order()];
        seen[group.identity()] = true;
        let mut frontier = vec![group.identity()];
        let mut count = 1;
        while let Some(g) = frontier.pop() {
            for &s in &hat {
                let h = group.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    frontier.push(h);
                }
            }
        }
        count == group.order()
    }
}

/// Word-metric ball `Ŝ^r` around the identity, as a sorted element list.
pub fn word_ball<G: FiniteGroup>(group: &G, s: &GeneratingSet, r: u32) -> Vec<usize> {
    let hat = s.symmetrized(group);
    let mut level = vec![u32::MAX; group.order()];
    level[group.identity()] = 0;
    let mut frontier = vec![group.identity()];
    for d in 0..r {
        let mut next = Vec::new();
        for &g in &frontier {
            for &s in &hat {
                let h = group.mul(g, s);
                if level[h] == u32::MAX {
                    level[h] = d + 1;
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    let mut ball: Vec<usize> =
        (0..group.order()).filter(|&g| level[g] != u32::MAX).collect();
    ball.sort_unstable();
    ball
}

/// Cayley graph: vertex set = element indices, `{x, xs}` an edge for each
/// `s ∈ Ŝ∖{id}`. Errors if `S` does not generate (the graph would be
/// disconnected).
pub fn cayley_graph<G: FiniteGroup>(
    group: &G,
    s: &GeneratingSet,
) -> Result<Graph, CayleyError> {
    let hat = s.symmetrized(group);
    let mut edges = Vec::with_capacity(group.order() * hat.len());
    for g in 0..group.order() {
        for &s in &hat {
            if s == group.identity() {
                continue;
            }
            edges.push((g as u32, group.mul(g, s) as u32));
        }
    }
    let graph = Graph::new(group.order(), &edges).expect("indices in range");
    if !graph.is_connected() {
        return Err(CayleyError::NonGenerating);
    }
    Ok(graph)
}

/// Quotient graph under a block partition. Block ids are compacted to
/// `0..block_count` preserving their numeric order; returns the graph and the
/// compacted projection `vertex -> block`.
pub fn quotient_graph(g: &Graph, orbit_map: &[u32]) -> (Graph, Vec<u32>) {
    assert_eq!(orbit_map.len(), g.vertex_count(), "orbit map must be total");
    let mut ids: Vec<u32> = orbit_map.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let compact = |b: u32| ids.binary_search(&b).unwrap() as u32;
    let projection: Vec<u32> = orbit_map.iter().map(|&b| compact(b)).collect();
    let edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (projection[u as usize], projection[v as usize]))
        .collect();
    let quotient = Graph::new(ids.len(), &edges).expect("block ids in range");
    (quotient, projection)
}

/// Quotient of a finite group by a normal subgroup, as a `FiniteGroup` over
/// coset ids. Cosets are labeled in increasing order of their smallest
/// member, so the identity coset is 0.
pub struct QuotientGroup<'a, G: FiniteGroup> {
    base: &'a G,
    coset_of: Vec<u32>,
    reps: Vec<usize>,
}

impl<'a, G: FiniteGroup> QuotientGroup<'a, G> {
    pub fn new(base: &'a G, subgroup: &[usize]) -> Result<Self, CayleyError> {
        verify_subgroup(base, subgroup)?;
        let sub: Vec<usize> = subgroup.to_vec();
        // normality: gH = Hg for every g
        let h_set: std::collections::HashSet<usize> = sub.iter().copied().collect();
        for g in 0..base.order() {
            let ginv = base.inv(g);
            for &h in &sub {
                if !h_set.contains(&base.mul(base.mul(g, h), ginv)) {
                    return Err(CayleyError::NotNormal);
                }
            }
        }
        let mut coset_of = vec![u32::MAX; base.order()];
        let mut reps = Vec::new();
        for g in 0..base.order() {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &h in &sub {
                coset_of[base.mul(g, h)] = id;
            }
        }
        Ok(QuotientGroup { base, coset_of, reps })
    }

    pub fn project(&self, g: usize) -> usize {
        self.coset_of[g] as usize
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }
}

impl<G: FiniteGroup> FiniteGroup for QuotientGroup<'_, G> {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.project(self.base.mul(self.reps[a], self.reps[b]))
    }

    fn inv(&self, a: usize) -> usize {
        self.project(self.base.inv(self.reps[a]))
    }
}

pub(crate) fn verify_subgroup<G: FiniteGroup>(
    group: &G,
    elements: &[usize],
) -> Result<(), CayleyError> {
    let set: std::collections::HashSet<usize> = elements.iter().copied().collect();
    if set.len() != elements.len() || !set.contains(&group.identity()) {
        return Err(CayleyError::InvalidSubgroup);
    }
    for &a in elements {
        if !set.contains(&group.inv(a)) {
            return Err(CayleyError::InvalidSubgroup);
        }
        for &b in elements {
            if !set.contains(&group.mul(a, b)) {
                return Err(CayleyError::InvalidSubgroup);
            }
        }
    }
    Ok(())
}

/// Cayley graph of the Heisenberg group mod `n` with the standard generators.
pub fn heisenberg_cayley(n: u64) -> (Graph, HeisenbergGroup) {
    let h = HeisenbergGroup::new(n);
    let s = GeneratingSet::new(h.standard_generators());
    let graph = cayley_graph(&h, &s).expect("standard generators generate");
    (graph, h)
}
