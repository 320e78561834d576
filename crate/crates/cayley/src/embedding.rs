use perc_graph::Graph;

use crate::{
    cayley_graph, verify_subgroup, word_ball, CayleyError, FiniteGroup, GeneratingSet,
    QuotientGroup,
};

/// A surjective grid map `{0..n1} x {0..n2} -> Γ` built from two double-cover
/// walks: row moves stay inside a coset of the central subgroup `H`, column
/// moves follow a walk on `Cay(Γ/H, Ŝ^r/H)` lifted through chosen generators.
/// Grid adjacency maps to adjacency in `Cay(Γ, Ŝ^r)`.
#[derive(Clone, Debug)]
pub struct GridEmbedding {
    n1: usize,
    n2: usize,
    /// group element at grid point `(a, j)`, row-major `a * n2 + j`
    map: Vec<usize>,
    group_order: usize,
    /// `4 (2|S|+1)^{2r}`, the guaranteed ceiling on preimage sizes
    preimage_bound: u64,
}

impl GridEmbedding {
    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn image(&self, a: usize, j: usize) -> usize {
        self.map[a * self.n2 + j]
    }

    pub fn preimage_bound(&self) -> u64 {
        self.preimage_bound
    }

    /// Number of grid points mapping to each group element.
    pub fn preimage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.group_order];
        for &g in &self.map {
            counts[g] += 1;
        }
        counts
    }

    pub fn is_surjective(&self) -> bool {
        self.preimage_counts().iter().all(|&c| c > 0)
    }
}

/// Builds the grid embedding for a central subgroup `H` of `Γ`. `r` controls
/// the word ball `Ŝ^r`; `H` must be generated by `Ŝ^r ∩ H` (quasiconnected).
/// Both walks start at the identity (resp. identity coset) with sorted
/// neighbor order, so the construction is deterministic.
pub fn central_box_embedding<G: FiniteGroup>(
    group: &G,
    s: &GeneratingSet,
    subgroup: &[usize],
    r: u32,
) -> Result<GridEmbedding, CayleyError> {
    verify_subgroup(group, subgroup)?;
    if !s.generates(group) {
        return Err(CayleyError::NonGenerating);
    }
    // centrality: enough to commute with the generators
    for &h in subgroup {
        for &g in s.generators() {
            if group.mul(h, g) != group.mul(g, h) {
                return Err(CayleyError::NotCentral);
            }
        }
    }

    let ball = word_ball(group, s, r);
    let ball_set: std::collections::HashSet<usize> = ball.iter().copied().collect();

    // G1: the induced subgraph of Cay(Γ, Ŝ^r) on H, i.e. Cay(H, (Ŝ^r ∩ H)∖{id})
    let mut h_sorted = subgroup.to_vec();
    h_sorted.sort_unstable();
    let h_local = |g: usize| h_sorted.binary_search(&g).unwrap() as u32;
    let mut g1_edges = Vec::new();
    for (i, &a) in h_sorted.iter().enumerate() {
        for &b in h_sorted.iter().skip(i + 1) {
            if ball_set.contains(&group.mul(group.inv(a), b)) {
                g1_edges.push((i as u32, h_local(b)));
            }
        }
    }
    let g1 = Graph::new(h_sorted.len(), &g1_edges).expect("local indices");
    if !g1.is_connected() {
        return Err(CayleyError::NotQuasiconnected { radius: r });
    }
    let phi1: Vec<usize> = if h_sorted.len() == 1 {
        vec![h_sorted[0]]
    } else {
        g1.double_cover_walk_from(h_local(group.identity()))
            .expect("connected")
            .vertices()
            .iter()
            .map(|&v| h_sorted[v as usize])
            .collect()
    };

    // G2: Cay(Γ/H, π(Ŝ^r)∖{id})
    let quotient = QuotientGroup::new(group, subgroup)?;
    let projected: Vec<usize> = ball.iter().map(|&g| quotient.project(g)).collect();
    let q_gens = GeneratingSet::new(
        projected.iter().copied().filter(|&c| c != quotient.identity()).collect(),
    );
    let phi2: Vec<usize> = if quotient.order() == 1 {
        vec![quotient.identity()]
    } else {
        let g2 = cayley_graph(&quotient, &q_gens)?;
        g2.double_cover_walk_from(quotient.identity() as u32)
            .expect("connected")
            .vertices()
            .iter()
            .map(|&v| v as usize)
            .collect()
    };

    // lift each quotient step through the smallest generator in Ŝ^r
    let mut prefixes = Vec::with_capacity(phi2.len());
    let mut prefix = group.identity();
    prefixes.push(prefix);
    for step in phi2.windows(2) {
        let target = quotient.mul(quotient.inv(step[0]), step[1]);
        let lift = ball
            .iter()
            .copied()
            .find(|&s| quotient.project(s) == target)
            .expect("walk steps are projected-generator moves");
        prefix = group.mul(prefix, lift);
        prefixes.push(prefix);
    }

    let (n1, n2) = (phi1.len(), phi2.len());
    let mut map = Vec::with_capacity(n1 * n2);
    for &h in &phi1 {
        for &p in &prefixes {
            map.push(group.mul(h, p));
        }
    }
    let embedding = GridEmbedding {
        n1,
        n2,
        map,
        group_order: group.order(),
        preimage_bound: 4 * (2 * s.len() as u64 + 1).pow(2 * r),
    };
    assert!(embedding.is_surjective(), "grid embedding must cover the group");
    Ok(embedding)
}
