//! Explicit couplings comparing percolation across graphs.
//!
//! Three constructions, each with a containment that holds on every
//! sample (not just in distribution):
//!
//! * **union**: two independent configurations at p1 and p2 overlaid; the
//!   overlay is Bernoulli with retention 1 − (1−p1)(1−p2) and contains the
//!   first layer edgewise.
//! * **quotient**: an edge of G/H opens when any preimage edge of G is
//!   open; clusters of the base project into clusters of the image.
//! * **rough embedding**: a configuration on G1 and one on G2 driven by a
//!   shared auxiliary field on the fibers of an edge map Φ, so clusters of
//!   G1 map into clusters of G2 while both marginals stay pinned near q.

use perc_cayley::quotient_graph;
use perc_graph::Graph;

use crate::rng::{bernoulli, STREAM_COUPLE_A, STREAM_COUPLE_B, STREAM_EMBED};
use crate::{check_probability, EdgeConfig, PercError, PercSample};

/// Overlays two independent samples. Returns the Bernoulli(p1) layer and
/// the edgewise OR, which is itself an honest i.i.d. sample at retention
/// 1 − (1−p1)(1−p2); the first configuration is contained in the second
/// on every edge, every time.
pub fn union_coupling(
    g: &Graph,
    p1: f64,
    p2: f64,
    seed: u64,
) -> Result<(PercSample, PercSample), PercError> {
    check_probability(p1)?;
    check_probability(p2)?;
    let mut first = EdgeConfig::closed(g.edge_count());
    let mut second = EdgeConfig::closed(g.edge_count());
    for e in 0..g.edge_count() {
        let a = bernoulli(seed, STREAM_COUPLE_A, 0, e as u64, p1);
        let b = bernoulli(seed, STREAM_COUPLE_B, 0, e as u64, p2);
        if a {
            first.set_open(e);
        }
        if a || b {
            second.set_open(e);
        }
    }
    let p_union = 1.0 - (1.0 - p1) * (1.0 - p2);
    Ok((
        PercSample { config: first, p: p1, seed, trial: 0 },
        PercSample { config: second, p: p_union, seed, trial: 0 },
    ))
}

/// A percolation sample on `base` together with its pushforward to the
/// quotient graph: an image edge is open iff some preimage edge is open.
#[derive(Clone, Debug)]
pub struct QuotientCoupling {
    pub base: PercSample,
    /// The quotient graph (loops dropped, parallel images merged).
    pub quotient: Graph,
    /// Compacted block id of each base vertex.
    pub projection: Vec<u32>,
    /// The pushforward configuration η on the quotient's edges.
    pub image: EdgeConfig,
    /// Largest number of base edges mapping onto a single quotient edge;
    /// each image edge is open with probability 1 − (1−p)^fiber ≤
    /// 1 − (1−p)^max_fiber.
    pub max_fiber: usize,
}

/// Couples Bernoulli(p) percolation on `g` with its pushforward along the
/// block map `orbit_map`. The image η has independent edges (the fibers
/// partition the base edges) and the projection of any base cluster lands
/// inside the cluster of its image vertex — samplewise, by construction.
pub fn quotient_coupling(
    g: &Graph,
    orbit_map: &[u32],
    p: f64,
    seed: u64,
) -> Result<QuotientCoupling, PercError> {
    if orbit_map.len() != g.vertex_count() {
        return Err(PercError::MapLengthMismatch {
            expected: g.vertex_count(),
            got: orbit_map.len(),
        });
    }
    let base = crate::sample_config(g, p, seed)?;
    let (quotient, projection) = quotient_graph(g, orbit_map);
    let mut image = EdgeConfig::closed(quotient.edge_count());
    let mut fibers = vec![0usize; quotient.edge_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (bu, bv) = (projection[u as usize], projection[v as usize]);
        if bu == bv {
            continue; // collapsed to a loop; carries no image edge
        }
        let image_edge = quotient
            .edge_index(bu, bv)
            .expect("image of a base edge is an edge of the quotient");
        fibers[image_edge] += 1;
        if base.config.is_open(e) {
            image.set_open(image_edge);
        }
    }
    let max_fiber = fibers.iter().copied().max().unwrap_or(0);
    Ok(QuotientCoupling { base, quotient, projection, image, max_fiber })
}

/// Output of [`rough_embedding_coupling`]: a configuration on each graph
/// plus the overlap constant that pins their marginals.
#[derive(Clone, Debug)]
pub struct RoughEmbeddingCoupling {
    /// ω1 on G1: an edge opens when its whole geodesic image is hit.
    pub domain: EdgeConfig,
    /// ω2 on G2: an edge opens when hit on behalf of any domain edge.
    pub image: EdgeConfig,
    /// C = max(longest edge image, largest backward multiplicity). Open
    /// marginals of ω1 lie in [q^C, q], closed marginals of ω2 in
    /// [(1−q)^C, 1−q] (over edges that Φ touches).
    pub constant: usize,
}

/// Couples percolation across a rough embedding. An auxiliary field puts
/// an independent Bernoulli(q) coin on every pair (e1, e2 ∈ Φ(e1)); a
/// domain edge opens when all its coins succeed, an image edge when any
/// coin pointing at it succeeds. Then φ maps clusters of ω1 into clusters
/// of ω2 on every sample.
///
/// Each Φ(e1) must be a nonempty edge set connecting φ(u) to φ(v) — use
/// [`geodesic_edge_map`] to build one from shortest paths.
pub fn rough_embedding_coupling(
    g1: &Graph,
    g2: &Graph,
    phi: &[u32],
    phi_edges: &[Vec<usize>],
    q: f64,
    seed: u64,
) -> Result<RoughEmbeddingCoupling, PercError> {
    check_probability(q)?;
    check_vertex_map(g1, g2, phi)?;
    if phi_edges.len() != g1.edge_count() {
        return Err(PercError::MapLengthMismatch {
            expected: g1.edge_count(),
            got: phi_edges.len(),
        });
    }
    let mut multiplicity = vec![0usize; g2.edge_count()];
    let mut constant = 0usize;
    for (e1, image) in phi_edges.iter().enumerate() {
        if image.is_empty() {
            return Err(PercError::EmptyEdgeImage { edge: e1 });
        }
        for &e2 in image {
            if e2 >= g2.edge_count() {
                return Err(PercError::EdgeOutOfRange { edge: e2, edge_count: g2.edge_count() });
            }
            multiplicity[e2] += 1;
        }
        let (u, v) = g1.edges()[e1];
        check_edge_image_connects(g2, phi[u as usize], phi[v as usize], image)
            .map_err(|()| PercError::BrokenEdgePath { edge: e1 })?;
        constant = constant.max(image.len());
    }
    constant = constant.max(multiplicity.iter().copied().max().unwrap_or(0));

    let mut domain = EdgeConfig::closed(g1.edge_count());
    let mut image_cfg = EdgeConfig::closed(g2.edge_count());
    let mut coin = 0u64; // flat index over all (e1, e2) pairs
    for (e1, image) in phi_edges.iter().enumerate() {
        let mut all = true;
        for &e2 in image {
            let hit = bernoulli(seed, STREAM_EMBED, 0, coin, q);
            coin += 1;
            if hit {
                image_cfg.set_open(e2);
            } else {
                all = false;
            }
        }
        if all {
            domain.set_open(e1);
        }
    }
    Ok(RoughEmbeddingCoupling { domain, image: image_cfg, constant })
}

fn check_vertex_map(g1: &Graph, g2: &Graph, phi: &[u32]) -> Result<(), PercError> {
    if phi.len() != g1.vertex_count() {
        return Err(PercError::MapLengthMismatch { expected: g1.vertex_count(), got: phi.len() });
    }
    for &w in phi {
        if w as usize >= g2.vertex_count() {
            return Err(PercError::VertexOutOfRange {
                vertex: w,
                vertex_count: g2.vertex_count(),
            });
        }
    }
    Ok(())
}

/// Verifies that the edges of `image` connect `s` to `t` within their own
/// induced subgraph (a path is the intended shape; any connecting set
/// supports the containment argument).
fn check_edge_image_connects(g2: &Graph, s: u32, t: u32, image: &[usize]) -> Result<(), ()> {
    if s == t {
        return Ok(());
    }
    // Compact the few touched vertices and run a union-find over them.
    let mut verts: Vec<u32> = image
        .iter()
        .flat_map(|&e| {
            let (a, b) = g2.edges()[e];
            [a, b]
        })
        .chain([s, t])
        .collect();
    verts.sort_unstable();
    verts.dedup();
    let slot = |v: u32| verts.binary_search(&v).expect("collected above");
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &e in image {
        let (a, b) = g2.edges()[e];
        let (ra, rb) = (find(&mut parent, slot(a)), find(&mut parent, slot(b)));
        parent[ra] = rb;
    }
    if find(&mut parent, slot(s)) == find(&mut parent, slot(t)) {
        Ok(())
    } else {
        Err(())
    }
}

/// Builds the edge map Φ for [`rough_embedding_coupling`] from shortest
/// paths: Φ({u, v}) is the edge set of one geodesic from φ(u) to φ(v),
/// chosen deterministically by BFS parent order (ties go to the smallest
/// vertex index). Collapsed edges (φ(u) = φ(v)) get an empty image, which
/// the coupling will reject; pick a finer map if that happens.
pub fn geodesic_edge_map(
    g1: &Graph,
    g2: &Graph,
    phi: &[u32],
) -> Result<Vec<Vec<usize>>, PercError> {
    check_vertex_map(g1, g2, phi)?;
    let mut result = Vec::with_capacity(g1.edge_count());
    let mut parent = vec![u32::MAX; g2.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    for &(u, v) in g1.edges() {
        let (s, t) = (phi[u as usize], phi[v as usize]);
        if s == t {
            result.push(Vec::new());
            continue;
        }
        parent.fill(u32::MAX);
        queue.clear();
        parent[s as usize] = s;
        queue.push_back(s);
        'bfs: while let Some(x) = queue.pop_front() {
            for &y in g2.neighbors(x) {
                if parent[y as usize] == u32::MAX {
                    parent[y as usize] = x;
                    if y == t {
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
        assert_ne!(parent[t as usize], u32::MAX, "image graph must be connected");
        let mut edges = Vec::new();
        let mut x = t;
        while x != s {
            let px = parent[x as usize];
            edges.push(g2.edge_index(px, x).expect("parent edge exists"));
            x = px;
        }
        edges.reverse();
        result.push(edges);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clusters;
    use perc_cayley::{cayley_graph, AbelianGroup, GeneratingSet};

    fn cycle(n: u64) -> Graph {
        let group = AbelianGroup::new(&[n]);
        let s = GeneratingSet::from_coords(&group, &[vec![1]]);
        cayley_graph(&group, &s).unwrap()
    }

    #[test]
    fn union_contains_first_layer_and_degenerates_at_zero() {
        let g = cycle(40);
        let (a, b) = union_coupling(&g, 0.3, 0.4, 5).unwrap();
        assert!(a.config.is_subset_of(&b.config));
        assert!((b.p - 0.58).abs() < 1e-12);
        let (a0, b0) = union_coupling(&g, 0.35, 0.0, 5).unwrap();
        assert_eq!(a0.config, b0.config);
    }

    #[test]
    fn identity_quotient_is_the_identity_on_configs() {
        let g = cycle(12);
        let orbit_map: Vec<u32> = (0..12).collect();
        let qc = quotient_coupling(&g, &orbit_map, 0.5, 9).unwrap();
        assert_eq!(qc.quotient.edge_count(), g.edge_count());
        assert_eq!(qc.max_fiber, 1);
        assert_eq!(qc.image, qc.base.config);
    }

    #[test]
    fn z6_to_z3_quotient_keeps_clusters_inside_image_clusters() {
        let g = cycle(6);
        let orbit_map: Vec<u32> = (0..6u32).map(|v| v % 3).collect();
        for seed in 0..200 {
            let qc = quotient_coupling(&g, &orbit_map, 0.45, seed).unwrap();
            assert_eq!(qc.max_fiber, 2);
            let base = clusters(&g, &qc.base).unwrap();
            let image = crate::ClusterForest::from_config(&qc.quotient, &qc.image).unwrap();
            for u in 0..6u32 {
                for v in 0..6u32 {
                    if base.same_cluster(u, v) {
                        assert!(image.same_cluster(
                            qc.projection[u as usize],
                            qc.projection[v as usize]
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_rejects_partial_maps() {
        let g = cycle(6);
        assert!(matches!(
            quotient_coupling(&g, &[0, 1, 2], 0.5, 0),
            Err(PercError::MapLengthMismatch { expected: 6, got: 3 })
        ));
    }

    #[test]
    fn identity_embedding_reproduces_one_sample() {
        let g = cycle(10);
        let phi: Vec<u32> = (0..10).collect();
        let phi_edges = geodesic_edge_map(&g, &g, &phi).unwrap();
        assert!(phi_edges.iter().enumerate().all(|(e, im)| im == &vec![e]));
        let rc = rough_embedding_coupling(&g, &g, &phi, &phi_edges, 0.6, 4).unwrap();
        assert_eq!(rc.constant, 1);
        assert_eq!(rc.domain, rc.image);
    }

    #[test]
    fn doubling_map_c4_into_c8() {
        let g1 = cycle(4);
        let g2 = cycle(8);
        let phi: Vec<u32> = (0..4u32).map(|v| 2 * v).collect();
        let phi_edges = geodesic_edge_map(&g1, &g2, &phi).unwrap();
        assert!(phi_edges.iter().all(|im| im.len() == 2));
        let rc = rough_embedding_coupling(&g1, &g2, &phi, &phi_edges, 0.9, 0).unwrap();
        assert_eq!(rc.constant, 2);
        // Containment on a sweep of seeds: clusters of the small cycle map
        // into clusters of the big one.
        for seed in 0..200 {
            let rc = rough_embedding_coupling(&g1, &g2, &phi, &phi_edges, 0.9, seed).unwrap();
            let c1 = crate::ClusterForest::from_config(&g1, &rc.domain).unwrap();
            let c2 = crate::ClusterForest::from_config(&g2, &rc.image).unwrap();
            for u in 0..4u32 {
                for v in 0..4u32 {
                    if c1.same_cluster(u, v) {
                        assert!(c2.same_cluster(phi[u as usize], phi[v as usize]));
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_rejects_broken_inputs() {
        let g1 = cycle(4);
        let g2 = cycle(8);
        let phi: Vec<u32> = (0..4u32).map(|v| 2 * v).collect();
        let good = geodesic_edge_map(&g1, &g2, &phi).unwrap();
        // Wrong vertex-map length.
        assert!(rough_embedding_coupling(&g1, &g2, &phi[..3], &good, 0.5, 0).is_err());
        // An edge image that doesn't connect its endpoints.
        let mut broken = good.clone();
        broken[0] = vec![good[1][0]];
        assert!(matches!(
            rough_embedding_coupling(&g1, &g2, &phi, &broken, 0.5, 0),
            Err(PercError::BrokenEdgePath { edge: 0 })
        ));
        // A collapsed edge: map everything to vertex 0.
        let collapse = vec![0u32; 4];
        let images = geodesic_edge_map(&g1, &g2, &collapse).unwrap();
        assert!(matches!(
            rough_embedding_coupling(&g1, &g2, &collapse, &images, 0.5, 0),
            Err(PercError::EmptyEdgeImage { edge: 0 })
        ));
    }
}
