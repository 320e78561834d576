//! Covering constructions: the locally-sparse boundary inequality, greedy
//! maximal ball packings with covering certificates, and disjoint balls
//! along a geodesic.

use crate::IsoError;
use perc_graph::{Graph, VertexSet, UNREACHABLE};
use std::collections::VecDeque;

/// Both sides of the sparse-boundary inequality
/// `|∂_V^+ A| >= (1 - rho) |A| / (6r)`, together with the hypothesis scan.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseBoundaryReport {
    /// Whether `|A ∩ B(x,r)| <= rho |B(x,r)|` held at every vertex.
    pub hypothesis_ok: bool,
    /// First vertex violating the hypothesis, when one exists.
    pub failing_vertex: Option<u32>,
    /// Exact `|∂_V^+ A|`.
    pub boundary: usize,
    /// `(1 - rho) |A| / (6r)`.
    pub bound: f64,
    /// `boundary >= bound`; only meaningful on vertex-transitive inputs
    /// with `hypothesis_ok`.
    pub holds: bool,
}

/// Checks the local-sparsity hypothesis by scanning every ball `B(x, r)`
/// exactly, then compares the external vertex boundary of `A` against the
/// inequality's right-hand side.
pub fn check_sparse_boundary(
    g: &Graph,
    a: &VertexSet,
    r: u32,
    rho: f64,
) -> Result<SparseBoundaryReport, IsoError> {
    if a.universe() != g.vertex_count() {
        return Err(IsoError::UniverseMismatch {
            expected: g.vertex_count(),
            got: a.universe(),
        });
    }
    if r == 0 {
        return Err(IsoError::RadiusOutOfRange { n: 0, max: g.vertex_count() });
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(IsoError::BadConstant { c: rho });
    }

    let mut failing_vertex = None;
    for x in 0..g.vertex_count() as u32 {
        let ball = g.ball(x, r)?;
        let inside = ball.iter().filter(|&v| a.contains(v)).count();
        if inside as f64 > rho * ball.len() as f64 {
            failing_vertex = Some(x);
            break;
        }
    }
    let boundary = g.vertex_boundary(a).len();
    let bound = (1.0 - rho) * a.len() as f64 / (6.0 * r as f64);
    Ok(SparseBoundaryReport {
        hypothesis_ok: failing_vertex.is_none(),
        failing_vertex,
        boundary,
        bound,
        holds: boundary as f64 >= bound,
    })
}

/// A maximal family of pairwise-disjoint balls `B(x, m)` with centers in a
/// set `A`, plus the exactly verified certificate `A ⊆ ∪ B(x, 2m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetCover {
    pub centers: Vec<u32>,
    pub radius: u32,
    pub covered: bool,
}

/// Greedy maximal packing, scanning `A` in ascending order: a vertex joins
/// the net when its `m`-ball misses every chosen ball, i.e. when it sits at
/// distance `> 2m` from all previous centers.  Maximality forces the
/// `2m`-balls of the net to cover `A`; the certificate recomputes that
/// cover from scratch.
pub fn net_cover(g: &Graph, a: &VertexSet, m: u32) -> Result<NetCover, IsoError> {
    if a.universe() != g.vertex_count() {
        return Err(IsoError::UniverseMismatch {
            expected: g.vertex_count(),
            got: a.universe(),
        });
    }
    let n = g.vertex_count();
    // blocked[v] = some chosen center is within distance 2m of v.
    let mut blocked = vec![false; n];
    let mut centers = Vec::new();
    let mut queue = VecDeque::new();
    let mut depth = vec![0u32; n];
    for x in a.iter() {
        if blocked[x as usize] {
            continue;
        }
        centers.push(x);
        queue.clear();
        queue.push_back(x);
        blocked[x as usize] = true;
        depth[x as usize] = 0;
        while let Some(u) = queue.pop_front() {
            if depth[u as usize] == 2 * m {
                continue;
            }
            for &w in g.neighbors(u) {
                if !blocked[w as usize] {
                    blocked[w as usize] = true;
                    depth[w as usize] = depth[u as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    // Certificate: multi-source BFS from the net out to depth 2m must
    // reach all of A.
    let mut reached = vec![UNREACHABLE; n];
    queue.clear();
    for &x in &centers {
        reached[x as usize] = 0;
        queue.push_back(x);
    }
    while let Some(u) = queue.pop_front() {
        if reached[u as usize] == 2 * m {
            continue;
        }
        for &w in g.neighbors(u) {
            if reached[w as usize] == UNREACHABLE {
                reached[w as usize] = reached[u as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    let covered = a.iter().all(|v| reached[v as usize] != UNREACHABLE);
    Ok(NetCover { centers, radius: m, covered })
}

/// Pairwise-disjoint balls of radius `m` spaced `2m+1` apart along a
/// geodesic, all inside `B(v, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DisjointBalls {
    pub centers: Vec<u32>,
    pub radius: u32,
    /// The geodesic the centers were taken from, starting at `v`.
    pub geodesic: Vec<u32>,
    /// The guaranteed lower bound `(n - 2m) / (4m + 2)` on the count.
    pub count_bound: f64,
}

/// Walks a geodesic of length `ceil(n/2)` from `v` (BFS-tree path towards a
/// farthest vertex, ties by smallest index) and takes ball centers every
/// `2m+1` steps.  Disjointness, containment in `B(v,n)`, and the count
/// bound are all verified exactly before returning.
pub fn disjoint_balls_on_geodesic(
    g: &Graph,
    v: u32,
    n: u32,
    m: u32,
) -> Result<DisjointBalls, IsoError> {
    if n == 0 {
        return Err(IsoError::RadiusOutOfRange { n: 0, max: g.vertex_count() });
    }
    if 2 * m > n {
        return Err(IsoError::ScaleTooLarge { m: m as usize, max: n as usize / 2 });
    }
    let diam = g.diameter()? as usize;
    if diam < n as usize {
        return Err(IsoError::DiameterTooSmall { diam, n: n as usize });
    }

    // ecc(v) >= diam/2 >= n/2, so a geodesic of length k always exists.
    let dist = g.bfs_distances(v)?;
    let k = n.div_ceil(2);
    let farthest = (0..g.vertex_count() as u32)
        .max_by_key(|&u| (dist[u as usize], std::cmp::Reverse(u)))
        .expect("nonempty graph");
    debug_assert!(dist[farthest as usize] >= k);

    // Parent-pointer descent from the far end; at each step the smallest
    // neighbor one level closer to v keeps the path deterministic.
    let mut path_back = vec![farthest];
    let mut cur = farthest;
    while dist[cur as usize] > 0 {
        let parent = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dist[w as usize] + 1 == dist[cur as usize])
            .expect("BFS layers are connected");
        path_back.push(parent);
        cur = parent;
    }
    path_back.reverse();
    let geodesic: Vec<u32> = path_back.into_iter().take(k as usize + 1).collect();

    let step = 2 * m + 1;
    let last_index = (k - m) / step;
    let centers: Vec<u32> =
        (0..=last_index).map(|i| geodesic[(step * i) as usize]).collect();
    let count_bound = (n as f64 - 2.0 * m as f64) / (4.0 * m as f64 + 2.0);
    assert!(centers.len() as f64 >= count_bound, "construction lost the count bound");

    // Verify the claimed geometry rather than trusting the arithmetic:
    // balls pairwise disjoint and contained in B(v, n).
    let outer = g.ball(v, n)?;
    let mut seen = VertexSet::new(g.vertex_count());
    for &x in &centers {
        for w in g.ball(x, m)?.iter() {
            assert!(outer.contains(w), "ball at {x} escapes B({v},{n})");
            assert!(seen.insert(w), "balls overlap at vertex {w}");
        }
    }
    Ok(DisjointBalls { centers, radius: m, geodesic, count_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn alternating_cycle_satisfies_the_sparse_inequality() {
        // Every other vertex of C_18: each B(x,1) has 3 vertices and meets
        // A in at most 2, so rho = 2/3 works; the external boundary is all
        // of V \ A.
        let g = cycle(18);
        let a = VertexSet::from_indices(18, (0..18).step_by(2).map(|v| v as u32));
        let report = check_sparse_boundary(&g, &a, 1, 2.0 / 3.0).unwrap();
        assert!(report.hypothesis_ok);
        assert_eq!(report.failing_vertex, None);
        assert_eq!(report.boundary, 9);
        assert!((report.bound - (1.0 / 3.0) * 9.0 / 6.0).abs() < 1e-12);
        assert!(report.holds);
    }

    #[test]
    fn dense_balls_fail_the_hypothesis_with_a_witness() {
        let g = cycle(12);
        let a = VertexSet::from_indices(12, [0u32, 1, 2, 3]);
        let report = check_sparse_boundary(&g, &a, 1, 2.0 / 3.0).unwrap();
        assert!(!report.hypothesis_ok);
        // Vertex 1's ball {0,1,2} lies entirely inside A; 0's ball {11,0,1}
        // is only 2/3 inside, so the first witness is 1.
        assert_eq!(report.failing_vertex, Some(1));
    }

    #[test]
    fn empty_sets_hold_vacuously() {
        let g = cycle(6);
        let report = check_sparse_boundary(&g, &VertexSet::new(6), 1, 0.5).unwrap();
        assert!(report.hypothesis_ok);
        assert_eq!(report.boundary, 0);
        assert_eq!(report.bound, 0.0);
        assert!(report.holds);
    }

    #[test]
    fn sparse_boundary_validates_inputs() {
        let g = cycle(6);
        let a = VertexSet::new(6);
        assert!(matches!(
            check_sparse_boundary(&g, &VertexSet::new(5), 1, 0.5).unwrap_err(),
            IsoError::UniverseMismatch { .. }
        ));
        assert!(matches!(
            check_sparse_boundary(&g, &a, 0, 0.5).unwrap_err(),
            IsoError::RadiusOutOfRange { .. }
        ));
        assert!(matches!(
            check_sparse_boundary(&g, &a, 1, 1.5).unwrap_err(),
            IsoError::BadConstant { .. }
        ));
    }

    #[test]
    fn net_cover_on_the_twenty_cycle() {
        let g = cycle(20);
        let cover = net_cover(&g, &VertexSet::full(20), 2).unwrap();
        assert_eq!(cover.centers, vec![0, 5, 10, 15]);
        assert!(cover.covered);
    }

    #[test]
    fn net_cover_degenerate_radii() {
        let g = cycle(20);
        let a = VertexSet::full(20);
        // m >= diam: the first vertex blocks everything.
        let whole = net_cover(&g, &a, 10).unwrap();
        assert_eq!(whole.centers, vec![0]);
        assert!(whole.covered);
        // m = 0: the net is A itself.
        let all = net_cover(&g, &a, 0).unwrap();
        assert_eq!(all.centers.len(), 20);
        assert!(all.covered);
    }

    #[test]
    fn net_cover_of_a_scattered_subset() {
        let g = path(30);
        let a = VertexSet::from_indices(30, [2u32, 3, 11, 12, 13, 27]);
        let cover = net_cover(&g, &a, 1).unwrap();
        // Centers must come from A, be pairwise > 2m apart, and 2m-cover A.
        assert!(cover.covered);
        assert!(cover.centers.iter().all(|&x| a.contains(x)));
        for (i, &x) in cover.centers.iter().enumerate() {
            for &y in &cover.centers[i + 1..] {
                assert!(x.abs_diff(y) > 2);
            }
        }
    }

    #[test]
    fn geodesic_balls_on_a_long_path() {
        // From the end of P_100 with n=50, m=2: geodesic length 25, centers
        // every 5 steps up to index (25-2)/5 = 4, so 5 balls against the
        // bound (50-4)/10 = 4.6.
        let g = path(100);
        let balls = disjoint_balls_on_geodesic(&g, 0, 50, 2).unwrap();
        assert_eq!(balls.centers, vec![0, 5, 10, 15, 20]);
        assert!((balls.count_bound - 4.6).abs() < 1e-12);
        assert_eq!(balls.geodesic.len(), 26);
    }

    #[test]
    fn geodesic_balls_on_a_long_cycle() {
        // C_200 with n=80, m=5: k=40, centers every 11 steps, indices
        // 0..=(40-5)/11 = 3, so 4 balls against the bound 70/22.
        let g = cycle(200);
        let balls = disjoint_balls_on_geodesic(&g, 7, 80, 5).unwrap();
        assert_eq!(balls.centers.len(), 4);
        assert!((balls.count_bound - 70.0 / 22.0).abs() < 1e-12);
    }

    #[test]
    fn zero_radius_balls_are_geodesic_singletons() {
        let g = path(40);
        let balls = disjoint_balls_on_geodesic(&g, 0, 20, 0).unwrap();
        assert_eq!(balls.centers.len(), 11); // ceil(20/2) + 1 singletons
        assert!(balls.centers.len() as f64 >= balls.count_bound);
        assert!((balls.count_bound - 10.0).abs() < 1e-12);
    }

    #[test]
    fn geodesic_balls_validate_scales() {
        let g = path(10);
        assert!(matches!(
            disjoint_balls_on_geodesic(&g, 0, 30, 1).unwrap_err(),
            IsoError::DiameterTooSmall { diam: 9, n: 30 }
        ));
        assert!(matches!(
            disjoint_balls_on_geodesic(&g, 0, 6, 4).unwrap_err(),
            IsoError::ScaleTooLarge { m: 4, max: 3 }
        ));
        assert!(matches!(
            disjoint_balls_on_geodesic(&g, 0, 0, 0).unwrap_err(),
            IsoError::RadiusOutOfRange { n: 0, .. }
        ));
    }
}
