//! Corpus-level checks: heuristic-vs-oracle hit rate, zero-violation scans
//! of the sparse-boundary and relative-growth inequalities on
//! vertex-transitive graphs, and BFS-vs-sumset growth agreement.

use perc_cayley::{
    cayley_graph, elongated_torus, heisenberg_cayley, word_ball, AbelianGroup, FiniteGroup,
    GeneratingSet,
};
use perc_graph::{Graph, VertexSet};
use perc_iso::{
    check_sparse_boundary, exhaustive_iso_profile, growth_profile, local_search_iso,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cycle(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    Graph::new(n, &edges).unwrap()
}

fn grid(w: usize, h: usize) -> Graph {
    let mut edges = Vec::new();
    let at = |x: usize, y: usize| (y * w + x) as u32;
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((at(x, y), at(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((at(x, y), at(x, y + 1)));
            }
        }
    }
    Graph::new(w * h, &edges).unwrap()
}

fn complete(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> =
        (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
    Graph::new(n, &edges).unwrap()
}

fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (0..a as u32)
        .flat_map(|u| (a as u32..(a + b) as u32).map(move |v| (u, v)))
        .collect();
    Graph::new(a + b, &edges).unwrap()
}

fn hypercube(bits: usize) -> Graph {
    let n = 1usize << bits;
    let edges: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (0..bits as u32).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::new(n, &edges).unwrap()
}

fn petersen() -> Graph {
    let mut edges: Vec<(u32, u32)> = (0..5u32)
        .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)])
        .collect();
    edges.sort_unstable();
    Graph::new(10, &edges).unwrap()
}

fn prism(n: usize) -> Graph {
    let mut edges: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|i| {
            let j = (i + 1) % n as u32;
            [(i, j), (i + n as u32, j + n as u32), (i, i + n as u32)]
        })
        .collect();
    edges.sort_unstable();
    Graph::new(2 * n, &edges).unwrap()
}

#[test]
fn local_search_matches_the_oracle_on_at_least_ninety_percent_of_the_corpus() {
    let corpus: Vec<(&str, Graph)> = vec![
        ("C_10", cycle(10)),
        ("C_13", cycle(13)),
        ("C_18", cycle(18)),
        ("grid 3x4", grid(3, 4)),
        ("grid 4x4", grid(4, 4)),
        ("grid 2x9", grid(2, 9)),
        ("K_6", complete(6)),
        ("K_3,4", complete_bipartite(3, 4)),
        ("Q_3", hypercube(3)),
        ("Petersen", petersen()),
        ("prism C_8", prism(8)),
        ("torus 6x3", elongated_torus(6, 3)),
    ];
    let d = 2.0;
    let mut matched = 0usize;
    for (idx, (name, g)) in corpus.iter().enumerate() {
        assert!(g.vertex_count() <= 18, "{name} exceeds the corpus cap");
        let exact = exhaustive_iso_profile(g, 18)
            .unwrap()
            .iter()
            .map(|e| e.min_boundary as f64 / (e.size as f64).sqrt())
            .fold(f64::INFINITY, f64::min);
        let found = local_search_iso(g, d, None, 1000 + idx as u64).unwrap();
        assert!(found.ratio >= exact - 1e-12, "{name}: heuristic beat the oracle");
        if (found.ratio - exact).abs() < 1e-9 {
            matched += 1;
        } else {
            println!("{name}: heuristic {} vs exact {exact}", found.ratio);
        }
    }
    println!("local search matched the oracle on {matched}/{} instances", corpus.len());
    assert!(matched * 10 >= corpus.len() * 9);
}

#[test]
fn sparse_boundary_inequality_has_no_violations_on_the_transitive_corpus() {
    // Exhaustive sweep at tiny scale: every subset of C_8 and C_10, two
    // (r, rho) pairs each.
    let mut checked = 0usize;
    for n in [8usize, 10] {
        let g = cycle(n);
        for mask in 0u64..1 << n {
            let a = VertexSet::from_indices(
                n,
                (0..n as u32).filter(|&v| mask >> v & 1 == 1),
            );
            for (r, rho) in [(1u32, 2.0 / 3.0), (2, 0.6)] {
                let report = check_sparse_boundary(&g, &a, r, rho).unwrap();
                if report.hypothesis_ok {
                    checked += 1;
                    assert!(
                        report.holds,
                        "violation on C_{n}, mask {mask:#x}, r={r}, rho={rho}"
                    );
                }
            }
        }
    }
    assert!(checked > 100, "the exhaustive scan must not be vacuous");

    // Randomized sweep at a larger scale on a vertex-transitive torus.
    let g = elongated_torus(24, 4);
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut checked = 0usize;
    for trial in 0..300 {
        let density = 0.05 + 0.25 * (trial % 10) as f64 / 10.0;
        let a = VertexSet::from_indices(
            n,
            (0..n as u32).filter(|_| rng.gen_bool(density)),
        );
        for (r, rho) in [(1u32, 0.75), (2, 0.6), (3, 0.5)] {
            let report = check_sparse_boundary(&g, &a, r, rho).unwrap();
            if report.hypothesis_ok {
                checked += 1;
                assert!(report.holds, "violation on the torus, trial {trial}, r={r}");
            }
        }
    }
    // Structured sparse sets keep the sweep honest even if the random ones
    // all fail the hypothesis.
    let stripes = VertexSet::from_indices(n, (0..n as u32).filter(|v| (v / 4) % 3 == 0));
    let report = check_sparse_boundary(&g, &stripes, 1, 0.75).unwrap();
    assert!(report.hypothesis_ok);
    assert!(report.holds);
    println!("sparse-boundary scan: {} hypothesis-satisfying instances, 0 violations", checked);
    assert!(checked > 50);
}

#[test]
fn relative_growth_ratio_bound_holds_for_all_scale_pairs() {
    let heisenberg = heisenberg_cayley(3).0;
    let corpus: Vec<(&str, Graph)> = vec![
        ("C_30", cycle(30)),
        ("C_101", cycle(101)),
        ("torus 20x4", elongated_torus(20, 4)),
        ("torus 100x4", elongated_torus(100, 4)),
        ("K_9", complete(9)),
        ("Q_6", hypercube(6)),
        ("Heisenberg(3)", heisenberg),
    ];
    for (name, g) in &corpus {
        let profile = growth_profile(g, 0).unwrap();
        for m1 in 1..=profile.diameter() {
            for m2 in m1..=profile.diameter() {
                // |B(v,m2)| / |B(v,m1)| >= m2 / (8 m1), checked in exact
                // integer arithmetic.
                assert!(
                    8 * m1 * profile.sizes[m2] >= m2 * profile.sizes[m1],
                    "{name}: ratio bound fails at m1={m1}, m2={m2}"
                );
            }
        }
    }
}

#[test]
fn bfs_growth_agrees_with_sumset_growth_on_cayley_graphs() {
    let z12x5 = AbelianGroup::new(&[12, 5]);
    let z8x8 = AbelianGroup::new(&[8, 8]);
    let cases: Vec<(AbelianGroup, Vec<Vec<i64>>)> = vec![
        (z12x5, vec![vec![1, 0], vec![0, 1]]),
        (z8x8, vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
    ];
    for (group, coords) in &cases {
        let gens = GeneratingSet::from_coords(group, coords);
        let g = cayley_graph(group, &gens).unwrap();
        let profile = growth_profile(&g, group.identity() as u32).unwrap();
        for r in 0..=profile.diameter() as u32 {
            assert_eq!(
                profile.sizes[r as usize],
                word_ball(group, &gens, r).len(),
                "radius {r}"
            );
        }
    }
}
