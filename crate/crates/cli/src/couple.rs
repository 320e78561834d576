//! Samplewise verification of the explicit coupling constructions: every
//! claimed containment is re-checked per sample from the raw edge
//! configurations, never trusted from the constructors.

use crate::CliError;
use perc_cayley::{box_graph, elongated_torus, AbelianGroup, FiniteGroup};
use perc_graph::Graph;
use perc_percolation::{
    geodesic_edge_map, quotient_coupling, rough_embedding_coupling, union_coupling,
    ClusterForest,
};
use serde::Serialize;
use std::collections::HashMap;

/// Outcome of a batch of coupling trials: `checks` individual containment
/// assertions across `samples` independent configurations.
#[derive(Debug, Clone, Serialize)]
pub struct CouplingReport {
    pub kind: String,
    pub samples: u64,
    pub checks: u64,
    pub violations: u64,
}

impl CouplingReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.checks > 0
    }
}

/// Monotone coupling: the `min(p1,p2)` configuration must be a subset of
/// the `max(p1,p2)` one on every sample.
pub fn union_trials(
    g: &Graph,
    p1: f64,
    p2: f64,
    samples: u64,
    seed: u64,
) -> Result<CouplingReport, CliError> {
    let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
    let mut violations = 0;
    for t in 0..samples {
        let (sparse, dense) = union_coupling(g, lo, hi, seed.wrapping_add(t))?;
        if !sparse.config.is_subset_of(&dense.config) {
            violations += 1;
        }
    }
    Ok(CouplingReport { kind: "union".into(), samples, checks: samples, violations })
}

/// Quotient coupling: the pushforward must equal the independently
/// recomputed one (an image edge is open iff some preimage is open), and
/// every open base edge must project into a single image cluster.
pub fn quotient_trials(
    g: &Graph,
    orbit_map: &[u32],
    p: f64,
    samples: u64,
    seed: u64,
) -> Result<CouplingReport, CliError> {
    let mut checks = 0;
    let mut violations = 0;
    for t in 0..samples {
        let qc = quotient_coupling(g, orbit_map, p, seed.wrapping_add(t))?;
        let image_edge: HashMap<(u32, u32), usize> = qc
            .quotient
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| ((u.min(v), u.max(v)), i))
            .collect();
        let mut recomputed = vec![false; qc.quotient.edge_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let (pu, pv) = (qc.projection[u as usize], qc.projection[v as usize]);
            if pu == pv {
                continue;
            }
            if qc.base.config.is_open(e) {
                recomputed[image_edge[&(pu.min(pv), pu.max(pv))]] = true;
            }
        }
        for (qe, &open) in recomputed.iter().enumerate() {
            checks += 1;
            if qc.image.is_open(qe) != open {
                violations += 1;
            }
        }
        let forest = ClusterForest::from_config(&qc.quotient, &qc.image)?;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if !qc.base.config.is_open(e) {
                continue;
            }
            checks += 1;
            let (pu, pv) = (qc.projection[u as usize], qc.projection[v as usize]);
            if !forest.same_cluster(pu, pv) {
                violations += 1;
            }
        }
    }
    Ok(CouplingReport { kind: "quotient".into(), samples, checks, violations })
}

/// Rough-embedding coupling: whenever a domain edge is open its whole
/// geodesic image must be open, so φ maps open clusters into open clusters.
pub fn embedding_trials(
    g1: &Graph,
    g2: &Graph,
    phi: &[u32],
    q: f64,
    samples: u64,
    seed: u64,
) -> Result<CouplingReport, CliError> {
    let phi_edges = geodesic_edge_map(g1, g2, phi)?;
    let mut checks = 0;
    let mut violations = 0;
    for t in 0..samples {
        let rc = rough_embedding_coupling(g1, g2, phi, &phi_edges, q, seed.wrapping_add(t))?;
        let forest = ClusterForest::from_config(g2, &rc.image)?;
        for (e, &(u, v)) in g1.edges().iter().enumerate() {
            if !rc.domain.is_open(e) {
                continue;
            }
            checks += 2;
            if !phi_edges[e].iter().all(|&e2| rc.image.is_open(e2)) {
                violations += 1;
            }
            if !forest.same_cluster(phi[u as usize], phi[v as usize]) {
                violations += 1;
            }
        }
    }
    Ok(CouplingReport { kind: "embed".into(), samples, checks, violations })
}

/// Element indices of the cyclic subgroup generated by `coords`.
pub fn cyclic_subgroup(group: &AbelianGroup, coords: &[i64]) -> Vec<usize> {
    let gen = group.index_of(&group.element(coords));
    let mut sub = vec![group.identity()];
    let mut cur = gen;
    while cur != group.identity() {
        sub.push(cur);
        cur = group.mul(cur, gen);
    }
    sub.sort_unstable();
    sub
}

/// The standard rough-embedding test instance: the box `B(r,r)` sits inside
/// the `(2r+1) × (2r+1)` torus under the identity coordinate map.
pub fn box_into_torus(radius: u32) -> (Graph, Graph, Vec<u32>) {
    let side = 2 * radius as u64 + 1;
    let b = box_graph(&[radius, radius]);
    let torus = elongated_torus(side, side);
    let phi = (0..b.graph().vertex_count() as u32).collect();
    (b.graph().clone(), torus, phi)
}
