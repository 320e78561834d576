//! Bernoulli bond percolation on finite graphs.
//!
//! A configuration keeps each edge independently with probability `p`.
//! This crate samples configurations reproducibly, clusters them with a
//! disjoint-set forest, runs Monte Carlo estimators for giant-cluster and
//! two-point events, searches for the finite-size critical probability
//! p_c(G, α, q) = inf { p : P_p(some cluster ≥ α|V|) ≥ q }, and exposes the
//! explicit couplings used to compare percolation across graphs: union of
//! configurations, quotient maps, rough embeddings, and the ghost field.
//!
//! All randomness is counter-based (see [`rng`]): a sample is a pure
//! function of `(graph, p, seed, trial)`, so Monte Carlo runs are
//! bit-reproducible regardless of worker count.

use perc_graph::{Graph, VertexSet};
use rayon::prelude::*;
use thiserror::Error;

pub mod couplings;
pub mod ghost;
pub mod rng;

pub use couplings::{
    geodesic_edge_map, quotient_coupling, rough_embedding_coupling, union_coupling,
    QuotientCoupling, RoughEmbeddingCoupling,
};
pub use ghost::{ghost_avoidance, ghost_connect, ghost_field, GhostField};

use rng::{bernoulli, mix, STREAM_PERC};

#[derive(Debug, Error, PartialEq)]
pub enum PercError {
    #[error("retention probability {p} outside [0, 1]")]
    InvalidProbability { p: f64 },
    #[error("fraction {value} for {name} outside (0, 1)")]
    InvalidFraction { name: &'static str, value: f64 },
    #[error("intensity {h} must be nonnegative and finite")]
    InvalidIntensity { h: f64 },
    #[error("tolerance {tol} must be positive")]
    InvalidTolerance { tol: f64 },
    #[error("trial count must be positive")]
    ZeroTrials,
    #[error("sample has {got} edge slots but the graph has {expected}")]
    SampleMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} outside graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: u32, vertex_count: usize },
    #[error("edge index {edge} outside graph with {edge_count} edges")]
    EdgeOutOfRange { edge: usize, edge_count: usize },
    #[error("vertex set over universe {got}, expected {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("map covers {got} items, expected {expected}")]
    MapLengthMismatch { expected: usize, got: usize },
    #[error("edge {edge} has an empty image; rough embeddings need a nonempty geodesic per edge")]
    EmptyEdgeImage { edge: usize },
    #[error("image of edge {edge} does not connect the images of its endpoints")]
    BrokenEdgePath { edge: usize },
    #[error(
        "no cluster can reach {required} vertices: the largest component has {max_component}"
    )]
    ThresholdUnattainable { required: usize, max_component: usize },
    #[error(
        "could not resolve p_c to the requested tolerance: bracket [{lo}, {hi}] stalled at a \
         probe whose CI straddles q; roughly {trials_needed} trials per probe would be needed"
    )]
    Unresolved { lo: f64, hi: f64, trials_needed: u64 },
    #[error("torus {n} x {m} too small for the cycle census (need n, m >= 3)")]
    TorusTooSmall { n: u64, m: u64 },
    #[error("power {theta} must lie in (0, 1]")]
    InvalidTheta { theta: f64 },
}

fn check_probability(p: f64) -> Result<(), PercError> {
    if p.is_finite() && (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(PercError::InvalidProbability { p })
    }
}

fn check_fraction(name: &'static str, value: f64) -> Result<(), PercError> {
    if value.is_finite() && 0.0 < value && value < 1.0 {
        Ok(())
    } else {
        Err(PercError::InvalidFraction { name, value })
    }
}

fn check_vertex(g: &Graph, v: u32) -> Result<(), PercError> {
    if (v as usize) < g.vertex_count() {
        Ok(())
    } else {
        Err(PercError::VertexOutOfRange { vertex: v, vertex_count: g.vertex_count() })
    }
}

fn check_trials(trials: u64) -> Result<(), PercError> {
    if trials == 0 {
        Err(PercError::ZeroTrials)
    } else {
        Ok(())
    }
}

/// Open/closed indicator over a graph's canonical edge indices, packed
/// into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeConfig {
    bits: Vec<u64>,
    edge_count: usize,
}

impl EdgeConfig {
    /// All-closed configuration with the given number of edge slots.
    pub fn closed(edge_count: usize) -> Self {
        EdgeConfig { bits: vec![0; edge_count.div_ceil(64)], edge_count }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_open(&self, edge: usize) -> bool {
        assert!(edge < self.edge_count, "edge index out of range");
        self.bits[edge / 64] >> (edge % 64) & 1 == 1
    }

    pub fn set_open(&mut self, edge: usize) {
        assert!(edge < self.edge_count, "edge index out of range");
        self.bits[edge / 64] |= 1 << (edge % 64);
    }

    pub fn open_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edgewise OR with another configuration over the same graph.
    pub fn union(&self, other: &EdgeConfig) -> EdgeConfig {
        assert_eq!(self.edge_count, other.edge_count, "mismatched edge counts");
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        EdgeConfig { bits, edge_count: self.edge_count }
    }

    /// True when every edge open here is open in `other` too.
    pub fn is_subset_of(&self, other: &EdgeConfig) -> bool {
        self.edge_count == other.edge_count
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn open_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_count).filter(move |&e| self.is_open(e))
    }
}

/// An i.i.d. Bernoulli(p) bond configuration together with the parameters
/// that reproduce it. The bit-vector is a pure function of
/// `(graph, p, seed, trial)`; `sample_config` fixes `trial = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PercSample {
    pub config: EdgeConfig,
    pub p: f64,
    pub seed: u64,
    pub trial: u64,
}

/// Monte Carlo estimate of an event probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// Binomial standard error sqrt(p̂ (1 − p̂) / trials).
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

impl McEstimate {
    fn from_counts(successes: u64, trials: u64, seed: u64) -> Self {
        let estimate = successes as f64 / trials as f64;
        let stderr = (estimate * (1.0 - estimate) / trials as f64).sqrt();
        McEstimate { estimate, stderr, trials, seed }
    }

    /// Symmetric normal-approximation interval at `z` standard errors.
    pub fn ci(&self, z: f64) -> (f64, f64) {
        (self.estimate - z * self.stderr, self.estimate + z * self.stderr)
    }
}

/// Monte Carlo mean of a bounded per-trial statistic (not necessarily an
/// indicator), with the sample standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

impl MeanEstimate {
    fn from_values(values: &[f64], seed: u64) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let stderr = if values.len() < 2 {
            0.0
        } else {
            let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
            (ss / (n - 1.0) / n).sqrt()
        };
        MeanEstimate { mean, stderr, trials: values.len() as u64, seed }
    }
}

/// Disjoint-set scratch used by every per-trial worker: union by size with
/// path halving, tracking the running maximum cluster size.
pub(crate) struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
    max: u32,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n as u32).collect(), size: vec![1; n], max: 1.min(n as u32) }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.size.fill(1);
        self.max = 1.min(self.parent.len() as u32);
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) =
            if self.size[ra as usize] >= self.size[rb as usize] { (ra, rb) } else { (rb, ra) };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.max = self.max.max(self.size[big as usize]);
    }

    pub(crate) fn max_cluster(&self) -> usize {
        self.max as usize
    }

    /// Populate from the open edges of a configuration.
    pub(crate) fn load(&mut self, g: &Graph, config: &EdgeConfig) {
        self.reset();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if config.is_open(e) {
                self.union(u, v);
            }
        }
    }

    /// Populate directly from per-edge coins without materializing bits.
    pub(crate) fn load_sampled(&mut self, g: &Graph, p: f64, seed: u64, trial: u64) {
        self.reset();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if bernoulli(seed, STREAM_PERC, trial, e as u64, p) {
                self.union(u, v);
            }
        }
    }
}

/// Finished clustering of one configuration: root pointers, compact
/// cluster ids, exact sizes, and the maximum size.
#[derive(Clone, Debug)]
pub struct ClusterForest {
    parent: Vec<u32>,
    cluster_id: Vec<u32>,
    sizes: Vec<u32>,
    max_cluster: usize,
}

impl ClusterForest {
    /// Clusters the open subgraph of `config` over `g`.
    pub fn from_config(g: &Graph, config: &EdgeConfig) -> Result<Self, PercError> {
        if config.edge_count() != g.edge_count() {
            return Err(PercError::SampleMismatch {
                expected: g.edge_count(),
                got: config.edge_count(),
            });
        }
        let n = g.vertex_count();
        let mut dsu = Dsu::new(n);
        dsu.load(g, config);
        let mut parent = vec![0u32; n];
        let mut cluster_id = vec![0u32; n];
        let mut sizes = Vec::new();
        // Compact ids in order of first appearance, so ids are stable under
        // re-runs and the vertex with the smallest index in a cluster fixes
        // its id.
        let mut id_of_root = vec![u32::MAX; n];
        for v in 0..n as u32 {
            let root = dsu.find(v);
            parent[v as usize] = root;
            let slot = &mut id_of_root[root as usize];
            if *slot == u32::MAX {
                *slot = sizes.len() as u32;
                sizes.push(dsu.size[root as usize]);
            }
            cluster_id[v as usize] = *slot;
        }
        let max_cluster = dsu.max_cluster();
        Ok(ClusterForest { parent, cluster_id, sizes, max_cluster })
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.sizes.len()
    }

    /// Compact cluster id of a vertex (ids run 0..cluster_count).
    pub fn cluster_of(&self, v: u32) -> u32 {
        self.cluster_id[v as usize]
    }

    /// Root vertex representing `v`'s cluster.
    pub fn root_of(&self, v: u32) -> u32 {
        self.parent[v as usize]
    }

    pub fn same_cluster(&self, u: u32, v: u32) -> bool {
        self.parent[u as usize] == self.parent[v as usize]
    }

    /// Cluster sizes indexed by cluster id; they sum to the vertex count.
    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn size_of(&self, v: u32) -> usize {
        self.sizes[self.cluster_id[v as usize] as usize] as usize
    }

    pub fn max_cluster(&self) -> usize {
        self.max_cluster
    }
}

/// Samples one Bernoulli(p) configuration; deterministic in all arguments.
pub fn sample_config(g: &Graph, p: f64, seed: u64) -> Result<PercSample, PercError> {
    sample_config_trial(g, p, seed, 0)
}

/// Trial-indexed variant used by the Monte Carlo drivers: trial `t` of a
/// run is the configuration `(graph, p, seed, t)`.
pub fn sample_config_trial(g: &Graph, p: f64, seed: u64, trial: u64) -> Result<PercSample, PercError> {
    check_probability(p)?;
    let mut config = EdgeConfig::closed(g.edge_count());
    for e in 0..g.edge_count() {
        if bernoulli(seed, STREAM_PERC, trial, e as u64, p) {
            config.set_open(e);
        }
    }
    Ok(PercSample { config, p, seed, trial })
}

/// Clusters a sample over its host graph.
pub fn clusters(g: &Graph, sample: &PercSample) -> Result<ClusterForest, PercError> {
    ClusterForest::from_config(g, &sample.config)
}

/// Number of vertices a cluster must reach to count as giant: ⌈α|V|⌉.
/// The tiny nudge keeps a product like 0.1 * 30 (= 3.0000000000000004 in
/// binary) from ceiling up to 4.
pub fn giant_threshold(vertex_count: usize, alpha: f64) -> usize {
    (alpha * vertex_count as f64 - 1e-9).ceil() as usize
}

/// Estimates P_p(some cluster has ≥ ⌈α|V|⌉ vertices) over independent
/// trials run in parallel.
pub fn mc_giant(
    g: &Graph,
    p: f64,
    alpha: f64,
    trials: u64,
    seed: u64,
) -> Result<McEstimate, PercError> {
    check_probability(p)?;
    check_fraction("alpha", alpha)?;
    check_trials(trials)?;
    let threshold = giant_threshold(g.vertex_count(), alpha);
    let successes = count_giant_trials(g, p, threshold, seed, 0..trials);
    Ok(McEstimate::from_counts(successes, trials, seed))
}

fn count_giant_trials(
    g: &Graph,
    p: f64,
    threshold: usize,
    seed: u64,
    trials: std::ops::Range<u64>,
) -> u64 {
    trials
        .into_par_iter()
        .map_init(
            || Dsu::new(g.vertex_count()),
            |dsu, t| {
                dsu.reset();
                for (e, &(u, v)) in g.edges().iter().enumerate() {
                    if bernoulli(seed, STREAM_PERC, t, e as u64, p) {
                        dsu.union(u, v);
                        if dsu.max_cluster() >= threshold {
                            return 1u64;
                        }
                    }
                }
                (dsu.max_cluster() >= threshold) as u64
            },
        )
        .sum()
}

/// Bracket produced by the stochastic bisection in [`estimate_pc`]: the
/// midpoint estimate, the final bracket, and Monte Carlo estimates of the
/// giant-cluster probability at both endpoints.
#[derive(Clone, Copy, Debug)]
pub struct PcEstimate {
    pub p: f64,
    pub lo: f64,
    pub hi: f64,
    pub at_lo: McEstimate,
    pub at_hi: McEstimate,
    pub probes: u32,
}

enum Probe {
    AboveQ,
    BelowQ,
    Ambiguous { estimate: f64 },
}

/// Estimates p_c(G, α, q) by bisection on p.
///
/// The giant-cluster probability is increasing in p, so bisection is
/// sound; the noise policy is: at each midpoint, run batches of `trials`
/// trials until the 3σ interval around the running estimate excludes `q`,
/// or a cap of 16 batches is hit. A capped probe aborts with
/// [`PercError::Unresolved`] reporting the bracket reached and the
/// per-probe trial count that the observed gap would require — widening
/// the answer honestly instead of guessing a side.
pub fn estimate_pc(
    g: &Graph,
    alpha: f64,
    q: f64,
    tol: f64,
    trials: u64,
    seed: u64,
) -> Result<PcEstimate, PercError> {
    check_fraction("alpha", alpha)?;
    check_fraction("q", q)?;
    check_trials(trials)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(PercError::InvalidTolerance { tol });
    }

    let threshold = giant_threshold(g.vertex_count(), alpha);
    // At p = 1 every component is fully open; if even that misses the
    // threshold, no p can reach it and inf over the empty set is undefined.
    let full = {
        let mut dsu = Dsu::new(g.vertex_count());
        for &(u, v) in g.edges() {
            dsu.union(u, v);
        }
        dsu.max_cluster()
    };
    if full < threshold {
        return Err(PercError::ThresholdUnattainable { required: threshold, max_component: full });
    }

    let cap_batches = 16u64;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut probes = 0u32;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        // Each probe owns a disjoint block of trial indices so that probes
        // are independent and the whole search is reproducible.
        let base = probes as u64 * cap_batches * trials;
        let mut successes = 0u64;
        let mut total = 0u64;
        let outcome = loop {
            let start = base + total;
            successes += count_giant_trials(g, mid, threshold, seed, start..start + trials);
            total += trials;
            let est = successes as f64 / total as f64;
            let sigma = (est * (1.0 - est) / total as f64).sqrt();
            if est - 3.0 * sigma > q {
                break Probe::AboveQ;
            }
            if est + 3.0 * sigma < q {
                break Probe::BelowQ;
            }
            if total >= cap_batches * trials {
                break Probe::Ambiguous { estimate: est };
            }
        };
        probes += 1;
        match outcome {
            Probe::AboveQ => hi = mid,
            Probe::BelowQ => lo = mid,
            Probe::Ambiguous { estimate } => {
                let gap = (estimate - q).abs();
                let trials_needed = if gap == 0.0 {
                    u64::MAX
                } else {
                    (9.0 * estimate * (1.0 - estimate) / (gap * gap)).ceil() as u64
                };
                return Err(PercError::Unresolved { lo, hi, trials_needed });
            }
        }
    }

    let at_lo = mc_giant(g, lo, alpha, trials, mix(seed ^ 1))?;
    let at_hi = mc_giant(g, hi, alpha, trials, mix(seed ^ 2))?;
    Ok(PcEstimate { p: 0.5 * (lo + hi), lo, hi, at_lo, at_hi, probes })
}

/// Estimates the two-point function P_p(x ↔ y).
pub fn two_point(
    g: &Graph,
    p: f64,
    x: u32,
    y: u32,
    trials: u64,
    seed: u64,
) -> Result<McEstimate, PercError> {
    check_probability(p)?;
    check_vertex(g, x)?;
    check_vertex(g, y)?;
    check_trials(trials)?;
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map_init(
            || Dsu::new(g.vertex_count()),
            |dsu, t| {
                dsu.load_sampled(g, p, seed, t);
                (dsu.find(x) == dsu.find(y)) as u64
            },
        )
        .sum();
    Ok(McEstimate::from_counts(successes, trials, seed))
}

/// Estimates P_p(A ↔ B): some open path joins a vertex of `a` to one of `b`.
pub fn set_to_set(
    g: &Graph,
    p: f64,
    a: &VertexSet,
    b: &VertexSet,
    trials: u64,
    seed: u64,
) -> Result<McEstimate, PercError> {
    check_probability(p)?;
    check_trials(trials)?;
    for s in [a, b] {
        if s.universe() != g.vertex_count() {
            return Err(PercError::UniverseMismatch {
                expected: g.vertex_count(),
                got: s.universe(),
            });
        }
        if s.is_empty() {
            return Err(PercError::EmptySet);
        }
    }
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map_init(
            || (Dsu::new(g.vertex_count()), vec![0u64; g.vertex_count()], 0u64),
            |(dsu, stamp, round), t| {
                dsu.load_sampled(g, p, seed, t);
                *round += 1;
                for u in a.iter() {
                    stamp[dsu.find(u) as usize] = *round;
                }
                b.iter().any(|v| stamp[dsu.find(v) as usize] == *round) as u64
            },
        )
        .sum();
    Ok(McEstimate::from_counts(successes, trials, seed))
}

/// Increasing events accepted by [`theta_power_check`].
#[derive(Clone, Copy, Debug)]
pub enum EventSpec {
    /// Some cluster reaches ⌈α|V|⌉ vertices.
    Giant { alpha: f64 },
    /// The two named vertices are connected.
    TwoPoint { x: u32, y: u32 },
}

/// Statistically verifies P_{p^θ}(A) ≥ P_p(A)^θ for an increasing event.
///
/// Both probabilities are estimated on the *same* trial coins, which
/// couples the configurations monotonely (p^θ ≥ p, so the first dominates
/// the second edgewise) and makes θ = 1 an exact equality. Returns whether
/// the inequality holds within two combined standard errors (delta method
/// on the right-hand side).
pub fn theta_power_check(
    g: &Graph,
    p: f64,
    theta: f64,
    event: EventSpec,
    trials: u64,
    seed: u64,
) -> Result<bool, PercError> {
    check_probability(p)?;
    check_trials(trials)?;
    if !(theta.is_finite() && 0.0 < theta && theta <= 1.0) {
        return Err(PercError::InvalidTheta { theta });
    }
    let threshold = match event {
        EventSpec::Giant { alpha } => {
            check_fraction("alpha", alpha)?;
            Some(giant_threshold(g.vertex_count(), alpha))
        }
        EventSpec::TwoPoint { x, y } => {
            check_vertex(g, x)?;
            check_vertex(g, y)?;
            None
        }
    };
    let p_low = p.powf(theta);
    let holds = |dsu: &mut Dsu, pr: f64, t: u64| -> bool {
        dsu.load_sampled(g, pr, seed, t);
        match event {
            EventSpec::Giant { .. } => dsu.max_cluster() >= threshold.unwrap(),
            EventSpec::TwoPoint { x, y } => dsu.find(x) == dsu.find(y),
        }
    };
    let (hits_low, hits_base): (u64, u64) = (0..trials)
        .into_par_iter()
        .map_init(
            || Dsu::new(g.vertex_count()),
            |dsu, t| (holds(dsu, p_low, t) as u64, holds(dsu, p, t) as u64),
        )
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    let est_low = hits_low as f64 / trials as f64;
    let est_base = hits_base as f64 / trials as f64;
    let sig_low = (est_low * (1.0 - est_low) / trials as f64).sqrt();
    let sig_base = (est_base * (1.0 - est_base) / trials as f64).sqrt();
    // d(x^θ)/dx = θ x^{θ-1}; at est_base = 0 the right-hand side is 0 and
    // the inequality is vacuous, so skip the (divergent) derivative there.
    let rhs_sigma = if est_base == 0.0 { 0.0 } else { theta * est_base.powf(theta - 1.0) * sig_base };
    let slack = 2.0 * (sig_low * sig_low + rhs_sigma * rhs_sigma).sqrt();
    Ok(est_low - est_base.powf(theta) >= -slack)
}

/// Census of fully blocked short cycles on the elongated torus
/// (Z/nZ) × (Z/mZ): for each of the ⌊n/2⌋ even columns, the m-cycle
/// through it is "blocked" when all 3m edges incident to it are closed.
/// Each such event has probability (1−p)^{3m} and the ⌊n/2⌋ edge sets are
/// disjoint, so the expected count is ⌊n/2⌋ (1−p)^{3m}. Returns the Monte
/// Carlo mean count with its sample standard error.
pub fn mc_blocked_cycles(
    n: u64,
    m: u64,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<MeanEstimate, PercError> {
    check_probability(p)?;
    check_trials(trials)?;
    if n < 3 || m < 3 {
        return Err(PercError::TorusTooSmall { n, m });
    }
    let g = perc_cayley::elongated_torus(n, m);
    // Vertex (x, j) of the torus sits at index x*m + j.
    let idx = |x: u64, j: u64| (x * m + j) as u32;
    let cycles: Vec<Vec<u64>> = (0..n / 2)
        .map(|i| {
            let x = 2 * i;
            let mut edges = Vec::with_capacity(3 * m as usize);
            for j in 0..m {
                let here = idx(x, j);
                for other in [
                    idx(x, (j + 1) % m),
                    idx((x + n - 1) % n, j),
                    idx((x + 1) % n, j),
                ] {
                    edges.push(g.edge_index(here, other).expect("torus edge") as u64);
                }
            }
            edges
        })
        .collect();
    let counts: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            cycles
                .iter()
                .filter(|edges| {
                    edges.iter().all(|&e| !bernoulli(seed, STREAM_PERC, t, e, p))
                })
                .count() as f64
        })
        .collect();
    Ok(MeanEstimate::from_values(&counts, seed))
}
