//! Ghost fields: independent vertex marks used to weight cluster sizes.
//!
//! A ghost field of intensity h marks each vertex independently with
//! probability 1 − e^{−h}, so a fixed set A avoids all marks with
//! probability exactly e^{−h|A|}. Conditioning on the percolation
//! configuration gives the identity E_p[e^{−h|K_A|}] = P_{p,h}(A ↮ 𝒢),
//! which [`ghost_avoidance`] and [`ghost_connect`] estimate from the two
//! sides.

use perc_graph::{Graph, VertexSet};
use rayon::prelude::*;

use crate::rng::{counter_hash, uniform_f64, STREAM_GHOST};
use crate::{
    check_probability, check_trials, Dsu, McEstimate, MeanEstimate, PercError,
};

/// One sampled ghost field.
#[derive(Clone, Debug, PartialEq)]
pub struct GhostField {
    pub vertices: VertexSet,
    pub h: f64,
    pub seed: u64,
}

fn check_intensity(h: f64) -> Result<(), PercError> {
    if h.is_finite() && h >= 0.0 {
        Ok(())
    } else {
        Err(PercError::InvalidIntensity { h })
    }
}

#[inline]
fn marked(seed: u64, trial: u64, v: u32, h: f64) -> bool {
    uniform_f64(counter_hash(seed, STREAM_GHOST, trial, v as u64)) < -(-h).exp_m1()
}

/// Samples a ghost field of intensity `h`; h = 0 gives the empty set.
pub fn ghost_field(g: &Graph, h: f64, seed: u64) -> Result<GhostField, PercError> {
    check_intensity(h)?;
    let n = g.vertex_count();
    let mut vertices = VertexSet::new(n);
    for v in 0..n as u32 {
        if marked(seed, 0, v, h) {
            vertices.insert(v);
        }
    }
    Ok(GhostField { vertices, h, seed })
}

/// Estimates P_{p,h}(A ↔ 𝒢): some vertex of the ghost field lies in the
/// union of clusters meeting `a`. Percolation and ghost marks are sampled
/// independently within each trial.
pub fn ghost_connect(
    g: &Graph,
    p: f64,
    h: f64,
    a: &VertexSet,
    trials: u64,
    seed: u64,
) -> Result<McEstimate, PercError> {
    check_probability(p)?;
    check_intensity(h)?;
    check_trials(trials)?;
    check_set(g, a)?;
    let n = g.vertex_count();
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map_init(
            || (Dsu::new(n), vec![0u64; n], 0u64),
            |(dsu, stamp, round), t| {
                dsu.load_sampled(g, p, seed, t);
                *round += 1;
                for u in a.iter() {
                    stamp[dsu.find(u) as usize] = *round;
                }
                (0..n as u32).any(|v| {
                    stamp[dsu.find(v) as usize] == *round && marked(seed, t, v, h)
                }) as u64
            },
        )
        .sum();
    Ok(McEstimate::from_counts(successes, trials, seed))
}

/// Estimates E_p[e^{−h|K_A|}], where K_A is the union of clusters meeting
/// `a` — the percolation-only side of the ghost identity. The standard
/// error is the sample standard error of the bounded summand.
pub fn ghost_avoidance(
    g: &Graph,
    p: f64,
    h: f64,
    a: &VertexSet,
    trials: u64,
    seed: u64,
) -> Result<MeanEstimate, PercError> {
    check_probability(p)?;
    check_intensity(h)?;
    check_trials(trials)?;
    check_set(g, a)?;
    let n = g.vertex_count();
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map_init(
            || (Dsu::new(n), vec![0u64; n], 0u64),
            |(dsu, stamp, round), t| {
                dsu.load_sampled(g, p, seed, t);
                *round += 1;
                let mut cluster_total = 0u64;
                for u in a.iter() {
                    let root = dsu.find(u) as usize;
                    if stamp[root] != *round {
                        stamp[root] = *round;
                        cluster_total += dsu.size[root] as u64;
                    }
                }
                (-h * cluster_total as f64).exp()
            },
        )
        .collect();
    Ok(MeanEstimate::from_values(&values, seed))
}

fn check_set(g: &Graph, a: &VertexSet) -> Result<(), PercError> {
    if a.universe() != g.vertex_count() {
        return Err(PercError::UniverseMismatch {
            expected: g.vertex_count(),
            got: a.universe(),
        });
    }
    if a.is_empty() {
        return Err(PercError::EmptySet);
    }
    Ok(())
}
