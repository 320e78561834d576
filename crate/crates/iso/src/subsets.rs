//! Subset-space searches for isoperimetric minimizers: exact enumeration
//! (the oracle), connected-only enumeration (faster, upper bound), and a
//! seeded annealing heuristic for graphs beyond exhaustive reach.

use crate::{check_dimension, IsoError, IsoWitness};
use perc_graph::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Bitmask arithmetic bounds enumeration at 63 vertices no matter what the
/// caller passes; the practical wall is much lower.
const MASK_LIMIT: usize = 63;

/// Suggested cap for [`exhaustive_iso_profile`]; 2^20 masks keep the scan
/// interactive.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

/// Minimum edge boundary over all sets of size `size`, with one witness.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoProfileEntry {
    pub size: usize,
    pub min_boundary: usize,
    pub witness: VertexSet,
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count() as u32)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn mask_boundary(mask: u64, nbr: &[u64]) -> u32 {
    let mut rem = mask;
    let mut cnt = 0;
    while rem != 0 {
        let v = rem.trailing_zeros() as usize;
        rem &= rem - 1;
        cnt += (nbr[v] & !mask).count_ones();
    }
    cnt
}

/// Elementwise merge of per-size champions, ties broken by smaller mask so
/// the result is independent of the parallel split.
fn merge_best(
    mut a: Vec<Option<(u32, u64)>>,
    b: Vec<Option<(u32, u64)>>,
) -> Vec<Option<(u32, u64)>> {
    for (slot, cand) in a.iter_mut().zip(b) {
        match (&slot, cand) {
            (None, c) => *slot = c,
            (Some(cur), Some(c)) if c < *cur => *slot = Some(c),
            _ => {}
        }
    }
    a
}

fn entries_from_best(
    n: usize,
    best: Vec<Option<(u32, u64)>>,
) -> Vec<IsoProfileEntry> {
    best.into_iter()
        .enumerate()
        .skip(1)
        .map(|(size, slot)| {
            let (min_boundary, mask) =
                slot.expect("every size up to |V|/2 is realized by some subset");
            let witness = VertexSet::from_indices(
                n,
                (0..n as u32).filter(|&v| mask >> v & 1 == 1),
            );
            IsoProfileEntry { size, min_boundary: min_boundary as usize, witness }
        })
        .collect()
}

fn check_enumeration_size(g: &Graph, limit: usize) -> Result<usize, IsoError> {
    let n = g.vertex_count();
    let cap = limit.min(MASK_LIMIT);
    if n > cap {
        return Err(IsoError::TooLarge { size: n, limit: cap });
    }
    Ok(n)
}

/// Exact per-size minimum edge boundary over *all* subsets of size
/// `1..=|V|/2`.  This is the oracle the heuristics are judged against;
/// minimizers at fixed size need not be connected, so nothing is pruned.
pub fn exhaustive_iso_profile(
    g: &Graph,
    limit: usize,
) -> Result<Vec<IsoProfileEntry>, IsoError> {
    let n = check_enumeration_size(g, limit)?;
    let half = n / 2;
    if half == 0 {
        return Ok(Vec::new());
    }
    let nbr = neighbor_masks(g);

    // Partition the mask space by high-bit prefix so workers scan disjoint
    // contiguous blocks.
    let prefix_bits = n.saturating_sub(14).min(8);
    let low_bits = n - prefix_bits;
    let best = (0..1u64 << prefix_bits)
        .into_par_iter()
        .map(|prefix| {
            let mut best: Vec<Option<(u32, u64)>> = vec![None; half + 1];
            for suffix in 0..1u64 << low_bits {
                let mask = prefix << low_bits | suffix;
                let size = mask.count_ones() as usize;
                if size == 0 || size > half {
                    continue;
                }
                let cand = (mask_boundary(mask, &nbr), mask);
                if best[size].map_or(true, |cur| cand < cur) {
                    best[size] = Some(cand);
                }
            }
            best
        })
        .reduce(|| vec![None; half + 1], merge_best);
    Ok(entries_from_best(n, best))
}

/// Per-size minimum over *connected* subsets only.  Enumeration visits each
/// connected set exactly once (roots are set minima, processed vertices
/// become forbidden), so it is polynomial-delay rather than 2^|V|; the
/// result upper-bounds [`exhaustive_iso_profile`] sizewise.
pub fn exhaustive_iso_profile_connected(
    g: &Graph,
    limit: usize,
) -> Result<Vec<IsoProfileEntry>, IsoError> {
    let n = check_enumeration_size(g, limit)?;
    let half = n / 2;
    if half == 0 {
        return Ok(Vec::new());
    }
    let nbr = neighbor_masks(g);

    fn extend(
        s: u64,
        cand: u64,
        mut forb: u64,
        half: usize,
        nbr: &[u64],
        best: &mut Vec<Option<(u32, u64)>>,
    ) {
        let size = s.count_ones() as usize;
        let entry = (mask_boundary(s, nbr), s);
        if best[size].map_or(true, |cur| entry < cur) {
            best[size] = Some(entry);
        }
        if size == half {
            return;
        }
        let mut cand = cand;
        while cand != 0 {
            let vbit = cand & cand.wrapping_neg();
            cand &= !vbit;
            let v = vbit.trailing_zeros() as usize;
            let s2 = s | vbit;
            extend(s2, (cand | nbr[v] & !forb) & !s2, forb, half, nbr, best);
            forb |= vbit;
        }
    }

    let best = (0..n)
        .into_par_iter()
        .map(|root| {
            let mut best = vec![None; half + 1];
            let forb = (1u64 << root) - 1;
            let s = 1u64 << root;
            extend(s, nbr[root] & !forb & !s, forb, half, &nbr, &mut best);
            best
        })
        .reduce(|| vec![None; half + 1], merge_best);
    Ok(entries_from_best(n, best))
}

struct SearchState<'a> {
    graph: &'a Graph,
    in_set: Vec<bool>,
    size: usize,
    boundary: i64,
}

impl<'a> SearchState<'a> {
    fn empty(graph: &'a Graph) -> Self {
        SearchState { graph, in_set: vec![false; graph.vertex_count()], size: 0, boundary: 0 }
    }

    fn reset(&mut self) {
        self.in_set.iter_mut().for_each(|b| *b = false);
        self.size = 0;
        self.boundary = 0;
    }

    /// Boundary change if `v` were flipped, without flipping it.
    fn flip_delta(&self, v: u32) -> i64 {
        let inside = self.graph.neighbors(v).iter().filter(|&&w| self.in_set[w as usize]).count()
            as i64;
        let delta = self.graph.degree(v) as i64 - 2 * inside;
        if self.in_set[v as usize] {
            -delta
        } else {
            delta
        }
    }

    fn flip(&mut self, v: u32) {
        self.boundary += self.flip_delta(v);
        let slot = &mut self.in_set[v as usize];
        self.size = if *slot { self.size - 1 } else { self.size + 1 };
        *slot = !*slot;
    }

    fn energy(&self, alpha: f64) -> f64 {
        ratio_energy(self.boundary, self.size, self.graph.vertex_count(), alpha)
    }
}

fn ratio_energy(boundary: i64, size: usize, n: usize, alpha: f64) -> f64 {
    let side = size.min(n - size);
    boundary as f64 / (side as f64).powf(alpha)
}

/// Seeded annealing plus greedy sweeps minimizing
/// `|boundary| / min{|A|, |V\A|}^{(d-1)/d}`, optionally confined to the ball
/// `B(o, r)` given as `ball_constraint = (o, r)`.  Returns the best witness
/// found — an upper bound on the true minimum, with the boundary recounted
/// from scratch at the end.
pub fn local_search_iso(
    g: &Graph,
    d: f64,
    ball_constraint: Option<(u32, u32)>,
    seed: u64,
) -> Result<IsoWitness, IsoError> {
    check_dimension(d)?;
    let n = g.vertex_count();
    if n < 2 {
        return Err(IsoError::DegenerateSubset);
    }
    let allowed: Vec<u32> = match ball_constraint {
        Some((o, r)) => g.ball(o, r)?.iter().collect(),
        None => (0..n as u32).collect(),
    };
    let alpha = (d - 1.0) / d;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SearchState::empty(g);
    let mut best: Option<(f64, Vec<u32>)> = None;

    let restarts = 6;
    let steps = (200 * allowed.len()).clamp(2_000, 60_000);
    let cooling = (1e-3f64 / 1.0).powf(1.0 / steps as f64);

    for restart in 0..restarts {
        state.reset();
        let start_size = if restart == 0 {
            1
        } else {
            rng.gen_range(1..=(allowed.len() / 2).max(1))
        };
        for &v in allowed.choose_multiple(&mut rng, start_size) {
            state.flip(v);
        }

        // Annealing phase: single-vertex flips, never emptying or filling
        // the whole vertex set.
        let mut temp = 1.0f64;
        for _ in 0..steps {
            let v = *allowed.choose(&mut rng).expect("allowed region is nonempty");
            let next_size = if state.in_set[v as usize] { state.size - 1 } else { state.size + 1 };
            if next_size == 0 || next_size == n {
                temp *= cooling;
                continue;
            }
            let cur = state.energy(alpha);
            let next =
                ratio_energy(state.boundary + state.flip_delta(v), next_size, n, alpha);
            if next <= cur || rng.gen::<f64>() < ((cur - next) / temp).exp() {
                state.flip(v);
            }
            temp *= cooling;
        }

        // Greedy sweeps until no single flip improves the ratio.
        loop {
            let mut improved = false;
            for &v in &allowed {
                let next_size =
                    if state.in_set[v as usize] { state.size - 1 } else { state.size + 1 };
                if next_size == 0 || next_size == n {
                    continue;
                }
                let next =
                    ratio_energy(state.boundary + state.flip_delta(v), next_size, n, alpha);
                if next < state.energy(alpha) - 1e-12 {
                    state.flip(v);
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }

        let energy = state.energy(alpha);
        if best.as_ref().map_or(true, |(e, _)| energy < *e) {
            let members = (0..n as u32).filter(|&v| state.in_set[v as usize]).collect();
            best = Some((energy, members));
        }
    }

    let (_, members) = best.expect("at least one restart ran");
    IsoWitness::evaluate(g, VertexSet::from_indices(n, members), d)
}
