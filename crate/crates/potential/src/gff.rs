//! The Gaussian free field with Dirichlet boundary, the random edge
//! environment it induces, and a nested Monte Carlo check of the
//! conductance lower bound
//!
//! ```text
//!     E_GFF[ P_{p(phi)}(A <-> B) ] >= 1 - exp(-C_eff(A <-> B) / 2).
//! ```

use crate::{
    check_disjoint_pair, effective_conductance, green_matrix, DirichletSystem, GreenOperator,
    PotentialError,
};
use nalgebra::{Cholesky, DMatrix, DVector};
use perc_graph::{Graph, VertexSet};
use perc_percolation::rng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Stream tags for coins derived inside this crate (the percolation crate
/// owns 0..=4).
const STREAM_GFF: u64 = 8;
const STREAM_ENV: u64 = 9;

/// One field configuration: `values[v] = phi_v`, exactly zero on the
/// boundary the Green operator was built with.
#[derive(Debug, Clone)]
pub struct GffSample {
    pub values: Vec<f64>,
    pub seed: u64,
}

fn cholesky_factor(green: &GreenOperator) -> Result<DMatrix<f64>, PotentialError> {
    Cholesky::new(green.matrix().clone())
        .map(|c| c.l())
        .ok_or(PotentialError::NotPositiveDefinite)
}

fn sample_with_factor(green: &GreenOperator, l: &DMatrix<f64>, seed: u64) -> GffSample {
    let n = green.system().interior_len();
    let mut chacha = ChaCha8Rng::seed_from_u64(seed);
    let z = DVector::from_fn(n, |_, _| chacha.sample::<f64, _>(StandardNormal));
    let interior_phi = l * z;
    let mut values = vec![0.0; green.graph().vertex_count()];
    for (i, &v) in green.system().interior().iter().enumerate() {
        values[v as usize] = interior_phi[i];
    }
    GffSample { values, seed }
}

/// Draws `phi = L z` with `L L^T = G_B` and `z` i.i.d. standard normals, so
/// the covariance of the interior values is exactly the Green matrix.
pub fn sample_gff(green: &GreenOperator, seed: u64) -> Result<GffSample, PotentialError> {
    let l = cholesky_factor(green)?;
    Ok(sample_with_factor(green, &l, seed))
}

/// Per-edge open probabilities `p(phi)_e = 1 - exp[-2 (phi_x+1)_+ (phi_y+1)_+]`,
/// indexed like `Graph::edges`.
#[derive(Debug, Clone)]
pub struct RandomEnvironment {
    pub probs: Vec<f64>,
}

pub fn random_environment(
    g: &Graph,
    phi: &GffSample,
) -> Result<RandomEnvironment, PotentialError> {
    if phi.values.len() != g.vertex_count() {
        return Err(PotentialError::FieldLengthMismatch {
            expected: g.vertex_count(),
            got: phi.values.len(),
        });
    }
    let probs = g
        .edges()
        .iter()
        .map(|&(x, y)| {
            let fx = (phi.values[x as usize] + 1.0).max(0.0);
            let fy = (phi.values[y as usize] + 1.0).max(0.0);
            -(-2.0 * fx * fy).exp_m1()
        })
        .collect();
    Ok(RandomEnvironment { probs })
}

/// Outcome of the nested Monte Carlo comparison against the conductance
/// bound.  The outer stderr is the sample spread of the per-field
/// connection probabilities; the inner stderr propagates the binomial noise
/// of the percolation trials through the outer average.
#[derive(Debug, Clone)]
pub struct GffBoundReport {
    pub conductance: f64,
    pub bound: f64,
    pub estimate: f64,
    pub stderr_outer: f64,
    pub stderr_inner: f64,
    pub gff_samples: u64,
    pub perc_trials: u64,
    pub seed: u64,
    pub pass: bool,
}

impl GffBoundReport {
    pub fn total_stderr(&self) -> f64 {
        self.stderr_outer.hypot(self.stderr_inner)
    }
}

struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.size.fill(1);
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Estimates `E_GFF[P_{p(phi)}(A <-> B)]` by nested Monte Carlo — outer loop
/// over GFF samples, inner loop over inhomogeneous percolation trials — and
/// compares it against `1 - exp(-C_eff/2)`.  Passes when the estimate stays
/// within two combined standard errors of the bound.
pub fn verify_gff_bound(
    g: &Graph,
    boundary: &VertexSet,
    a: &VertexSet,
    gff_samples: u64,
    perc_trials: u64,
    seed: u64,
) -> Result<GffBoundReport, PotentialError> {
    check_disjoint_pair(g, a, boundary, "boundary")?;
    if gff_samples == 0 || perc_trials == 0 {
        return Err(PotentialError::ZeroTrials);
    }
    let conductance = effective_conductance(g, a, boundary)?;
    let bound = -(-0.5 * conductance).exp_m1();

    let green = green_matrix(DirichletSystem::new(g, boundary.clone())?)?;
    let l = cholesky_factor(&green)?;
    let a_verts: Vec<u32> = a.iter().collect();
    let b_verts: Vec<u32> = boundary.iter().collect();
    let n = g.vertex_count();

    let per_field: Vec<f64> = (0..gff_samples)
        .into_par_iter()
        .map_init(
            || (Dsu::new(n), vec![0u32; n], 0u32),
            |(dsu, stamp, round), outer| {
                let phi =
                    sample_with_factor(&green, &l, rng::counter_hash(seed, STREAM_GFF, outer, 0));
                let env = random_environment(g, &phi).expect("field built for this graph");
                let mut hits = 0u64;
                for t in 0..perc_trials {
                    let trial = outer * perc_trials + t;
                    dsu.reset();
                    for (e, &(x, y)) in g.edges().iter().enumerate() {
                        if rng::bernoulli(seed, STREAM_ENV, trial, e as u64, env.probs[e]) {
                            dsu.union(x, y);
                        }
                    }
                    *round += 1;
                    for &x in &a_verts {
                        let r = dsu.find(x);
                        stamp[r as usize] = *round;
                    }
                    if b_verts.iter().any(|&v| stamp[dsu.find(v) as usize] == *round) {
                        hits += 1;
                    }
                }
                hits as f64 / perc_trials as f64
            },
        )
        .collect();

    let outer_n = gff_samples as f64;
    let estimate = per_field.iter().sum::<f64>() / outer_n;
    let stderr_outer = if per_field.len() < 2 {
        0.0
    } else {
        let ss: f64 = per_field.iter().map(|q| (q - estimate) * (q - estimate)).sum();
        (ss / (outer_n - 1.0)).sqrt() / outer_n.sqrt()
    };
    let inner_var: f64 =
        per_field.iter().map(|q| q * (1.0 - q) / perc_trials as f64).sum::<f64>();
    let stderr_inner = inner_var.sqrt() / outer_n;

    let total = stderr_outer.hypot(stderr_inner);
    Ok(GffBoundReport {
        conductance,
        bound,
        estimate,
        stderr_outer,
        stderr_inner,
        gff_samples,
        perc_trials,
        seed,
        pass: estimate >= bound - 2.0 * total,
    })
}
