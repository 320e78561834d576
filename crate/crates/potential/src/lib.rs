//! Potential theory on finite graphs: Dirichlet Green functions, effective
//! conductance, and the Gaussian free field with its induced random edge
//! environment.
//!
//! Everything here works with the walk normalization
//!
//! ```text
//!     G_B(u, v) = 1(u, v not in B) / deg(v) * sum_n P_B^n(u, v),
//! ```
//!
//! the expected number of visits to `v` by a simple random walk from `u`
//! killed on hitting `B`, divided by `deg(v)`.  In matrix form the interior
//! block of `G_B` is exactly the inverse of the Dirichlet Laplacian (full
//! degrees on the diagonal, adjacency restricted to the interior), so we
//! compute it by a linear solve rather than series summation.

mod gff;

pub use gff::{
    random_environment, sample_gff, verify_gff_bound, GffBoundReport, GffSample,
    RandomEnvironment,
};

use nalgebra::{Cholesky, DMatrix, DVector};
use perc_graph::{Graph, VertexSet};
use thiserror::Error;

/// Dense factorizations up to this many interior vertices; conjugate
/// gradients above.
const DENSE_INTERIOR_LIMIT: usize = 4000;

/// Relative residual tolerance for the iterative solver.
const CG_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("boundary set is empty")]
    EmptyBoundary,
    #[error("{name} set is empty")]
    EmptySet { name: &'static str },
    #[error("the two vertex sets overlap")]
    OverlappingSets,
    #[error("vertex set universe {got} does not match graph order {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("graph must be connected for Dirichlet problems")]
    NotConnected,
    #[error("interior has {size} vertices; dense Green matrices stop at {limit}")]
    InteriorTooLarge { size: usize, limit: usize },
    #[error("system is not positive definite")]
    NotPositiveDefinite,
    #[error("iterative solve stalled at relative residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("field has {got} entries but the graph has {expected} vertices")]
    FieldLengthMismatch { expected: usize, got: usize },
    #[error("set B does not match the boundary the Green operator was built with")]
    BoundaryMismatch,
    #[error("sample or trial count must be positive")]
    ZeroTrials,
}

fn check_universe(g: &Graph, s: &VertexSet) -> Result<(), PotentialError> {
    if s.universe() != g.vertex_count() {
        return Err(PotentialError::UniverseMismatch {
            expected: g.vertex_count(),
            got: s.universe(),
        });
    }
    Ok(())
}

const NO_SLOT: u32 = u32::MAX;

/// A graph together with an absorbing boundary set and a dense indexing of
/// the interior, ready for Dirichlet solves.
#[derive(Debug)]
pub struct DirichletSystem<'a> {
    graph: &'a Graph,
    boundary: VertexSet,
    interior: Vec<u32>,
    slot: Vec<u32>,
}

impl<'a> DirichletSystem<'a> {
    pub fn new(graph: &'a Graph, boundary: VertexSet) -> Result<Self, PotentialError> {
        check_universe(graph, &boundary)?;
        if boundary.is_empty() {
            return Err(PotentialError::EmptyBoundary);
        }
        if !graph.is_connected() {
            return Err(PotentialError::NotConnected);
        }
        let mut interior = Vec::with_capacity(graph.vertex_count() - boundary.len());
        let mut slot = vec![NO_SLOT; graph.vertex_count()];
        for v in 0..graph.vertex_count() as u32 {
            if !boundary.contains(v) {
                slot[v as usize] = interior.len() as u32;
                interior.push(v);
            }
        }
        Ok(Self { graph, boundary, interior, slot })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn boundary(&self) -> &VertexSet {
        &self.boundary
    }

    /// Interior vertices in dense-index order.
    pub fn interior(&self) -> &[u32] {
        &self.interior
    }

    pub fn interior_len(&self) -> usize {
        self.interior.len()
    }

    pub fn slot_of(&self, v: u32) -> Option<usize> {
        let s = self.slot[v as usize];
        (s != NO_SLOT).then_some(s as usize)
    }

    /// Dirichlet Laplacian: full degree on the diagonal, minus the adjacency
    /// between interior vertices.
    fn laplacian(&self) -> DMatrix<f64> {
        let n = self.interior.len();
        let mut l = DMatrix::zeros(n, n);
        for (i, &v) in self.interior.iter().enumerate() {
            l[(i, i)] = self.graph.degree(v) as f64;
            for &w in self.graph.neighbors(v) {
                if let Some(j) = self.slot_of(w) {
                    l[(i, j)] = -1.0;
                }
            }
        }
        l
    }
}

/// The Green function of the walk killed on the boundary, as a dense
/// symmetric positive-definite matrix over the interior (zero-extended on
/// the boundary by `entry`).
#[derive(Debug)]
pub struct GreenOperator<'a> {
    system: DirichletSystem<'a>,
    matrix: DMatrix<f64>,
}

impl<'a> GreenOperator<'a> {
    pub fn system(&self) -> &DirichletSystem<'a> {
        &self.system
    }

    pub fn graph(&self) -> &'a Graph {
        self.system.graph
    }

    pub fn boundary(&self) -> &VertexSet {
        self.system.boundary()
    }

    /// The interior block, indexed like `system().interior()`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `G_B(u, v)`, zero when either vertex lies on the boundary.
    pub fn entry(&self, u: u32, v: u32) -> f64 {
        match (self.system.slot_of(u), self.system.slot_of(v)) {
            (Some(i), Some(j)) => self.matrix[(i, j)],
            _ => 0.0,
        }
    }
}

/// Solves the Dirichlet Laplacian for the full Green matrix.
///
/// With `L` the interior Laplacian, `G_B = L^{-1}`: the series
/// `sum_n P_B^n = (I - P)^{-1} = L^{-1} D` and the `1/deg(v)` normalization
/// cancels the degree factor, which is also why the result is symmetric.
pub fn green_matrix(system: DirichletSystem) -> Result<GreenOperator, PotentialError> {
    let n = system.interior_len();
    if n > DENSE_INTERIOR_LIMIT {
        return Err(PotentialError::InteriorTooLarge { size: n, limit: DENSE_INTERIOR_LIMIT });
    }
    let chol = Cholesky::new(system.laplacian()).ok_or(PotentialError::NotPositiveDefinite)?;
    let matrix = chol.inverse();
    Ok(GreenOperator { system, matrix })
}

/// Solves `L u = 0` on `V \ (A ∪ B)` with `u ≡ 1` on `A` and `u ≡ 0` on `B`,
/// returning the potential on every vertex.
pub fn harmonic_potential(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<Vec<f64>, PotentialError> {
    harmonic_potential_with_limit(g, a, b, DENSE_INTERIOR_LIMIT)
}

fn check_disjoint_pair(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    b_name: &'static str,
) -> Result<(), PotentialError> {
    check_universe(g, a)?;
    check_universe(g, b)?;
    if a.is_empty() {
        return Err(PotentialError::EmptySet { name: "source" });
    }
    if b.is_empty() {
        return Err(PotentialError::EmptySet { name: b_name });
    }
    if a.iter().any(|v| b.contains(v)) {
        return Err(PotentialError::OverlappingSets);
    }
    Ok(())
}

fn harmonic_potential_with_limit(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    dense_limit: usize,
) -> Result<Vec<f64>, PotentialError> {
    check_disjoint_pair(g, a, b, "target")?;
    if !g.is_connected() {
        return Err(PotentialError::NotConnected);
    }

    let mut u = vec![0.0; g.vertex_count()];
    for v in a.iter() {
        u[v as usize] = 1.0;
    }

    let mut free = VertexSet::new(g.vertex_count());
    for v in 0..g.vertex_count() as u32 {
        if !a.contains(v) && !b.contains(v) {
            free.insert(v);
        }
    }
    let system = DirichletSystem::new(g, free.complement())?;
    let n = system.interior_len();
    if n == 0 {
        return Ok(u);
    }

    // Right-hand side: each free vertex picks up one unit per neighbor in A.
    let mut rhs = vec![0.0; n];
    for (i, &v) in system.interior().iter().enumerate() {
        rhs[i] = g.neighbors(v).iter().filter(|&&w| a.contains(w)).count() as f64;
    }

    let sol = if n <= dense_limit {
        let chol =
            Cholesky::new(system.laplacian()).ok_or(PotentialError::NotPositiveDefinite)?;
        let x = chol.solve(&DVector::from_column_slice(&rhs));
        x.iter().copied().collect::<Vec<f64>>()
    } else {
        conjugate_gradient(&system, &rhs)?
    };
    for (i, &v) in system.interior().iter().enumerate() {
        u[v as usize] = sol[i];
    }
    Ok(u)
}

/// Jacobi-preconditioned conjugate gradients on the Dirichlet Laplacian,
/// matrix-free.  Used above `DENSE_INTERIOR_LIMIT` interior vertices.
fn conjugate_gradient(
    system: &DirichletSystem,
    rhs: &[f64],
) -> Result<Vec<f64>, PotentialError> {
    let n = rhs.len();
    let g = system.graph();
    let apply = |x: &[f64], out: &mut [f64]| {
        for (i, &v) in system.interior().iter().enumerate() {
            let mut acc = g.degree(v) as f64 * x[i];
            for &w in g.neighbors(v) {
                if let Some(j) = system.slot_of(w) {
                    acc -= x[j];
                }
            }
            out[i] = acc;
        }
    };
    let inv_diag: Vec<f64> =
        system.interior().iter().map(|&v| 1.0 / g.degree(v) as f64).collect();
    let norm_b = rhs.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_b == 0.0 {
        return Ok(vec![0.0; n]);
    }

    let mut x = vec![0.0; n];
    let mut r = rhs.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();

    let max_iters = 40 * n + 200;
    for _ in 0..max_iters {
        apply(&p, &mut ap);
        let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let norm_r = r.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm_r <= CG_TOLERANCE * norm_b {
            return Ok(x);
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_next: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    let norm_r = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    Err(PotentialError::NoConvergence { residual: norm_r / norm_b })
}

/// Effective conductance between `a` and `b` with unit edge conductances:
/// the total current leaving `a` under the harmonic potential, which equals
/// `sum_{x in a} deg(x) P_x(hit b before returning to a)`.
pub fn effective_conductance(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<f64, PotentialError> {
    let u = harmonic_potential(g, a, b)?;
    Ok(current_out_of(g, a, &u, 1.0))
}

/// Total current out of `s` when the potential there is `level`: the sum of
/// drops along edges leaving the set.
fn current_out_of(g: &Graph, s: &VertexSet, u: &[f64], level: f64) -> f64 {
    let mut total = 0.0;
    for v in s.iter() {
        for &w in g.neighbors(v) {
            if !s.contains(w) {
                total += level - u[w as usize];
            }
        }
    }
    total
}

/// Checks the two identities behind the conductance witness
/// `t_x = deg(x) P_x(hit B before returning to A)`:
///
/// * `sum_{y in A} t_y G_B(x, y) = 1` for every `x` in `A`, and
/// * `sum_x t_x = C_eff(A <-> B)`, matched against the current flowing into
///   `B` (the reverse hitting form).
///
/// Returns the largest absolute deviation across both.
pub fn witness_identity_check(
    green: &GreenOperator,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<f64, PotentialError> {
    let g = green.graph();
    check_disjoint_pair(g, a, b, "boundary")?;
    if b.len() != green.boundary().len() || b.iter().any(|v| !green.boundary().contains(v)) {
        return Err(PotentialError::BoundaryMismatch);
    }

    let u = harmonic_potential(g, a, b)?;
    let witness: Vec<(u32, f64)> = a
        .iter()
        .map(|x| {
            let t = g.neighbors(x).iter().map(|&w| 1.0 - u[w as usize]).sum::<f64>();
            (x, t)
        })
        .collect();

    let mut worst = 0.0_f64;
    for &(x, _) in &witness {
        let row: f64 = witness.iter().map(|&(y, t)| t * green.entry(x, y)).sum();
        worst = worst.max((row - 1.0).abs());
    }

    let total: f64 = witness.iter().map(|&(_, t)| t).sum();
    let into_b: f64 = b
        .iter()
        .map(|v| g.neighbors(v).iter().map(|&w| u[w as usize]).sum::<f64>())
        .sum();
    worst = worst.max((total - into_b).abs());
    Ok(worst)
}
