//! Isoperimetry on finite graphs: growth profiles, scale detection, the
//! Coulhon–Saloff-Coste bound, exact and heuristic isoperimetric profiles,
//! locally-sparse boundary checks, and covering constructions.

mod covers;
mod subsets;

pub use covers::{
    check_sparse_boundary, disjoint_balls_on_geodesic, net_cover, DisjointBalls, NetCover,
    SparseBoundaryReport,
};
pub use subsets::{
    exhaustive_iso_profile, exhaustive_iso_profile_connected, local_search_iso,
    IsoProfileEntry, DEFAULT_ENUMERATION_LIMIT,
};

use perc_graph::{Graph, GraphError, VertexSet, UNREACHABLE};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsoError {
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: u32, vertex_count: usize },
    #[error("vertex set universe {got} does not match graph order {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("dimension must satisfy d >= 1, got {d}")]
    BadDimension { d: f64 },
    #[error("constant must be positive and finite, got {c}")]
    BadConstant { c: f64 },
    #[error("radius {n} outside 1..={max}")]
    RadiusOutOfRange { n: usize, max: usize },
    #[error("set size {setsize} exceeds |B(o,n)|/2 = {max}")]
    SetSizeOutOfRange { setsize: usize, max: f64 },
    #[error("subset side must have between 1 and |V|-1 vertices")]
    DegenerateSubset,
    #[error("graph has {size} vertices, exhaustive enumeration stops at {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("diameter {diam} is smaller than the requested scale {n}")]
    DiameterTooSmall { diam: usize, n: usize },
    #[error("ball radius {m} exceeds n/2 = {max}")]
    ScaleTooLarge { m: usize, max: usize },
}

impl From<GraphError> for IsoError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::VertexOutOfRange { vertex, vertex_count } => {
                IsoError::VertexOutOfRange { vertex, vertex_count }
            }
            GraphError::Disconnected => IsoError::Disconnected,
        }
    }
}

fn check_dimension(d: f64) -> Result<(), IsoError> {
    if !(d >= 1.0) || !d.is_finite() {
        return Err(IsoError::BadDimension { d });
    }
    Ok(())
}

/// Ball sizes `|B(o, n)|` for `n = 0..=ecc(o)`; on the vertex-transitive
/// graphs this is built for, the eccentricity of any vertex is the diameter.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthProfile {
    pub origin: u32,
    pub sizes: Vec<usize>,
}

impl GrowthProfile {
    /// Largest radius in the profile (the origin's eccentricity).
    pub fn diameter(&self) -> usize {
        self.sizes.len() - 1
    }

    /// `|B(o, n)|`, saturating at `|V|` beyond the last radius.
    pub fn ball_size(&self, n: usize) -> usize {
        self.sizes[n.min(self.sizes.len() - 1)]
    }
}

/// Exact growth profile from a single BFS.
pub fn growth_profile(g: &Graph, o: u32) -> Result<GrowthProfile, IsoError> {
    let dist = g.bfs_distances(o)?;
    let mut ecc = 0u32;
    for &d in &dist {
        if d == UNREACHABLE {
            return Err(IsoError::Disconnected);
        }
        ecc = ecc.max(d);
    }
    let mut sizes = vec![0usize; ecc as usize + 1];
    for &d in &dist {
        sizes[d as usize] += 1;
    }
    for n in 1..sizes.len() {
        sizes[n] += sizes[n - 1];
    }
    Ok(GrowthProfile { origin: o, sizes })
}

/// The last scale at which the ball still has polynomial volume:
/// `max{n <= diam : |B(o,n)| >= c n^d}`, or 0 when no radius qualifies.
pub fn scale_detect(profile: &GrowthProfile, d: f64, c: f64) -> Result<usize, IsoError> {
    check_dimension(d)?;
    if !(c > 0.0) || !c.is_finite() {
        return Err(IsoError::BadConstant { c });
    }
    for n in (1..=profile.diameter()).rev() {
        if profile.sizes[n] as f64 >= c * (n as f64).powf(d) {
            return Ok(n);
        }
    }
    Ok(0)
}

/// The Coulhon–Saloff-Coste style boundary lower bound
/// `c_d * min{1, |B(o,n)|^{1/d} / n} * setsize^{(d-1)/d}`, with an explicit
/// normalization constant.
pub fn csc_bound_with(
    profile: &GrowthProfile,
    d: f64,
    n: usize,
    setsize: usize,
    c_d: f64,
) -> Result<f64, IsoError> {
    check_dimension(d)?;
    if n < 1 || n > profile.diameter() {
        return Err(IsoError::RadiusOutOfRange { n, max: profile.diameter() });
    }
    let ball = profile.sizes[n] as f64;
    if setsize as f64 > ball / 2.0 {
        return Err(IsoError::SetSizeOutOfRange { setsize, max: ball / 2.0 });
    }
    let shape = (ball.powf(1.0 / d) / n as f64).min(1.0);
    Ok(c_d * shape * (setsize as f64).powf((d - 1.0) / d))
}

/// [`csc_bound_with`] at the display normalization `c_d = 1`.  The paper's
/// actual constant is non-constructive, so this is for profile plots and
/// never claimed as the theorem's constant.
pub fn csc_bound(
    profile: &GrowthProfile,
    d: f64,
    n: usize,
    setsize: usize,
) -> Result<f64, IsoError> {
    csc_bound_with(profile, d, n, setsize, 1.0)
}

/// A candidate isoperimetric set with its exact edge boundary and the ratio
/// `|boundary| / min{|A|, |V\A|}^{(d-1)/d}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoWitness {
    pub set: VertexSet,
    pub boundary: usize,
    pub ratio: f64,
}

impl IsoWitness {
    /// Counts the boundary exactly and evaluates the ratio at dimension `d`.
    pub fn evaluate(g: &Graph, set: VertexSet, d: f64) -> Result<Self, IsoError> {
        check_dimension(d)?;
        if set.universe() != g.vertex_count() {
            return Err(IsoError::UniverseMismatch {
                expected: g.vertex_count(),
                got: set.universe(),
            });
        }
        let side = set.len().min(g.vertex_count() - set.len());
        if side == 0 {
            return Err(IsoError::DegenerateSubset);
        }
        let boundary = g.edge_boundary(&set).len();
        let ratio = boundary as f64 / (side as f64).powf((d - 1.0) / d);
        Ok(Self { set, boundary, ratio })
    }
}
