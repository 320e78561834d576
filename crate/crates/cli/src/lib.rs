//! Library surface of the `perc` binary: graph descriptors, JSON graph
//! exchange, coupling verifiers, and the seeded experiment runner.

pub mod couple;
pub mod descriptor;
pub mod experiments;
pub mod graph_io;

pub use couple::{
    box_into_torus, cyclic_subgroup, embedding_trials, quotient_trials, union_trials,
    CouplingReport,
};
pub use descriptor::{parse_abelian, parse_graph, parse_tuple_list, parse_vertex_set, ParsedGraph};
pub use experiments::{
    row_seed, run_experiment, sharp_threshold_scan, Budget, ExperimentSpec, GapRow, ResultRow,
    RunSummary, RESULT_COLUMNS, RESULT_SCHEMA,
};
pub use graph_io::{read_graph, write_coords, write_graph, JsonGraph};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad graph descriptor {desc:?}: {why}")]
    Descriptor { desc: String, why: String },
    #[error("bad {kind:?} spec: {why}")]
    Spec { kind: String, why: String },
    #[error(transparent)]
    Graph(#[from] perc_graph::GraphError),
    #[error(transparent)]
    Cayley(#[from] perc_cayley::CayleyError),
    #[error(transparent)]
    Progression(#[from] perc_progressions::ProgressionError),
    #[error(transparent)]
    Perc(#[from] perc_percolation::PercError),
    #[error(transparent)]
    Potential(#[from] perc_potential::PotentialError),
    #[error(transparent)]
    Iso(#[from] perc_iso::IsoError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
