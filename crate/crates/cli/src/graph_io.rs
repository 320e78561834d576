//! The JSON interchange format for graphs (`{"n": .., "edges": [[u,v],..]}`)
//! and the sidecar coordinate map.

use crate::CliError;
use perc_graph::Graph;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonGraph {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl JsonGraph {
    pub fn of(g: &Graph) -> Self {
        JsonGraph { n: g.vertex_count(), edges: g.edges().to_vec() }
    }

    pub fn build(&self) -> Result<Graph, CliError> {
        Graph::new(self.n, &self.edges).map_err(CliError::from)
    }
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<(), CliError> {
    let file = std::fs::File::create(path)?;
    serde_json::to_writer(std::io::BufWriter::new(file), &JsonGraph::of(g))?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)?;
    let json: JsonGraph = serde_json::from_str(&text)?;
    json.build()
}

/// Sidecar map: row `v` holds the integer coordinates of vertex `v`.
pub fn write_coords(path: &Path, coords: &[Vec<i64>]) -> Result<(), CliError> {
    let file = std::fs::File::create(path)?;
    serde_json::to_writer(std::io::BufWriter::new(file), coords)?;
    Ok(())
}
