//! Graph-family descriptors: compact strings like `torus:n=100,m=5` that
//! expand to a graph plus a per-vertex coordinate map for sidecar output.

use crate::CliError;
use perc_cayley::{
    box_graph, cayley_graph, elongated_torus, heisenberg_cayley, AbelianGroup, GeneratingSet,
};
use perc_graph::{Graph, VertexSet};

/// A parsed descriptor: the graph, a canonical echo of the family string,
/// and integer coordinates for every vertex (the sidecar map).
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub family: String,
    pub coords: Vec<Vec<i64>>,
}

fn bad(desc: &str, why: impl Into<String>) -> CliError {
    CliError::Descriptor { desc: desc.to_string(), why: why.into() }
}

fn parse_kv(desc: &str, body: &str) -> Result<Vec<(String, String)>, CliError> {
    body.split(',')
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| bad(desc, format!("expected key=value, got {pair:?}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn lookup<'a>(
    desc: &str,
    kv: &'a [(String, String)],
    key: &str,
) -> Result<&'a str, CliError> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| bad(desc, format!("missing {key}=")))
}

fn parse_u64(desc: &str, what: &str, s: &str) -> Result<u64, CliError> {
    s.parse().map_err(|_| bad(desc, format!("{what}: not an integer: {s:?}")))
}

/// Parses vector lists like `(1,0),(0,1)` into rows of integers.
fn parse_tuples(desc: &str, s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| bad(desc, format!("expected '(' in tuple list at {rest:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| bad(desc, "unbalanced parenthesis in tuple list"))?;
        let coords: Result<Vec<i64>, CliError> = open[..close]
            .split(',')
            .map(|c| {
                c.trim()
                    .parse()
                    .map_err(|_| bad(desc, format!("bad tuple entry {c:?}")))
            })
            .collect();
        out.push(coords?);
        rest = open[close + 1..].trim_start_matches(',').trim();
    }
    if out.is_empty() {
        return Err(bad(desc, "empty tuple list"));
    }
    Ok(out)
}

/// Builds the graph named by a family descriptor.  Supported families:
///
/// * `torus:n=100,m=5` — the elongated torus `(Z/n) x (Z/m)`
/// * `box:3,3,40` — the box `B(n_1,..,n_d)`, sides `2n_i+1`
/// * `grid:8x8` — a `w x h` grid (product of two paths)
/// * `abelian:mods=12,5;gens=(1,0),(0,1)` — a Cayley graph of `Z_12 x Z_5`
/// * `heisenberg:n=4` — the mod-n Heisenberg group, standard generators
/// * `cycle:n=30` / `path:n=30`
pub fn parse_graph(desc: &str) -> Result<ParsedGraph, CliError> {
    let (family, body) =
        desc.split_once(':').ok_or_else(|| bad(desc, "expected family:params"))?;
    match family {
        "torus" => {
            let kv = parse_kv(desc, body)?;
            let n = parse_u64(desc, "n", lookup(desc, &kv, "n")?)?;
            let m = parse_u64(desc, "m", lookup(desc, &kv, "m")?)?;
            if n == 0 || m == 0 {
                return Err(bad(desc, "torus sides must be positive"));
            }
            let graph = elongated_torus(n, m);
            let coords = (0..graph.vertex_count())
                .map(|v| vec![(v as u64 / m) as i64, (v as u64 % m) as i64])
                .collect();
            Ok(ParsedGraph { graph, family: desc.to_string(), coords })
        }
        "box" => {
            let radii: Result<Vec<u32>, CliError> = body
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| bad(desc, format!("bad radius {s:?}")))
                })
                .collect();
            let radii = radii?;
            if radii.is_empty() {
                return Err(bad(desc, "box needs at least one radius"));
            }
            let b = box_graph(&radii);
            let coords = (0..b.vertex_count()).map(|v| b.coords_of(v)).collect();
            Ok(ParsedGraph { graph: b.graph().clone(), family: desc.to_string(), coords })
        }
        "grid" => {
            let (w, h) = body
                .split_once('x')
                .ok_or_else(|| bad(desc, "expected grid:WxH"))?;
            let w = parse_u64(desc, "width", w)? as usize;
            let h = parse_u64(desc, "height", h)? as usize;
            if w == 0 || h == 0 {
                return Err(bad(desc, "grid sides must be positive"));
            }
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
            let graph = Graph::new(w * h, &edges)
                .map_err(|e| bad(desc, e.to_string()))?;
            let coords =
                (0..w * h).map(|v| vec![(v % w) as i64, (v / w) as i64]).collect();
            Ok(ParsedGraph { graph, family: desc.to_string(), coords })
        }
        "abelian" => {
            let (group, tuples) = parse_abelian(desc)?;
            let gens = GeneratingSet::from_coords(&group, &tuples);
            let graph = cayley_graph(&group, &gens)?;
            let coords = (0..graph.vertex_count())
                .map(|v| group.coords_of(v).coords.iter().map(|&c| c as i64).collect())
                .collect();
            Ok(ParsedGraph { graph, family: desc.to_string(), coords })
        }
        "heisenberg" => {
            let kv = parse_kv(desc, body)?;
            let n = parse_u64(desc, "n", lookup(desc, &kv, "n")?)?;
            if n < 2 {
                return Err(bad(desc, "heisenberg modulus must be at least 2"));
            }
            let (graph, group) = heisenberg_cayley(n);
            let coords = (0..graph.vertex_count())
                .map(|v| {
                    let (x, y, z) = group.coords(v);
                    vec![x as i64, y as i64, z as i64]
                })
                .collect();
            Ok(ParsedGraph { graph, family: desc.to_string(), coords })
        }
        "cycle" | "path" => {
            let kv = parse_kv(desc, body)?;
            let n = parse_u64(desc, "n", lookup(desc, &kv, "n")?)? as usize;
            if n < 2 {
                return Err(bad(desc, "need at least two vertices"));
            }
            let mut edges: Vec<(u32, u32)> =
                (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
            if family == "cycle" {
                if n < 3 {
                    return Err(bad(desc, "cycles need at least three vertices"));
                }
                edges.push((n as u32 - 1, 0));
            }
            let graph = Graph::new(n, &edges).map_err(|e| bad(desc, e.to_string()))?;
            let coords = (0..n).map(|v| vec![v as i64]).collect();
            Ok(ParsedGraph { graph, family: desc.to_string(), coords })
        }
        other => Err(bad(desc, format!("unknown family {other:?}"))),
    }
}

/// Public entry point for tuple lists like `(1,0),(0,1)` given on the
/// command line (subgroup generators, extra generating sets).
pub fn parse_tuple_list(s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    parse_tuples(s, s)
}

/// Parses the group-level part of an `abelian:mods=..;gens=..` descriptor:
/// the group and the generator coordinate rows, without building the graph.
pub fn parse_abelian(desc: &str) -> Result<(AbelianGroup, Vec<Vec<i64>>), CliError> {
    let body = desc
        .strip_prefix("abelian:")
        .ok_or_else(|| bad(desc, "expected an abelian: descriptor"))?;
    let (mods_part, gens_part) =
        body.split_once(';').ok_or_else(|| bad(desc, "expected mods=..;gens=.."))?;
    let mods_str = mods_part
        .strip_prefix("mods=")
        .ok_or_else(|| bad(desc, "expected mods= first"))?;
    let gens_str = gens_part
        .strip_prefix("gens=")
        .ok_or_else(|| bad(desc, "expected gens= second"))?;
    let moduli: Result<Vec<u64>, CliError> =
        mods_str.split(',').map(|s| parse_u64(desc, "modulus", s.trim())).collect();
    let moduli = moduli?;
    if moduli.is_empty() || moduli.iter().any(|&m| m == 0) {
        return Err(bad(desc, "moduli must be positive"));
    }
    let tuples = parse_tuples(desc, gens_str)?;
    for t in &tuples {
        if t.len() != moduli.len() {
            return Err(bad(desc, "generator arity must match the moduli"));
        }
    }
    Ok((AbelianGroup::new(&moduli), tuples))
}

impl ParsedGraph {
    /// Vertices on the outer shell (some coordinate at its extreme value).
    /// Only meaningful for families with free boundary: boxes, grids and
    /// paths; tori and Cayley graphs have none.
    pub fn boundary_ring(&self) -> Result<VertexSet, CliError> {
        let family = self.family.split(':').next().unwrap_or("");
        if !matches!(family, "box" | "grid" | "path") {
            return Err(CliError::Descriptor {
                desc: self.family.clone(),
                why: format!("family {family:?} has no boundary ring"),
            });
        }
        let dims = self.coords[0].len();
        let mut lo = self.coords[0].clone();
        let mut hi = self.coords[0].clone();
        for row in &self.coords {
            for i in 0..dims {
                lo[i] = lo[i].min(row[i]);
                hi[i] = hi[i].max(row[i]);
            }
        }
        let ring = (0..self.graph.vertex_count() as u32).filter(|&v| {
            let row = &self.coords[v as usize];
            (0..dims).any(|i| row[i] == lo[i] || row[i] == hi[i])
        });
        Ok(VertexSet::from_indices(self.graph.vertex_count(), ring))
    }

    /// The vertex whose coordinates are all at the midpoint (the origin for
    /// boxes, the centre cell for grids with odd sides).
    pub fn center(&self) -> u32 {
        let dims = self.coords[0].len();
        let mut lo = self.coords[0].clone();
        let mut hi = self.coords[0].clone();
        for row in &self.coords {
            for i in 0..dims {
                lo[i] = lo[i].min(row[i]);
                hi[i] = hi[i].max(row[i]);
            }
        }
        let mid: Vec<i64> = (0..dims).map(|i| (lo[i] + hi[i]) / 2).collect();
        let best = (0..self.graph.vertex_count() as u32)
            .min_by_key(|&v| {
                self.coords[v as usize]
                    .iter()
                    .zip(&mid)
                    .map(|(&c, &m)| (c - m).abs())
                    .sum::<i64>()
            })
            .expect("graphs are nonempty");
        best
    }
}

/// Parses a vertex-set argument: `ring`, `center`, `vertices:3,17,40`, or
/// `set:<path>` pointing at a JSON array of vertex indices.
pub fn parse_vertex_set(parsed: &ParsedGraph, spec: &str) -> Result<VertexSet, CliError> {
    let n = parsed.graph.vertex_count();
    if spec == "ring" {
        return parsed.boundary_ring();
    }
    if spec == "center" {
        return Ok(VertexSet::from_indices(n, [parsed.center()]));
    }
    if let Some(list) = spec.strip_prefix("vertices:") {
        let vs: Result<Vec<u32>, CliError> = list
            .split(',')
            .map(|s| {
                s.trim().parse().map_err(|_| CliError::Descriptor {
                    desc: spec.to_string(),
                    why: format!("bad vertex index {s:?}"),
                })
            })
            .collect();
        let vs = vs?;
        check_range(spec, &vs, n)?;
        return Ok(VertexSet::from_indices(n, vs));
    }
    if let Some(path) = spec.strip_prefix("set:") {
        let text = std::fs::read_to_string(path)?;
        let vs: Vec<u32> = serde_json::from_str(&text)?;
        check_range(spec, &vs, n)?;
        return Ok(VertexSet::from_indices(n, vs));
    }
    Err(CliError::Descriptor {
        desc: spec.to_string(),
        why: "expected ring | center | vertices:<list> | set:<file>".into(),
    })
}

fn check_range(spec: &str, vs: &[u32], n: usize) -> Result<(), CliError> {
    match vs.iter().find(|&&v| v as usize >= n) {
        Some(&v) => Err(CliError::Descriptor {
            desc: spec.to_string(),
            why: format!("vertex {v} outside graph of order {n}"),
        }),
        None => Ok(()),
    }
}
