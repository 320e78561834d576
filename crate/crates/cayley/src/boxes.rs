use perc_graph::Graph;

use crate::{cayley_graph, AbelianGroup, GeneratingSet};

/// The box `B(n_1,...,n_d) = {x ∈ Z^d : |x_i| <= n_i}` as an induced subgraph
/// of Z^d, with its coordinate↔index map. Vertex indices are row-major over
/// offset coordinates `x_i + n_i`, so the most negative corner is index 0 and
/// the origin sits at the middle index.
#[derive(Clone, Debug)]
pub struct BoxGraph {
    graph: Graph,
    radii: Vec<u32>,
    sizes: Vec<usize>,
}

impl BoxGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn radii(&self) -> &[u32] {
        &self.radii
    }

    /// Side lengths `2 n_i + 1`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn try_index(&self, coords: &[i64]) -> Option<usize> {
        assert_eq!(coords.len(), self.radii.len());
        let mut idx = 0usize;
        for (i, &c) in coords.iter().enumerate() {
            let n = self.radii[i] as i64;
            if c < -n || c > n {
                return None;
            }
            idx = idx * self.sizes[i] + (c + n) as usize;
        }
        Some(idx)
    }

    pub fn index_of(&self, coords: &[i64]) -> usize {
        self.try_index(coords).expect("coordinates outside box")
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<i64> {
        let mut coords = vec![0i64; self.radii.len()];
        for i in (0..self.radii.len()).rev() {
            coords[i] = (index % self.sizes[i]) as i64 - self.radii[i] as i64;
            index /= self.sizes[i];
        }
        coords
    }

    pub fn origin(&self) -> usize {
        self.index_of(&vec![0; self.radii.len()])
    }

    /// The corner `(-n_1, ..., -n_d)` (index 0) and its opposite.
    pub fn corners(&self) -> (usize, usize) {
        (0, self.vertex_count() - 1)
    }
}

/// Builds `B(n_1,...,n_d)`: `∏(2 n_i + 1)` vertices, nearest-neighbor edges,
/// diameter `2 Σ n_i`.
pub fn box_graph(radii: &[u32]) -> BoxGraph {
    assert!(!radii.is_empty());
    let sizes: Vec<usize> = radii.iter().map(|&n| 2 * n as usize + 1).collect();
    let count: usize = sizes.iter().product();
    let strides = {
        let mut s = vec![1usize; radii.len()];
        for i in (0..radii.len() - 1).rev() {
            s[i] = s[i + 1] * sizes[i + 1];
        }
        s
    };
    let mut edges = Vec::with_capacity(count * radii.len());
    for idx in 0..count {
        for (i, &size) in sizes.iter().enumerate() {
            let digit = idx / strides[i] % size;
            if digit + 1 < size {
                edges.push((idx as u32, (idx + strides[i]) as u32));
            }
        }
    }
    let graph = Graph::new(count, &edges).expect("indices in range");
    BoxGraph { graph, radii: radii.to_vec(), sizes }
}

/// `(Z/nZ) × (Z/mZ)` with the standard generators; 4-regular when n, m >= 3.
pub fn elongated_torus(n: u64, m: u64) -> Graph {
    let group = AbelianGroup::new(&[n, m]);
    let s = GeneratingSet::from_coords(&group, &[vec![1, 0], vec![0, 1]]);
    cayley_graph(&group, &s).expect("standard generators generate Z_n x Z_m")
}

/// Boustrophedon ordering of the box vertices: consecutive entries are
/// adjacent in the box graph and every vertex appears exactly once.
pub fn snake_hamiltonian(radii: &[u32]) -> Vec<u32> {
    let b = box_graph(radii);
    let sizes = b.sizes().to_vec();
    let count: usize = sizes.iter().product();
    (0..count).map(|t| snake_index(&sizes, t) as u32).collect()
}

/// The `t`-th vertex (row-major index) of the snake through a grid with the
/// given side lengths: digit `j` sweeps up or down depending on the parity of
/// the more significant digits.
fn snake_index(sizes: &[usize], t: usize) -> usize {
    let mut rem = t;
    let mut flip = false;
    let mut idx = 0usize;
    for (j, &size) in sizes.iter().enumerate() {
        let stride: usize = sizes[j + 1..].iter().product();
        let mut digit = rem / stride;
        rem %= stride;
        if flip {
            digit = size - 1 - digit;
        }
        // sub-blocks reverse direction after each odd sweep of this digit
        flip ^= digit % 2 == 1;
        idx = idx * size + digit;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_boxes() {
        let b = box_graph(&[1, 1]);
        assert_eq!(b.vertex_count(), 9);
        assert_eq!(b.graph().edge_count(), 12);
        assert_eq!(b.graph().diameter().unwrap(), 4);

        let path = box_graph(&[3]);
        assert_eq!(path.vertex_count(), 7);
        assert_eq!(path.graph().edge_count(), 6);

        let b21 = box_graph(&[2, 1]);
        assert_eq!(b21.vertex_count(), 15);
        assert_eq!(b21.graph().diameter().unwrap(), 6);
    }

    #[test]
    fn box_coordinate_map() {
        let b = box_graph(&[2, 1]);
        assert_eq!(b.index_of(&[-2, -1]), 0);
        assert_eq!(b.coords_of(b.origin()), vec![0, 0]);
        assert_eq!(b.try_index(&[3, 0]), None);
        for idx in 0..b.vertex_count() {
            assert_eq!(b.index_of(&b.coords_of(idx)), idx);
        }
        // cross shape around the origin
        let ball = b.graph().ball(b.origin() as u32, 1).unwrap();
        assert_eq!(ball.len(), 5);
    }

    #[test]
    fn elongated_torus_families() {
        let t = elongated_torus(3, 3);
        assert_eq!(t.vertex_count(), 9);
        assert_eq!(t.edge_count(), 18);

        let degenerate = elongated_torus(5, 1);
        assert_eq!(degenerate.vertex_count(), 5);
        assert_eq!(degenerate.edge_count(), 5); // cycle; the (0,1) loops collapse

        let t84 = elongated_torus(8, 4);
        assert_eq!(t84.vertex_count(), 32);
        assert_eq!(t84.diameter().unwrap(), 6);
    }

    #[test]
    fn snake_is_hamiltonian_and_adjacent() {
        for radii in [vec![1u32], vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
            let b = box_graph(&radii);
            let order = snake_hamiltonian(&radii);
            assert_eq!(order.len(), b.vertex_count());
            let mut seen = vec![false; b.vertex_count()];
            for &v in &order {
                assert!(!seen[v as usize]);
                seen[v as usize] = true;
            }
            for w in order.windows(2) {
                assert!(b.graph().has_edge(w[0], w[1]), "radii {radii:?}: {w:?} not adjacent");
            }
        }
    }

    #[test]
    fn snake_on_interval_is_a_sweep() {
        let order = snake_hamiltonian(&[1]);
        assert_eq!(order, vec![0, 1, 2]); // coordinates -1, 0, 1
    }

    #[test]
    fn snake_product_gives_bijective_homomorphism() {
        // φ = (φ1, φ2): B(m, n) -> B(1,1) x B(1) with 2m+1 = 9, 2n+1 = 3:
        // adjacency-preserving bijection built from two snakes.
        let (m, n) = (4u32, 1u32);
        let target = box_graph(&[1, 1, 1]);
        let phi1 = snake_hamiltonian(&[1, 1]); // 9 entries, indices in B(1,1)
        let phi2 = snake_hamiltonian(&[1]); // 3 entries, indices in B(1)
        let source = box_graph(&[m, n]);
        let b11 = box_graph(&[1, 1]);
        let b1 = box_graph(&[1]);
        let map = |v: usize| -> usize {
            let c = source.coords_of(v);
            let (a, j) = ((c[0] + m as i64) as usize, (c[1] + n as i64) as usize);
            let xy = b11.coords_of(phi1[a] as usize);
            let z = b1.coords_of(phi2[j] as usize);
            target.index_of(&[xy[0], xy[1], z[0]])
        };
        let mut hit = vec![false; target.vertex_count()];
        for v in 0..source.vertex_count() {
            assert!(!hit[map(v)]);
            hit[map(v)] = true;
        }
        for &(u, v) in source.graph().edges() {
            assert!(target.graph().has_edge(map(u as usize) as u32, map(v as usize) as u32));
        }
    }
}
