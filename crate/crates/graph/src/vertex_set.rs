/// Dense bitset over the vertex indices of a host graph, with cached
/// cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
    count: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { words: vec![0; universe.div_ceil(64)], universe, count: 0 }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v as u32);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(universe: usize, iter: I) -> Self {
        let mut s = Self::new(universe);
        for v in iter {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, v: u32) -> bool {
        let v = v as usize;
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Returns true if the vertex was newly inserted.
    pub fn insert(&mut self, v: u32) -> bool {
        let i = v as usize;
        assert!(i < self.universe, "vertex {v} outside universe {}", self.universe);
        let mask = 1u64 << (i % 64);
        if self.words[i / 64] & mask == 0 {
            self.words[i / 64] |= mask;
            self.count += 1;
            true
        } else {
            false
        }
    }

    /// Returns true if the vertex was present.
    pub fn remove(&mut self, v: u32) -> bool {
        let i = v as usize;
        if i >= self.universe {
            return false;
        }
        let mask = 1u64 << (i % 64);
        if self.words[i / 64] & mask != 0 {
            self.words[i / 64] &= !mask;
            self.count -= 1;
            true
        } else {
            false
        }
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::new(self.universe);
        for v in 0..self.universe as u32 {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.universe as u32).filter(move |&v| self.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_count() {
        let mut s = VertexSet::new(100);
        assert!(s.insert(7));
        assert!(!s.insert(7));
        assert!(s.insert(63));
        assert!(s.insert(64));
        assert_eq!(s.len(), 3);
        assert!(s.remove(63));
        assert!(!s.remove(63));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![7, 64]);
    }

    #[test]
    fn complement_partitions() {
        let s = VertexSet::from_indices(10, [0, 2, 4]);
        let c = s.complement();
        assert_eq!(s.len() + c.len(), 10);
        for v in 0..10 {
            assert!(s.contains(v) != c.contains(v));
        }
    }
}
