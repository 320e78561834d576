use crate::FiniteGroup;

/// Element of a finite Abelian group in canonical mixed-radix coordinates:
/// coordinate `i` lies in `[0, n_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u32>,
}

/// The group `Z_{n1} x ... x Z_{nd}` with coordinatewise addition.
///
/// Elements are addressed by dense indices `0..order` in row-major order
/// (first coordinate most significant), so index order equals lexicographic
/// order on canonical coordinates and the identity has index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
}

impl AbelianGroup {
    pub fn new(moduli: &[u64]) -> Self {
        assert!(!moduli.is_empty(), "group needs at least one factor");
        assert!(moduli.iter().all(|&n| n >= 1), "moduli must be >= 1");
        let order = moduli.iter().product();
        let mut strides = vec![1u64; moduli.len()];
        for i in (0..moduli.len() - 1).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        AbelianGroup { moduli: moduli.to_vec(), strides, order }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Canonicalizes arbitrary integer coordinates.
    pub fn element(&self, coords: &[i64]) -> GroupElement {
        assert_eq!(coords.len(), self.moduli.len(), "coordinate arity mismatch");
        let canon = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
            .collect();
        GroupElement { coords: canon }
    }

    pub fn index_of(&self, e: &GroupElement) -> usize {
        e.coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as u64 * s)
            .sum::<u64>() as usize
    }

    pub fn coords_of(&self, mut index: usize) -> GroupElement {
        let mut coords = Vec::with_capacity(self.moduli.len());
        for (&s, _) in self.strides.iter().zip(&self.moduli) {
            coords.push((index as u64 / s) as u32);
            index = (index as u64 % s) as usize;
        }
        GroupElement { coords }
    }

    pub fn index(&self, coords: &[i64]) -> usize {
        self.index_of(&self.element(coords))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ea, eb) = (self.coords_of(a), self.coords_of(b));
        let sum: Vec<i64> = ea
            .coords
            .iter()
            .zip(&eb.coords)
            .map(|(&x, &y)| x as i64 + y as i64)
            .collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let e = self.coords_of(a);
        let neg: Vec<i64> = e.coords.iter().map(|&x| -(x as i64)).collect();
        self.index(&neg)
    }

    /// Index of `m * a` for a signed multiple `m`.
    pub fn scale(&self, a: usize, m: i64) -> usize {
        let e = self.coords_of(a);
        let scaled: Vec<i64> = e.coords.iter().map(|&x| x as i64 * m).collect();
        self.index(&scaled)
    }
}

impl FiniteGroup for AbelianGroup {
    fn order(&self) -> usize {
        self.order as usize
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.add(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.neg(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_coords_roundtrip() {
        let g = AbelianGroup::new(&[12, 5]);
        assert_eq!(g.order(), 60);
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.coords_of(i)), i);
        }
        assert_eq!(g.index(&[0, 0]), 0);
        assert_eq!(g.index(&[-1, 2]), g.index(&[11, 2]));
    }

    #[test]
    fn index_order_is_lex_order() {
        let g = AbelianGroup::new(&[3, 4]);
        let mut last = g.coords_of(0);
        for i in 1..g.order() {
            let cur = g.coords_of(i);
            assert!(cur > last);
            last = cur;
        }
    }

    #[test]
    fn group_axioms_spotcheck() {
        let g = AbelianGroup::new(&[6, 2, 3]);
        for a in [0usize, 5, 17, 35] {
            assert_eq!(g.add(a, g.neg(a)), 0);
            assert_eq!(g.add(a, 0), a);
            for b in [1usize, 7, 20] {
                assert_eq!(g.add(a, b), g.add(b, a));
            }
        }
        assert_eq!(g.scale(g.index(&[1, 1, 1]), 6), g.index(&[0, 0, 0]));
    }
}
