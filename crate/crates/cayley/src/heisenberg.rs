use crate::FiniteGroup;

/// The Heisenberg group mod `n`: triples `(x, y, z)` with
/// `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy')`, all coordinates mod `n`.
/// 2-step nilpotent of order `n^3`; the center is `{(0,0,z)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergGroup {
    n: u64,
}

impl HeisenbergGroup {
    pub fn new(n: u64) -> Self {
        assert!(n >= 2, "modulus must be at least 2");
        HeisenbergGroup { n }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn index(&self, x: i64, y: i64, z: i64) -> usize {
        let n = self.n as i64;
        let (x, y, z) = (x.rem_euclid(n) as u64, y.rem_euclid(n) as u64, z.rem_euclid(n) as u64);
        ((x * self.n + y) * self.n + z) as usize
    }

    pub fn coords(&self, index: usize) -> (u64, u64, u64) {
        let i = index as u64;
        (i / (self.n * self.n), i / self.n % self.n, i % self.n)
    }

    /// Elements of the center `{(0,0,z)}`.
    pub fn center(&self) -> Vec<usize> {
        (0..self.n).map(|z| self.index(0, 0, z as i64)).collect()
    }

    /// The standard generators `(1,0,0)` and `(0,1,0)`.
    pub fn standard_generators(&self) -> Vec<usize> {
        vec![self.index(1, 0, 0), self.index(0, 1, 0)]
    }
}

impl FiniteGroup for HeisenbergGroup {
    fn order(&self) -> usize {
        (self.n * self.n * self.n) as usize
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x1, y1, z1) = self.coords(a);
        let (x2, y2, z2) = self.coords(b);
        self.index(
            (x1 + x2) as i64,
            (y1 + y2) as i64,
            (z1 + z2 + x1 * y2) as i64,
        )
    }

    fn inv(&self, a: usize) -> usize {
        let (x, y, z) = self.coords(a);
        let n = self.n as i64;
        let (x, y, z) = (x as i64, y as i64, z as i64);
        self.index((-x).rem_euclid(n), (-y).rem_euclid(n), x * y - z)
    }
}
