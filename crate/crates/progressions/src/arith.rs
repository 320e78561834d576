use perc_cayley::{AbelianGroup, FiniteGroup};

/// Allocation-free index arithmetic for an `AbelianGroup`.
///
/// `AbelianGroup::add` decodes and re-encodes coordinate vectors on every
/// call; the sumset loops here perform tens of millions of additions per
/// instance, so we cache the decoded coordinates once and work on flat
/// arrays.
pub(crate) struct Arith {
    moduli: Vec<u64>,
    strides: Vec<u64>,
    coords: Vec<u32>,
    rank: usize,
    order: usize,
}

impl Arith {
    pub fn new(group: &AbelianGroup) -> Self {
        let moduli = group.moduli().to_vec();
        let rank = moduli.len();
        let order = group.order();
        let mut strides = vec![1u64; rank];
        for i in (0..rank.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        let mut coords = Vec::with_capacity(order * rank);
        for x in 0..order {
            coords.extend_from_slice(&group.coords_of(x).coords);
        }
        Arith { moduli, strides, coords, rank, order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let ca = &self.coords[a * self.rank..(a + 1) * self.rank];
        let cb = &self.coords[b * self.rank..(b + 1) * self.rank];
        let mut acc = 0u64;
        for i in 0..self.rank {
            let mut c = ca[i] as u64 + cb[i] as u64;
            if c >= self.moduli[i] {
                c -= self.moduli[i];
            }
            acc += c * self.strides[i];
        }
        acc as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        let ca = &self.coords[a * self.rank..(a + 1) * self.rank];
        let mut acc = 0u64;
        for i in 0..self.rank {
            let c = if ca[i] == 0 { 0 } else { self.moduli[i] - ca[i] as u64 };
            acc += c * self.strides[i];
        }
        acc as usize
    }

}
