//! Seeded random instance generator for the extraction test corpus: random
//! mixed-radix Abelian groups, arbitrary generator tuples (not required to
//! generate), subgroup moduli `Q`, and a radius up to the reachable diameter.

use perc_cayley::{AbelianGroup, FiniteGroup};
use perc_graph::UNREACHABLE;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::Arith;
use crate::{bfs_levels, symmetric_steps, SymmetricSet};

#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub group: AbelianGroup,
    pub generators: Vec<usize>,
    pub q: SymmetricSet,
    pub r: u64,
}

/// One random instance. `Q` is always a cyclic subgroup (possibly `{0}`),
/// which makes the divisibility precondition of the extraction hold for any
/// generator set.
pub fn random_instance(rng: &mut ChaCha8Rng, max_order: u64, max_k: usize) -> CorpusInstance {
    let dims = rng.gen_range(1..=3usize);
    let mut moduli = Vec::new();
    let mut budget = max_order.max(2);
    for _ in 0..dims {
        if budget < 2 {
            break;
        }
        // log-uniform-ish factor sizes so small and large moduli both appear
        let bits = rng.gen_range(1..=budget.ilog2());
        let cap = budget.min(1u64 << bits);
        let m = rng.gen_range(2..=cap.max(2));
        moduli.push(m);
        budget /= m;
    }
    let group = AbelianGroup::new(&moduli);
    let order = group.order();

    let k = rng.gen_range(1..=max_k);
    let generators: Vec<usize> = (0..k).map(|_| rng.gen_range(0..order)).collect();

    let q = if rng.gen_bool(0.5) {
        SymmetricSet::zero(&group)
    } else {
        SymmetricSet::cyclic(&group, rng.gen_range(0..order))
    };

    let ar = Arith::new(&group);
    let steps = symmetric_steps(&ar, &generators);
    let lev = bfs_levels(&ar, &steps, [0u32]);
    let r_max = lev.iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0) as u64;
    let r = if r_max == 0 { 1 } else { rng.gen_range(1..=r_max) };

    CorpusInstance { group, generators, q, r }
}

/// Deterministic corpus of `count` instances from one seed.
pub fn corpus(seed: u64, count: usize, max_order: u64, max_k: usize) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, max_order, max_k)).collect()
}
