//! Additive combinatorics over finite Abelian groups: generalized arithmetic
//! progressions, properness modulo a symmetric set, divisibility, and the
//! inductive extraction of a proper progression `P` with the covering
//! certificate `P ⊆ rÂ ⊆ C_k(P + Q + Â)`, `C_k = 2^{6k}(k!)³`.
//!
//! All set arithmetic is exact over enumerated element sets (dense bitsets
//! indexed by group element index); nothing is symbolic.

mod arith;
pub mod corpus;

use std::collections::VecDeque;

use arith::Arith;
use perc_cayley::{AbelianGroup, FiniteGroup};
use perc_graph::{VertexSet, UNREACHABLE};
use thiserror::Error;

/// Subsets of an `AbelianGroup` are dense bitsets over element indices.
pub type ElementSet = VertexSet;

/// Largest group order accepted by the exact certification routines; the
/// level-set arrays are linear in the order, so this is a memory guard.
pub const CERTIFICATION_LIMIT: usize = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProgressionError {
    #[error("element index {element} out of range for group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("set must contain 0 and be closed under negation")]
    NotSymmetric,
    #[error("the r-ball of the generators is not divisible by Q")]
    NotDivisible,
    #[error("internal certification failure: {0}")]
    Certification(String),
    #[error("exhaustive scan needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("group order {order} exceeds the certification limit {limit}")]
    TooLarge { order: usize, limit: usize },
}

/// A symmetric subset of an Abelian group: contains 0 and is closed under
/// negation. This is the `Q` of "proper mod Q" and "divisible by Q".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSet {
    set: ElementSet,
    elems: Vec<u32>,
}

impl SymmetricSet {
    /// Validates that `elements` contains 0 and is negation-closed.
    pub fn new(group: &AbelianGroup, elements: &[usize]) -> Result<Self, ProgressionError> {
        let order = group.order();
        let mut set = ElementSet::new(order);
        for &e in elements {
            if e >= order {
                return Err(ProgressionError::ElementOutOfRange { element: e, order });
            }
            set.insert(e as u32);
        }
        Self::from_set(group, set)
    }

    /// Validates an already-built element set.
    pub fn from_set(group: &AbelianGroup, set: ElementSet) -> Result<Self, ProgressionError> {
        if !set.contains(0) {
            return Err(ProgressionError::NotSymmetric);
        }
        for x in set.iter() {
            if !set.contains(group.neg(x as usize) as u32) {
                return Err(ProgressionError::NotSymmetric);
            }
        }
        Ok(Self::from_set_unchecked(set))
    }

    /// `{0}`, the trivial symmetric set.
    pub fn zero(group: &AbelianGroup) -> Self {
        let mut set = ElementSet::new(group.order());
        set.insert(0);
        Self::from_set_unchecked(set)
    }

    /// Smallest symmetric set containing `elements`: adds 0 and negatives.
    pub fn symmetrize(group: &AbelianGroup, elements: &[usize]) -> Self {
        let mut set = ElementSet::new(group.order());
        set.insert(0);
        for &e in elements {
            set.insert(e as u32);
            set.insert(group.neg(e) as u32);
        }
        Self::from_set_unchecked(set)
    }

    /// The cyclic subgroup generated by `g` (always symmetric).
    pub fn cyclic(group: &AbelianGroup, g: usize) -> Self {
        let mut set = ElementSet::new(group.order());
        set.insert(0);
        let mut x = g;
        while x != 0 {
            set.insert(x as u32);
            x = group.add(x, g);
        }
        Self::from_set_unchecked(set)
    }

    fn from_set_unchecked(set: ElementSet) -> Self {
        let elems = set.iter().collect();
        SymmetricSet { set, elems }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x as u32)
    }

    /// Sorted element indices (always includes 0).
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains 0
    }
}

/// `P_{a_1..a_k}(L_1..L_k) = {ℓ_1 a_1 + … + ℓ_k a_k : |ℓ_i| ≤ L_i}`.
/// Generators are element indices into the host group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    pub generators: Vec<usize>,
    pub lengths: Vec<u64>,
}

impl Progression {
    pub fn new(generators: Vec<usize>, lengths: Vec<u64>) -> Self {
        assert_eq!(generators.len(), lengths.len(), "one length per generator");
        Progression { generators, lengths }
    }

    pub fn from_coords(group: &AbelianGroup, coords: &[Vec<i64>], lengths: &[u64]) -> Self {
        let gens = coords.iter().map(|c| group.index(c)).collect();
        Self::new(gens, lengths.to_vec())
    }

    pub fn k(&self) -> usize {
        self.generators.len()
    }

    /// `∏(2L_i + 1)`, the element count when the progression is proper.
    pub fn volume(&self) -> u128 {
        self.lengths.iter().map(|&l| 2 * l as u128 + 1).product()
    }
}

/// Output of `extract_progression`: the certified lengths in the (possibly
/// permuted) generator order, plus the certificate record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionResult {
    /// Generator element indices in the order the lengths refer to.
    pub generators: Vec<usize>,
    pub lengths: Vec<u64>,
    /// `permutation[i]` = position in the input list of `generators[i]`.
    pub permutation: Vec<usize>,
    pub proper_mod_q: bool,
    pub subset_of_ball: bool,
    pub cover_constant_used: u64,
}

impl ExtractionResult {
    pub fn progression(&self) -> Progression {
        Progression::new(self.generators.clone(), self.lengths.clone())
    }

    pub fn volume(&self) -> u128 {
        self.progression().volume()
    }
}

/// `C_k = 2^{6k} (k!)³`, saturating at `u64::MAX` for large `k`.
pub fn cover_constant(k: usize) -> u64 {
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = c.saturating_mul(i * i * i);
    }
    let shift = 6 * k as u32;
    let pow = if shift >= 127 { u128::MAX } else { 1u128 << shift };
    c.saturating_mul(pow).min(u64::MAX as u128) as u64
}

/// Exact element set of a progression.
pub fn progression_elements(group: &AbelianGroup, p: &Progression) -> ElementSet {
    progression_elements_inner(&Arith::new(group), p)
}

/// True iff every element of `P` has a unique coefficient representation,
/// i.e. `|P| = ∏(2L_i + 1)`.
pub fn is_proper(group: &AbelianGroup, p: &Progression) -> bool {
    is_proper_inner(&Arith::new(group), p)
}

/// Proper, and additionally `x − y ∉ Q` for all distinct `x, y ∈ P`.
pub fn is_proper_mod(group: &AbelianGroup, p: &Progression, q: &SymmetricSet) -> bool {
    is_proper_mod_inner(&Arith::new(group), p, q)
}

/// Divisibility of `A` by `Q`: congruence mod `Q` is transitive on `A` and
/// respects addition. Both quantifiers reduce exactly to `D + D ⊆ Q` where
/// `D = (A − A) ∩ Q` is the set of differences realized inside `A`.
pub fn is_divisible(group: &AbelianGroup, a: &ElementSet, q: &SymmetricSet) -> bool {
    is_divisible_inner(&Arith::new(group), a, q)
}

/// `A + B` (Minkowski sum), exact.
pub fn minkowski_sum(group: &AbelianGroup, a: &ElementSet, b: &ElementSet) -> ElementSet {
    minkowski_inner(&Arith::new(group), a, b)
}

/// `mA`, the m-fold sumset; `0A = {0}`.
pub fn sumset_power(group: &AbelianGroup, a: &ElementSet, m: u64) -> ElementSet {
    sumset_power_inner(&Arith::new(group), a, m)
}

/// The word ball `rÂ` where `Â` is the symmetrization of `generators`
/// (including 0).
pub fn generator_ball(group: &AbelianGroup, generators: &[usize], r: u64) -> ElementSet {
    let ar = Arith::new(group);
    let steps = symmetric_steps(&ar, generators);
    let lev = bfs_levels(&ar, &steps, [0u32]);
    let mut ball = ElementSet::new(ar.order());
    for (x, &d) in lev.iter().enumerate() {
        if d != UNREACHABLE && d as u64 <= r {
            ball.insert(x as u32);
        }
    }
    ball
}

/// Inductive proper-progression extraction: returns lengths `L_i ≤ r` (in a
/// reported generator permutation) such that `P` is proper mod `Q`,
/// `P ⊆ rÂ`, and `rÂ ⊆ C_k(P + Q + Â)`. The output is re-certified before
/// returning; a certificate failure is an error, never silent.
pub fn extract_progression(
    group: &AbelianGroup,
    generators: &[usize],
    q: &SymmetricSet,
    r: u64,
) -> Result<ExtractionResult, ProgressionError> {
    let order = group.order();
    for &g in generators {
        if g >= order {
            return Err(ProgressionError::ElementOutOfRange { element: g, order });
        }
    }
    let ar = Arith::new(group);
    let k = generators.len();

    let steps = symmetric_steps(&ar, generators);
    let lev = bfs_levels(&ar, &steps, [0u32]);
    let mut ball = ElementSet::new(order);
    for (x, &d) in lev.iter().enumerate() {
        if d != UNREACHABLE && d as u64 <= r {
            ball.insert(x as u32);
        }
    }
    if !is_divisible_inner(&ar, &ball, q) {
        return Err(ProgressionError::NotDivisible);
    }

    let slots: Vec<(usize, usize)> = generators.iter().copied().enumerate().collect();
    let (final_order, lengths) = extract_inner(&ar, &slots, q, r);
    let permutation: Vec<usize> = final_order.iter().map(|&(slot, _)| slot).collect();
    let perm_gens: Vec<usize> = final_order.iter().map(|&(_, g)| g).collect();
    let prog = Progression::new(perm_gens.clone(), lengths.clone());

    let c = cover_constant(k);
    if lengths.iter().any(|&l| l > r) {
        return Err(ProgressionError::Certification(format!(
            "length exceeds r={r}: {lengths:?}"
        )));
    }
    if !is_proper_mod_inner(&ar, &prog, q) {
        return Err(ProgressionError::Certification(format!(
            "progression {lengths:?} is not proper mod Q"
        )));
    }
    match verify_cover_inner(&ar, &prog, q, generators, r, c) {
        CoverOutcome::Verified => {}
        CoverOutcome::NotSubset { witness } => {
            return Err(ProgressionError::Certification(format!(
                "element {witness} of P lies outside the r-ball"
            )));
        }
        CoverOutcome::NotCovered { witness } => {
            return Err(ProgressionError::Certification(format!(
                "ball element {witness} not covered by C_k(P+Q+Â)"
            )));
        }
    }
    Ok(ExtractionResult {
        generators: perm_gens,
        lengths,
        permutation,
        proper_mod_q: true,
        subset_of_ball: true,
        cover_constant_used: c,
    })
}

/// Outcome of a covering check `P ⊆ rÂ ⊆ C(P + Q + Â)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    Verified,
    /// An element of `P` outside the ball `rÂ`.
    NotSubset { witness: usize },
    /// A ball element not reachable in `C` steps of `P + Q + Â`.
    NotCovered { witness: usize },
}

impl CoverOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, CoverOutcome::Verified)
    }
}

/// Checks both containments `P ⊆ rÂ` and `rÂ ⊆ C(P + Q + Â)` exactly,
/// reporting the smallest-index counterexample on failure.
pub fn verify_cover(
    group: &AbelianGroup,
    p: &Progression,
    q: &SymmetricSet,
    generators: &[usize],
    r: u64,
    c: u64,
) -> Result<CoverOutcome, ProgressionError> {
    let order = group.order();
    if order > CERTIFICATION_LIMIT {
        return Err(ProgressionError::TooLarge { order, limit: CERTIFICATION_LIMIT });
    }
    Ok(verify_cover_inner(&Arith::new(group), p, q, generators, r, c))
}

/// Exhaustive oracle: scans all length vectors in `[0, r]^k` and returns the
/// lengths of a maximal-volume progression proper mod `Q` (lexicographically
/// smallest among ties). Errors if `(r+1)^k` exceeds `budget`.
pub fn brute_force_max_proper(
    group: &AbelianGroup,
    generators: &[usize],
    q: &SymmetricSet,
    r: u64,
    budget: u64,
) -> Result<Vec<u64>, ProgressionError> {
    let k = generators.len();
    let needed = (r + 1).checked_pow(k as u32);
    match needed {
        Some(n) if n <= budget => {}
        _ => {
            return Err(ProgressionError::BudgetExceeded {
                needed: needed.unwrap_or(u64::MAX),
                budget,
            })
        }
    }
    let ar = Arith::new(group);
    let mut best_vol = 0u128;
    let mut best: Vec<u64> = vec![];
    let mut lengths = vec![0u64; k];
    loop {
        let p = Progression::new(generators.to_vec(), lengths.clone());
        // the all-zero vector is always proper, so `best` is always set
        if p.volume() > best_vol && is_proper_mod_inner(&ar, &p, q) {
            best_vol = p.volume();
            best = lengths.clone();
        }
        // odometer in lexicographic order, so first maximum wins ties
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(best);
            }
            i -= 1;
            if lengths[i] < r {
                lengths[i] += 1;
                for l in &mut lengths[i + 1..] {
                    *l = 0;
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// internals

fn progression_elements_inner(ar: &Arith, p: &Progression) -> ElementSet {
    let mut out = ElementSet::new(ar.order());
    out.insert(0);
    for (&a, &l) in p.generators.iter().zip(&p.lengths) {
        let mults = multiples_set(ar, a, l);
        out = minkowski_inner(ar, &out, &mults);
    }
    out
}

fn is_proper_inner(ar: &Arith, p: &Progression) -> bool {
    let vol = p.volume();
    if vol > ar.order() as u128 {
        return false;
    }
    progression_elements_inner(ar, p).len() as u128 == vol
}

fn is_proper_mod_inner(ar: &Arith, p: &Progression, q: &SymmetricSet) -> bool {
    if !is_proper_inner(ar, p) {
        return false;
    }
    let elems = progression_elements_inner(ar, p);
    let xs: Vec<u32> = elems.iter().collect();
    for &qe in q.elements() {
        if qe == 0 {
            continue;
        }
        for &x in &xs {
            if elems.contains(ar.add(x as usize, qe as usize) as u32) {
                return false;
            }
        }
    }
    true
}

fn is_divisible_inner(ar: &Arith, a: &ElementSet, q: &SymmetricSet) -> bool {
    let xs: Vec<u32> = a.iter().collect();
    // realized differences D = (A − A) ∩ Q
    let mut d: Vec<u32> = Vec::new();
    for &qe in q.elements() {
        if xs.iter().any(|&x| a.contains(ar.add(x as usize, qe as usize) as u32)) {
            d.push(qe);
        }
    }
    // addition-respect (and with it transitivity) is exactly D + D ⊆ Q
    for &d1 in &d {
        for &d2 in &d {
            if !q.contains(ar.add(d1 as usize, d2 as usize)) {
                return false;
            }
        }
    }
    true
}

fn minkowski_inner(ar: &Arith, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let bs: Vec<u32> = b.iter().collect();
    let mut out = ElementSet::new(ar.order());
    for x in a.iter() {
        for &y in &bs {
            out.insert(ar.add(x as usize, y as usize) as u32);
        }
    }
    out
}

fn sumset_power_inner(ar: &Arith, a: &ElementSet, m: u64) -> ElementSet {
    let mut result = ElementSet::new(ar.order());
    result.insert(0);
    if m == 0 {
        return result;
    }
    let mut base = a.clone();
    let mut mm = m;
    loop {
        if mm & 1 == 1 {
            result = minkowski_inner(ar, &result, &base);
        }
        mm >>= 1;
        if mm == 0 {
            return result;
        }
        let doubled = minkowski_inner(ar, &base, &base);
        if doubled == base {
            // base is closed under addition: all remaining doublings are
            // no-ops and a single further fold absorbs every remaining bit
            if mm > 0 {
                result = minkowski_inner(ar, &result, &base);
            }
            return result;
        }
        base = doubled;
    }
}

/// `{ℓ·a : |ℓ| ≤ max_abs}`.
fn multiples_set(ar: &Arith, a: usize, max_abs: u64) -> ElementSet {
    let mut out = ElementSet::new(ar.order());
    out.insert(0);
    let mut pos = 0usize;
    let mut l = 0u64;
    while l < max_abs {
        pos = ar.add(pos, a);
        l += 1;
        if pos == 0 {
            break; // full cyclic subgroup reached
        }
        out.insert(pos as u32);
        out.insert(ar.neg(pos) as u32);
    }
    out
}

/// Nonzero symmetrized step list for BFS over sumset levels.
fn symmetric_steps(ar: &Arith, gens: &[usize]) -> Vec<u32> {
    let mut v: Vec<u32> = Vec::with_capacity(2 * gens.len());
    for &g in gens {
        v.push(g as u32);
        v.push(ar.neg(g) as u32);
    }
    v.sort_unstable();
    v.dedup();
    v.retain(|&x| x != 0);
    v
}

/// Multi-source BFS distance in steps of `steps`; `lev[x] = min{m : x ∈ m·X + seeds}`.
fn bfs_levels(ar: &Arith, steps: &[u32], seeds: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; ar.order()];
    let mut queue = VecDeque::new();
    for s in seeds {
        if dist[s as usize] == UNREACHABLE {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        let dx = dist[x as usize];
        for &st in steps {
            let y = ar.add(x as usize, st as usize) as u32;
            if dist[y as usize] == UNREACHABLE {
                dist[y as usize] = dx + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Base case `k = 1`: the largest `L ≤ r` with `t·a ∉ Q` for `1 ≤ t ≤ 2L`.
fn base_case_length(ar: &Arith, a: usize, q: &SymmetricSet, r: u64) -> u64 {
    let mut pos = 0usize;
    let mut t = 0u64;
    while t < 2 * r {
        t += 1;
        pos = ar.add(pos, a);
        if q.contains(pos) {
            // smallest bad multiple is t, so 2L ≤ t − 1
            return (t - 1) / 2;
        }
    }
    r
}

/// The inductive step. `slots` carries (original position, element index)
/// pairs; returns the final generator order with one length per slot.
fn extract_inner(
    ar: &Arith,
    slots: &[(usize, usize)],
    q: &SymmetricSet,
    r: u64,
) -> (Vec<(usize, usize)>, Vec<u64>) {
    let k = slots.len();
    if k == 0 {
        return (vec![], vec![]);
    }
    if k == 1 {
        let l = base_case_length(ar, slots[0].1, q, r);
        return (slots.to_vec(), vec![l]);
    }
    let gens: Vec<usize> = slots.iter().map(|&(_, g)| g).collect();
    let steps = symmetric_steps(ar, &gens);
    let lev = bfs_levels(ar, &steps, [0u32]);
    let lev_q = bfs_levels(ar, &steps, q.elements().iter().copied());

    // effective radius: the largest s ≤ r where sÂ escapes (s−1)Â + Q, with
    // the BFS-lex smallest witness x (scan order is ascending element index)
    let mut r_eff = 0u64;
    let mut witness = 0usize;
    for x in 0..ar.order() {
        if lev[x] == UNREACHABLE {
            continue;
        }
        let s = lev[x] as u64;
        if s >= 1 && s <= r && lev_q[x] == lev[x] && s > r_eff {
            r_eff = s;
            witness = x;
        }
    }
    if r_eff == 0 {
        // rÂ collapses into Q; the trivial progression {0} certifies
        return (slots.to_vec(), vec![0; k]);
    }

    // suffix minimum-weight tables: w[j][y] = min Σ|m_i| over representations
    // y = Σ_{i ≥ j} m_i a_i  (w[k] is the indicator of 0)
    let mut w: Vec<Vec<u32>> = Vec::with_capacity(k + 1);
    w.push(lev.clone());
    for j in 1..k {
        let ssteps = symmetric_steps(ar, &gens[j..]);
        w.push(bfs_levels(ar, &ssteps, [0u32]));
    }
    let mut trivial = vec![UNREACHABLE; ar.order()];
    trivial[0] = 0;
    w.push(trivial);

    // lexicographically smallest coefficient vector of total weight r_eff
    let mut m = vec![0i64; k];
    let mut cur = witness;
    let mut budget = r_eff as i64;
    for j in 0..k {
        let wnext = &w[j + 1];
        let neg_a = ar.neg(gens[j]);
        // y(cand) = cur − cand·a_j, walked incrementally from cand = −budget
        let mut y = cur;
        for _ in 0..budget {
            y = ar.add(y, gens[j]);
        }
        let mut chosen = None;
        for cand in -budget..=budget {
            let rem = budget - cand.abs();
            if wnext[y] != UNREACHABLE && (wnext[y] as i64) <= rem {
                chosen = Some((cand, y, rem));
                break;
            }
            y = ar.add(y, neg_a);
        }
        let (cand, y, rem) = chosen.expect("witness has a representation of weight r_eff");
        m[j] = cand;
        cur = y;
        budget = rem;
    }
    debug_assert_eq!(cur, 0);
    debug_assert_eq!(m.iter().map(|x| x.unsigned_abs()).sum::<u64>(), r_eff);

    // pivot: maximal |m_j|, ties broken by the largest index
    let mut pivot = 0usize;
    for j in 1..k {
        if m[j].unsigned_abs() >= m[pivot].unsigned_abs() {
            pivot = j;
        }
    }
    let mk = m[pivot].unsigned_abs();
    let l_pivot = mk / (4 * k as u64);

    // Q' = P_{a_pivot}(m_k/2) + Q (half-integer length: integer |ℓ| ≤ m_k/2)
    let mults = multiples_set(ar, gens[pivot], mk / 2);
    let q_next = SymmetricSet::from_set_unchecked(minkowski_inner(ar, &mults, q.set()));

    // minimal n with ⌊m_k/4k⌋Â' ⊆ nÂ' + Q'
    let rest: Vec<(usize, usize)> =
        slots.iter().enumerate().filter(|&(j, _)| j != pivot).map(|(_, &s)| s).collect();
    let rest_gens: Vec<usize> = rest.iter().map(|&(_, g)| g).collect();
    let rest_steps = symmetric_steps(ar, &rest_gens);
    let lev_rest = bfs_levels(ar, &rest_steps, [0u32]);
    let lev_rest_q = bfs_levels(ar, &rest_steps, q_next.elements().iter().copied());
    let mut n = 0u64;
    for x in 0..ar.order() {
        if lev_rest[x] != UNREACHABLE && (lev_rest[x] as u64) <= l_pivot {
            debug_assert_ne!(lev_rest_q[x], UNREACHABLE);
            n = n.max(lev_rest_q[x] as u64);
        }
    }

    let (mut order_out, mut lengths_out) = extract_inner(ar, &rest, &q_next, n);
    order_out.push(slots[pivot]);
    lengths_out.push(l_pivot);
    (order_out, lengths_out)
}

fn verify_cover_inner(
    ar: &Arith,
    p: &Progression,
    q: &SymmetricSet,
    generators: &[usize],
    r: u64,
    c: u64,
) -> CoverOutcome {
    let steps = symmetric_steps(ar, generators);
    let lev = bfs_levels(ar, &steps, [0u32]);
    let elems = progression_elements_inner(ar, p);
    for x in elems.iter() {
        if lev[x as usize] == UNREACHABLE || (lev[x as usize] as u64) > r {
            return CoverOutcome::NotSubset { witness: x as usize };
        }
    }
    let mut ahat = ElementSet::new(ar.order());
    ahat.insert(0);
    for &s in &steps {
        ahat.insert(s);
    }
    let x_set = minkowski_inner(ar, &minkowski_inner(ar, &elems, q.set()), &ahat);
    let x_steps: Vec<u32> = x_set.iter().filter(|&x| x != 0).collect();
    let lev_x = bfs_levels(ar, &x_steps, [0u32]);
    for y in 0..ar.order() {
        if lev[y] != UNREACHABLE && (lev[y] as u64) <= r {
            // y ∈ mX for m ≤ C iff the step distance is ≤ C (0 ∈ X)
            if lev_x[y] == UNREACHABLE || (lev_x[y] as u64) > c {
                return CoverOutcome::NotCovered { witness: y };
            }
        }
    }
    CoverOutcome::Verified
}
