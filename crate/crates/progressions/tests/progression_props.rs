use perc_cayley::{AbelianGroup, FiniteGroup};
use perc_progressions::{
    corpus, extract_progression, generator_ball, is_divisible, is_proper_mod, minkowski_sum,
    progression_elements, sumset_power, ElementSet, Progression, SymmetricSet,
};
use proptest::prelude::*;

fn arb_group() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(2u64..=10, 1..=2).prop_map(|m| AbelianGroup::new(&m))
}

fn arb_symmetric(order: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..order, 0..=2)
}

proptest! {
    // concatenating progressions that are proper mod Q and proper mod
    // P(2K..) + Q respectively stays proper mod Q; checked for every small
    // length vector whose antecedents hold
    #[test]
    fn concatenation_preserves_properness(
        g in arb_group(),
        a_raw in prop::collection::vec(0usize..1000, 1..=2),
        b_raw in prop::collection::vec(0usize..1000, 1..=2),
        q_seed in prop::collection::vec(0usize..1000, 0..=1),
    ) {
        let order = g.order();
        let a: Vec<usize> = a_raw.iter().map(|x| x % order).collect();
        let b: Vec<usize> = b_raw.iter().map(|x| x % order).collect();
        let q = SymmetricSet::symmetrize(&g, &q_seed.iter().map(|x| x % order).collect::<Vec<_>>());

        let vectors = |k: usize| -> Vec<Vec<u64>> {
            match k {
                1 => (0..=2u64).map(|x| vec![x]).collect(),
                _ => (0..=2u64).flat_map(|x| (0..=2u64).map(move |y| vec![x, y])).collect(),
            }
        };
        for ks in vectors(a.len()) {
            let pa = Progression::new(a.clone(), ks.clone());
            if !is_proper_mod(&g, &pa, &q) {
                continue;
            }
            let doubled = Progression::new(a.clone(), ks.iter().map(|&k| 2 * k).collect());
            let shifted = minkowski_sum(&g, &progression_elements(&g, &doubled), q.set());
            let q_shift = SymmetricSet::from_set(&g, shifted).expect("sum of symmetric sets");
            for ls in vectors(b.len()) {
                let pb = Progression::new(b.clone(), ls.clone());
                if !is_proper_mod(&g, &pb, &q_shift) {
                    continue;
                }
                let concat = Progression::new(
                    a.iter().chain(&b).copied().collect(),
                    ks.iter().chain(&ls).copied().collect(),
                );
                prop_assert!(is_proper_mod(&g, &concat, &q));
            }
        }
    }

    // is_divisible against the literal quantifier evaluation
    #[test]
    fn divisibility_equals_naive(
        n in 2usize..=12,
        a_mask in 0u16..,
        q_seed in prop::collection::vec(0usize..12, 0..=3),
    ) {
        let g = AbelianGroup::new(&[n as u64]);
        let a = ElementSet::from_indices(n, (0..n as u32).filter(|&i| a_mask >> (i % 16) & 1 == 1));
        let q = SymmetricSet::symmetrize(&g, &q_seed.iter().map(|x| x % n).collect::<Vec<_>>());
        let xs: Vec<usize> = a.iter().map(|x| x as usize).collect();
        let sub = |x: usize, y: usize| g.add(x, g.neg(y));
        let mut naive = true;
        'outer: for &x in &xs {
            for &y in &xs {
                for &z in &xs {
                    if q.contains(sub(x, y)) && q.contains(sub(y, z)) && !q.contains(sub(x, z)) {
                        naive = false;
                        break 'outer;
                    }
                }
            }
        }
        if naive {
            'outer2: for &x in &xs {
                for &xp in &xs {
                    if !q.contains(sub(x, xp)) { continue; }
                    for &y in &xs {
                        for &yp in &xs {
                            if q.contains(sub(y, yp))
                                && !q.contains(sub(g.add(x, y), g.add(xp, yp)))
                            {
                                naive = false;
                                break 'outer2;
                            }
                        }
                    }
                }
            }
        }
        prop_assert_eq!(is_divisible(&g, &a, &q), naive);
    }

    // every corpus instance extracts and certifies
    #[test]
    fn extraction_certifies_on_random_instances(seed in 0u64..1 << 48) {
        let inst = &corpus::corpus(seed, 1, 128, 3)[0];
        let res = extract_progression(&inst.group, &inst.generators, &inst.q, inst.r)
            .expect("corpus instances satisfy the divisibility precondition");
        prop_assert!(res.proper_mod_q && res.subset_of_ball);
        prop_assert!(res.lengths.iter().all(|&l| l <= inst.r));
        prop_assert_eq!(res.lengths.len(), inst.generators.len());
    }

    // relabeling the generators still certifies (lengths may differ)
    #[test]
    fn extraction_survives_generator_relabeling(seed in 0u64..1 << 48) {
        let inst = &corpus::corpus(seed, 1, 96, 3)[0];
        let mut reversed = inst.generators.clone();
        reversed.reverse();
        let a = extract_progression(&inst.group, &inst.generators, &inst.q, inst.r).unwrap();
        let b = extract_progression(&inst.group, &reversed, &inst.q, inst.r).unwrap();
        prop_assert!(a.proper_mod_q && b.proper_mod_q);
    }

    // progression element sets are symmetric and contain 0
    #[test]
    fn progression_sets_are_symmetric(
        g in arb_group(),
        gens_raw in prop::collection::vec(0usize..1000, 1..=3),
        lens in prop::collection::vec(0u64..=3, 3),
    ) {
        let order = g.order();
        let gens: Vec<usize> = gens_raw.iter().map(|x| x % order).collect();
        let p = Progression::new(gens.clone(), lens[..gens.len()].to_vec());
        let e = progression_elements(&g, &p);
        prop_assert!(e.contains(0));
        for x in e.iter() {
            prop_assert!(e.contains(g.neg(x as usize) as u32));
        }
    }

    // mA ⊆ mB when A ⊆ B, and the ball matches the iterated sumset
    #[test]
    fn sumsets_monotone_and_match_balls(
        g in arb_group(),
        gens_raw in prop::collection::vec(0usize..1000, 1..=2),
        m in 0u64..=5,
    ) {
        let order = g.order();
        let gens: Vec<usize> = gens_raw.iter().map(|x| x % order).collect();
        let mut ahat = ElementSet::new(order);
        ahat.insert(0);
        for &x in &gens {
            ahat.insert(x as u32);
            ahat.insert(g.neg(x) as u32);
        }
        let power = sumset_power(&g, &ahat, m);
        prop_assert_eq!(&power, &generator_ball(&g, &gens, m));
        let full = ElementSet::full(order);
        let bigger = sumset_power(&g, &full, m);
        for x in power.iter() {
            prop_assert!(bigger.contains(x));
        }
    }
}
