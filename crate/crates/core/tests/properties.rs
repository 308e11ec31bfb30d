use nonbasis::constructions::{initial_segment, segment_size_prediction};
use nonbasis::group::factor_index;
use nonbasis::{
    certify, group_types_of_order, hfold, stabilizer, sumset, GroupType, Quotient, Subgroup, Subset,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(seed: u64) -> Config {
    Config {
        cases: 1000,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        max_global_rejects: 100_000,
        ..Config::default()
    }
}

fn all_types(max: u64) -> Vec<GroupType> {
    (2..=max).flat_map(group_types_of_order).collect()
}

fn group(max: u64) -> impl Strategy<Value = GroupType> {
    prop::sample::select(all_types(max))
}

fn nonempty(g: &GroupType, bits: u64) -> Subset {
    let n = g.order();
    let mask = if n == 64 { bits } else { bits & ((1 << n) - 1) };
    let mut s = Subset::from_mask(n, mask);
    if s.is_empty() {
        s.insert((bits % n as u64) as usize);
    }
    s
}

fn group_and_set(max: u64) -> impl Strategy<Value = (GroupType, Subset)> {
    (group(max), any::<u64>()).prop_map(|(g, bits)| {
        let a = nonempty(&g, bits);
        (g, a)
    })
}

/// Sums computed coordinate by coordinate, independent of index arithmetic.
fn naive_sumset(g: &GroupType, a: &Subset, b: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for x in a {
        for y in b {
            let cx = g.coords(g.element(x).unwrap());
            let cy = g.coords(g.element(y).unwrap());
            let sum: Vec<u64> = cx
                .iter()
                .zip(&cy)
                .zip(g.factors())
                .map(|((&p, &q), &n)| ((p + q) % n) as u64)
                .collect();
            out.insert(g.element_from_coords(&sum).unwrap().index());
        }
    }
    out
}

fn naive_hfold(g: &GroupType, a: &Subset, h: usize) -> Subset {
    let mut acc = a.clone();
    for _ in 1..h {
        acc = naive_sumset(g, &acc, a);
    }
    acc
}

proptest! {
    #![proptest_config(config(1))]
    #[test]
    fn kneser_inequality((g, a) in group_and_set(64), h in 2usize..=4) {
        let c = certify(&g, &a, h).unwrap();
        let k = c.stabilizer.order();
        prop_assert!(c.hfold_size as i64 >= h as i64 * a.len() as i64 - (h as i64 - 1) * k as i64);
        prop_assert_eq!(c.hfold_size, c.k2 * k);
        prop_assert!(c.k1 * k >= a.len());
    }
}

proptest! {
    #![proptest_config(config(2))]
    #[test]
    fn bitset_matches_naive((g, a) in group_and_set(40), bits in any::<u64>(), h in 1usize..=4) {
        let b = nonempty(&g, bits.rotate_left(17));
        prop_assert_eq!(sumset(&g, &a, &b).unwrap(), naive_sumset(&g, &a, &b));
        prop_assert_eq!(hfold(&g, &a, h).unwrap(), naive_hfold(&g, &a, h));
    }
}

proptest! {
    #![proptest_config(config(3))]
    #[test]
    fn lifting_scales_sizes(g in group(64), pick in any::<usize>(), bits in any::<u64>(), h in 1usize..=4) {
        let divisors = nonbasis::group::divisors(g.order() as u64);
        // The trivial quotient has no invariant-factor form.
        let d = divisors[1 + pick % (divisors.len() - 1)];
        let q = Quotient::canonical(&g, &factor_index(&g, d, false).unwrap()).unwrap();
        let target = q.target().clone();
        let b = Subset::from_mask(target.order(), bits & ((1u128 << target.order()) - 1) as u64);
        prop_assume!(!b.is_empty());
        let a = q.lift(&g, &b).unwrap();
        let scale = g.order() / d as usize;
        prop_assert_eq!(q.kernel().order(), scale);
        prop_assert_eq!(a.len(), scale * b.len());
        prop_assert_eq!(hfold(&g, &a, h).unwrap().len(), scale * hfold(&target, &b, h).unwrap().len());
        prop_assert_eq!(q.image(&g, &a), b);
    }
}

proptest! {
    #![proptest_config(config(4))]
    #[test]
    fn segment_sizes(g in group(64), h in 1usize..=4, seeds in prop::collection::vec(any::<u32>(), 6), star in any::<bool>()) {
        let f = g.factors();
        let r = f.len();
        let need = if star { 3 } else { 1 };
        let top = (f[r - 1] as usize - 1) / h;
        prop_assume!(top >= need);
        let mut m = 0usize;
        for (k, &n) in f.iter().enumerate() {
            let bound = (n as usize - 1) / h + 1;
            let q = if k + 1 == r {
                need + seeds[k] as usize % (top - need + 1)
            } else {
                seeds[k] as usize % bound
            };
            m = m * n as usize + q;
        }
        prop_assume!(m < g.order());
        let predicted = segment_size_prediction(&g, m, h, star).unwrap();
        let seg = initial_segment(&g, m, star).unwrap();
        prop_assert_eq!(seg.len(), m);
        let hs = hfold(&g, &seg, h).unwrap();
        prop_assert_eq!(hs.len(), predicted);
        if !star {
            prop_assert_eq!(hs, Subset::prefix(g.order(), h * m - h + 1));
        }
    }
}

fn pierced_line(g: &GroupType, x: usize) -> Subset {
    let mut line = Subgroup::cyclic(g, x).members().clone();
    line.remove(0);
    line
}

fn pierced_groups() -> Vec<GroupType> {
    vec![
        GroupType::elementary(3, 2).unwrap(),
        GroupType::elementary(5, 2).unwrap(),
        GroupType::elementary(7, 2).unwrap(),
        GroupType::elementary(7, 3).unwrap(),
    ]
}

#[test]
fn pierced_lines_partition() {
    for g in pierced_groups() {
        let p = g.factors()[0] as usize;
        let mut seen = Subset::empty(g.order());
        let mut lines = 0;
        for x in 1..g.order() {
            if seen.contains(x) {
                continue;
            }
            let line = pierced_line(&g, x);
            assert_eq!(line.len(), p - 1);
            assert!(line.is_disjoint(&seen));
            seen.union_with(&line);
            lines += 1;
        }
        assert_eq!(lines, (g.order() - 1) / (p - 1), "{g}");
        assert_eq!(seen.len(), g.order() - 1);
    }
}

proptest! {
    #![proptest_config(config(5))]
    #[test]
    fn pierced_lines_equal_or_disjoint(which in 0usize..4, x in 1usize..343, y in 1usize..343) {
        let g = &pierced_groups()[which];
        let (x, y) = (1 + x % (g.order() - 1), 1 + y % (g.order() - 1));
        let (lx, ly) = (pierced_line(g, x), pierced_line(g, y));
        prop_assert!(lx.contains(x));
        prop_assert!(lx == ly || lx.is_disjoint(&ly));
        prop_assert_eq!(lx == ly, lx.contains(y));
    }
}

proptest! {
    #![proptest_config(config(6))]
    #[test]
    fn translation_covariance((g, a) in group_and_set(64), t in any::<usize>(), h in 1usize..=4) {
        let t = t % g.order();
        let shifted = g.translate(&a, t);
        let ha = hfold(&g, &a, h).unwrap();
        prop_assert_eq!(hfold(&g, &shifted, h).unwrap(), g.translate(&ha, g.mul_idx(h as u64, t)));
    }

    #[test]
    fn monotone((g, a) in group_and_set(64), extra in any::<u64>(), h in 1usize..=4) {
        let b = a.union(&nonempty(&g, extra));
        prop_assert!(hfold(&g, &a, h).unwrap().is_subset(&hfold(&g, &b, h).unwrap()));
        prop_assert!(hfold(&g, &a, h).unwrap().is_subset(&hfold(&g, &a, h + 1).unwrap()) || !a.contains(0));
    }

    #[test]
    fn stabilizer_is_maximal((g, a) in group_and_set(64)) {
        let s = stabilizer(&g, &a).unwrap();
        for t in 0..g.order() {
            prop_assert_eq!(g.translate(&a, t) == a, s.contains(t));
        }
        prop_assert_eq!(g.order() % s.order(), 0);
    }
}

proptest! {
    #![proptest_config(config(7))]
    #[test]
    fn group_axioms(g in group(64), x in any::<usize>(), y in any::<usize>(), z in any::<usize>()) {
        let n = g.order();
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(g.add_idx(x, y), g.add_idx(y, x));
        prop_assert_eq!(g.add_idx(g.add_idx(x, y), z), g.add_idx(x, g.add_idx(y, z)));
        prop_assert_eq!(g.add_idx(x, 0), x);
        prop_assert_eq!(g.add_idx(x, g.neg_idx(x)), 0);
        prop_assert_eq!(g.mul_idx(g.exponent() as u64, x), 0);
        prop_assert_eq!(g.exponent() as usize % g.element_order(x), 0);
    }

    #[test]
    fn coordinates_round_trip(g in group(64), x in any::<usize>()) {
        let e = g.element(x % g.order()).unwrap();
        let c: Vec<u64> = g.coords(e).iter().map(|&v| v as u64).collect();
        prop_assert_eq!(g.element_from_coords(&c).unwrap(), e);
    }
}
