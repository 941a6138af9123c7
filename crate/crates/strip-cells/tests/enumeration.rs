use std::collections::BTreeSet;

use proptest::prelude::*;
use strip_cells::*;

/// Independent oracle: every permutation with every bar pattern, filtered by
/// width. Permutohedron cells are those whose blocks increase.
fn brute_force(spec: &ComplexSpec) -> BTreeSet<(Weight, Cell)> {
    let labels: Vec<Label> = spec.labels().labels().collect();
    let n = labels.len();
    let mut out = BTreeSet::new();
    for perm in orderings(&labels) {
        for bars in 0..(1u32 << n.saturating_sub(1)) {
            let mut blocks: Vec<Vec<Label>> = vec![vec![perm[0]]];
            for i in 1..n {
                if bars >> (i - 1) & 1 == 1 {
                    blocks.push(Vec::new());
                }
                blocks.last_mut().unwrap().push(perm[i]);
            }
            let cell = Cell::from_blocks(&blocks).unwrap();
            if spec.check(&cell).is_ok() {
                out.insert((spec.wdim(&cell).unwrap(), cell));
            }
        }
    }
    out
}

fn fubini(n: usize) -> u128 {
    // a(n) = sum_k C(n, k) a(n - k)
    let mut a = vec![1u128; n + 1];
    for m in 1..=n {
        let mut binom = 1u128;
        let mut total = 0;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u128 / k as u128;
            total += binom * a[m - k];
        }
        a[m] = total;
    }
    a[n]
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=5 {
        for w in 1..=4 {
            for kind in [Kind::OrderedCell, Kind::Permutohedron] {
                let spec = ComplexSpec::new(kind, WeightedSet::range(n), Width::Bounded(w)).unwrap();
                let oracle = brute_force(&spec);
                let mut ours = BTreeSet::new();
                for d in 0..=spec.top_dim() {
                    let cells = spec.enumerate(d);
                    assert_eq!(spec.count_cells(d), cells.len() as u128);
                    for c in cells {
                        spec.check(&c).unwrap();
                        assert!(ours.insert((d, c)), "duplicate cell");
                    }
                }
                assert_eq!(ours, oracle, "{spec}");
            }
        }
    }
}

#[test]
fn unbounded_totals() {
    for n in 1..=7usize {
        let labels = WeightedSet::range(n as u32);
        let p = ComplexSpec::permutohedron(labels.clone(), Width::Unbounded).unwrap();
        assert_eq!(p.total_cells(), fubini(n));
        let c = ComplexSpec::ordered(labels, Width::Unbounded).unwrap();
        assert_eq!(c.total_cells(), factorial(n) << (n - 1));
    }
}

#[test]
fn enumeration_is_deterministic() {
    let spec = ComplexSpec::conf(5, 3).unwrap();
    for d in 0..5 {
        assert_eq!(spec.enumerate(d), spec.enumerate(d));
    }
}

fn weighted_set() -> impl Strategy<Value = WeightedSet> {
    proptest::collection::vec(1u64..=3, 1..=5).prop_map(|ws| {
        WeightedSet::new(ws.iter().enumerate().map(|(i, &w)| WeightedLabel::new(i as Label + 1, w)).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn weighted_enumeration_matches_brute_force(set in weighted_set(), w in 1u64..=5, perm_kind in any::<bool>()) {
        let kind = if perm_kind { Kind::Permutohedron } else { Kind::OrderedCell };
        let spec = ComplexSpec::new(kind, set, Width::Bounded(w)).unwrap();
        let oracle = brute_force(&spec);
        let ours: BTreeSet<(Weight, Cell)> = (0..=spec.top_dim())
            .flat_map(|d| spec.enumerate(d).into_iter().map(move |c| (d, c)))
            .collect();
        prop_assert_eq!(ours, oracle);
    }

    #[test]
    fn wheels_concatenate_back(seed in proptest::collection::vec(any::<u32>(), 1..=7)) {
        let mut labels: Vec<Label> = (1..=seed.len() as Label).collect();
        let mut keyed: Vec<(u32, Label)> = seed.iter().copied().zip(labels.iter().copied()).collect();
        keyed.sort();
        labels = keyed.into_iter().map(|p| p.1).collect();
        let set = WeightedSet::range(labels.len() as u32);
        let d = wheel_decomposition(&labels, &set).unwrap();
        prop_assert_eq!(d.concat(), labels.clone());
        let mut running = 0;
        for wheel in &d.wheels {
            prop_assert!(wheel[0] > running);
            running = wheel[0];
            prop_assert!(wheel[1..].iter().all(|&l| l < wheel[0]));
        }
        let orbit = s_of_sigma(&labels);
        prop_assert_eq!(orbit.len() as u128, factorial(d.len()));
        prop_assert!(orbit.contains(&labels));
    }

    #[test]
    fn wsgn_is_multiplicative(
        weights in proptest::collection::vec(1u64..=4, 2..=6),
        k1 in proptest::collection::vec(any::<u32>(), 6),
        k2 in proptest::collection::vec(any::<u32>(), 6),
    ) {
        let n = weights.len();
        let set = WeightedSet::new(weights.iter().enumerate().map(|(i, &w)| WeightedLabel::new(i as Label + 1, w)).collect()).unwrap();
        let base: Vec<Label> = (1..=n as Label).collect();
        let shuffle = |keys: &[u32]| {
            let mut v: Vec<(u32, Label)> = keys[..n].iter().copied().zip(base.iter().copied()).collect();
            v.sort();
            v.into_iter().map(|p| p.1).collect::<Vec<Label>>()
        };
        let b = shuffle(&k1);
        let c = shuffle(&k2);
        let ab = wsgn(&base, &b, &set).unwrap();
        let bc = wsgn(&b, &c, &set).unwrap();
        let ac = wsgn(&base, &c, &set).unwrap();
        prop_assert_eq!(ab * bc, ac);
        if weights.iter().all(|w| w % 2 == 1) {
            let positions: Vec<usize> = b.iter().map(|&l| l as usize).collect();
            prop_assert_eq!(ab, inversion_sign(&positions));
        }
    }
}
