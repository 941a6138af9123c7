use std::sync::Arc;

use proptest::prelude::*;
use strip_cells::*;
use strip_chains::*;
use strip_maps::*;

fn weighted(weights: &[u64]) -> WeightedSet {
    WeightedSet::new(weights.iter().enumerate().map(|(i, &w)| WeightedLabel::new(i as Label + 1, w)).collect()).unwrap()
}

/// A random chain with the given kind on labels `1..=weights.len()`.
fn random_chain(kind: Kind, weights: &[u64], w: u64, pick: u64, coeffs: &[i64]) -> ChainVector {
    let spec = Arc::new(ComplexSpec::new(kind, weighted(weights), Width::Bounded(w)).unwrap());
    let dims: Vec<u64> = (0..=spec.top_dim()).filter(|&d| spec.count_cells(d) > 0).collect();
    let d = dims[(pick % dims.len() as u64) as usize];
    let cells = spec.enumerate(d);
    let terms = coeffs.iter().enumerate().map(|(i, &c)| (cells[(pick as usize / 5 + i * 7) % cells.len()].clone(), q(c)));
    ChainVector::from_terms(spec.clone(), d, terms).unwrap()
}

fn params() -> impl Strategy<Value = (Vec<u64>, u64, u64, Vec<i64>)> {
    (
        proptest::collection::vec(1u64..=3, 1..=4),
        1u64..=6,
        any::<u64>(),
        proptest::collection::vec(-3i64..=3, 1..=4),
    )
        .prop_filter("small", |(ws, w, _, _)| ws.iter().sum::<u64>() <= 7 && ws.iter().all(|x| x <= w))
}

fn same(a: &ChainVector, b: &ChainVector) -> bool {
    a.spec() == b.spec() && a.terms().eq(b.terms())
}

/// Literal average over every ordering of the labels.
fn q_oracle(x: &ChainVector) -> ChainVector {
    let labels = x.labels();
    let perms = orderings(&labels);
    let n = perms.len() as i64;
    let mut acc: Option<ChainVector> = None;
    for p in perms {
        let y = include_permutohedron(&p, x).unwrap();
        match acc.as_mut() {
            None => acc = Some(y),
            Some(a) => a.add_scaled(&y, &q(1)).unwrap(),
        }
    }
    acc.unwrap().scale(&q_frac(1, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn inclusions_are_chain_maps((ws, w, pick, cs) in params(), sigma_pick in any::<usize>()) {
        let x = random_chain(Kind::Permutohedron, &ws, w, pick, &cs);
        let perms = orderings(&x.labels());
        let sigma = &perms[sigma_pick % perms.len()];
        let lhs = include_permutohedron(sigma, &x).unwrap().boundary().unwrap();
        let dx = x.boundary().unwrap();
        let rhs = include_permutohedron(sigma, &dx).unwrap();
        prop_assert_eq!(lhs.into_terms(), rhs.into_terms());
    }

    #[test]
    fn q_matches_literal_average_and_is_a_chain_map((ws, w, pick, cs) in params()) {
        let x = random_chain(Kind::Permutohedron, &ws, w, pick, &cs);
        let qx = averaged_inclusion_q(&x).unwrap();
        prop_assert!(same(&qx, &q_oracle(&x)));
        qx.validate().unwrap();
        let lhs = qx.boundary().unwrap();
        let rhs = averaged_inclusion_q(&x.boundary().unwrap()).unwrap();
        prop_assert_eq!(lhs.into_terms(), rhs.into_terms());
    }

    #[test]
    fn p_after_q_is_identity((ws, w, pick, cs) in params()) {
        let x = random_chain(Kind::Permutohedron, &ws, w, pick, &cs);
        let back = project_p(&averaged_inclusion_q(&x).unwrap(), x.spec().labels()).unwrap();
        prop_assert!(same(&back, &x));
    }

    #[test]
    fn p_is_a_chain_map((ws, w, pick, cs) in params()) {
        let x = random_chain(Kind::OrderedCell, &ws, w, pick, &cs);
        let lhs = project_p_ascending(&x).unwrap().boundary().unwrap();
        let rhs = project_p_ascending(&x.boundary().unwrap()).unwrap();
        prop_assert_eq!(lhs.into_terms(), rhs.into_terms());
    }

    #[test]
    fn spin_is_a_chain_map_and_dies_under_p((ws, w, pick, cs) in params(), split in any::<u64>()) {
        prop_assume!(ws.iter().any(|&x| x >= 2));
        let x = random_chain(Kind::OrderedCell, &ws, w, pick, &cs);
        let a = ws.iter().position(|&x| x >= 2).unwrap();
        let wa = ws[a];
        let wb = 1 + split % (wa - 1);
        let step = SpinStep::new(a as Label + 1, a as Label + 1, 9, wb, wa - wb);
        let y = spin(&step, &x).unwrap();
        y.validate().unwrap();
        prop_assert_eq!(y.degree(), x.degree());
        let lhs = y.boundary().unwrap();
        let rhs = spin(&step, &x.boundary().unwrap()).unwrap();
        prop_assert_eq!(lhs.into_terms(), rhs.into_terms());
        prop_assert!(project_p_ascending(&y).unwrap().is_zero());
    }

    #[test]
    fn q_commutes_with_relabeling((ws, w, pick, cs) in params(), perm_pick in any::<usize>()) {
        let x = random_chain(Kind::Permutohedron, &ws, w, pick, &cs);
        let labels = x.labels();
        let perms = orderings(&labels);
        let image = &perms[perm_pick % perms.len()];
        // Relabeling must keep weights, so only permute labels of equal weight.
        let set = x.spec().labels();
        prop_assume!(labels.iter().zip(image).all(|(&a, &b)| set.weight(a) == set.weight(b)));
        let r = Relabeling::from_sequences(&labels, image).unwrap();
        let lhs = averaged_inclusion_q(&x.relabel(&r).unwrap()).unwrap();
        let rhs = averaged_inclusion_q(&x).unwrap().relabel(&r).unwrap();
        prop_assert_eq!(lhs.into_terms(), rhs.into_terms());
    }

    #[test]
    fn spin_steps_on_different_wheels_commute(sigma_pick in any::<usize>(), extra in 0u64..=2, cpick in any::<u64>()) {
        let set = WeightedSet::range(5);
        let perms = orderings(&[1, 2, 3, 4, 5]);
        let sigma = &perms[sigma_pick % perms.len()];
        let wheels = wheel_decomposition(sigma, &set).unwrap();
        let w = wheels.weights.iter().max().unwrap() + extra;
        let source = ComplexSpec::ordered(wheels.weighted_set(), Width::Bounded(w)).unwrap();
        let dims: Vec<u64> = (0..=source.top_dim()).filter(|&d| source.count_cells(d) > 0).collect();
        let cells = source.enumerate(dims[cpick as usize % dims.len()]);
        let x = ChainVector::from_cell(source, cells[(cpick as usize) % cells.len()].clone()).unwrap();
        let forward = spin_sigma(sigma, &set, &x).unwrap();
        // Run the wheels in reverse order.
        let program = spin_sigma_program(sigma, &set).unwrap();
        let mut groups: Vec<Vec<SpinStep>> = Vec::new();
        for s in program.steps {
            match groups.last_mut() {
                Some(g) if g[0].a == s.a => g.push(s),
                _ => groups.push(vec![s]),
            }
        }
        groups.reverse();
        let reversed = SpinProgram { steps: groups.concat() }.apply(&x).unwrap();
        prop_assert!(same(&forward, &reversed));
    }
}

#[test]
fn spin_of_two_wheels_factors_either_way() {
    let set = WeightedSet::range(4);
    let sigma = [2u32, 1, 4, 3];
    let source = ComplexSpec::ordered("2:2 4:2".parse().unwrap(), Width::Bounded(2)).unwrap();
    let x = ChainVector::from_cell(source, "2|4".parse().unwrap()).unwrap();
    let s21 = SpinStep::new(2, 2, 1, 1, 1);
    let s43 = SpinStep::new(4, 4, 3, 1, 1);
    let a = spin(&s43, &spin(&s21, &x).unwrap()).unwrap();
    let b = spin(&s21, &spin(&s43, &x).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(spin_sigma(&sigma, &set, &x).unwrap(), a);
    assert!(a.is_cycle().unwrap());
}

#[test]
fn spin_tau_sigma_lands_on_sigma_wheels() {
    let set = WeightedSet::range(4);
    let program = spin_tau_sigma_program(&[4, 3, 2, 1], &[2, 1, 3, 4], &set).unwrap();
    let source = ComplexSpec::ordered("4:4".parse().unwrap(), Width::Bounded(4)).unwrap();
    let x = ChainVector::from_cell(source, "4".parse().unwrap()).unwrap();
    let y = program.apply(&x).unwrap();
    assert_eq!(y.spec().labels(), &"2:2 3:1 4:1".parse::<WeightedSet>().unwrap());
    assert!(y.is_cycle().unwrap());
    let json = serde_json::to_string(&program).unwrap();
    let back: SpinProgram = serde_json::from_str(&json).unwrap();
    assert_eq!(back, program);
}
