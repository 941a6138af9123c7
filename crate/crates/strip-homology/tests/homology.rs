use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;
use strip_cells::*;
use strip_chains::*;
use strip_homology::*;

/// Rank by dense rational Gaussian elimination.
fn dense_rank(m: &BoundaryMatrix) -> usize {
    let mut a: Vec<Vec<Q>> = m.to_dense().into_iter().map(|r| r.into_iter().map(q).collect()).collect();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let v = &a[rank][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_betti(spec: &ComplexSpec) -> Vec<u64> {
    let top = spec.top_dim();
    let cells: Vec<u64> = (0..=top).map(|k| spec.enumerate(k).len() as u64).collect();
    let mut ranks = vec![0u64; top as usize + 2];
    for k in 1..=top {
        if cells[k as usize] > 0 && cells[k as usize - 1] > 0 {
            ranks[k as usize] = dense_rank(&BoundaryMatrix::build(spec, k).unwrap()) as u64;
        }
    }
    let mut b: Vec<u64> = (0..=top as usize).map(|k| cells[k] - ranks[k] - ranks[k + 1]).collect();
    while b.len() > 1 && cells[b.len() - 1] == 0 {
        b.pop();
    }
    b
}

/// Coefficients of (1 + t)(1 + 2t)...(1 + (n-1)t).
fn stirling_row(n: u64) -> Vec<u64> {
    let mut p = vec![1u64];
    for j in 1..n {
        let mut next = vec![0; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * j;
        }
        p = next;
    }
    p
}

#[test]
fn sparse_rank_matches_dense_oracle() {
    for (n, w) in [(3, 2), (3, 3), (4, 2), (4, 3), (4, 4)] {
        let spec = ComplexSpec::conf(n, w).unwrap();
        assert_eq!(betti(&spec).unwrap().betti, oracle_betti(&spec), "cell({n},{w})");
    }
    let p = ComplexSpec::permutohedron("1:1 2:2 3:1 4:1".parse().unwrap(), Width::Bounded(3)).unwrap();
    assert_eq!(betti(&p).unwrap().betti, oracle_betti(&p));
}

#[test]
fn unrestricted_width_gives_classical_betti_numbers() {
    for n in 1..=5 {
        let profile = betti(&ComplexSpec::conf(n, n as u64).unwrap()).unwrap();
        assert_eq!(profile.betti, stirling_row(n as u64), "n = {n}");
    }
}

#[test]
fn euler_characteristic_is_consistent() {
    for (n, w) in [(4, 2), (5, 2), (4, 3), (5, 3)] {
        let p = betti(&ComplexSpec::conf(n, w).unwrap()).unwrap();
        assert_eq!(p.euler_from_betti(), p.euler_from_cells());
        assert_eq!(p.betti[0], 1);
    }
}

fn two_wheel(w: u64) -> ChainVector {
    let spec = ComplexSpec::conf(2, w).unwrap();
    ChainVector::from_terms(spec, 1, [("1 2".parse().unwrap(), q(1)), ("2 1".parse().unwrap(), q(1))]).unwrap()
}

#[test]
fn wheel_is_nontrivial_at_width_two() {
    let z = two_wheel(2);
    let t = is_boundary(&z).unwrap();
    assert!(!t.is_boundary());
    assert!(t.verify(&z).unwrap());
}

#[test]
fn filter_on_two_points_bounds_when_wide() {
    let spec = ComplexSpec::conf(2, 3).unwrap();
    let z = ChainVector::from_terms(spec, 0, [("1|2".parse().unwrap(), q(1)), ("2|1".parse().unwrap(), q(-1))]).unwrap();
    let t = is_boundary(&z).unwrap();
    assert!(t.is_boundary());
    assert!(t.verify(&z).unwrap());
}

#[test]
fn express_simple_cases() {
    let z = two_wheel(2);
    assert_eq!(express(&z, std::slice::from_ref(&z)).unwrap(), vec![q(1)]);
    assert_eq!(express(&z.scale(&q_frac(3, 2)), std::slice::from_ref(&z)).unwrap(), vec![q_frac(3, 2)]);
    assert!(matches!(express(&z, &[]), Err(HomologyError::NotInSpan { .. })));
    assert!(matches!(express(&z, &[z.clone(), z.clone()]), Err(HomologyError::DependentBasis(1))));
}

#[test]
fn non_cycles_are_rejected() {
    let spec = ComplexSpec::conf(2, 2).unwrap();
    let c = ChainVector::from_cell(spec, "1 2".parse().unwrap()).unwrap();
    assert!(matches!(is_boundary(&c), Err(HomologyError::NotACycle)));
}

#[test]
fn decomposition_small() {
    for (n, w) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)] {
        let r = decomposition_check(&ComplexSpec::conf(n, w).unwrap()).unwrap();
        assert!(r.passed(), "cell({n},{w}): {:?}", r);
    }
    assert_eq!(decomposition_check(&ComplexSpec::conf(3, 2).unwrap()).unwrap().permutohedron_sum, vec![1, 7]);
}

fn random_chain(spec: &Arc<ComplexSpec>, d: u64, pick: u64, coeffs: &[i64]) -> ChainVector {
    let cells = spec.enumerate(d);
    let terms = coeffs.iter().enumerate().map(|(i, &c)| (cells[(pick as usize / 3 + i * 11) % cells.len()].clone(), q(c)));
    ChainVector::from_terms(spec.clone(), d, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundaries_get_witnesses(n in 3u32..=4, w in 2u64..=3, d in 1u64..=2, pick in any::<u64>(), cs in proptest::collection::vec(-2i64..=2, 1..=5)) {
        let spec = Arc::new(ComplexSpec::conf(n, w).unwrap());
        prop_assume!(spec.count_cells(d) > 0);
        let c = random_chain(&spec, d, pick, &cs);
        let z = c.boundary().unwrap();
        let t = is_boundary(&z).unwrap();
        prop_assert!(t.is_boundary());
        prop_assert!(t.verify(&z).unwrap());
    }

    #[test]
    fn shifted_classes_get_certificates(w in 2u64..=3, pick in any::<u64>(), cs in proptest::collection::vec(-2i64..=2, 1..=5)) {
        // A nontrivial wheel on labels 1, 2 beside point 3, plus a boundary.
        let spec = Arc::new(ComplexSpec::conf(3, w).unwrap());
        let z0 = ChainVector::from_terms(spec.clone(), 1, [("1 2|3".parse().unwrap(), q(1)), ("2 1|3".parse().unwrap(), q(1))]).unwrap();
        let mut z = z0.clone();
        if spec.count_cells(2) > 0 {
            let c = random_chain(&spec, 2, pick, &cs);
            z.add_scaled(&c.boundary().unwrap(), &q(1)).unwrap();
        }
        let t = is_boundary(&z).unwrap();
        prop_assert!(!t.is_boundary());
        prop_assert!(t.verify(&z).unwrap());
        prop_assert_eq!(express(&z, &[z0]).unwrap(), vec![q(1)]);
    }
}
