use rand::rngs::StdRng;
use rand::SeedableRng;
use strip_algebra::*;
use strip_basis::{enumerate_basis, is_basis_word, Style};
use strip_cells::{Relabeling, Width};
use strip_chains::q;
use strip_cycles::{Factor, GeneratorWord, ProperWheel, WordCombination};
use strip_homology::{is_boundary, HomologyOptions};

fn c(s: &str) -> WordCombination {
    s.parse().unwrap()
}

fn wheel(ls: &[u32]) -> ProperWheel {
    ProperWheel::new(ls.to_vec()).unwrap()
}

fn same_class(a: &WordCombination, b: &WordCombination, w: u64) -> bool {
    let mut d = a.clone();
    d.add_scaled(b, &q(-1));
    d.is_zero() || is_boundary(&d.chain(Width::Bounded(w)).unwrap()).unwrap().is_boundary()
}

/// Two-wheel averaged-filters written as wheel products.
fn expand_pairs(x: &WordCombination) -> WordCombination {
    x.map_words(|word| {
        let mut acc = WordCombination::word(GeneratorWord::empty());
        for f in &word.factors {
            let options: Vec<(Vec<Factor>, i64)> = match f {
                Factor::Averaged(ws) if ws.len() == 2 => {
                    let (a, b) = (Factor::Wheel(ws[0].clone()), Factor::Wheel(ws[1].clone()));
                    let s = if (ws[0].len() - 1) * (ws[1].len() - 1) % 2 == 0 { -1 } else { 1 };
                    vec![(vec![a.clone(), b.clone()], 1), (vec![b, a], s)]
                }
                _ => vec![(vec![f.clone()], 1)],
            };
            acc = acc.map_words(|pre| {
                let mut out = WordCombination::zero();
                for (fs, s) in &options {
                    let mut factors = pre.factors.clone();
                    factors.extend(fs.iter().cloned());
                    out.add_term(GeneratorWord { factors }, q(*s));
                }
                out
            });
        }
        acc
    })
}

fn in_basis(x: &WordCombination, w: u64) -> bool {
    x.terms().all(|(word, _)| is_basis_word(word, Style::Amw, w))
}

#[test]
fn action_examples() {
    let s: Relabeling = "(1 2)".parse().unwrap();
    assert_eq!(act(&s, &c("W(2,1)")).unwrap(), c("W(2,1)"));
    let x = c("W(3,1)|AF(W(2),W(6),W(5,4))");
    assert_eq!(act(&Relabeling::identity(), &x).unwrap(), x);
    let s: Relabeling = "(1 4 6)(2 5)".parse().unwrap();
    for (word, _) in act(&s, &x).unwrap().terms() {
        let sizes: Vec<Vec<usize>> = word.factors.iter().map(|f| f.wheels().iter().map(ProperWheel::len).collect()).collect();
        assert!(matches!(word.factors[1], Factor::Averaged(_)));
        assert_eq!(sizes.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3]);
    }
    assert!(matches!(act(&"(1 7)".parse().unwrap(), &x), Err(AlgebraError::Domain(7, _))));
}

#[test]
fn action_preserves_classes() {
    let w = 3;
    for s in ["W(1,3,2)", "W(2,1)|W(3)", "AF(W(1),W(2),W(4,3))", "W(1)|AF(W(2),W(4),W(3))"] {
        let x = c(s);
        let sigma: Relabeling = "(1 3 2)".parse().unwrap();
        let moved = WordCombination::word(x.terms().next().unwrap().0.map_labels(|l| sigma.apply(l)));
        assert!(same_class(&act(&sigma, &x).unwrap(), &moved, w), "{s}");
    }
}

#[test]
fn relation_examples() {
    let r = relation_instance(&RelationData::R2 { left: wheel(&[1]), right: wheel(&[3, 2]) }, 3).unwrap();
    assert_eq!(r.lhs, c("W(1)|W(3,2)"));
    assert_eq!(r.rhs, c("W(3,2)|W(1)"));
    assert!(same_class(&r.lhs, &r.rhs, 3));

    let ws = vec![wheel(&[2, 1]), wheel(&[4, 3]), wheel(&[5])];
    let r = relation_instance(&RelationData::R3 { wheels: ws, order: vec![1, 0, 2] }, 4).unwrap();
    assert_eq!(r.rhs, c("AF(W(2,1),W(4,3),W(5))"));
    assert!(same_class(&r.lhs, &r.rhs, 4));

    let r = relation_instance(&RelationData::R5 { wheels: vec![wheel(&[1]), wheel(&[2]), wheel(&[4, 3])] }, 2).unwrap();
    assert_eq!(r.lhs.len() + r.rhs.len(), 6);
    assert!(same_class(&r.lhs, &r.rhs, 2));
    assert!(relation_instance(&RelationData::R5 { wheels: vec![wheel(&[1]), wheel(&[3, 2]), wheel(&[5, 4]), wheel(&[6])] }, 2).is_err());
}

#[test]
fn generated_relations_hold_on_chains() {
    for w in [2, 3] {
        let instances = generate_instances(5, w);
        for family in [Family::R1, Family::R2, Family::R3, Family::R4, Family::R5] {
            if family == Family::R4 && w == 2 {
                // every admissible averaged-filter at width 2 is on single disks
                continue;
            }
            assert!(instances.iter().any(|r| r.family == family), "{family} at w={w}");
        }
        let checks = verify_instances(&instances, &HomologyOptions::default()).unwrap();
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.instance.as_str()).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}

#[test]
fn broken_relations_are_caught() {
    let mut r = generate_instances(4, 2).into_iter().find(|r| r.family == Family::R2).unwrap();
    r.rhs = r.rhs.scale(&q(-1));
    let checks = verify_instances(&[r], &HomologyOptions::default()).unwrap();
    assert!(!checks[0].passed);
}

#[test]
fn three_wheel_signs_match_closed_form() {
    for a in 1..=3 {
        for b in 1..=3 {
            for d in 1..=3 {
                assert!(r5_coefficients(&[a, b, d]).unwrap().matches_closed_form(), "{a} {b} {d}");
            }
        }
    }
}

#[test]
fn closed_form_ratios_hold_for_more_wheels() {
    for sizes in [vec![1, 1, 1, 1], vec![2, 1, 1, 1], vec![1, 2, 2, 1], vec![1, 1, 2, 1, 2], vec![2, 1, 1, 1, 1, 1]] {
        assert!(r5_coefficients(&sizes).unwrap().matches_closed_form_ratios(), "{sizes:?}");
    }
    assert!(!r5_coefficients(&[2, 1, 1, 1]).unwrap().matches_closed_form());
}

#[test]
fn reduce_examples() {
    assert_eq!(reduce(&c("W(3)|W(2,1)"), 3).unwrap(), c("W(2,1)|W(3)"));
    let x = c("W(1)|AF(W(2),W(3),W(4))");
    let y = reduce(&x, 2).unwrap();
    assert!(in_basis(&y, 2) && !y.is_zero());
    assert!(same_class(&x, &y, 2));
    for e in enumerate_basis(5, 3, 2, Style::Amw) {
        let b = WordCombination::word(e.word);
        assert_eq!(reduce(&b, 3).unwrap(), b);
    }
}

#[test]
fn reduce_is_sound_on_random_words() {
    let mut rng = StdRng::seed_from_u64(7);
    for w in [2, 3] {
        for n in 1..=6 {
            for _ in 0..6 {
                let x = WordCombination::word(random_word(&mut rng, n, w));
                let y = reduce(&x, w).unwrap();
                assert!(in_basis(&y, w), "{x} -> {y}");
                assert!(same_class(&x, &y, w), "{x} -> {y}");
            }
        }
    }
}

#[test]
fn action_commutes_with_reduction() {
    let mut rng = StdRng::seed_from_u64(11);
    for w in [2, 3] {
        for n in 2..=6 {
            for _ in 0..4 {
                let x = WordCombination::word(random_word(&mut rng, n, w));
                let sigma = random_relabeling(&mut rng, n);
                let a = reduce(&act(&sigma, &x).unwrap(), w).unwrap();
                let b = reduce(&act(&sigma, &reduce(&x, w).unwrap()).unwrap(), w).unwrap();
                assert_eq!(a, b, "{x} under {sigma}");
            }
        }
    }
}

#[test]
fn barrier_examples() {
    let x: GeneratorWord = "W(4,1,2,3)|W(7,5,6)".parse().unwrap();
    assert_eq!(count_barriers(&x, 1, 4).unwrap(), 1);
    assert_eq!(count_barriers(&x, 2, 4).unwrap(), 2);
    assert!(matches!(count_barriers(&x, 3, 4), Err(AlgebraError::OrderOutOfRange { .. })));
    let parts = barrier_decompose(&c("W(4,1,2,3)|W(5) + W(4,1,2,3)|W(7,5,6)"), 2, 4).unwrap();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
}

#[test]
fn barriers_survive_the_action() {
    let mut rng = StdRng::seed_from_u64(3);
    for (n, w, k) in [(5, 3, 2), (6, 3, 3), (6, 4, 3), (5, 2, 2)] {
        let basis = enumerate_basis(n, w, k, Style::Amw);
        for d in 1..=w / 2 {
            for e in basis.iter().take(12) {
                let m = count_barriers(&e.word, d, w).unwrap();
                let sigma = random_relabeling(&mut rng, n);
                let y = reduce(&act(&sigma, &WordCombination::word(e.word.clone())).unwrap(), w).unwrap();
                let parts = barrier_decompose(&y, d, w).unwrap();
                assert!(parts.keys().all(|&k| k == m), "{} under {sigma}: {m} vs {:?}", e.word, parts.keys());
            }
        }
    }
}

#[test]
fn barriers_survive_relations() {
    for w in [2, 3, 4] {
        for r in generate_instances(5, w) {
            for d in 1..=w / 2 {
                let y = reduce(&expand_pairs(&r.difference()), w).unwrap();
                assert!(y.is_zero(), "{r}");
                let counts = |x: &WordCombination| {
                    let mut v: Vec<usize> = reduce(&expand_pairs(x), w).unwrap().terms().map(|(t, _)| count_barriers(t, d, w).unwrap()).collect();
                    v.dedup();
                    v
                };
                let (a, b) = (counts(&r.lhs), counts(&r.rhs));
                assert!(a.len() <= 1 && (a == b || a.is_empty() || b.is_empty()), "{r}: {a:?} {b:?}");
            }
        }
    }
}

#[test]
fn quotients() {
    assert!(quotient_reduce(&c("W(2,1)|W(3)"), 1, 3).unwrap().is_zero());
    let x = c("W(3)|W(2,1)");
    assert_eq!(quotient_reduce(&x, 0, 3).unwrap(), reduce(&x, 3).unwrap());
    let y = c("W(2,1)|W(4,3)");
    assert_eq!(quotient_reduce(&y, 1, 3).unwrap(), y);
    let mut rng = StdRng::seed_from_u64(5);
    for w in [4, 5] {
        for _ in 0..10 {
            let x = WordCombination::word(random_word(&mut rng, 6, w));
            let mut iterated = reduce(&x, w).unwrap();
            for d in 1..=w / 2 {
                iterated = quotient_reduce(&iterated, d, w).unwrap();
            }
            assert_eq!(iterated, quotient_reduce(&x, w / 2, w).unwrap());
            let once = quotient_reduce(&x, w / 2, w).unwrap();
            assert_eq!(quotient_reduce(&once, w / 2, w).unwrap(), once);
        }
    }
}

#[test]
fn stability_examples() {
    let p = stability_params(5, 4).unwrap();
    assert_eq!((p.b, p.generation_degree), (1, 10));
    let p = higher_stability_params(2, 3, 4).unwrap();
    assert_eq!(p.b, 3);
    assert_eq!(p.generation_degree, 11);
    let p = stability_params(1, 2).unwrap();
    assert_eq!((p.b, p.generation_degree), (1, 3));
    assert_eq!(stability_params(0, 7).unwrap().generation_degree, 0);
    for (k, w) in [(0, 3), (1, 2), (1, 3), (2, 3)] {
        let r = generation_check(k, w).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
