use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::One;
use strip_cells::{wsgn, ComplexSpec, Label, Relabeling, WeightedLabel, WeightedSet, Width};
use strip_chains::{q, ChainVector, Q};
use strip_cycles::{wheel_cycle, Factor, GeneratorWord, ProperWheel, WordCombination};
use strip_homology::{HomologyOptions, HomologySpace};

use crate::AlgebraError;

type Expansion = Arc<Vec<(Vec<u32>, Q)>>;

fn memo() -> &'static RwLock<HashMap<Vec<u32>, Expansion>> {
    static M: OnceLock<RwLock<HashMap<Vec<u32>, Expansion>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Relative order of the labels, as a sequence over `1..=n`.
fn pattern(labels: &[Label]) -> Vec<u32> {
    labels.iter().map(|l| labels.iter().filter(|m| *m <= l).count() as u32).collect()
}

/// Coefficients of the wheel with label pattern `p` on the proper wheels
/// with the largest label first. The relation holds on chains, since the
/// wheels sit in the top degree of `cell(n, n)`.
fn expansion(p: &[u32]) -> Result<Expansion, AlgebraError> {
    if let Some(e) = memo().read().expect("poisoned").get(p) {
        return Ok(e.clone());
    }
    let n = p.len() as u32;
    let width = Width::Bounded(n as u64);
    let rest: Vec<u32> = (1..n).collect();
    let targets: Vec<Vec<u32>> = strip_cells::orderings(&rest)
        .into_iter()
        .map(|o| std::iter::once(n).chain(o).collect())
        .collect();
    let basis = targets
        .iter()
        .map(|t| wheel_cycle(&ProperWheel::new(t.clone())?.tree(), width))
        .collect::<Result<Vec<ChainVector>, _>>()?;
    let z = wheel_cycle(&ProperWheel::new(p.to_vec())?.tree(), width)?;
    let mut space = HomologySpace::new(&ComplexSpec::conf(n, n as u64)?, (n - 1) as u64, false, &HomologyOptions::default())?;
    let coeffs = space.express(&z, &basis)?;
    let e: Expansion = Arc::new(targets.into_iter().zip(coeffs).filter(|(_, c)| *c != Q::from_integer(0.into())).collect());
    memo().write().expect("poisoned").insert(p.to_vec(), e.clone());
    Ok(e)
}

/// A proper wheel as a combination of proper wheels on the same labels with
/// the largest label first.
pub fn properize_wheel(w: &ProperWheel) -> Result<Vec<(ProperWheel, Q)>, AlgebraError> {
    if w.is_normalized() {
        return Ok(vec![(w.clone(), Q::one())]);
    }
    let mut sorted = w.labels().to_vec();
    sorted.sort_unstable();
    Ok(expansion(&pattern(w.labels()))?
        .iter()
        .map(|(t, c)| (ProperWheel::new(t.iter().map(|&i| sorted[i as usize - 1]).collect()).expect("relabeled"), c.clone()))
        .collect())
}

/// Sign and wheels of an averaged-filter reordered to increasing rank. On
/// two wheels the filter formula fixes the sign instead of `wsgn`.
pub(crate) fn sort_averaged(ws: &[ProperWheel]) -> (i64, Vec<ProperWheel>) {
    let mut sorted = ws.to_vec();
    sorted.sort_by_key(|x| (x.len(), x.max_label()));
    if ws.len() == 2 {
        let (n1, n2) = (ws[0].len(), ws[1].len());
        let swapped = sorted[0] != ws[0];
        let s = if swapped && ((n1 - 1) * (n2 - 1)) % 2 == 0 { -1 } else { 1 };
        return (s, sorted);
    }
    let names: Vec<Label> = ws.iter().map(ProperWheel::first).collect();
    let to: Vec<Label> = sorted.iter().map(ProperWheel::first).collect();
    let set = WeightedSet::new(ws.iter().map(|x| WeightedLabel::new(x.first(), x.len() as u64)).collect()).expect("distinct");
    (wsgn(&names, &to, &set).expect("rearrangement") as i64, sorted)
}

/// Every combination of properized wheels, with product coefficients.
fn expand_wheels(ws: &[ProperWheel]) -> Result<Vec<(Vec<ProperWheel>, Q)>, AlgebraError> {
    let mut acc: Vec<(Vec<ProperWheel>, Q)> = vec![(Vec::new(), Q::one())];
    for w in ws {
        let options = properize_wheel(w)?;
        acc = acc
            .into_iter()
            .flat_map(|(pre, c)| {
                options.iter().map(move |(x, a)| {
                    let mut v = pre.clone();
                    v.push(x.clone());
                    (v, &c * a)
                })
            })
            .collect();
    }
    Ok(acc)
}

fn canonical_factor(f: &Factor) -> Result<Vec<(Factor, Q)>, AlgebraError> {
    Ok(match f {
        Factor::Wheel(w) => properize_wheel(w)?.into_iter().map(|(x, c)| (Factor::Wheel(x), c)).collect(),
        Factor::Filter(ws) => expand_wheels(ws)?.into_iter().map(|(x, c)| (Factor::Filter(x), c)).collect(),
        Factor::Averaged(ws) => expand_wheels(ws)?
            .into_iter()
            .map(|(x, c)| {
                let (s, sorted) = sort_averaged(&x);
                (Factor::Averaged(sorted), c * q(s))
            })
            .collect(),
    })
}

/// The word with every wheel's largest label first and averaged-filter
/// wheels in increasing rank.
pub fn canonical_word(word: &GeneratorWord) -> Result<WordCombination, AlgebraError> {
    let mut acc: Vec<(Vec<Factor>, Q)> = vec![(Vec::new(), Q::one())];
    for f in &word.factors {
        let options = canonical_factor(f)?;
        acc = acc
            .into_iter()
            .flat_map(|(pre, c)| {
                options.iter().map(move |(x, a)| {
                    let mut v = pre.clone();
                    v.push(x.clone());
                    (v, &c * a)
                })
            })
            .collect();
    }
    let mut out = WordCombination::zero();
    for (fs, c) in acc {
        out.add_term(GeneratorWord { factors: fs }, c);
    }
    Ok(out)
}

/// Relabels by `sigma`, then rewrites into wheels with the largest label
/// first and averaged-filters with wheels in increasing rank. Wheel sizes
/// and filter arities are preserved.
pub fn act(sigma: &Relabeling, x: &WordCombination) -> Result<WordCombination, AlgebraError> {
    let mut out = WordCombination::zero();
    for (word, c) in x.terms() {
        let labels = word.labels();
        if let Some(l) = sigma.support().find(|l| !labels.contains(l)) {
            return Err(AlgebraError::Domain(l, word.to_string()));
        }
        let moved = word.map_labels(|l| sigma.apply(l));
        out.add_scaled(&canonical_word(&moved)?, c);
    }
    Ok(out)
}
