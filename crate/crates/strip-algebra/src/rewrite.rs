use std::cmp::Ordering;

use num_traits::One;
use strip_basis::{is_basis_word, least, outranks, Style};
use strip_cells::Label;
use strip_chains::{q, Q};
use strip_cycles::{Factor, GeneratorWord, ProperWheel, WordCombination};

use crate::action::canonical_word;
use crate::relations::r5_coefficients;
use crate::AlgebraError;

/// Progress measure of the rewriting: fewer crossings of a bare wheel over
/// an averaged-filter to its right, then, at equal crossings, bare wheel
/// ranks larger in lexicographic order from the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    pub crossings: usize,
    pub ranks: Vec<(usize, Label)>,
}

impl Ord for Measure {
    /// `Less` is closer to normal form.
    fn cmp(&self, other: &Self) -> Ordering {
        self.crossings.cmp(&other.crossings).then_with(|| other.ranks.cmp(&self.ranks))
    }
}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn measure(word: &GeneratorWord) -> Measure {
    let mut crossings = 0;
    let mut ranks = Vec::new();
    for (i, f) in word.factors.iter().enumerate() {
        if let Factor::Wheel(x) = f {
            crossings += word.factors[i + 1..].iter().filter(|g| matches!(g, Factor::Averaged(_))).count();
            ranks.push((x.len(), x.max_label()));
        }
    }
    Measure { crossings, ranks }
}

fn check_factor(f: &Factor, w: u64) -> Result<(), AlgebraError> {
    match f {
        Factor::Filter(_) => Err(AlgebraError::NotAGenerator(format!(
            "{f}: filters are not generators; write them with averaged-filters and wheel products"
        ))),
        Factor::Averaged(ws) if ws.len() == 2 => Err(AlgebraError::NotAGenerator(format!(
            "{f}: an averaged-filter on two wheels is a combination of {} and {}",
            GeneratorWord { factors: vec![Factor::Wheel(ws[0].clone()), Factor::Wheel(ws[1].clone())] },
            GeneratorWord { factors: vec![Factor::Wheel(ws[1].clone()), Factor::Wheel(ws[0].clone())] },
        ))),
        Factor::Wheel(x) if x.len() as u64 > w => Err(AlgebraError::Inadmissible(format!("{x} does not fit in width {w}"))),
        Factor::Averaged(ws) => {
            let total: usize = ws.iter().map(ProperWheel::len).sum();
            if ws.iter().any(|x| x.len() as u64 > w || (total - x.len()) as u64 > w) {
                return Err(AlgebraError::Inadmissible(format!("{f} is not admissible in width {w}")));
            }
            Ok(())
        }
        Factor::Wheel(_) => Ok(()),
    }
}

fn is_trivial(f: &Factor, w: u64) -> bool {
    matches!(f, Factor::Averaged(ws) if ws.iter().map(ProperWheel::len).sum::<usize>() as u64 <= w)
}

/// Properized, with averaged-filter wheels sorted and trivial
/// averaged-filters removed.
fn canonicalize(word: &GeneratorWord, w: u64) -> Result<WordCombination, AlgebraError> {
    let mut out = WordCombination::zero();
    for (x, c) in canonical_word(word)?.terms() {
        if !x.factors.iter().any(|f| is_trivial(f, w)) {
            out.add_term(x.clone(), c.clone());
        }
    }
    Ok(out)
}

fn splice(word: &GeneratorWord, at: usize, middle: Vec<Factor>) -> GeneratorWord {
    let mut factors = word.factors[..at].to_vec();
    factors.extend(middle);
    factors.extend_from_slice(&word.factors[at + 2..]);
    GeneratorWord { factors }
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One relation applied at the leftmost violation, or `None` for a basis
/// word. The word is canonical.
fn rewrite_once(word: &GeneratorWord, w: u64) -> Result<Option<WordCombination>, AlgebraError> {
    for (i, pair) in word.factors.windows(2).enumerate() {
        let Factor::Wheel(a) = &pair[0] else { continue };
        match &pair[1] {
            Factor::Wheel(b) if !outranks(a, b) && (a.len() + b.len()) as u64 <= w => {
                let s = sign((a.len() - 1) * (b.len() - 1));
                let swapped = splice(word, i, vec![Factor::Wheel(b.clone()), Factor::Wheel(a.clone())]);
                return Ok(Some(canonicalize(&swapped, w)?.scale(&q(s))));
            }
            Factor::Averaged(ws) if !outranks(a, least(ws)) => {
                // With the wheels listed as [a, ws..], the relation solved for
                // the term a|AF(ws).
                let list: Vec<ProperWheel> = std::iter::once(a.clone()).chain(ws.iter().cloned()).collect();
                let sizes: Vec<usize> = list.iter().map(ProperWheel::len).collect();
                let c = r5_coefficients(&sizes)?;
                let scale = -Q::one() / q(c.left[0]);
                let mut out = WordCombination::zero();
                for k in 0..list.len() {
                    let rest: Vec<ProperWheel> = list.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, x)| x.clone()).collect();
                    let (wk, af) = (Factor::Wheel(list[k].clone()), Factor::Averaged(rest));
                    if k > 0 {
                        let term = splice(word, i, vec![wk.clone(), af.clone()]);
                        out.add_scaled(&canonicalize(&term, w)?, &(&scale * q(c.left[k])));
                    }
                    let term = splice(word, i, vec![af, wk]);
                    out.add_scaled(&canonicalize(&term, w)?, &(&scale * q(c.right[k])));
                }
                return Ok(Some(out));
            }
            _ => {}
        }
    }
    Ok(None)
}

fn check_homogeneous(x: &WordCombination) -> Result<(), AlgebraError> {
    let mut terms = x.terms().map(|(w, _)| w);
    if let Some(first) = terms.next() {
        let key = (first.sorted_labels(), first.degree());
        if let Some(other) = terms.find(|w| (w.sorted_labels(), w.degree()) != key) {
            return Err(AlgebraError::Inhomogeneous(first.to_string(), other.to_string()));
        }
    }
    Ok(())
}

/// Rewrites `x` into the averaged-filter basis at width `w` with the wheel
/// and averaged-filter relations, leftmost violation first. Every rewrite
/// strictly lowers [`measure`] on each word it produces.
pub fn reduce(x: &WordCombination, w: u64) -> Result<WordCombination, AlgebraError> {
    check_homogeneous(x)?;
    let mut pending = WordCombination::zero();
    for (word, c) in x.terms() {
        for f in &word.factors {
            check_factor(f, w)?;
        }
        pending.add_scaled(&canonicalize(word, w)?, c);
    }
    let mut done = WordCombination::zero();
    while !pending.is_zero() {
        let mut next = WordCombination::zero();
        for (word, c) in pending.terms() {
            match rewrite_once(word, w)? {
                None => {
                    debug_assert!(is_basis_word(word, Style::Amw, w), "{word}");
                    done.add_term(word.clone(), c.clone());
                }
                Some(y) => {
                    let before = measure(word);
                    for (z, _) in y.terms() {
                        assert!(measure(z) < before, "rewriting {word} to {z} does not make progress");
                    }
                    next.add_scaled(&y, c);
                }
            }
        }
        pending = next;
    }
    Ok(done)
}

pub(crate) fn check_order(d: u64, w: u64, min: u64) -> Result<(), AlgebraError> {
    if d < min || d > w / 2 {
        return Err(AlgebraError::OrderOutOfRange { d, min, max: w / 2, w });
    }
    Ok(())
}

/// [`reduce`], then every word with a bare wheel on at most `d` disks is
/// dropped.
pub fn quotient_reduce(x: &WordCombination, d: u64, w: u64) -> Result<WordCombination, AlgebraError> {
    check_order(d, w, 0)?;
    let mut out = WordCombination::zero();
    for (word, c) in reduce(x, w)?.terms() {
        if !word.factors.iter().any(|f| matches!(f, Factor::Wheel(x) if x.len() as u64 <= d)) {
            out.add_term(word.clone(), c.clone());
        }
    }
    Ok(out)
}
