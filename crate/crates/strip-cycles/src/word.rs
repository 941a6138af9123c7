use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use strip_cells::{Cell, ComplexSpec, Label, WeightedSet, Width};
use strip_chains::{ChainVector, Q};

use crate::filter::{filter_cycle, FilterSpec};
use crate::wheel::{wheel_cycle, ProperWheel};
use crate::CycleError;

/// One factor of a word: a proper wheel, a filter or an averaged-filter on
/// proper wheels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    Wheel(ProperWheel),
    Filter(Vec<ProperWheel>),
    Averaged(Vec<ProperWheel>),
}

impl Factor {
    pub fn wheel(labels: &[Label]) -> Result<Self, CycleError> {
        Ok(Factor::Wheel(ProperWheel::new(labels.to_vec())?))
    }

    pub fn labels(&self) -> Vec<Label> {
        match self {
            Factor::Wheel(w) => w.labels().to_vec(),
            Factor::Filter(ws) | Factor::Averaged(ws) => ws.iter().flat_map(|w| w.labels().to_vec()).collect(),
        }
    }

    pub fn disks(&self) -> usize {
        self.labels().len()
    }

    pub fn wheels(&self) -> &[ProperWheel] {
        match self {
            Factor::Wheel(w) => std::slice::from_ref(w),
            Factor::Filter(ws) | Factor::Averaged(ws) => ws,
        }
    }

    /// Homological degree: disks minus one for a wheel, minus two for a
    /// filter.
    pub fn degree(&self) -> u64 {
        match self {
            Factor::Wheel(w) => w.len() as u64 - 1,
            _ => self.disks() as u64 - 2,
        }
    }

    pub fn filter_spec(&self) -> Option<FilterSpec> {
        match self {
            Factor::Wheel(_) => None,
            Factor::Filter(ws) => FilterSpec::new(ws.iter().map(ProperWheel::tree).collect(), false).ok(),
            Factor::Averaged(ws) => FilterSpec::new(ws.iter().map(ProperWheel::tree).collect(), true).ok(),
        }
    }

    pub fn map_labels(&self, f: impl Fn(Label) -> Label + Copy) -> Factor {
        match self {
            Factor::Wheel(w) => Factor::Wheel(w.map_labels(f)),
            Factor::Filter(ws) => Factor::Filter(ws.iter().map(|w| w.map_labels(f)).collect()),
            Factor::Averaged(ws) => Factor::Averaged(ws.iter().map(|w| w.map_labels(f)).collect()),
        }
    }

    /// The cycle of this factor, memoized per width.
    pub fn cycle(&self, width: Width) -> Result<ChainVector, CycleError> {
        cache().get_or_build(self, width)
    }

    fn build(&self, width: Width) -> Result<ChainVector, CycleError> {
        match self {
            Factor::Wheel(w) => wheel_cycle(&w.tree(), width),
            _ => {
                let spec = self.filter_spec().ok_or_else(|| CycleError::TooFewWheels(self.wheels().len()))?;
                filter_cycle(&spec, width)
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, ws) = match self {
            Factor::Wheel(w) => return write!(f, "{w}"),
            Factor::Filter(ws) => ("F", ws),
            Factor::Averaged(ws) => ("AF", ws),
        };
        write!(f, "{name}(")?;
        for (i, w) in ws.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Factor cycles keyed by recipe and width. Readers share the lock; a miss
/// builds outside the lock and inserts, so concurrent fills agree.
#[derive(Default)]
pub struct CycleCache {
    map: RwLock<HashMap<(Factor, Width), ChainVector>>,
}

impl CycleCache {
    pub fn get_or_build(&self, factor: &Factor, width: Width) -> Result<ChainVector, CycleError> {
        let key = (factor.clone(), width);
        if let Some(z) = self.map.read().expect("cycle cache poisoned").get(&key) {
            return Ok(z.clone());
        }
        let z = factor.build(width)?;
        self.map.write().expect("cycle cache poisoned").entry(key).or_insert_with(|| z.clone());
        Ok(z)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cycle cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn cache() -> &'static CycleCache {
    static CACHE: OnceLock<CycleCache> = OnceLock::new();
    CACHE.get_or_init(CycleCache::default)
}

/// A concatenation product of factors on disjoint labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorWord {
    pub factors: Vec<Factor>,
}

impl GeneratorWord {
    pub fn new(factors: Vec<Factor>) -> Result<Self, CycleError> {
        let w = GeneratorWord { factors };
        let mut labels = w.labels();
        labels.sort_unstable();
        if labels.windows(2).any(|p| p[0] == p[1]) {
            return Err(CycleError::RepeatedLabel(w.to_string()));
        }
        Ok(w)
    }

    pub fn empty() -> Self {
        GeneratorWord::default()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.factors.iter().flat_map(Factor::labels).collect()
    }

    pub fn sorted_labels(&self) -> Vec<Label> {
        let mut l = self.labels();
        l.sort_unstable();
        l
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(Factor::degree).sum()
    }

    pub fn map_labels(&self, f: impl Fn(Label) -> Label + Copy) -> GeneratorWord {
        GeneratorWord { factors: self.factors.iter().map(|x| x.map_labels(f)).collect() }
    }

    /// Proper wheels and averaged-filters on at least three wheels only.
    pub fn check_generator(&self) -> Result<(), CycleError> {
        for x in &self.factors {
            match x {
                Factor::Wheel(_) => {}
                Factor::Averaged(ws) if ws.len() >= 3 => {}
                Factor::Averaged(ws) => {
                    let (a, b) = (&ws[0], &ws[1]);
                    return Err(CycleError::NotAGenerator(format!(
                        "{x} is an averaged-filter on two wheels; use {a}|{b} and {b}|{a} instead"
                    )));
                }
                Factor::Filter(_) => {
                    return Err(CycleError::NotAGenerator(format!("{x} is a filter; only averaged-filters are generators")))
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "()");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// The cycle of a word: its factor cycles concatenated left to right.
pub fn word_cycle(word: &GeneratorWord, width: Width) -> Result<ChainVector, CycleError> {
    let mut acc = unit(width)?;
    for x in &word.factors {
        acc = acc.concat(&x.cycle(width)?)?;
    }
    Ok(acc)
}

fn unit(width: Width) -> Result<ChainVector, CycleError> {
    let spec = Arc::new(ComplexSpec::ordered(WeightedSet::new(Vec::new())?, width)?);
    Ok(ChainVector::from_cell(spec, Cell::empty())?)
}

/// A rational combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordCombination {
    terms: BTreeMap<GeneratorWord, Q>,
}

impl WordCombination {
    pub fn zero() -> Self {
        WordCombination::default()
    }

    pub fn word(w: GeneratorWord) -> Self {
        let mut c = WordCombination::zero();
        c.add_term(w, Q::one());
        c
    }

    pub fn add_term(&mut self, w: GeneratorWord, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WordCombination, c: &Q) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Q) -> WordCombination {
        let mut out = WordCombination::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneratorWord, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &GeneratorWord) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn map_words(&self, mut f: impl FnMut(&GeneratorWord) -> WordCombination) -> WordCombination {
        let mut out = WordCombination::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// The chain of the combination. Every word must cover the same labels;
    /// the zero combination needs them spelled out, so it is rejected.
    pub fn chain(&self, width: Width) -> Result<ChainVector, CycleError> {
        let mut acc: Option<ChainVector> = None;
        for (w, c) in &self.terms {
            let z = word_cycle(w, width)?;
            match acc.as_mut() {
                None => acc = Some(z.scale(c)),
                Some(a) => a.add_scaled(&z, c)?,
            }
        }
        acc.ok_or(CycleError::EmptyCombination)
    }
}

impl fmt::Display for WordCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a} ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl From<GeneratorWord> for WordCombination {
    fn from(w: GeneratorWord) -> Self {
        WordCombination::word(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use strip_chains::{q, q_frac};

    fn wheel(l: &[Label]) -> Factor {
        Factor::wheel(l).unwrap()
    }

    #[test]
    fn product_of_two_wheels() {
        let w = GeneratorWord::new(vec![wheel(&[2, 1]), wheel(&[3])]).unwrap();
        let z = word_cycle(&w, Width::Bounded(2)).unwrap();
        assert_eq!(z.to_string(), "(1 2|3) + (2 1|3)");
        assert_eq!(w.to_string(), "W(2,1)|W(3)");
        assert_eq!(w.degree(), 1);
    }

    #[test]
    fn empty_word_is_the_unit() {
        let z = word_cycle(&GeneratorWord::empty(), Width::Bounded(2)).unwrap();
        assert_eq!(z.to_string(), "(())");
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn overlapping_labels_rejected() {
        assert!(GeneratorWord::new(vec![wheel(&[2, 1]), wheel(&[1])]).is_err());
    }

    #[test]
    fn generator_check() {
        let af2 = GeneratorWord::new(vec![Factor::Averaged(vec![
            ProperWheel::new(vec![1]).unwrap(),
            ProperWheel::new(vec![2]).unwrap(),
        ])])
        .unwrap();
        let err = af2.check_generator().unwrap_err().to_string();
        assert!(err.contains("W(1)|W(2)"), "{err}");
    }

    #[test]
    fn combination_display() {
        let a = GeneratorWord::new(vec![wheel(&[1]), wheel(&[2])]).unwrap();
        let b = GeneratorWord::new(vec![wheel(&[2]), wheel(&[1])]).unwrap();
        let mut c = WordCombination::word(a.clone());
        c.add_term(b.clone(), q_frac(-1, 2));
        assert_eq!(c.to_string(), "W(1)|W(2) - 1/2 W(2)|W(1)");
        c.add_term(a, q(-1));
        assert_eq!(c.to_string(), "-1/2 W(2)|W(1)");
        assert_eq!(WordCombination::zero().to_string(), "0");
    }
}
