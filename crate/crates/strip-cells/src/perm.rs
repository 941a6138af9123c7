use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::weights::{Label, Weight, WeightedLabel, WeightedSet};
use crate::CellError;

/// The wheels of a permutation in one-line notation.
///
/// Each wheel starts at an axle, an entry larger than everything before it,
/// and runs up to the next axle. Wheels appear in permutation order, which is
/// also the order of their largest elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelDecomposition {
    pub wheels: Vec<Vec<Label>>,
    pub weights: Vec<Weight>,
}

impl WheelDecomposition {
    pub fn axles(&self) -> impl Iterator<Item = Label> + '_ {
        self.wheels.iter().map(|w| w[0])
    }

    /// The weighted set `(A - #σ, W(σ))`: one element per wheel, named by
    /// its axle, in wheel order.
    pub fn weighted_set(&self) -> WeightedSet {
        let entries = self
            .wheels
            .iter()
            .zip(&self.weights)
            .map(|(w, &wt)| WeightedLabel::new(w[0], wt))
            .collect();
        WeightedSet::new(entries).expect("axles are distinct")
    }

    pub fn concat(&self) -> Vec<Label> {
        self.wheels.concat()
    }

    pub fn len(&self) -> usize {
        self.wheels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wheels.is_empty()
    }
}

pub fn wheel_decomposition(perm: &[Label], set: &WeightedSet) -> Result<WheelDecomposition, CellError> {
    check_perm(perm, set)?;
    let mut wheels: Vec<Vec<Label>> = Vec::new();
    let mut weights = Vec::new();
    let mut max = 0;
    for &l in perm {
        let w = set.weight_of(l)?;
        if l > max {
            max = l;
            wheels.push(vec![l]);
            weights.push(w);
        } else {
            wheels.last_mut().expect("first entry is an axle").push(l);
            *weights.last_mut().expect("first entry is an axle") += w;
        }
    }
    Ok(WheelDecomposition { wheels, weights })
}

fn check_perm(perm: &[Label], set: &WeightedSet) -> Result<(), CellError> {
    if perm.len() != set.len() || !perm.iter().all(|&l| set.contains(l)) || perm.iter().duplicates().next().is_some() {
        return Err(CellError::NotAPermutation(perm.iter().join(" ")));
    }
    Ok(())
}

/// Lexicographic order: decided by the first position where the
/// permutations disagree.
pub fn lex_compare(a: &[Label], b: &[Label]) -> Ordering {
    a.cmp(b)
}

/// The orbit of `perm` under permuting its wheels as blocks, sorted
/// lexicographically.
pub fn s_of_sigma(perm: &[Label]) -> Vec<Vec<Label>> {
    let set = WeightedSet::unit(perm.iter().copied()).expect("permutation entries are distinct");
    let wheels = wheel_decomposition(perm, &set).expect("entries come from the set").wheels;
    let mut orbit: Vec<Vec<Label>> = wheels
        .iter()
        .permutations(wheels.len())
        .map(|order| order.into_iter().flatten().copied().collect())
        .collect();
    orbit.sort();
    orbit.dedup();
    orbit
}

/// All orderings of `labels`, in lexicographic order of positions.
pub fn orderings(labels: &[Label]) -> Vec<Vec<Label>> {
    labels.iter().copied().permutations(labels.len()).collect()
}

/// A bijection of labels, written in cycle notation such as `(1 3)(2 4)`.
///
/// Labels not mentioned are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relabeling {
    map: BTreeMap<Label, Label>,
}

impl Relabeling {
    pub fn identity() -> Self {
        Relabeling::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Label, Label)>>(pairs: I) -> Result<Self, CellError> {
        let map: BTreeMap<Label, Label> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        let mut images: Vec<Label> = map.values().copied().collect();
        images.sort_unstable();
        let mut domain: Vec<Label> = map.keys().copied().collect();
        domain.sort_unstable();
        if images != domain {
            return Err(CellError::NotAPermutation(format!("{map:?}")));
        }
        Ok(Relabeling { map })
    }

    /// Relabeling sending `from[i]` to `to[i]`.
    pub fn from_sequences(from: &[Label], to: &[Label]) -> Result<Self, CellError> {
        if from.len() != to.len() {
            return Err(CellError::NotARearrangement);
        }
        Self::from_pairs(from.iter().copied().zip(to.iter().copied()))
    }

    pub fn apply(&self, label: Label) -> Label {
        self.map.get(&label).copied().unwrap_or(label)
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Labels moved by the relabeling.
    pub fn support(&self) -> impl Iterator<Item = Label> + '_ {
        self.map.keys().copied()
    }

    pub fn inverse(&self) -> Self {
        Relabeling {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Relabeling) -> Self {
        let keys: Vec<Label> = self.map.keys().chain(other.map.keys()).copied().collect();
        Relabeling::from_pairs(keys.into_iter().map(|l| (l, self.apply(other.apply(l)))))
            .expect("composition of bijections")
    }
}

impl fmt::Display for Relabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        let mut seen = Vec::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            let mut next = self.apply(start);
            while next != start {
                cycle.push(next);
                next = self.apply(next);
            }
            seen.extend_from_slice(&cycle);
            write!(f, "({})", cycle.iter().join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Relabeling {
    type Err = CellError;

    fn from_str(s: &str) -> Result<Self, CellError> {
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| CellError::Parse(s.to_string()))?;
            let close = body.find(')').ok_or_else(|| CellError::Parse(s.to_string()))?;
            let cycle: Vec<Label> = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| CellError::Parse(t.to_string())))
                .collect::<Result<_, _>>()?;
            if cycle.iter().duplicates().next().is_some() {
                return Err(CellError::Parse(s.to_string()));
            }
            for (i, &a) in cycle.iter().enumerate() {
                pairs.push((a, cycle[(i + 1) % cycle.len()]));
            }
            rest = body[close + 1..].trim_start();
        }
        let domain: Vec<Label> = pairs.iter().map(|p| p.0).collect();
        if domain.iter().duplicates().next().is_some() {
            return Err(CellError::Parse(format!("{s}: cycles must be disjoint")));
        }
        Relabeling::from_pairs(pairs)
    }
}
