use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use strip_cells::{wsgn, Cell, ComplexSpec, Label, WeightedLabel, WeightedSet, Width};
use strip_chains::{q, ChainVector, Q};
use strip_cycles::{normalization, Factor, GeneratorWord, ProperWheel, WordCombination};
use strip_homology::{HomologyOptions, HomologySpace};

use crate::action::{canonical_word, properize_wheel};
use crate::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// A wheel as a sum of wheels with the largest label first.
    R1,
    /// Two wheels that fit side by side commute up to sign.
    R2,
    /// Reordering an averaged-filter multiplies it by a sign.
    R3,
    /// An averaged-filter on any proper wheels as a sum of ones with the
    /// largest label first in every wheel.
    R4,
    /// A wheel moves across an averaged-filter.
    R5,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RelationData {
    R1 { wheel: ProperWheel },
    R2 { left: ProperWheel, right: ProperWheel },
    /// `order[i]` is the index of the wheel placed at position `i`.
    R3 { wheels: Vec<ProperWheel>, order: Vec<usize> },
    R4 { wheels: Vec<ProperWheel> },
    R5 { wheels: Vec<ProperWheel> },
}

impl RelationData {
    pub fn family(&self) -> Family {
        match self {
            RelationData::R1 { .. } => Family::R1,
            RelationData::R2 { .. } => Family::R2,
            RelationData::R3 { .. } => Family::R3,
            RelationData::R4 { .. } => Family::R4,
            RelationData::R5 { .. } => Family::R5,
        }
    }
}

/// An identity `lhs = rhs` in homology, at a given width.
#[derive(Clone, Debug, Serialize)]
pub struct RelationInstance {
    pub family: Family,
    pub data: RelationData,
    pub width: u64,
    #[serde(serialize_with = "as_text")]
    pub lhs: WordCombination,
    #[serde(serialize_with = "as_text")]
    pub rhs: WordCombination,
}

fn as_text<S: serde::Serializer>(x: &WordCombination, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {} (w={})", self.family, self.lhs, self.rhs, self.width)
    }
}

impl RelationInstance {
    pub fn difference(&self) -> WordCombination {
        let mut d = self.lhs.clone();
        d.add_scaled(&self.rhs, &-Q::one());
        d
    }

    pub fn labels(&self) -> Vec<Label> {
        self.lhs.terms().chain(self.rhs.terms()).next().map(|(w, _)| w.sorted_labels()).unwrap_or_default()
    }

    pub fn degree(&self) -> u64 {
        self.lhs.terms().chain(self.rhs.terms()).next().map(|(w, _)| w.degree()).unwrap_or(0)
    }
}

fn word(factors: Vec<Factor>) -> GeneratorWord {
    GeneratorWord::new(factors).expect("disjoint labels")
}

fn sizes(ws: &[ProperWheel]) -> Vec<usize> {
    ws.iter().map(ProperWheel::len).collect()
}

fn check_width(ws: &[ProperWheel], w: u64) -> Result<(), AlgebraError> {
    match ws.iter().find(|x| x.len() as u64 > w) {
        Some(x) => Err(AlgebraError::Inadmissible(format!("{x} does not fit in width {w}"))),
        None => Ok(()),
    }
}

/// Sign of `AF(reordered)` relative to `AF(wheels)`.
fn reorder_sign(wheels: &[ProperWheel], reordered: &[ProperWheel]) -> i64 {
    if wheels.len() == 2 {
        let (n1, n2) = (wheels[0].len(), wheels[1].len());
        return if reordered[0] != wheels[0] && (n1 - 1) * (n2 - 1) % 2 == 0 { -1 } else { 1 };
    }
    let names: Vec<Label> = wheels.iter().map(ProperWheel::first).collect();
    let to: Vec<Label> = reordered.iter().map(ProperWheel::first).collect();
    let set = WeightedSet::new(wheels.iter().map(|x| WeightedLabel::new(x.first(), x.len() as u64)).collect()).expect("distinct");
    wsgn(&names, &to, &set).expect("rearrangement") as i64
}

/// Coefficients of the relation from `∂²` of the top cell on wheels of the
/// given sizes: `Σ left[k] W_k|AF(rest_k) + Σ right[k] AF(rest_k)|W_k`
/// bounds, with `rest_k` in list order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct R5Coefficients {
    pub sizes: Vec<usize>,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

fn r5_memo() -> &'static RwLock<HashMap<Vec<usize>, Arc<R5Coefficients>>> {
    static M: OnceLock<RwLock<HashMap<Vec<usize>, Arc<R5Coefficients>>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

fn coefficient(z: &ChainVector, blocks: [Vec<Label>; 2]) -> i64 {
    let c = z.coeff(&Cell::from_blocks(blocks).expect("two blocks"));
    debug_assert!(c.is_integer());
    i64::try_from(c.to_integer()).expect("unit coefficient")
}

pub fn r5_coefficients(sizes: &[usize]) -> Result<Arc<R5Coefficients>, AlgebraError> {
    if let Some(c) = r5_memo().read().expect("poisoned").get(sizes) {
        return Ok(c.clone());
    }
    let names: Vec<Label> = (1..=sizes.len() as Label).collect();
    let set = WeightedSet::new(names.iter().zip(sizes).map(|(&l, &n)| WeightedLabel::new(l, n as u64)).collect())?;
    let spec = Arc::new(ComplexSpec::permutohedron(set, Width::Unbounded)?);
    let dz = ChainVector::from_cell(spec, Cell::from_blocks([names.clone()])?)
        .and_then(|top| top.boundary())
        .map_err(strip_cycles::CycleError::from)?;
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (k, &name) in names.iter().enumerate() {
        let rest: Vec<Label> = names.iter().copied().filter(|&l| l != name).collect();
        let rest_sizes: Vec<u64> = rest.iter().map(|&l| sizes[l as usize - 1] as u64).collect();
        let norm = normalization(&rest_sizes);
        // ∂(W_k | R) = (-1)^(n_k - 1) W_k | ∂R and ∂(R | W_k) = ∂R | W_k
        let koszul = if sizes[k] % 2 == 1 { 1 } else { -1 };
        left.push(coefficient(&dz, [vec![name], rest.clone()]) * koszul * norm);
        right.push(coefficient(&dz, [rest, vec![name]]) * norm);
    }
    let c = Arc::new(R5Coefficients { sizes: sizes.to_vec(), left, right });
    r5_memo().write().expect("poisoned").insert(sizes.to_vec(), c.clone());
    Ok(c)
}

/// The closed-form signs of the relation, written as
/// `Σ left[k] W_k|AF(rest_k) = Σ right[k] AF(rest_k)|W_k`.
pub fn r5_closed_form(sizes: &[usize]) -> (Vec<i64>, Vec<i64>) {
    let m = sizes.len() as i64 - 1;
    let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        let k = i as i64 + 1;
        let n = n as i64;
        let before: i64 = sizes[..i].iter().map(|&x| x as i64).sum();
        let after: i64 = sizes[i + 1..].iter().map(|&x| x as i64).sum();
        left.push(sign(k - 1) * sign((n - 1) * (before - k + 1)));
        right.push(sign(k - 1) * sign((n - 1) * (after - m + k - 1)));
    }
    (left, right)
}

impl R5Coefficients {
    /// Whether the closed forms describe the same relation up to an overall
    /// sign.
    pub fn matches_closed_form(&self) -> bool {
        let (l, r) = r5_closed_form(&self.sizes);
        [1, -1].iter().any(|e| {
            self.left.iter().zip(&l).all(|(a, b)| *a == e * b) && self.right.iter().zip(&r).all(|(a, b)| *a == -e * b)
        })
    }

    /// Whether the closed forms describe the same relation in width `w` up
    /// to an overall sign. Terms whose averaged-filter fits in the strip
    /// vanish in homology and are not compared.
    pub fn matches_closed_form_at(&self, w: u64) -> bool {
        let (l, r) = r5_closed_form(&self.sizes);
        let total: usize = self.sizes.iter().sum();
        let live: Vec<usize> = (0..self.sizes.len()).filter(|&k| (total - self.sizes[k]) as u64 > w).collect();
        [1, -1].iter().any(|e| live.iter().all(|&k| self.left[k] == e * l[k] && self.right[k] == -e * r[k]))
    }

    /// Whether the closed forms give the same ratio between the two terms
    /// of every averaged-filter, once the exponent of the right-hand sign
    /// counts the degree `m - 2` that an averaged-filter on `m` wheels has
    /// beyond its wheels. What remains is a sign per averaged-filter, which
    /// depends on how averaged-filters are normalized.
    pub fn matches_closed_form_ratios(&self) -> bool {
        let (l, r) = r5_closed_form(&self.sizes);
        let m = self.sizes.len() - 1;
        (0..=m).all(|k| {
            let shift = if ((self.sizes[k] - 1) * (m.max(2) - 2)).is_multiple_of(2) { 1 } else { -1 };
            self.left[k] * self.right[k] == -l[k] * r[k] * shift
        })
    }
}

fn admissible_r5(ws: &[ProperWheel], w: u64) -> Result<(), AlgebraError> {
    check_width(ws, w)?;
    if ws.len() < 3 {
        return Err(AlgebraError::Inadmissible(format!("the relation needs at least three wheels, got {}", ws.len())));
    }
    let mut s = sizes(ws);
    s.sort_unstable();
    let heaviest: usize = s[2..].iter().sum();
    if heaviest as u64 > w {
        return Err(AlgebraError::Inadmissible(format!("wheels of sizes {s:?}: {heaviest} disks on all but two exceed width {w}")));
    }
    Ok(())
}

/// Builds the identity for one relation family.
pub fn relation_instance(data: &RelationData, w: u64) -> Result<RelationInstance, AlgebraError> {
    let (lhs, rhs) = match data {
        RelationData::R1 { wheel } => {
            check_width(std::slice::from_ref(wheel), w)?;
            let mut rhs = WordCombination::zero();
            for (x, c) in properize_wheel(wheel)? {
                rhs.add_term(word(vec![Factor::Wheel(x)]), c);
            }
            (WordCombination::word(word(vec![Factor::Wheel(wheel.clone())])), rhs)
        }
        RelationData::R2 { left, right } => {
            let (n1, n2) = (left.len(), right.len());
            if (n1 + n2) as u64 > w {
                return Err(AlgebraError::Inadmissible(format!("{left} and {right} do not fit side by side in width {w}")));
            }
            let s = if (n1 - 1) * (n2 - 1) % 2 == 0 { 1 } else { -1 };
            let mut rhs = WordCombination::zero();
            rhs.add_term(word(vec![Factor::Wheel(right.clone()), Factor::Wheel(left.clone())]), q(s));
            (WordCombination::word(word(vec![Factor::Wheel(left.clone()), Factor::Wheel(right.clone())])), rhs)
        }
        RelationData::R3 { wheels, order } => {
            if order.iter().copied().sorted().ne(0..wheels.len()) {
                return Err(AlgebraError::Inadmissible(format!("{order:?} is not a reordering of {} wheels", wheels.len())));
            }
            let reordered: Vec<ProperWheel> = order.iter().map(|&i| wheels[i].clone()).collect();
            admissible_filter(wheels, w)?;
            let mut rhs = WordCombination::zero();
            rhs.add_term(word(vec![Factor::Averaged(wheels.clone())]), q(reorder_sign(wheels, &reordered)));
            (WordCombination::word(word(vec![Factor::Averaged(reordered)])), rhs)
        }
        RelationData::R4 { wheels } => {
            admissible_filter(wheels, w)?;
            let lhs = WordCombination::word(word(vec![Factor::Averaged(wheels.clone())]));
            let rhs = canonical_word(&word(vec![Factor::Averaged(wheels.clone())]))?;
            (lhs, rhs)
        }
        RelationData::R5 { wheels } => {
            admissible_r5(wheels, w)?;
            let c = r5_coefficients(&sizes(wheels))?;
            let mut lhs = WordCombination::zero();
            let mut rhs = WordCombination::zero();
            for (k, x) in wheels.iter().enumerate() {
                let rest: Vec<ProperWheel> = wheels.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, y)| y.clone()).collect();
                let (wk, af) = (Factor::Wheel(x.clone()), Factor::Averaged(rest));
                lhs.add_term(word(vec![wk.clone(), af.clone()]), q(c.left[k]));
                rhs.add_term(word(vec![af, wk]), q(-c.right[k]));
            }
            (lhs, rhs)
        }
    };
    Ok(RelationInstance { family: data.family(), data: data.clone(), width: w, lhs, rhs })
}

fn admissible_filter(ws: &[ProperWheel], w: u64) -> Result<(), AlgebraError> {
    check_width(ws, w)?;
    let total: usize = ws.iter().map(ProperWheel::len).sum();
    if ws.len() < 2 || ws.iter().any(|x| (total - x.len()) as u64 > w) {
        return Err(AlgebraError::Inadmissible(format!("averaged-filter on sizes {:?} at width {w}", sizes(ws))));
    }
    Ok(())
}

/// Wheels of the given sizes on consecutive labels from 1, largest label
/// first; with `reversed`, the labels run from the top down.
fn wheels_of(sizes: &[usize], reversed: bool) -> Vec<ProperWheel> {
    let n: usize = sizes.iter().sum();
    let mut next = 0;
    sizes
        .iter()
        .map(|&s| {
            let mut ls: Vec<Label> = (next + 1..=next + s).map(|l| if reversed { (n + 1 - l) as Label } else { l as Label }).collect();
            next += s;
            ls.sort_unstable_by(|a, b| b.cmp(a));
            ls[1..].sort_unstable();
            ProperWheel::new(ls).expect("distinct")
        })
        .collect()
}

/// Ordered size tuples with `parts` entries in `1..=max_part` summing to at
/// most `total`.
fn compositions(parts: usize, max_part: usize, total: usize) -> Vec<Vec<usize>> {
    (0..parts).map(|_| 1..=max_part).multi_cartesian_product().filter(|v| v.iter().sum::<usize>() <= total).collect()
}

/// A deterministic family of instances on at most `max_labels` labels.
pub fn generate_instances(max_labels: usize, w: u64) -> Vec<RelationInstance> {
    let wu = w as usize;
    let mut data = Vec::new();
    for n in 2..=wu.min(max_labels) {
        for o in (1..=n as Label).permutations(n) {
            let x = ProperWheel::new(o).expect("distinct");
            if !x.is_normalized() {
                data.push(RelationData::R1 { wheel: x });
            }
        }
    }
    for s in compositions(2, wu, wu.min(max_labels)) {
        for rev in [false, true] {
            let ws = wheels_of(&s, rev);
            data.push(RelationData::R2 { left: ws[0].clone(), right: ws[1].clone() });
        }
    }
    for m in 3..=max_labels {
        for s in compositions(m, wu, max_labels) {
            let total: usize = s.iter().sum();
            if s.iter().any(|&x| (total - x) > wu) {
                continue;
            }
            let ws = wheels_of(&s, false);
            for order in (0..m).permutations(m).skip(1) {
                data.push(RelationData::R3 { wheels: ws.clone(), order });
            }
            if s.iter().any(|&x| x > 1) {
                let flipped = ws.iter().map(|x| ProperWheel::new(x.labels().iter().rev().copied().collect()).unwrap()).collect();
                data.push(RelationData::R4 { wheels: flipped });
            }
        }
    }
    for parts in 3..=max_labels {
        for s in compositions(parts, wu, max_labels) {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted[2..].iter().sum::<usize>() <= wu {
                data.push(RelationData::R5 { wheels: wheels_of(&s, false) });
            }
        }
    }
    data.iter().map(|d| relation_instance(d, w).expect("generated instances are admissible")).collect()
}

/// Outcome of checking one instance on chains.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceCheck {
    pub family: Family,
    pub instance: String,
    /// `lhs - rhs` bounds, with a witness that was checked.
    pub passed: bool,
}

/// Checks every instance by a boundary witness, sharing one reduced
/// boundary matrix per complex and degree.
pub fn verify_instances(instances: &[RelationInstance], opts: &HomologyOptions) -> Result<Vec<InstanceCheck>, AlgebraError> {
    let mut groups: BTreeMap<(Vec<Label>, u64, u64), Vec<usize>> = BTreeMap::new();
    for (i, r) in instances.iter().enumerate() {
        groups.entry((r.labels(), r.width, r.degree())).or_default().push(i);
    }
    let checked: Vec<Vec<(usize, bool)>> = groups
        .into_par_iter()
        .map(|((labels, w, k), idx)| {
            let mut space: Option<HomologySpace> = None;
            let mut out = Vec::new();
            for i in idx {
                let d = instances[i].difference();
                if d.is_zero() {
                    out.push((i, true));
                    continue;
                }
                let z = d.chain(Width::Bounded(w))?;
                if space.is_none() {
                    let spec = ComplexSpec::ordered(WeightedSet::unit(labels.iter().copied())?, Width::Bounded(w))?;
                    space = Some(HomologySpace::new(&spec, k, true, opts)?);
                }
                let t = space.as_mut().expect("built").is_boundary(&z)?;
                out.push((i, t.is_boundary() && t.verify(&z)?));
            }
            Ok(out)
        })
        .collect::<Result<_, AlgebraError>>()?;
    let mut all: Vec<(usize, bool)> = checked.into_iter().flatten().collect();
    all.sort_unstable();
    Ok(all
        .into_iter()
        .map(|(i, passed)| InstanceCheck { family: instances[i].family, instance: instances[i].to_string(), passed })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_wheel_relation_has_six_terms() {
        let r = relation_instance(&RelationData::R5 { wheels: wheels_of(&[1, 1, 2], false) }, 2).unwrap();
        assert_eq!(r.lhs.len() + r.rhs.len(), 6);
    }

    #[test]
    fn closed_form_shape() {
        let (l, r) = r5_closed_form(&[1, 1, 1]);
        assert_eq!(l, vec![1, -1, 1]);
        assert_eq!(r, vec![1, -1, 1]);
    }

    #[test]
    fn inadmissible_data_is_rejected() {
        let ws = wheels_of(&[2, 2, 2, 2], false);
        assert!(relation_instance(&RelationData::R5 { wheels: ws }, 3).is_err());
        let ws = wheels_of(&[1, 2], false);
        assert!(relation_instance(&RelationData::R2 { left: ws[0].clone(), right: ws[1].clone() }, 2).is_err());
    }

    #[test]
    fn consecutive_wheels() {
        let ws = wheels_of(&[1, 3, 2], false);
        assert_eq!(ws.iter().map(|w| w.to_string()).join("|"), "W(1)|W(4,2,3)|W(6,5)");
        let ws = wheels_of(&[1, 2], true);
        assert_eq!(ws.iter().map(|w| w.to_string()).join("|"), "W(3)|W(2,1)");
    }
}
