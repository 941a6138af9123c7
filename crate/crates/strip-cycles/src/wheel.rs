use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use strip_cells::{Cell, ComplexSpec, Label, Weight, WeightedLabel, WeightedSet, Width};
use strip_chains::ChainVector;
use strip_maps::{peel_chunks, SpinProgram, SpinStep};

use crate::CycleError;

/// A recipe of spin maps: the root is a single point carrying the total
/// weight, and each node splits its cluster into the left and right
/// subtrees. A cluster is named by its first leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WheelTree {
    Leaf { label: Label, weight: Weight },
    Node(Box<WheelTree>, Box<WheelTree>),
}

impl WheelTree {
    pub fn leaf(label: Label) -> Self {
        WheelTree::Leaf { label, weight: 1 }
    }

    pub fn node(left: WheelTree, right: WheelTree) -> Self {
        WheelTree::Node(Box::new(left), Box::new(right))
    }

    /// The left comb peeling the last label at every step.
    pub fn proper(labels: &[Label]) -> Result<Self, CycleError> {
        let (&first, rest) = labels.split_first().ok_or(CycleError::EmptyWheel)?;
        let mut t = WheelTree::leaf(first);
        for &l in rest {
            t = WheelTree::node(t, WheelTree::leaf(l));
        }
        t.labels_checked()?;
        Ok(t)
    }

    pub fn first(&self) -> Label {
        match self {
            WheelTree::Leaf { label, .. } => *label,
            WheelTree::Node(l, _) => l.first(),
        }
    }

    pub fn weight(&self) -> Weight {
        match self {
            WheelTree::Leaf { weight, .. } => *weight,
            WheelTree::Node(l, r) => l.weight() + r.weight(),
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Label>) {
        match self {
            WheelTree::Leaf { label, .. } => out.push(*label),
            WheelTree::Node(l, r) => {
                l.collect(out);
                r.collect(out);
            }
        }
    }

    fn labels_checked(&self) -> Result<Vec<Label>, CycleError> {
        let labels = self.labels();
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CycleError::RepeatedLabel(self.to_string()));
        }
        Ok(labels)
    }

    pub fn weighted_set(&self) -> WeightedSet {
        let mut entries = Vec::new();
        self.collect_weighted(&mut entries);
        WeightedSet::new(entries).expect("leaves are distinct")
    }

    fn collect_weighted(&self, out: &mut Vec<WeightedLabel>) {
        match self {
            WheelTree::Leaf { label, weight } => out.push(WeightedLabel::new(*label, *weight)),
            WheelTree::Node(l, r) => {
                l.collect_weighted(out);
                r.collect_weighted(out);
            }
        }
    }

    /// Left comb: every right child is a leaf.
    pub fn is_proper(&self) -> bool {
        match self {
            WheelTree::Leaf { .. } => true,
            WheelTree::Node(l, r) => matches!(**r, WheelTree::Leaf { .. }) && l.is_proper(),
        }
    }

    /// The spin steps unravelling the point into this wheel.
    pub fn program(&self) -> SpinProgram {
        let mut steps = Vec::new();
        self.push_steps(&mut steps);
        SpinProgram { steps }
    }

    fn push_steps(&self, steps: &mut Vec<SpinStep>) {
        if let WheelTree::Node(l, r) = self {
            steps.push(SpinStep::new(l.first(), l.first(), r.first(), l.weight(), r.weight()));
            l.push_steps(steps);
            r.push_steps(steps);
        }
    }
}

impl fmt::Display for WheelTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WheelTree::Leaf { label, weight: 1 } => write!(f, "{label}"),
            WheelTree::Leaf { label, weight } => write!(f, "{label}:{weight}"),
            WheelTree::Node(l, r) => write!(f, "[{l} {r}]"),
        }
    }
}

/// The proper wheel `W(i1, …, in)` on unit-weight disks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProperWheel {
    labels: Vec<Label>,
}

impl ProperWheel {
    pub fn new(labels: Vec<Label>) -> Result<Self, CycleError> {
        WheelTree::proper(&labels)?;
        if labels.contains(&0) {
            return Err(CycleError::RepeatedLabel("label 0".into()));
        }
        Ok(ProperWheel { labels })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn first(&self) -> Label {
        self.labels[0]
    }

    pub fn max_label(&self) -> Label {
        *self.labels.iter().max().expect("wheels are non-empty")
    }

    /// The largest label comes first.
    pub fn is_normalized(&self) -> bool {
        self.labels[0] == self.max_label()
    }

    pub fn tree(&self) -> WheelTree {
        WheelTree::proper(&self.labels).expect("validated on construction")
    }

    pub fn map_labels(&self, f: impl Fn(Label) -> Label) -> ProperWheel {
        ProperWheel { labels: self.labels.iter().map(|&l| f(l)).collect() }
    }

    /// Steps peeling the last disk at each stage.
    pub fn program(&self) -> SpinProgram {
        let chunks: Vec<(Label, Weight)> = self.labels.iter().map(|&l| (l, 1)).collect();
        SpinProgram { steps: peel_chunks(&chunks) }
    }
}

impl fmt::Display for ProperWheel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// The cycle of a wheel: spin maps applied to a single point. Its degree is
/// the total weight minus one.
pub fn wheel_cycle(tree: &WheelTree, width: Width) -> Result<ChainVector, CycleError> {
    tree.labels_checked()?;
    let total = tree.weight();
    if !width.admits(total) {
        return Err(CycleError::TooHeavy { weight: total, width });
    }
    let point = WeightedSet::new(vec![WeightedLabel::new(tree.first(), total)])?;
    let spec = Arc::new(ComplexSpec::ordered(point, width)?);
    let start = ChainVector::from_cell(spec, Cell::from_blocks([vec![tree.first()]])?)?;
    let z = tree.program().apply(&start)?;
    debug_assert!(z.is_cycle()?);
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disk_wheel() {
        let z = wheel_cycle(&WheelTree::proper(&[2, 1]).unwrap(), Width::Bounded(2)).unwrap();
        assert_eq!(z.to_string(), "(1 2) + (2 1)");
        assert_eq!(z.degree(), 1);
    }

    #[test]
    fn single_disk_is_a_point() {
        let z = wheel_cycle(&WheelTree::leaf(1), Width::Bounded(1)).unwrap();
        assert_eq!(z.to_string(), "(1)");
    }

    #[test]
    fn proper_trees_are_left_combs() {
        let t = WheelTree::proper(&[4, 2, 1, 3]).unwrap();
        assert!(t.is_proper());
        assert_eq!(t.to_string(), "[[[4 2] 1] 3]");
        assert_eq!(t.program(), ProperWheel::new(vec![4, 2, 1, 3]).unwrap().program());
        let z = wheel_cycle(&t, Width::Bounded(4)).unwrap();
        assert!(z.is_cycle().unwrap());
        assert_eq!(z.degree(), 3);
        assert!(wheel_cycle(&t, Width::Bounded(3)).is_err());
        assert!(!WheelTree::node(WheelTree::leaf(1), t).is_proper());
    }

    #[test]
    fn rejects_repeats() {
        assert!(ProperWheel::new(vec![1, 2, 1]).is_err());
        assert!(ProperWheel::new(vec![]).is_err());
    }
}
