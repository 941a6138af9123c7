use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use strip_cells::{Cell, ComplexSpec, Label, Weight, WeightedLabel, WeightedSet, Width};
use strip_chains::{q, ChainVector};
use strip_maps::{averaged_inclusion_q, include_permutohedron};

use crate::wheel::WheelTree;
use crate::CycleError;

/// A filter `F(W1, …, Wm)` or averaged-filter `AF(W1, …, Wm)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FilterSpec {
    pub wheels: Vec<WheelTree>,
    pub averaged: bool,
}

impl FilterSpec {
    pub fn new(wheels: Vec<WheelTree>, averaged: bool) -> Result<Self, CycleError> {
        if wheels.len() < 2 {
            return Err(CycleError::TooFewWheels(wheels.len()));
        }
        let mut labels: Vec<Label> = wheels.iter().flat_map(WheelTree::labels).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(CycleError::RepeatedLabel(format!("{}", FilterSpec { wheels: wheels.clone(), averaged })));
        }
        Ok(FilterSpec { wheels, averaged })
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.wheels.iter().map(WheelTree::weight).collect()
    }

    pub fn total_weight(&self) -> Weight {
        self.weights().iter().sum()
    }

    /// Every sum of all but one wheel weight fits in the strip.
    pub fn is_admissible(&self, width: Width) -> bool {
        let total = self.total_weight();
        self.weights().iter().all(|&n| width.admits(total - n))
    }

    /// Total weight fits in the strip, so the cycle bounds.
    pub fn is_trivial(&self, width: Width) -> bool {
        width.admits(self.total_weight())
    }

    pub fn labels(&self) -> Vec<Label> {
        self.wheels.iter().flat_map(WheelTree::labels).collect()
    }
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", if self.averaged { "AF" } else { "F" })?;
        for (i, w) in self.wheels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Global sign of the filter. On two wheels the boundary of the top cell is
/// `(-1)^n1 (W1|W2 + (-1)^((n1-1)(n2-1)+1) W2|W1)` and the sign is removed;
/// on three or more wheels the boundary is used as is, so reordering the
/// wheels of an averaged-filter multiplies it by the weighted sign.
pub fn normalization(weights: &[Weight]) -> i64 {
    if weights.len() == 2 && weights[0] % 2 == 1 {
        -1
    } else {
        1
    }
}

/// The boundary `Z` of the top cell of the permutohedron on the wheel
/// names, restricted to the strip.
fn permutohedron_boundary(f: &FilterSpec, width: Width) -> Result<ChainVector, CycleError> {
    let names = WeightedSet::new(f.wheels.iter().map(|t| WeightedLabel::new(t.first(), t.weight())).collect())?;
    let order: Vec<Label> = names.labels().collect();
    let spec = Arc::new(ComplexSpec::permutohedron(names, Width::Unbounded)?);
    let top = ChainVector::from_cell(spec, Cell::from_blocks([order])?)?;
    Ok(top.boundary()?.restrict(width)?)
}

/// The filter or averaged-filter cycle: `Z` pushed into the cell complex by
/// `i_id` or `q`, then each wheel unravelled by its spin maps. The degree is
/// the total weight minus two.
pub fn filter_cycle(f: &FilterSpec, width: Width) -> Result<ChainVector, CycleError> {
    if !f.is_admissible(width) {
        return Err(CycleError::Inadmissible(format!("{f} at width {width}")));
    }
    let z = permutohedron_boundary(f, width)?;
    let mut x = if f.averaged {
        averaged_inclusion_q(&z)?
    } else {
        let order: Vec<Label> = f.wheels.iter().map(WheelTree::first).collect();
        include_permutohedron(&order, &z)?
    };
    for t in &f.wheels {
        x = t.program().apply(&x)?;
    }
    let x = x.scale(&q(normalization(&f.weights())));
    debug_assert!(x.is_cycle()?);
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(wheels: &[&[Label]], averaged: bool) -> FilterSpec {
        FilterSpec::new(wheels.iter().map(|w| WheelTree::proper(w).unwrap()).collect(), averaged).unwrap()
    }

    #[test]
    fn two_points() {
        let z = filter_cycle(&f(&[&[1], &[2]], false), Width::Bounded(2)).unwrap();
        assert_eq!(z.to_string(), "(1|2) - (2|1)");
        assert_eq!(filter_cycle(&f(&[&[1], &[2]], true), Width::Bounded(2)).unwrap(), z);
    }

    #[test]
    fn averaged_three_points_has_halves() {
        let z = filter_cycle(&f(&[&[1], &[2], &[3]], true), Width::Bounded(2)).unwrap();
        assert_eq!(z.degree(), 1);
        assert!(z.is_cycle().unwrap());
        assert!(z.terms().any(|(_, c)| !c.is_integer()));
    }

    #[test]
    fn admissibility() {
        let x = f(&[&[5], &[4, 2], &[3, 1]], false);
        assert!(x.is_admissible(Width::Bounded(4)));
        assert!(!x.is_admissible(Width::Bounded(3)));
        let z = filter_cycle(&x, Width::Bounded(4)).unwrap();
        assert_eq!(z.degree(), 3);
        assert!(z.is_cycle().unwrap());
        assert!(FilterSpec::new(vec![WheelTree::leaf(1)], false).is_err());
    }
}
