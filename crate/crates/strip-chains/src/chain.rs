use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use strip_cells::{Cell, ComplexSpec, Kind, Label, Relabeling, Weight, WeightedLabel, WeightedSet, Width};

use crate::boundary::cell_boundary;
use crate::ChainError;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// A homogeneous rational chain on the cells of one complex.
///
/// The degree is the weighted dimension of the cells. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainVector {
    spec: Arc<ComplexSpec>,
    degree: Weight,
    terms: BTreeMap<Cell, Q>,
}

impl ChainVector {
    pub fn zero(spec: impl Into<Arc<ComplexSpec>>, degree: Weight) -> Self {
        ChainVector { spec: spec.into(), degree, terms: BTreeMap::new() }
    }

    /// The chain `1 * cell`.
    pub fn from_cell(spec: impl Into<Arc<ComplexSpec>>, cell: Cell) -> Result<Self, ChainError> {
        let spec = spec.into();
        spec.check(&cell)?;
        let degree = spec.wdim(&cell)?;
        let mut terms = BTreeMap::new();
        terms.insert(cell, Q::one());
        Ok(ChainVector { spec, degree, terms })
    }

    /// Builds a chain from terms, summing repeated cells. Every cell must be
    /// admissible and of the given degree.
    pub fn from_terms<I>(spec: impl Into<Arc<ComplexSpec>>, degree: Weight, terms: I) -> Result<Self, ChainError>
    where
        I: IntoIterator<Item = (Cell, Q)>,
    {
        let mut out = ChainVector::zero(spec, degree);
        for (cell, c) in terms {
            out.spec.check(&cell)?;
            let d = out.spec.wdim(&cell)?;
            if d != degree {
                return Err(ChainError::DegreeMismatch { expected: degree, found: d });
            }
            out.add_term_unchecked(cell, c);
        }
        Ok(out)
    }

    /// Adds `c * cell` without validating the cell.
    pub fn add_term_unchecked(&mut self, cell: Cell, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(cell) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn spec(&self) -> &ComplexSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> &Arc<ComplexSpec> {
        &self.spec
    }

    pub fn degree(&self) -> Weight {
        self.degree
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

    pub fn terms(&self) -> impl Iterator<Item = (&Cell, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Cell, Q> {
        self.terms
    }

    pub fn coeff(&self, cell: &Cell) -> Q {
        self.terms.get(cell).cloned().unwrap_or_else(Q::zero)
    }

    /// Common denominator of all coefficients.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms.values().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn compatible(&self, other: &ChainVector) -> Result<(), ChainError> {
        if *self.spec != *other.spec {
            return Err(ChainError::SpecMismatch(self.spec.descriptor(), other.spec.descriptor()));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(ChainError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &ChainVector, c: &Q) -> Result<(), ChainError> {
        self.compatible(other)?;
        if self.is_zero() {
            self.degree = other.degree;
        }
        for (cell, a) in &other.terms {
            self.add_term_unchecked(cell.clone(), a * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainVector) -> Result<ChainVector, ChainError> {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &ChainVector) -> Result<ChainVector, ChainError> {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one())?;
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> ChainVector {
        let mut out = ChainVector::zero(self.spec.clone(), self.degree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(cell, a)| (cell.clone(), a * c)).collect();
        }
        out
    }

    pub fn neg(&self) -> ChainVector {
        self.scale(&-Q::one())
    }

    /// The cellular boundary. A 0-chain has zero boundary, reported in
    /// degree 0.
    pub fn boundary(&self) -> Result<ChainVector, ChainError> {
        let mut out = ChainVector::zero(self.spec.clone(), self.degree.saturating_sub(1));
        if self.degree == 0 {
            return Ok(out);
        }
        for (cell, c) in &self.terms {
            for (facet, s) in cell_boundary(&self.spec, cell)? {
                let term = if s > 0 { c.clone() } else { -c.clone() };
                out.add_term_unchecked(facet, term);
            }
        }
        Ok(out)
    }

    /// The same chain viewed in the complex of width `width`; fails if a
    /// cell does not fit.
    pub fn restrict(&self, width: Width) -> Result<ChainVector, ChainError> {
        let spec = Arc::new(self.spec.with_width(width)?);
        for cell in self.terms.keys() {
            spec.check(cell)?;
        }
        Ok(ChainVector { spec, degree: self.degree, terms: self.terms.clone() })
    }

    /// Concatenation product `self|other` on disjoint label sets.
    pub fn concat(&self, other: &ChainVector) -> Result<ChainVector, ChainError> {
        if self.spec.width() != other.spec.width() {
            return Err(ChainError::WidthMismatch);
        }
        if self.spec.kind() != other.spec.kind() {
            return Err(ChainError::SpecMismatch(self.spec.descriptor(), other.spec.descriptor()));
        }
        let labels = self
            .spec
            .labels()
            .disjoint_union(other.spec.labels())
            .map_err(|_| ChainError::OverlappingLabels)?;
        let spec = Arc::new(ComplexSpec::new(self.spec.kind(), labels, self.spec.width())?);
        let mut out = ChainVector::zero(spec, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term_unchecked(a.concat(b), x * y);
            }
        }
        Ok(out)
    }

    /// Renames labels, keeping weights. A permutohedron's label order is
    /// carried along, so its blocks stay canonical.
    pub fn relabel(&self, r: &Relabeling) -> Result<ChainVector, ChainError> {
        let entries = self
            .spec
            .labels()
            .entries()
            .iter()
            .map(|e| WeightedLabel::new(r.apply(e.label), e.weight))
            .collect();
        let labels = WeightedSet::new(entries)?;
        for l in r.support() {
            if !self.spec.labels().contains(l) {
                return Err(ChainError::Cell(strip_cells::CellError::UnknownLabel(l)));
            }
        }
        let spec = Arc::new(self.spec.with_labels(labels));
        let mut out = ChainVector::zero(spec.clone(), self.degree);
        for (cell, c) in &self.terms {
            let image = cell.map_labels(|l| r.apply(l));
            out.add_term_unchecked(image, c.clone());
        }
        Ok(out)
    }

    /// Reinterprets the terms in another complex without checking them.
    pub fn with_spec_unchecked(self, spec: Arc<ComplexSpec>) -> ChainVector {
        ChainVector { spec, degree: self.degree, terms: self.terms }
    }

    /// Checks every stored cell against the complex.
    pub fn validate(&self) -> Result<(), ChainError> {
        for cell in self.terms.keys() {
            self.spec.check(cell)?;
            let d = self.spec.wdim(cell)?;
            if d != self.degree {
                return Err(ChainError::DegreeMismatch { expected: self.degree, found: d });
            }
        }
        Ok(())
    }

    pub fn is_cycle(&self) -> Result<bool, ChainError> {
        Ok(self.boundary()?.is_zero())
    }

    /// Label set of the underlying complex, in its order.
    pub fn labels(&self) -> Vec<Label> {
        self.spec.labels().labels().collect()
    }

    pub fn is_permutohedral(&self) -> bool {
        self.spec.kind() == Kind::Permutohedron
    }
}

impl fmt::Debug for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} deg {}] {}", self.spec, self.degree, self)
    }
}

impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (cell, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "({cell})")?;
        }
        Ok(())
    }
}


/// Serde helpers writing rationals as text such as `-1/2`.
pub mod q_text {
    use serde::ser::{SerializeSeq, Serializer};

    use super::Q;

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn vec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn matrix<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            seq.serialize_element(&row.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        }
        seq.end()
    }
}
