use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use strip_cells::{Cell, ComplexSpec, Weight};
use strip_chains::{cell_boundary, BoundaryMatrix, CellIndex, ChainVector, Q};

use crate::reduce::{Aug, Engine, Sparse};
use crate::{check_cap, HomologyError, HomologyOptions};

/// A linear functional on the chains of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub spec: ComplexSpec,
    pub degree: Weight,
    pub values: BTreeMap<Cell, Q>,
}

impl Certificate {
    pub fn evaluate(&self, chain: &ChainVector) -> Q {
        chain
            .terms()
            .filter_map(|(c, x)| self.values.get(c).map(|f| f * x))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Checks that the functional vanishes on the boundary of every cell one
    /// degree up and not on `z`.
    pub fn verify(&self, z: &ChainVector) -> Result<bool, HomologyError> {
        if z.spec() != &self.spec || z.degree() != self.degree {
            return Ok(false);
        }
        for cell in self.spec.enumerate(self.degree + 1) {
            let mut acc = Q::zero();
            for (facet, s) in cell_boundary(&self.spec, &cell)? {
                if let Some(f) = self.values.get(&facet) {
                    acc += if s > 0 { f.clone() } else { -f.clone() };
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(!self.evaluate(z).is_zero())
    }
}

/// Outcome of a boundary test, with evidence either way.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryTest {
    Boundary { witness: ChainVector },
    NotBoundary { certificate: Certificate },
}

impl BoundaryTest {
    pub fn is_boundary(&self) -> bool {
        matches!(self, BoundaryTest::Boundary { .. })
    }

    /// Re-checks the evidence against `z` by direct computation.
    pub fn verify(&self, z: &ChainVector) -> Result<bool, HomologyError> {
        match self {
            BoundaryTest::Boundary { witness } => {
                let b = witness.boundary()?;
                Ok(b.spec() == z.spec() && b.terms().eq(z.terms()))
            }
            BoundaryTest::NotBoundary { certificate } => certificate.verify(z),
        }
    }
}

/// The boundaries in one degree of a complex, reduced once and reused for
/// boundary tests, independence checks and change of basis.
pub struct HomologySpace {
    spec: Arc<ComplexSpec>,
    degree: Weight,
    rows: CellIndex,
    upper: CellIndex,
    engine: Engine,
    tracked: bool,
    base: usize,
}

fn big(q: &Q) -> BigInt {
    debug_assert!(q.is_integer());
    q.to_integer()
}

impl HomologySpace {
    /// Reduces `∂: C_{degree+1} -> C_degree`. With `tracked`, stored columns
    /// remember their combination of cells so boundary tests can return
    /// witnesses.
    pub fn new(spec: &ComplexSpec, degree: Weight, tracked: bool, opts: &HomologyOptions) -> Result<Self, HomologyError> {
        check_cap(spec.count_cells(degree) + spec.count_cells(degree + 1), opts.cap)?;
        let rows = CellIndex::of(spec, degree);
        let (upper, columns) = if spec.count_cells(degree + 1) == 0 {
            (CellIndex::new(Vec::new()), Vec::new())
        } else {
            let m = BoundaryMatrix::build(spec, degree + 1)?;
            (m.cols, m.columns)
        };
        let mut engine = Engine::default();
        for (j, col) in columns.into_iter().enumerate() {
            let main: Sparse<BigInt> = col.into_iter().map(|(i, v)| (i, BigInt::from(v))).collect();
            let track = if tracked { vec![(j as u32, BigInt::one())] } else { Vec::new() };
            engine.insert(&Aug::new(main, track));
        }
        let base = engine.rank();
        Ok(HomologySpace { spec: Arc::new(spec.clone()), degree, rows, upper, engine, tracked, base })
    }

    pub fn spec(&self) -> &ComplexSpec {
        &self.spec
    }

    pub fn degree(&self) -> Weight {
        self.degree
    }

    /// Rank of the boundary map into this degree.
    pub fn boundary_rank(&self) -> usize {
        self.base
    }

    /// Number of cells in this degree.
    pub fn cell_count(&self) -> usize {
        self.rows.len()
    }

    /// Integer coordinates of `z` and the scale that made them integral.
    fn coordinates(&self, z: &ChainVector) -> Result<(Sparse<BigInt>, BigInt), HomologyError> {
        if z.spec() != self.spec.as_ref() {
            return Err(HomologyError::SpecMismatch(z.spec().descriptor(), self.spec.descriptor()));
        }
        if z.degree() != self.degree && !z.is_zero() {
            return Err(HomologyError::DegreeMismatch { expected: self.degree, found: z.degree() });
        }
        let l = z.denominator_lcm();
        let scale = Q::from_integer(l.clone());
        let coords = self.rows.coordinates(z)?.into_iter().map(|(i, c)| (i, big(&(c * &scale)))).collect();
        Ok((coords, l))
    }

    fn require_cycle(&self, z: &ChainVector) -> Result<(), HomologyError> {
        if z.is_cycle()? {
            Ok(())
        } else {
            Err(HomologyError::NotACycle)
        }
    }

    /// Decides whether the cycle `z` bounds. Witnesses need a tracked space;
    /// untracked spaces still return certificates.
    pub fn is_boundary(&mut self, z: &ChainVector) -> Result<BoundaryTest, HomologyError> {
        self.require_cycle(z)?;
        let (coords, l) = self.coordinates(z)?;
        let slot = self.upper.len() as u32;
        let x = Aug::new(coords, vec![(slot, BigInt::one())]);
        let r = self.engine.reduce(&x);
        if r.is_zero() {
            if !self.tracked {
                return Err(HomologyError::Untracked);
            }
            let alpha = r.track.iter().find(|p| p.0 == slot).map(|p| p.1.clone()).expect("z participates");
            let denom = Q::from_integer(alpha * l);
            let mut witness = ChainVector::zero(self.spec.clone(), self.degree + 1);
            for (j, t) in r.track.iter().filter(|p| p.0 != slot) {
                witness.add_term_unchecked(self.upper.cells()[*j as usize].clone(), -Q::from_integer(t.clone()) / &denom);
            }
            return Ok(BoundaryTest::Boundary { witness });
        }
        Ok(BoundaryTest::NotBoundary { certificate: self.certificate(&Aug::new(r.main, Vec::new())) })
    }

    /// A functional killing every stored boundary column but not `x`, built
    /// from the pivot structure.
    fn certificate(&mut self, x: &Aug<BigInt>) -> Certificate {
        let x = self.engine.reduce_fully(x);
        let r = x.main[0].0;
        let mut f: BTreeMap<u32, Q> = BTreeMap::new();
        f.insert(r, Q::one());
        let mut cols = self.engine.columns_big();
        cols.truncate(self.base);
        cols.sort_by_key(|c| std::cmp::Reverse(c.main[0].0));
        for u in &cols {
            let (p, ref lead) = u.main[0];
            let s = u.main[1..]
                .iter()
                .filter_map(|(j, v)| f.get(j).map(|fj| fj * Q::from_integer(v.clone())))
                .fold(Q::zero(), |a, b| a + b);
            if !s.is_zero() {
                f.insert(p, -s / Q::from_integer(lead.clone()));
            }
        }
        Certificate {
            spec: self.spec.as_ref().clone(),
            degree: self.degree,
            values: f.into_iter().map(|(i, v)| (self.rows.cells()[i as usize].clone(), v)).collect(),
        }
    }

    /// Indices of the cycles that depend on the boundaries and the earlier
    /// cycles. Empty means the classes are linearly independent.
    pub fn dependent(&mut self, cycles: &[ChainVector]) -> Result<Vec<usize>, HomologyError> {
        let mut out = Vec::new();
        for (i, z) in cycles.iter().enumerate() {
            self.require_cycle(z)?;
            let (coords, _) = self.coordinates(z)?;
            if self.engine.insert(&Aug::new(coords, Vec::new())).is_some() {
                out.push(i);
            }
        }
        self.engine.truncate(self.base);
        Ok(out)
    }

    /// Coefficients `c` with `z - Σ c_i basis_i` a boundary.
    pub fn express(&mut self, z: &ChainVector, basis: &[ChainVector]) -> Result<Vec<Q>, HomologyError> {
        let result = self.express_inner(z, basis);
        self.engine.truncate(self.base);
        result
    }

    fn express_inner(&mut self, z: &ChainVector, basis: &[ChainVector]) -> Result<Vec<Q>, HomologyError> {
        self.require_cycle(z)?;
        // Boundary columns may carry tracks over the cells one degree up;
        // basis slots start after them.
        let offset = self.upper.len() as u32;
        let mut scales = Vec::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            self.require_cycle(b)?;
            let (coords, l) = self.coordinates(b)?;
            scales.push(l);
            if self.engine.insert(&Aug::new(coords, vec![(offset + i as u32, BigInt::one())])).is_some() {
                return Err(HomologyError::DependentBasis(i));
            }
        }
        let (coords, l) = self.coordinates(z)?;
        let slot = offset + basis.len() as u32;
        let r = self.engine.reduce(&Aug::new(coords, vec![(slot, BigInt::one())]));
        if !r.is_zero() {
            let lead = self.rows.cells()[r.main[0].0 as usize].to_string();
            return Err(HomologyError::NotInSpan { residual_terms: r.main.len(), leading_cell: lead });
        }
        let alpha = r.track.iter().find(|p| p.0 == slot).map(|p| p.1.clone()).expect("z participates");
        let mut coeffs = vec![Q::zero(); basis.len()];
        for (j, t) in &r.track {
            if *j >= offset && *j < slot {
                let i = (*j - offset) as usize;
                // z*l ≡ -Σ t_i (b_i * l_i) / alpha
                coeffs[i] = -Q::new(t * &scales[i], alpha.clone() * &l);
            }
        }
        Ok(coeffs)
    }
}
