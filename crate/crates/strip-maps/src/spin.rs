use std::sync::Arc;

use serde::{Deserialize, Serialize};
use strip_cells::{wheel_decomposition, Cell, ComplexSpec, Kind, Label, Weight, WeightedLabel, WeightedSet};
use strip_chains::ChainVector;

use crate::MapError;

/// Replace the label `a` by two labels `b` and `c` orbiting each other, with
/// `w_a = w_b + w_c`. `b` may reuse the name `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinStep {
    pub a: Label,
    pub b: Label,
    pub c: Label,
    pub wb: Weight,
    pub wc: Weight,
}

impl SpinStep {
    pub fn new(a: Label, b: Label, c: Label, wb: Weight, wc: Weight) -> Self {
        SpinStep { a, b, c, wb, wc }
    }

    /// Sign of the `c b` term.
    pub fn swap_sign(&self) -> i8 {
        if (self.wb * self.wc) % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// The label set after the step; `b` and `c` take `a`'s place.
    pub fn target_set(&self, source: &WeightedSet) -> Result<WeightedSet, MapError> {
        let wa = source.weight(self.a).ok_or(MapError::MissingLabel(self.a))?;
        if wa != self.wb + self.wc {
            return Err(MapError::WeightMismatch { label: self.a, weight: wa, parts: (self.wb, self.wc) });
        }
        if self.b == self.c {
            return Err(MapError::NotFresh(self.b));
        }
        let mut entries = Vec::with_capacity(source.len() + 1);
        for e in source.entries() {
            if e.label == self.a {
                entries.push(WeightedLabel::new(self.b, self.wb));
                entries.push(WeightedLabel::new(self.c, self.wc));
            } else if e.label == self.b || e.label == self.c {
                return Err(MapError::NotFresh(e.label));
            } else {
                entries.push(*e);
            }
        }
        Ok(WeightedSet::new(entries)?)
    }
}

/// `spin_{a:b,c}`: each cell has `a` replaced by `b c` with the same
/// coefficient and by `c b` with coefficient times `(-1)^(w_b w_c - 1)`.
///
/// The weighted dimension is unchanged; the unweighted dimension of every
/// cell goes up by one.
pub fn spin(step: &SpinStep, chain: &ChainVector) -> Result<ChainVector, MapError> {
    let spec = chain.spec();
    if spec.kind() != Kind::OrderedCell {
        return Err(MapError::WrongKind("spin maps act on ordered cell complexes"));
    }
    let target = Arc::new(ComplexSpec::new(Kind::OrderedCell, step.target_set(spec.labels())?, spec.width())?);
    let mut out = ChainVector::zero(target, chain.degree());
    let flip = step.swap_sign() < 0;
    for (cell, coeff) in chain.terms() {
        let pos = cell.labels().iter().position(|&l| l == step.a).ok_or(MapError::MissingLabel(step.a))?;
        let (bc, cb) = substitute(cell, pos, step.b, step.c);
        out.add_term_unchecked(bc, coeff.clone());
        out.add_term_unchecked(cb, if flip { -coeff.clone() } else { coeff.clone() });
    }
    Ok(out)
}

fn substitute(cell: &Cell, pos: usize, b: Label, c: Label) -> (Cell, Cell) {
    let mut sizes = cell.sizes().to_vec();
    let mut acc = 0usize;
    for s in sizes.iter_mut() {
        acc += *s as usize;
        if pos < acc {
            *s += 1;
            break;
        }
    }
    let seq = cell.labels();
    let mut first = Vec::with_capacity(seq.len() + 1);
    first.extend_from_slice(&seq[..pos]);
    let mut second = first.clone();
    first.extend_from_slice(&[b, c]);
    second.extend_from_slice(&[c, b]);
    first.extend_from_slice(&seq[pos + 1..]);
    second.extend_from_slice(&seq[pos + 1..]);
    (Cell::from_parts_unchecked(sizes.clone(), first), Cell::from_parts_unchecked(sizes, second))
}

/// A sequence of spin steps applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinProgram {
    pub steps: Vec<SpinStep>,
}

impl SpinProgram {
    pub fn apply(&self, chain: &ChainVector) -> Result<ChainVector, MapError> {
        let mut out = chain.clone();
        for step in &self.steps {
            out = spin(step, &out)?;
        }
        Ok(out)
    }

    pub fn then(mut self, other: SpinProgram) -> SpinProgram {
        self.steps.extend(other.steps);
        self
    }
}

/// Steps peeling a sequence of chunks from the right: the chunk sequence
/// `c1 … cr`, named by the first label of `c1`, splits into `c1 … c(r-1)`
/// and `cr`, and so on down to `c1`. Each chunk is named by its first label.
pub fn peel_chunks(chunks: &[(Label, Weight)]) -> Vec<SpinStep> {
    let mut steps = Vec::new();
    let name = chunks[0].0;
    let mut total: Weight = chunks.iter().map(|c| c.1).sum();
    for &(c, wc) in chunks[1..].iter().rev() {
        steps.push(SpinStep::new(name, name, c, total - wc, wc));
        total -= wc;
    }
    steps
}

/// `spin_σ`: unravels each wheel of `σ` one disk at a time, peeling the last
/// entry. The source complex has one label per wheel, named by its axle and
/// weighted by the wheel's total weight.
pub fn spin_sigma_program(sigma: &[Label], set: &WeightedSet) -> Result<SpinProgram, MapError> {
    let wheels = wheel_decomposition(sigma, set)?;
    let mut steps = Vec::new();
    for wheel in &wheels.wheels {
        let chunks: Vec<(Label, Weight)> = wheel.iter().map(|&l| (l, set.weight(l).expect("checked"))).collect();
        steps.extend(peel_chunks(&chunks));
    }
    Ok(SpinProgram { steps })
}

pub fn spin_sigma(sigma: &[Label], set: &WeightedSet, chain: &ChainVector) -> Result<ChainVector, MapError> {
    let source = wheel_decomposition(sigma, set)?.weighted_set();
    if source.sorted() != chain.spec().labels().sorted() {
        return Err(MapError::WrongComplex(format!(
            "spin_sigma expects labels {source}, found {}",
            chain.spec().labels()
        )));
    }
    spin_sigma_program(sigma, set)?.apply(chain)
}

/// `spin_{τ,σ}`: from the complex of wheels of `τ` to the complex of wheels
/// of `σ`, unwinding each wheel of `τ` right to left into wheels of `σ`.
pub fn spin_tau_sigma_program(tau: &[Label], sigma: &[Label], set: &WeightedSet) -> Result<SpinProgram, MapError> {
    let tw = wheel_decomposition(tau, set)?;
    let sw = wheel_decomposition(sigma, set)?;
    let mut steps = Vec::new();
    for wheel in &tw.wheels {
        let mut chunks = Vec::new();
        let mut i = 0;
        while i < wheel.len() {
            let k = sw
                .wheels
                .iter()
                .position(|s| s[0] == wheel[i])
                .ok_or_else(|| MapError::NotRefinement(format!("{tau:?} / {sigma:?}")))?;
            let s = &sw.wheels[k];
            if wheel.len() < i + s.len() || wheel[i..i + s.len()] != s[..] {
                return Err(MapError::NotRefinement(format!("{tau:?} / {sigma:?}")));
            }
            chunks.push((s[0], sw.weights[k]));
            i += s.len();
        }
        steps.extend(peel_chunks(&chunks));
    }
    Ok(SpinProgram { steps })
}
