use rayon::prelude::*;
use serde::Serialize;
use strip_cells::{ComplexSpec, Width};
use strip_chains::{ChainVector, Q};
use strip_cycles::{word_cycle, Factor, GeneratorWord, ProperWheel};
use strip_homology::{betti_with, HomologyOptions, HomologyProfile, HomologySpace};
use num_traits::{One, Zero};

use crate::{enumerate_basis, outranks, BasisElement, BasisError, Style};

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub n: u32,
    pub w: u64,
    pub k: u64,
    pub style: Style,
    pub count: usize,
    pub betti: u64,
    /// Elements that depend on boundaries and the elements before them.
    pub dependent: Vec<String>,
    pub passed: bool,
}

fn cycles(elements: &[BasisElement], w: u64) -> Result<Vec<ChainVector>, BasisError> {
    elements.iter().map(|e| Ok(word_cycle(&e.word, Width::Bounded(w))?)).collect()
}

fn check(n: u32, w: u64, k: u64, style: Style, profile: &HomologyProfile, opts: &HomologyOptions) -> Result<BasisReport, BasisError> {
    let elements = enumerate_basis(n, w, k, style);
    let betti = profile.betti_in(k);
    let dependent = if elements.is_empty() {
        Vec::new()
    } else {
        let zs = cycles(&elements, w)?;
        let mut space = HomologySpace::new(&profile.spec, k, false, opts)?;
        space.dependent(&zs)?.into_iter().map(|i| elements[i].word.to_string()).collect()
    };
    let passed = elements.len() as u64 == betti && dependent.is_empty();
    Ok(BasisReport { n, w, k, style, count: elements.len(), betti, dependent, passed })
}

/// Compares the basis count with the Betti number and checks independence
/// modulo boundaries.
pub fn verify_basis(n: u32, w: u64, k: u64, style: Style, opts: &HomologyOptions) -> Result<BasisReport, BasisError> {
    let profile = betti_with(&ComplexSpec::conf(n, w)?, opts)?;
    check(n, w, k, style, &profile, opts)
}

/// `verify_basis` in every degree, degrees in parallel.
pub fn verify_basis_all(n: u32, w: u64, style: Style, opts: &HomologyOptions) -> Result<Vec<BasisReport>, BasisError> {
    let profile = betti_with(&ComplexSpec::conf(n, w)?, opts)?;
    let top = profile.betti.len().max(1) as u64;
    (0..top).into_par_iter().map(|k| check(n, w, k, style, &profile, opts)).collect()
}

/// Filter complexity: the number of wheels inside filters. Products of bare
/// wheels have complexity zero.
pub fn complexity(word: &GeneratorWord) -> usize {
    word.factors.iter().filter(|f| !matches!(f, Factor::Wheel(_))).map(|f| f.wheels().len()).sum()
}

fn order_key(word: &GeneratorWord) -> (usize, String) {
    (complexity(word), word.to_string())
}

/// The element of the other basis an `AMW` word corresponds to: averaged
/// filters become filters ordered by largest label, and a bare wheel left of
/// a higher-ranked one pairs with it into a filter on two wheels.
fn counterpart(word: &GeneratorWord) -> GeneratorWord {
    let mut out = Vec::new();
    let mut i = 0;
    while i < word.factors.len() {
        match (&word.factors[i], word.factors.get(i + 1)) {
            (Factor::Wheel(a), Some(Factor::Wheel(b))) if !outranks(a, b) => {
                out.push(Factor::Filter(vec![a.clone(), b.clone()]));
                i += 2;
                continue;
            }
            (Factor::Averaged(ws), _) => {
                let mut ws: Vec<ProperWheel> = ws.clone();
                ws.sort_by_key(ProperWheel::max_label);
                out.push(Factor::Filter(ws));
            }
            (f, _) => out.push(f.clone()),
        }
        i += 1;
    }
    GeneratorWord { factors: out }
}

/// Coordinates of the `AMW` basis in the `AM` basis.
#[derive(Clone, Debug, Serialize)]
pub struct BasisChange {
    pub am: Vec<GeneratorWord>,
    pub amw: Vec<GeneratorWord>,
    /// `matrix[i][j]` is the coefficient of `am[j]` in `amw[i]`.
    #[serde(serialize_with = "strip_chains::q_text::matrix")]
    pub matrix: Vec<Vec<Q>>,
    /// Index into `am` of the counterpart of each `amw` word, when it is a
    /// basis word.
    pub pairing: Vec<Option<usize>>,
}

impl BasisChange {
    /// Unit diagonal on the pairing, and every other entry of a row sits in a
    /// column strictly below its diagonal column in the order (complexity,
    /// text).
    pub fn is_unit_triangular(&self) -> bool {
        let mut seen = vec![false; self.am.len()];
        self.matrix.iter().zip(&self.pairing).all(|(row, d)| {
            let Some(d) = *d else { return false };
            if std::mem::replace(&mut seen[d], true) || !row[d].is_one() {
                return false;
            }
            let top = order_key(&self.am[d]);
            row.iter().enumerate().all(|(j, c)| j == d || c.is_zero() || order_key(&self.am[j]) < top)
        })
    }

    pub fn is_identity_on_shared(&self) -> bool {
        self.amw.iter().zip(&self.matrix).all(|(x, row)| match self.am.iter().position(|y| y == x) {
            Some(j) => row.iter().enumerate().all(|(i, c)| if i == j { c.is_one() } else { c.is_zero() }),
            None => true,
        })
    }
}

pub fn basis_change(n: u32, w: u64, k: u64, opts: &HomologyOptions) -> Result<BasisChange, BasisError> {
    let am: Vec<GeneratorWord> = enumerate_basis(n, w, k, Style::Am).into_iter().map(|e| e.word).collect();
    let amw: Vec<GeneratorWord> = enumerate_basis(n, w, k, Style::Amw).into_iter().map(|e| e.word).collect();
    let spec = ComplexSpec::conf(n, w)?;
    let width = Width::Bounded(w);
    let am_cycles = am.iter().map(|x| word_cycle(x, width)).collect::<Result<Vec<_>, _>>()?;
    let mut space = HomologySpace::new(&spec, k, false, opts)?;
    let mut matrix = Vec::with_capacity(amw.len());
    for x in &amw {
        matrix.push(space.express(&word_cycle(x, width)?, &am_cycles)?);
    }
    let pairing = amw.iter().map(|x| am.iter().position(|y| *y == counterpart(x))).collect();
    Ok(BasisChange { am, amw, matrix, pairing })
}
