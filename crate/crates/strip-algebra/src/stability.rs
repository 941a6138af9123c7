use serde::Serialize;
use strip_basis::{enumerate_basis, Style};
use strip_cycles::Factor;

use crate::rewrite::check_order;
use crate::AlgebraError;

/// Numeric data of a stability statement: homology of order `order` and
/// index `index` is generated in degree at most `generation_degree` over
/// insertions into `b + 1` slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityParams {
    pub order: u64,
    pub index: u64,
    pub w: u64,
    pub b: u64,
    pub generation_degree: u64,
    pub module: String,
}

/// First order: `H_k(conf(•, w))`.
pub fn stability_params(k: u64, w: u64) -> Result<StabilityParams, AlgebraError> {
    check_order(1, w, 1)?;
    let b = k / (w - 1);
    let generation_degree = if w >= 3 { 2 * k } else { 3 * k };
    Ok(StabilityParams { order: 1, index: k, w, b, generation_degree, module: format!("FI_{}", b + 1) })
}

/// Order `d`, index `i`.
pub fn higher_stability_params(d: u64, i: u64, w: u64) -> Result<StabilityParams, AlgebraError> {
    check_order(d, w, 1)?;
    let b = d * i / (w - d);
    let generation_degree = if w > 2 * d { (d + 1) * i } else { (d + 1) * i + d };
    let module = if d == 1 { format!("FI_{}", b + 1) } else { format!("FIW({d})_{}", b + 1) };
    Ok(StabilityParams { order: d, index: i, w, b, generation_degree, module })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub k: u64,
    pub w: u64,
    pub bound: u64,
    pub n: u32,
    pub count: usize,
    /// Basis words at `n = bound + 1` without a bare wheel on one disk.
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

/// Above the generation bound every basis word of `H_k` has a bare wheel on
/// one disk, so it comes from a smaller configuration by an insertion.
pub fn generation_check(k: u64, w: u64) -> Result<GenerationReport, AlgebraError> {
    let p = stability_params(k, w)?;
    let n = p.generation_degree as u32 + 1;
    let basis = enumerate_basis(n, w, k, Style::Amw);
    let counterexamples: Vec<String> = basis
        .iter()
        .filter(|e| !e.word.factors.iter().any(|f| matches!(f, Factor::Wheel(x) if x.len() == 1)))
        .map(|e| e.word.to_string())
        .collect();
    Ok(GenerationReport {
        k,
        w,
        bound: p.generation_degree,
        n,
        count: basis.len(),
        passed: counterexamples.is_empty(),
        counterexamples,
    })
}
