use std::collections::BTreeMap;

use serde_json::{json, Value};
use strip_algebra::{
    act, barrier_decompose, count_barriers, generate_instances, generation_check, higher_stability_params, quotient_reduce,
    r5_coefficients, reduce, stability_params, verify_instances, Family, RelationData, StabilityParams,
};
use strip_basis::{enumerate_basis, verify_basis_all, Style};
use strip_cells::{ComplexSpec, Relabeling};
use strip_chains::verify_boundary_squared;
use strip_cycles::{GeneratorWord, WordCombination};
use strip_homology::{betti_with, decomposition_check, HomologyOptions};

use crate::error::{CliError, EXIT_RESOURCE};
use crate::render::Report;
use crate::{Cli, Command, Scope, StyleArg};

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let opts = cli.global.homology_options();
    match &cli.command {
        Command::Betti { n, w } => betti(*n, *w, &opts),
        Command::Verify { scope, n, w, k, style, max_labels } => verify(*scope, *n, *w, *k, *style, *max_labels, &opts),
        Command::Basis { n, w, k, style } => basis(*n, *w, *k, *style),
        Command::Reduce { w, expr, act, quotient } => reduce_cmd(*w, expr, act.as_deref(), *quotient),
        Command::Stability { w, k, order, i } => stability(*w, *k, *order, *i),
    }
}

fn styles(s: StyleArg) -> Vec<Style> {
    match s {
        StyleArg::Am => vec![Style::Am],
        StyleArg::Amw => vec![Style::Amw],
        StyleArg::Both => vec![Style::Am, Style::Amw],
    }
}

fn conf(n: u32, w: u64, opts: &HomologyOptions) -> Result<ComplexSpec, CliError> {
    if w == 0 {
        return Err(CliError::usage("the width must be at least 1"));
    }
    let spec = ComplexSpec::conf(n, w)?;
    if spec.total_cells() > opts.cap {
        return Err(CliError {
            code: EXIT_RESOURCE,
            message: format!("conf({n}, {w}) has {} cells, over the limit of {}", spec.total_cells(), opts.cap),
        });
    }
    Ok(spec)
}

fn betti(n: u32, w: u64, opts: &HomologyOptions) -> Result<Report, CliError> {
    let p = betti_with(&conf(n, w, opts)?, opts)?;
    let mut r = Report::new("betti", json!({ "betti": p.betti, "cells": p.cells, "ranks": p.ranks })).param("n", n).param("w", w);
    r.headers = vec!["k", "betti", "cells"];
    r.rows = p.betti.iter().enumerate().map(|(k, b)| vec![k.to_string(), b.to_string(), p.cells.get(k).copied().unwrap_or(0).to_string()]).collect();
    Ok(r)
}

fn need_n(n: Option<u32>) -> Result<u32, CliError> {
    n.ok_or_else(|| CliError::usage("this scope needs --n"))
}

fn verify(scope: Scope, n: Option<u32>, w: u64, k: u64, style: StyleArg, max_labels: usize, opts: &HomologyOptions) -> Result<Report, CliError> {
    let mut r = match scope {
        Scope::Boundary => {
            let n = need_n(n)?;
            let s = verify_boundary_squared(&conf(n, w, opts)?)?;
            let mut r = Report::new(
                "verify",
                json!({ "cells_checked": s.cells_checked, "max_degree": s.max_degree, "failure": s.failure }),
            )
            .param("n", n);
            r.headers = vec!["check", "cells", "passed"];
            r.rows = vec![vec!["boundary squared".into(), s.cells_checked.to_string(), s.passed().to_string()]];
            r.passed = s.passed();
            r
        }
        Scope::Basis => {
            let n = need_n(n)?;
            conf(n, w, opts)?;
            let mut reports = Vec::new();
            for s in styles(style) {
                reports.extend(verify_basis_all(n, w, s, opts)?);
            }
            let mut r = Report::new("verify", serde_json::to_value(&reports).expect("reports serialize")).param("n", n);
            r.headers = vec!["style", "k", "count", "betti", "dependent", "passed"];
            r.rows = reports
                .iter()
                .map(|b| vec![b.style.to_string(), b.k.to_string(), b.count.to_string(), b.betti.to_string(), b.dependent.join(" "), b.passed.to_string()])
                .collect();
            r.passed = reports.iter().all(|b| b.passed);
            r
        }
        Scope::Relations => relations(w, max_labels, opts)?.param("max_labels", max_labels),
        Scope::Decomposition => {
            let n = need_n(n)?;
            let d = decomposition_check(&conf(n, w, opts)?)?;
            let mut r = Report::new(
                "verify",
                json!({ "cell_betti": d.cell_betti, "permutohedron_sum": d.permutohedron_sum, "mismatched_degrees": d.mismatched_degrees() }),
            )
            .param("n", n);
            r.headers = vec!["k", "cell", "permutohedra", "passed"];
            let len = d.cell_betti.len().max(d.permutohedron_sum.len());
            r.rows = (0..len)
                .map(|i| {
                    let (a, b) = (d.cell_betti.get(i).copied().unwrap_or(0), d.permutohedron_sum.get(i).copied().unwrap_or(0));
                    vec![i.to_string(), a.to_string(), b.to_string(), (a == b).to_string()]
                })
                .collect();
            r.passed = d.passed();
            r
        }
        Scope::Generation => {
            let g = generation_check(k, w)?;
            let mut r = Report::new("verify", serde_json::to_value(&g).expect("report serializes")).param("k", k);
            r.headers = vec!["k", "bound", "n", "basis", "without singleton", "passed"];
            r.rows = vec![vec![
                g.k.to_string(),
                g.bound.to_string(),
                g.n.to_string(),
                g.count.to_string(),
                g.counterexamples.len().to_string(),
                g.passed.to_string(),
            ]];
            r.lines = g.counterexamples.iter().map(|c| format!("counterexample: {c}")).collect();
            r.passed = g.passed;
            r
        }
    };
    r.params.insert(0, ("scope", format!("{scope:?}").to_lowercase()));
    r.params.insert(1, ("w", w.to_string()));
    Ok(r)
}

fn relations(w: u64, max_labels: usize, opts: &HomologyOptions) -> Result<Report, CliError> {
    if w < 2 {
        return Err(CliError::usage("relations need width at least 2"));
    }
    let instances = generate_instances(max_labels, w);
    let checks = verify_instances(&instances, opts)?;
    let mut by_family: BTreeMap<Family, (usize, usize)> = BTreeMap::new();
    for c in &checks {
        let e = by_family.entry(c.family).or_default();
        e.0 += 1;
        e.1 += c.passed as usize;
    }
    let mut shapes: Vec<Vec<usize>> = instances
        .iter()
        .filter_map(|r| match &r.data {
            RelationData::R5 { wheels } => Some(wheels.iter().map(|x| x.len()).collect()),
            _ => None,
        })
        .collect();
    shapes.dedup();
    let mut closed = Vec::new();
    for s in &shapes {
        let c = r5_coefficients(s)?;
        closed.push(json!({
            "sizes": s,
            "left": c.left,
            "right": c.right,
            "closed_form_exact": c.matches_closed_form(),
            "closed_form_in_width": c.matches_closed_form_at(w),
            "closed_form_ratios": c.matches_closed_form_ratios(),
        }));
    }
    let failures: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.instance.as_str()).collect();
    let mut r = Report::new("verify", json!({ "checks": checks, "r5_signs": closed }));
    r.headers = vec!["family", "instances", "passed"];
    r.rows = by_family.iter().map(|(f, (n, p))| vec![f.to_string(), n.to_string(), p.to_string()]).collect();
    let agree = closed.iter().filter(|c| c["closed_form_in_width"] == Value::Bool(true)).count();
    r.lines.push(format!("R5 shapes whose signs match the closed forms in this width: {agree} of {} (reference only)", closed.len()));
    r.lines.extend(failures.iter().map(|f| format!("failed: {f}")));
    r.passed = failures.is_empty();
    Ok(r)
}

fn barrier_counts(word: &GeneratorWord, w: u64) -> Vec<usize> {
    (1..=w / 2).map(|d| count_barriers(word, d, w).expect("d in range")).collect()
}

fn basis(n: u32, w: u64, k: u64, style: StyleArg) -> Result<Report, CliError> {
    if w == 0 {
        return Err(CliError::usage("the width must be at least 1"));
    }
    let mut elements = Vec::new();
    for s in styles(style) {
        elements.extend(enumerate_basis(n, w, k, s));
    }
    let data: Vec<Value> = elements
        .iter()
        .map(|e| json!({ "word": e.word.to_string(), "style": e.style, "degree": e.degree, "barriers": barrier_counts(&e.word, w) }))
        .collect();
    let mut r = Report::new("basis", Value::Array(data)).param("n", n).param("w", w).param("k", k).param("count", elements.len());
    r.lines = elements.iter().map(|e| if style == StyleArg::Both { format!("{} {}", e.style, e.word) } else { e.word.to_string() }).collect();
    Ok(r)
}

fn reduce_cmd(w: u64, expr: &str, sigma: Option<&str>, quotient: Option<u64>) -> Result<Report, CliError> {
    let mut x: WordCombination = expr.parse().map_err(|e| CliError::usage(format!("{e} in `{expr}`")))?;
    if let Some(s) = sigma {
        let s: Relabeling = s.parse().map_err(|e| CliError::usage(format!("bad permutation `{s}`: {e}")))?;
        x = act(&s, &x)?;
    }
    let y = match quotient {
        Some(d) => quotient_reduce(&x, d, w)?,
        None => reduce(&x, w)?,
    };
    let parts: BTreeMap<usize, String> = if w >= 2 {
        barrier_decompose(&y, 1, w)?.into_iter().map(|(m, c)| (m, c.to_string())).collect()
    } else {
        BTreeMap::new()
    };
    let mut r = Report::new("reduce", json!({ "input": expr, "result": y.to_string(), "terms": y.len(), "by_barriers": parts }))
        .param("w", w);
    if let Some(s) = sigma {
        r = r.param("act", s);
    }
    if let Some(d) = quotient {
        r = r.param("quotient", d);
    }
    r.lines.push(y.to_string());
    Ok(r)
}

fn stability(w: u64, k: Option<u64>, order: Option<u64>, i: Option<u64>) -> Result<Report, CliError> {
    let p: StabilityParams = match (k, order, i) {
        (Some(k), None, None) => stability_params(k, w)?,
        (None, Some(d), Some(i)) => higher_stability_params(d, i, w)?,
        _ => return Err(CliError::usage("give either --k or both --order and --i")),
    };
    let mut r = Report::new("stability", serde_json::to_value(&p).expect("params serialize")).param("w", w);
    r.headers = vec!["order", "index", "b", "slots", "module", "generation degree"];
    r.rows = vec![vec![
        p.order.to_string(),
        p.index.to_string(),
        p.b.to_string(),
        (p.b + 1).to_string(),
        p.module.clone(),
        p.generation_degree.to_string(),
    ]];
    Ok(r)
}
