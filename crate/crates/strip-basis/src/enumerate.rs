use std::collections::HashMap;

use itertools::Itertools;
use strip_cells::Label;
use strip_cycles::{Factor, GeneratorWord, ProperWheel};

use crate::{least, outranks, rank_cmp, BasisElement, Style};

fn labels_of(mask: u32) -> Vec<Label> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Proper wheels on `labels` with the largest label first.
fn wheels_on(labels: &[Label]) -> Vec<ProperWheel> {
    let (&max, rest) = match labels.split_last() {
        Some(x) => x,
        None => return Vec::new(),
    };
    rest.iter()
        .copied()
        .permutations(rest.len())
        .map(|p| ProperWheel::new(std::iter::once(max).chain(p).collect()).expect("distinct labels"))
        .collect()
}

/// Set partitions of `mask` into blocks, as masks.
fn partitions(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    let mut out = Vec::new();
    let mut sub = rest;
    loop {
        let block = low | sub;
        for mut p in partitions(rest ^ sub) {
            p.push(block);
            out.push(p);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

fn wheel_ok(x: &ProperWheel, w: u64) -> bool {
    x.is_normalized() && x.len() as u64 <= w
}

/// Every sum of all but one wheel fits and the whole does not.
fn filter_fits(ws: &[ProperWheel], w: u64) -> bool {
    let total: usize = ws.iter().map(ProperWheel::len).sum();
    total as u64 > w && ws.iter().all(|x| ((total - x.len()) as u64) <= w)
}

/// The wheel order a style prescribes inside a filter.
fn sort_filter(ws: &mut [ProperWheel], style: Style) {
    if style == Style::Am && ws.len() >= 3 {
        ws.sort_by_key(ProperWheel::max_label);
    } else {
        ws.sort_by(rank_cmp);
    }
}

fn factor_ok(f: &Factor, style: Style, w: u64) -> bool {
    match (f, style) {
        (Factor::Wheel(x), _) => wheel_ok(x, w),
        (Factor::Filter(ws), Style::Am) | (Factor::Averaged(ws), Style::Amw) => {
            let min = if style == Style::Am { 2 } else { 3 };
            let mut sorted = ws.clone();
            sort_filter(&mut sorted, style);
            ws.len() >= min && ws.iter().all(|x| wheel_ok(x, w)) && filter_fits(ws, w) && sorted == *ws
        }
        _ => false,
    }
}

fn pair_ok(prev: &Factor, next: &Factor, style: Style, w: u64) -> bool {
    let Factor::Wheel(a) = prev else { return true };
    match next {
        Factor::Wheel(b) => outranks(a, b) || (style == Style::Amw && (a.len() + b.len()) as u64 > w),
        Factor::Filter(ws) | Factor::Averaged(ws) => outranks(a, least(ws)),
    }
}

/// Whether `word` is an element of the basis of the given style in width `w`.
pub fn is_basis_word(word: &GeneratorWord, style: Style, w: u64) -> bool {
    word.factors.iter().all(|f| factor_ok(f, style, w))
        && word.factors.windows(2).all(|p| pair_ok(&p[0], &p[1], style, w))
}

/// Factors of a style on exactly the labels in `mask`.
fn factors_on(mask: u32, style: Style, w: u64) -> Vec<Factor> {
    let labels = labels_of(mask);
    let mut out: Vec<Factor> = if labels.len() as u64 <= w { wheels_on(&labels).into_iter().map(Factor::Wheel).collect() } else { Vec::new() };
    if labels.len() as u64 <= w {
        return out;
    }
    let min = if style == Style::Am { 2 } else { 3 };
    for p in partitions(mask) {
        if p.len() < min || p.iter().any(|b| b.count_ones() as u64 > w) {
            continue;
        }
        let choices: Vec<Vec<ProperWheel>> = p.iter().map(|&b| wheels_on(&labels_of(b))).collect();
        for mut ws in choices.into_iter().multi_cartesian_product() {
            if !filter_fits(&ws, w) {
                continue;
            }
            sort_filter(&mut ws, style);
            out.push(if style == Style::Am { Factor::Filter(ws) } else { Factor::Averaged(ws) });
        }
    }
    out
}

struct Search {
    style: Style,
    w: u64,
    k: u64,
    factors: HashMap<u32, Vec<Factor>>,
    out: Vec<GeneratorWord>,
}

impl Search {
    fn go(&mut self, rem: u32, deg: u64, cur: &mut Vec<Factor>) {
        if rem == 0 {
            if deg == self.k {
                self.out.push(GeneratorWord::new(cur.clone()).expect("disjoint labels"));
            }
            return;
        }
        let mut sub = rem;
        while sub != 0 {
            let left = (rem ^ sub).count_ones() as u64;
            let fs = self.factors.entry(sub).or_insert_with(|| factors_on(sub, self.style, self.w)).clone();
            for f in fs {
                let d = deg + f.degree();
                if d > self.k || d + left.saturating_sub(1) < self.k {
                    continue;
                }
                if cur.last().is_some_and(|p| !pair_ok(p, &f, self.style, self.w)) {
                    continue;
                }
                cur.push(f);
                self.go(rem ^ sub, d, cur);
                cur.pop();
            }
            sub = (sub - 1) & rem;
        }
    }
}

/// All basis words of homological degree `k` on labels `1..=n` in width `w`,
/// sorted.
pub fn enumerate_basis(n: u32, w: u64, k: u64, style: Style) -> Vec<BasisElement> {
    assert!(n < 32, "at most 31 labels");
    let mut s = Search { style, w, k, factors: HashMap::new(), out: Vec::new() };
    s.go((1u32 << n) - 1, 0, &mut Vec::new());
    s.out.sort();
    s.out
        .into_iter()
        .map(|word| BasisElement { labels: word.sorted_labels(), degree: word.degree(), word, style })
        .collect()
}
