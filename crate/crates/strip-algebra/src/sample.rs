use rand::seq::SliceRandom;
use rand::Rng;
use strip_cells::{Label, Relabeling};
use strip_cycles::{Factor, GeneratorWord, ProperWheel};

fn wheel(labels: &mut Vec<Label>, size: usize) -> ProperWheel {
    ProperWheel::new(labels.drain(..size).collect()).expect("distinct labels")
}

/// Sizes of a nontrivial admissible averaged-filter on at most `room`
/// disks, if one turns up in a few tries.
fn filter_sizes<R: Rng + ?Sized>(rng: &mut R, room: usize, w: usize) -> Option<Vec<usize>> {
    for _ in 0..8 {
        if room < 3 {
            return None;
        }
        let arity = rng.random_range(3..=room.min(w + 1));
        let sizes: Vec<usize> = (0..arity).map(|_| rng.random_range(1..=w)).collect();
        let total: usize = sizes.iter().sum();
        if total <= room && total > w && sizes.iter().all(|s| total - s <= w) {
            return Some(sizes);
        }
    }
    None
}

/// A word of wheels and averaged-filters on the labels `1..=n` that fit in
/// width `w`. Wheels may have any label first and filter wheels come in any
/// order.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: u32, w: u64) -> GeneratorWord {
    let w = w as usize;
    let mut labels: Vec<Label> = (1..=n).collect();
    labels.shuffle(rng);
    let mut factors = Vec::new();
    while !labels.is_empty() {
        let af = if rng.random_bool(0.3) { filter_sizes(rng, labels.len(), w) } else { None };
        factors.push(match af {
            Some(sizes) => Factor::Averaged(sizes.into_iter().map(|s| wheel(&mut labels, s)).collect()),
            None => {
                let s = rng.random_range(1..=w.min(labels.len()));
                Factor::Wheel(wheel(&mut labels, s))
            }
        });
    }
    GeneratorWord::new(factors).expect("disjoint labels")
}

/// A uniformly random permutation of `1..=n`.
pub fn random_relabeling<R: Rng + ?Sized>(rng: &mut R, n: u32) -> Relabeling {
    let from: Vec<Label> = (1..=n).collect();
    let mut to = from.clone();
    to.shuffle(rng);
    Relabeling::from_sequences(&from, &to).expect("a permutation")
}
