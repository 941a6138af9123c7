use std::collections::BTreeMap;

use strip_cycles::{Factor, GeneratorWord, WordCombination};

use crate::rewrite::check_order;
use crate::AlgebraError;

/// Factors that block a wheel on `d` disks from sliding past: wheels on at
/// least `w + 1 - d` disks and averaged-filters.
pub fn count_barriers(word: &GeneratorWord, d: u64, w: u64) -> Result<usize, AlgebraError> {
    check_order(d, w, 1)?;
    Ok(word
        .factors
        .iter()
        .filter(|f| match f {
            Factor::Wheel(x) => x.len() as u64 + d > w,
            Factor::Averaged(_) => true,
            Factor::Filter(_) => false,
        })
        .count())
}

/// Splits a basis combination by the number of barriers of each word.
pub fn barrier_decompose(x: &WordCombination, d: u64, w: u64) -> Result<BTreeMap<usize, WordCombination>, AlgebraError> {
    let mut out: BTreeMap<usize, WordCombination> = BTreeMap::new();
    for (word, c) in x.terms() {
        out.entry(count_barriers(word, d, w)?).or_insert_with(WordCombination::zero).add_term(word.clone(), c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let x: GeneratorWord = "W(4,1,2,3)|W(7,5,6)".parse().unwrap();
        assert_eq!(count_barriers(&x, 1, 4).unwrap(), 1);
        assert_eq!(count_barriers(&x, 2, 4).unwrap(), 2);
        assert_eq!(count_barriers(&GeneratorWord::empty(), 1, 4).unwrap(), 0);
        assert!(count_barriers(&x, 3, 4).is_err());
        assert!(count_barriers(&x, 0, 4).is_err());
    }

    #[test]
    fn decomposition() {
        let x: WordCombination = "W(2,1)|W(4,3) + 2 W(2,1)|W(3)|W(4)".parse().unwrap();
        let parts = barrier_decompose(&x, 1, 2).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&2].to_string(), "W(2,1)|W(4,3)");
        let mut sum = WordCombination::zero();
        for p in parts.values() {
            sum.add_scaled(p, &strip_chains::q(1));
        }
        assert_eq!(sum, x);
    }
}
