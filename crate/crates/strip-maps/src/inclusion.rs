use std::sync::Arc;

use num_traits::One;
use strip_cells::{orderings, wsgn, Cell, ComplexSpec, Kind, Label, WeightedSet};
use strip_chains::{ChainVector, Q};

use crate::MapError;

fn require(chain: &ChainVector, kind: Kind, what: &'static str) -> Result<(), MapError> {
    if chain.spec().kind() == kind {
        Ok(())
    } else {
        Err(MapError::WrongKind(what))
    }
}

fn same_labels(a: &WeightedSet, b: &WeightedSet) -> bool {
    a.sorted() == b.sorted()
}

fn signed(c: &Q, s: i8) -> Q {
    if s > 0 {
        c.clone()
    } else {
        -c.clone()
    }
}

/// Reorders every block of `cell` by position in `order`, returning the new
/// cell and the product of the weighted signs of the rearrangements.
fn reorder(cell: &Cell, order: &WeightedSet, set: &WeightedSet) -> Result<(Cell, i8), MapError> {
    let mut seq = Vec::with_capacity(cell.labels().len());
    let mut sign = 1i8;
    for block in cell.blocks() {
        let mut sorted = block.to_vec();
        sorted.sort_by_key(|&l| order.position(l).unwrap_or(usize::MAX));
        sign *= wsgn(block, &sorted, set)?;
        seq.extend_from_slice(&sorted);
    }
    Ok((Cell::from_parts_unchecked(cell.sizes().to_vec(), seq), sign))
}

/// The inclusion `P(A, W, w) -> cell(A, W, w)` for the ordering `order` of
/// `A`: each block is written in `order` and the cell picks up the weighted
/// sign of each block's rearrangement. With these signs every inclusion is a
/// chain map.
pub fn include_permutohedron(order: &[Label], chain: &ChainVector) -> Result<ChainVector, MapError> {
    require(chain, Kind::Permutohedron, "inclusion expects a permutohedron chain")?;
    let set = chain.spec().labels();
    let order = WeightedSet::new(
        order
            .iter()
            .map(|&l| set.weight(l).map(|w| strip_cells::WeightedLabel::new(l, w)).ok_or(MapError::MissingLabel(l)))
            .collect::<Result<_, _>>()?,
    )?;
    if order.len() != set.len() {
        return Err(MapError::BadOrdering(format!("{order}")));
    }
    let target = Arc::new(chain.spec().with_kind(Kind::OrderedCell));
    let mut out = ChainVector::zero(target, chain.degree());
    for (cell, c) in chain.terms() {
        let (image, s) = reorder(cell, &order, set)?;
        out.add_term_unchecked(image, signed(c, s));
    }
    Ok(out)
}

/// The average `q` of the inclusions over all orderings of the labels.
///
/// Computed one block at a time: a block of size `k` goes to the average of
/// its `k!` signed orderings.
pub fn averaged_inclusion_q(chain: &ChainVector) -> Result<ChainVector, MapError> {
    require(chain, Kind::Permutohedron, "q expects a permutohedron chain")?;
    let set = chain.spec().labels();
    let target = Arc::new(chain.spec().with_kind(Kind::OrderedCell));
    let mut out = ChainVector::zero(target, chain.degree());
    for (cell, c) in chain.terms() {
        // Partial products: (label sequence so far, coefficient).
        let mut partial: Vec<(Vec<Label>, Q)> = vec![(Vec::new(), c.clone())];
        for block in cell.blocks() {
            let perms = orderings(block);
            let scale = Q::one() / Q::from_integer((perms.len() as i64).into());
            let mut signs = Vec::with_capacity(perms.len());
            for p in &perms {
                signs.push(wsgn(block, p, set)?);
            }
            let mut next = Vec::with_capacity(partial.len() * perms.len());
            for (seq, x) in &partial {
                let x = x * &scale;
                for (p, &s) in perms.iter().zip(&signs) {
                    let mut seq = seq.clone();
                    seq.extend_from_slice(p);
                    next.push((seq, signed(&x, s)));
                }
            }
            partial = next;
        }
        for (seq, x) in partial {
            out.add_term_unchecked(Cell::from_parts_unchecked(cell.sizes().to_vec(), seq), x);
        }
    }
    Ok(out)
}

/// The projection `cell(A, W, w) -> P(A, W, w)` sorting each block into the
/// order of `order` with the weighted sign of the sort. `order` becomes the
/// label order of the permutohedron.
pub fn project_p(chain: &ChainVector, order: &WeightedSet) -> Result<ChainVector, MapError> {
    require(chain, Kind::OrderedCell, "projection expects an ordered cell chain")?;
    let set = chain.spec().labels();
    if !same_labels(set, order) {
        return Err(MapError::BadOrdering(format!("{order} is not an ordering of {set}")));
    }
    let target = Arc::new(ComplexSpec::new(Kind::Permutohedron, order.clone(), chain.spec().width())?);
    let mut out = ChainVector::zero(target, chain.degree());
    for (cell, c) in chain.terms() {
        let (image, s) = reorder(cell, order, set)?;
        out.add_term_unchecked(image, signed(c, s));
    }
    Ok(out)
}

/// `project_p` onto the permutohedron with labels in ascending order.
pub fn project_p_ascending(chain: &ChainVector) -> Result<ChainVector, MapError> {
    let order = chain.spec().labels().sorted();
    project_p(chain, &order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use strip_chains::{q, q_frac};
    use strip_cells::Width;

    fn p_chain(set: &str, w: u64, cell: &str) -> ChainVector {
        let spec = ComplexSpec::permutohedron(set.parse().unwrap(), Width::Bounded(w)).unwrap();
        ChainVector::from_cell(spec, cell.parse().unwrap()).unwrap()
    }

    #[test]
    fn q_of_an_edge() {
        let x = p_chain("1 2", 2, "1 2");
        let y = averaged_inclusion_q(&x).unwrap();
        assert_eq!(y.coeff(&"1 2".parse().unwrap()), q_frac(1, 2));
        assert_eq!(y.coeff(&"2 1".parse().unwrap()), q_frac(-1, 2));
    }

    #[test]
    fn identity_inclusion_then_projection() {
        let x = p_chain("1 2 3", 3, "1 3|2");
        let y = include_permutohedron(&[1, 2, 3], &x).unwrap();
        assert_eq!(y.to_string(), "(1 3|2)");
        let back = project_p_ascending(&y).unwrap();
        assert_eq!(back, x);
        let z = include_permutohedron(&[3, 2, 1], &x).unwrap();
        assert_eq!(z.coeff(&"3 1|2".parse().unwrap()), q(-1));
    }

    #[test]
    fn projection_kills_spun_pairs() {
        let spec = ComplexSpec::conf(2, 2).unwrap();
        let x = ChainVector::from_terms(spec, 1, [("1 2".parse().unwrap(), q(1)), ("2 1".parse().unwrap(), q(1))]).unwrap();
        assert!(project_p_ascending(&x).unwrap().is_zero());
    }

    #[test]
    fn rejects_wrong_kinds() {
        let x = p_chain("1 2", 2, "1 2");
        assert!(project_p_ascending(&x).is_err());
        assert!(include_permutohedron(&[1], &x).is_err());
        assert!(include_permutohedron(&[1, 3], &x).is_err());
    }
}
