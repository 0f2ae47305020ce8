use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::{GroundSet, Subset};

use super::{QueryCounter, SetFunction};

/// Constraint-homogeneous function: `f(S) = base · Σ_{Q_i ⊆ S} |Q_i|` over
/// pairwise-disjoint blocks of size at most `block_bound`.
#[derive(Debug, Clone)]
pub struct ChFunction<S> {
    ground: GroundSet,
    base: S,
    blocks: Vec<Subset>,
    block_bound: usize,
    counter: QueryCounter,
}

impl<S: Scalar> ChFunction<S> {
    pub fn new(m: usize, base: S, blocks: Vec<Subset>, block_bound: usize) -> Result<Self> {
        let ground = GroundSet::new(m)?;
        if base < S::zero() {
            return Err(Error::invalid("CH base value must be nonnegative"));
        }
        let mut seen = Subset::EMPTY;
        for &q in &blocks {
            ground.check(q)?;
            if q.is_empty() {
                return Err(Error::invalid("CH blocks must be nonempty"));
            }
            if q.len() > block_bound {
                return Err(Error::invalid(format!(
                    "block {q} exceeds the bound {block_bound}"
                )));
            }
            if !q.is_disjoint(seen) {
                return Err(Error::invalid(format!("block {q} overlaps an earlier block")));
            }
            seen = seen.union(q);
        }
        Ok(ChFunction {
            ground,
            base,
            blocks,
            block_bound,
            counter: QueryCounter::new(),
        })
    }

    pub fn base(&self) -> S {
        self.base
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn block_bound(&self) -> usize {
        self.block_bound
    }
}

impl<S: Scalar> SetFunction<S> for ChFunction<S> {
    fn ground(&self) -> GroundSet {
        self.ground
    }

    fn value(&self, set: Subset) -> S {
        let covered: usize = self
            .blocks
            .iter()
            .filter(|q| q.is_subset_of(set))
            .map(|q| q.len())
            .sum();
        self.base * S::from_count(covered)
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_contained_blocks() {
        let f = ChFunction::new(
            5,
            0.5,
            vec![Subset::from_elements([0, 1]), Subset::from_elements([3])],
            2,
        )
        .unwrap();
        assert_eq!(f.value(Subset::from_elements([0, 1, 3])), 1.5);
        assert_eq!(f.value(Subset::from_elements([0, 3])), 0.5);
        assert_eq!(f.value(Subset::EMPTY), 0.0);
    }

    #[test]
    fn validates_blocks() {
        let b = |xs: &[usize]| Subset::from_elements(xs.iter().copied());
        assert!(ChFunction::new(4, 1.0, vec![b(&[0, 1]), b(&[1, 2])], 2).is_err());
        assert!(ChFunction::new(4, 1.0, vec![b(&[0, 1, 2])], 2).is_err());
        assert!(ChFunction::new(4, 1.0, vec![Subset::EMPTY], 2).is_err());
        assert!(ChFunction::new(4, -1.0, vec![b(&[0])], 2).is_err());
    }
}
