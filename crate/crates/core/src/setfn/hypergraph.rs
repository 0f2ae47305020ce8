use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::{GroundSet, Subset};

use super::{QueryCounter, SetFunction};

/// `f(S) = Σ_{T ⊆ S} h(T)` over a sparse set of weighted hyperedges.
///
/// Weights may be negative (general Möbius coefficients); whether the
/// function is positive-hypergraph is decided in `widths`.
#[derive(Debug, Clone)]
pub struct HypergraphFunction<S> {
    ground: GroundSet,
    edges: BTreeMap<Subset, S>,
    counter: QueryCounter,
}

impl<S: Scalar> HypergraphFunction<S> {
    /// Repeated hyperedges have their weights summed; zero weights are dropped.
    pub fn new<I>(m: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, S)>,
    {
        let ground = GroundSet::new(m)?;
        let mut map: BTreeMap<Subset, S> = BTreeMap::new();
        for (set, w) in edges {
            ground.check(set)?;
            if set.is_empty() {
                return Err(Error::invalid("hyperedge on the empty set"));
            }
            *map.entry(set).or_insert_with(S::zero) += w;
        }
        map.retain(|_, w| !w.is_zero());
        Ok(HypergraphFunction {
            ground,
            edges: map,
            counter: QueryCounter::new(),
        })
    }

    /// Hyperedges with their weights, ordered by mask.
    pub fn edges(&self) -> impl Iterator<Item = (Subset, S)> + '_ {
        self.edges.iter().map(|(&s, &w)| (s, w))
    }

    pub fn weight(&self, set: Subset) -> S {
        self.edges.get(&set).copied().unwrap_or_else(S::zero)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Largest hyperedge cardinality (0 for the zero function).
    pub fn rank(&self) -> usize {
        self.edges.keys().map(|s| s.len()).max().unwrap_or(0)
    }
}

impl<S: Scalar> SetFunction<S> for HypergraphFunction<S> {
    fn ground(&self) -> GroundSet {
        self.ground
    }

    fn value(&self, set: Subset) -> S {
        self.edges
            .iter()
            .filter(|(e, _)| e.is_subset_of(set))
            .map(|(_, &w)| w)
            .sum()
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_contained_edges() {
        let h = HypergraphFunction::new(
            3,
            [(Subset::from_elements([0, 1]), 2.0), (Subset::from_elements([2]), 1.0)],
        )
        .unwrap();
        assert_eq!(h.eval(Subset::from_elements([0, 1, 2])).unwrap(), 3.0);
        assert_eq!(h.eval(Subset::from_elements([0, 2])).unwrap(), 1.0);
        assert_eq!(h.eval(Subset::EMPTY).unwrap(), 0.0);
        assert_eq!(h.rank(), 2);
    }

    #[test]
    fn rejects_empty_edge() {
        assert!(HypergraphFunction::new(2, [(Subset::EMPTY, 1.0)]).is_err());
        assert!(HypergraphFunction::new(2, [(Subset(4), 1.0)]).is_err());
    }
}
