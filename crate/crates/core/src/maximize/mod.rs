//! Batched greedy maximization and exhaustive reference optima.

mod constrained;
mod welfare;

pub use constrained::{batched_greedy_constrained, brute_force_constrained, query_budget};
pub use welfare::{batched_greedy_welfare, brute_force_welfare};

use rayon::prelude::*;
use serde::Serialize;

use crate::scalar::Scalar;
use crate::setfn::SetFunction;
use crate::subset::Subset;

/// One greedy step: the batch taken, who received it, and its margin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyStep<S> {
    pub batch: Subset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agent: Option<usize>,
    pub gain: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyTrace<S> {
    pub steps: Vec<GreedyStep<S>>,
    pub value: S,
    pub queries: u64,
}

/// Disjoint bundles, one per agent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Allocation<S> {
    pub parts: Vec<Subset>,
    pub welfare: S,
}

impl<S: Scalar> Allocation<S> {
    pub fn is_disjoint(&self) -> bool {
        let mut seen = Subset::EMPTY;
        for &p in &self.parts {
            if !p.is_disjoint(seen) {
                return false;
            }
            seen = seen.union(p);
        }
        true
    }

    /// Welfare recomputed from the oracles (uncounted).
    pub fn recompute<F: SetFunction<S>>(&self, fs: &[F]) -> S {
        fs.iter().zip(&self.parts).map(|(f, &p)| f.value(p)).sum()
    }
}

/// Nonempty subsets of `free` with at most `s` elements.
pub(crate) fn batches(free: Subset, s: usize) -> Vec<Subset> {
    (1..=s.min(free.len()))
        .flat_map(|j| free.subsets_of_size(j))
        .collect()
}

const PAR_THRESHOLD: usize = 2048;

/// Counted values `f(base ∪ T)` for every candidate, in candidate order.
pub(crate) fn evaluate<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    base: Subset,
    cands: &[Subset],
) -> Vec<S> {
    if cands.len() >= PAR_THRESHOLD {
        cands.par_iter().map(|t| f.query(base.union(*t))).collect()
    } else {
        cands.iter().map(|t| f.query(base.union(*t))).collect()
    }
}

/// `true` when `(gain, key)` beats `(best, best_key)`: larger gain beyond
/// the tolerance, or a tie with a smaller key.
pub(crate) fn beats<S: Scalar, K: Ord>(gain: S, key: K, best: Option<(S, K)>) -> bool {
    match best {
        None => true,
        Some((b, bk)) => gain.gt_tol(b) || (!b.gt_tol(gain) && key < bk),
    }
}
