//! Set functions behind a value oracle.
//!
//! Every representation implements [`SetFunction`]: a pure `value` routine
//! plus a shared [`QueryCounter`]. The counted entry points are
//! [`SetFunction::eval`] (validating) and [`SetFunction::query`] (trusted
//! masks, used inside algorithms).

mod ch;
mod explicit;
mod hypergraph;
mod max;
mod mobius;
mod predicates;
mod symmetric;

use std::sync::atomic::{AtomicU64, Ordering};

pub use ch::ChFunction;
pub use explicit::ExplicitFunction;
pub use hypergraph::HypergraphFunction;
pub use max::MaxFunction;
pub use mobius::{mobius_table, mobius_transform, zeta_table};
pub use predicates::{
    is_monotone, is_normalized, is_subadditive, is_submodular, is_superadditive,
};
pub use symmetric::SymmetricFunction;

use crate::error::{require_at_most, Result};
use crate::scalar::Scalar;
use crate::subset::{GroundSet, Subset, MAX_EXPLICIT_M};

/// Number of oracle calls made against one function.
#[derive(Debug, Default)]
pub struct QueryCounter(AtomicU64);

impl QueryCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }
}

impl Clone for QueryCounter {
    fn clone(&self) -> Self {
        QueryCounter(AtomicU64::new(self.get()))
    }
}

/// A normalized set function over a finite ground set, accessed by value
/// queries.
pub trait SetFunction<S: Scalar>: Send + Sync {
    fn ground(&self) -> GroundSet;

    /// The function value, without touching the query counter. `set` must be
    /// a valid mask for [`SetFunction::ground`].
    fn value(&self, set: Subset) -> S;

    fn counter(&self) -> &QueryCounter;

    /// Counted oracle call on a mask known to be valid.
    #[inline]
    fn query(&self, set: Subset) -> S {
        debug_assert!(self.ground().contains(set));
        self.counter().bump();
        self.value(set)
    }

    /// Counted, validating oracle call.
    fn eval(&self, set: Subset) -> Result<S> {
        self.ground().check(set)?;
        Ok(self.query(set))
    }

    /// `f(a | b) = f(a ∪ b) - f(b)`; two oracle calls.
    fn margin(&self, a: Subset, b: Subset) -> Result<S> {
        let g = self.ground();
        g.check(a)?;
        g.check(b)?;
        Ok(self.query(a.union(b)) - self.query(b))
    }

    fn queries(&self) -> u64 {
        self.counter().get()
    }

    fn size(&self) -> usize {
        self.ground().size()
    }
}

impl<S: Scalar, F: SetFunction<S> + ?Sized> SetFunction<S> for Box<F> {
    fn ground(&self) -> GroundSet {
        (**self).ground()
    }
    fn value(&self, set: Subset) -> S {
        (**self).value(set)
    }
    fn counter(&self) -> &QueryCounter {
        (**self).counter()
    }
}

impl<S: Scalar, F: SetFunction<S> + ?Sized> SetFunction<S> for &F {
    fn ground(&self) -> GroundSet {
        (**self).ground()
    }
    fn value(&self, set: Subset) -> S {
        (**self).value(set)
    }
    fn counter(&self) -> &QueryCounter {
        (**self).counter()
    }
}

/// Materializes all `2^m` values (counted queries), indexed by mask.
pub fn tabulate<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<Vec<S>> {
    let m = f.size();
    require_at_most("tabulation", m, MAX_EXPLICIT_M)?;
    Ok(f.ground().subsets().map(|s| f.query(s)).collect())
}

/// Copies any tabulable function into an explicit table.
pub fn to_explicit<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<ExplicitFunction<S>> {
    let table = tabulate(f)?;
    ExplicitFunction::new(f.size(), table)
}
