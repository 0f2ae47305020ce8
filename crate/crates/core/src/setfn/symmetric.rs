use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::{GroundSet, Subset};

use super::{QueryCounter, SetFunction};

/// `f(S) = g[|S|]`.
#[derive(Debug, Clone)]
pub struct SymmetricFunction<S> {
    ground: GroundSet,
    levels: Vec<S>,
    counter: QueryCounter,
}

impl<S: Scalar> SymmetricFunction<S> {
    /// `levels` has length `m + 1`, starts at 0 and is nonnegative.
    pub fn new(m: usize, levels: Vec<S>) -> Result<Self> {
        let ground = GroundSet::new(m)?;
        if levels.len() != m + 1 {
            return Err(Error::invalid(format!(
                "symmetric function over {m} elements needs {} levels, got {}",
                m + 1,
                levels.len()
            )));
        }
        if levels[0] != S::zero() {
            return Err(Error::invalid("level 0 must be 0"));
        }
        if levels.iter().any(|v| *v < S::zero()) {
            return Err(Error::invalid("levels must be nonnegative"));
        }
        Ok(SymmetricFunction {
            ground,
            levels,
            counter: QueryCounter::new(),
        })
    }

    pub fn new_monotone(m: usize, levels: Vec<S>) -> Result<Self> {
        let f = Self::new(m, levels)?;
        if f.levels.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("levels must be nondecreasing"));
        }
        Ok(f)
    }

    pub fn levels(&self) -> &[S] {
        &self.levels
    }
}

impl<S: Scalar> SetFunction<S> for SymmetricFunction<S> {
    fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    fn value(&self, set: Subset) -> S {
        self.levels[set.len()]
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}
