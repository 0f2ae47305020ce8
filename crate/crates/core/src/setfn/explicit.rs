use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::{GroundSet, Subset};

use super::{QueryCounter, SetFunction};

/// A set function stored as a full table of `2^m` values.
#[derive(Debug, Clone)]
pub struct ExplicitFunction<S> {
    ground: GroundSet,
    table: Vec<S>,
    counter: QueryCounter,
}

impl<S: Scalar> ExplicitFunction<S> {
    /// Requires `table.len() == 2^m`, `table[∅] = 0` and nonnegative entries.
    pub fn new(m: usize, table: Vec<S>) -> Result<Self> {
        let ground = GroundSet::tabulable(m)?;
        if table.len() != ground.subset_count() {
            return Err(Error::invalid(format!(
                "table has {} entries, expected 2^{m} = {}",
                table.len(),
                ground.subset_count()
            )));
        }
        if table[0] != S::zero() {
            return Err(Error::invalid("f(∅) must be 0"));
        }
        if let Some(i) = table.iter().position(|v| *v < S::zero()) {
            return Err(Error::invalid(format!(
                "negative value {} at mask {i:#x}",
                table[i]
            )));
        }
        Ok(ExplicitFunction {
            ground,
            table,
            counter: QueryCounter::new(),
        })
    }

    /// Like [`ExplicitFunction::new`], additionally rejecting non-monotone tables.
    pub fn new_monotone(m: usize, table: Vec<S>) -> Result<Self> {
        let f = Self::new(m, table)?;
        if !super::is_monotone(&f) {
            return Err(Error::invalid("table is not monotone"));
        }
        Ok(f)
    }

    pub fn table(&self) -> &[S] {
        &self.table
    }

    pub fn into_table(self) -> Vec<S> {
        self.table
    }
}

impl<S: Scalar> SetFunction<S> for ExplicitFunction<S> {
    fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    fn value(&self, set: Subset) -> S {
        self.table[set.index()]
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(ExplicitFunction::new(2, vec![0.0, 1.0, 1.0]).is_err());
        assert!(ExplicitFunction::new(1, vec![1.0, 1.0]).is_err());
        assert!(ExplicitFunction::new(1, vec![0.0, -1.0]).is_err());
        assert!(ExplicitFunction::new_monotone(2, vec![0.0, 1.0, 0.0, 0.5]).is_err());
        assert!(ExplicitFunction::new_monotone(2, vec![0.0, 1.0, 0.0, 1.0]).is_ok());
    }

    #[test]
    fn counts_queries() {
        let f = ExplicitFunction::new(2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(f.eval(Subset(3)).unwrap(), 3.0);
        assert!(f.eval(Subset(4)).is_err());
        assert_eq!(f.queries(), 1);
        assert_eq!(f.margin(Subset(1), Subset(2)).unwrap(), 1.0);
        assert_eq!(f.queries(), 3);
    }
}
