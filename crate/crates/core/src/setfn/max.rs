use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::{GroundSet, Subset};

use super::{QueryCounter, SetFunction};

/// Pointwise maximum of a nonempty family over a common ground set.
///
/// Component evaluations are not counted; only calls on the maximum are.
pub struct MaxFunction<S: Scalar> {
    ground: GroundSet,
    components: Vec<Box<dyn SetFunction<S>>>,
    counter: QueryCounter,
}

impl<S: Scalar> MaxFunction<S> {
    pub fn new(components: Vec<Box<dyn SetFunction<S>>>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::invalid("max of an empty family"))?;
        let ground = first.ground();
        if components.iter().any(|c| c.ground() != ground) {
            return Err(Error::invalid("max components disagree on the ground set"));
        }
        Ok(MaxFunction {
            ground,
            components,
            counter: QueryCounter::new(),
        })
    }

    pub fn components(&self) -> &[Box<dyn SetFunction<S>>] {
        &self.components
    }

    /// Index of the first component attaining the maximum at `set`.
    pub fn argmax(&self, set: Subset) -> usize {
        let mut best = 0;
        let mut best_v = self.components[0].value(set);
        for (i, c) in self.components.iter().enumerate().skip(1) {
            let v = c.value(set);
            if v > best_v {
                best = i;
                best_v = v;
            }
        }
        best
    }
}

impl<S: Scalar> std::fmt::Debug for MaxFunction<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MaxFunction")
            .field("m", &self.ground.size())
            .field("components", &self.components.len())
            .finish()
    }
}

impl<S: Scalar> SetFunction<S> for MaxFunction<S> {
    fn ground(&self) -> GroundSet {
        self.ground
    }

    fn value(&self, set: Subset) -> S {
        let mut it = self.components.iter().map(|c| c.value(set));
        let first = it.next().expect("nonempty family");
        it.fold(first, |a, b| a.max_of(b))
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}
