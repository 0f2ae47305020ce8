//! Small named functions that separate the width measures.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::setfn::{HypergraphFunction, SymmetricFunction};
use crate::subset::Subset;

/// Value 1 on any set of two or more items, 0 otherwise.
pub fn threshold_any_two<S: Scalar>(m: usize) -> Result<SymmetricFunction<S>> {
    if m < 2 {
        return Err(Error::invalid("threshold_any_two needs m >= 2"));
    }
    let levels = (0..=m).map(|k| if k >= 2 { S::one() } else { S::zero() }).collect();
    SymmetricFunction::new(m, levels)
}

/// Unit edges `{i, i + t}` over `m = 2t` items.
pub fn pair_matching<S: Scalar>(t: usize) -> Result<HypergraphFunction<S>> {
    if t == 0 {
        return Err(Error::invalid("pair_matching needs t >= 1"));
    }
    HypergraphFunction::new(2 * t, (0..t).map(|i| (Subset::from_elements([i, i + t]), S::one())))
}

/// 0 on the empty set, 2 on the full set, 1 elsewhere.
pub fn symmetric_two_level<S: Scalar>(m: usize) -> Result<SymmetricFunction<S>> {
    if m < 2 {
        return Err(Error::invalid("symmetric_two_level needs m >= 2"));
    }
    let mut levels = vec![S::one(); m + 1];
    levels[0] = S::zero();
    levels[m] = S::from_count(2);
    SymmetricFunction::new(m, levels)
}

/// Unit weight on every pair, so `f(S) = C(|S|, 2)`.
pub fn all_pairs<S: Scalar>(m: usize) -> Result<HypergraphFunction<S>> {
    if m < 2 {
        return Err(Error::invalid("all_pairs needs m >= 2"));
    }
    HypergraphFunction::new(m, Subset::full(m).subsets_of_size(2).map(|p| (p, S::one())))
}

/// Additive function with the given item values.
pub fn additive<S: Scalar>(values: &[S]) -> Result<HypergraphFunction<S>> {
    if values.iter().any(|v| *v < S::zero()) {
        return Err(Error::invalid("item values must be nonnegative"));
    }
    HypergraphFunction::new(
        values.len(),
        values.iter().enumerate().map(|(i, &v)| (Subset::singleton(i), v)),
    )
}

/// `f(S) = w·[B ⊆ S]`.
pub fn single_minded<S: Scalar>(m: usize, bundle: Subset, w: S) -> Result<HypergraphFunction<S>> {
    HypergraphFunction::new(m, [(bundle, w)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::SetFunction;

    #[test]
    fn values() {
        let f = threshold_any_two::<f64>(4).unwrap();
        assert_eq!(f.eval(Subset::from_elements([1, 3])).unwrap(), 1.0);
        assert_eq!(f.eval(Subset::EMPTY).unwrap(), 0.0);
        assert!(threshold_any_two::<f64>(1).is_err());

        let p = pair_matching::<f64>(2).unwrap();
        assert_eq!(p.value(Subset::from_elements([0, 2])), 1.0);
        assert_eq!(p.margin(Subset::singleton(0), Subset::singleton(2)).unwrap(), 1.0);

        let s = symmetric_two_level::<f64>(4).unwrap();
        assert_eq!(s.value(Subset(0b0110)), 1.0);
        assert_eq!(s.value(Subset(0b1111)), 2.0);

        assert_eq!(all_pairs::<f64>(5).unwrap().value(Subset(0b10101)), 3.0);
    }
}
