//! Direct evaluation of the d-scopic conditions.
//!
//! These never look at supermodular or superadditive sets; they are the
//! independent side of the width characterizations.

use crate::error::{require_at_most, Result};
use crate::scalar::Scalar;
use crate::setfn::{tabulate, SetFunction};
use crate::subset::Subset;

const SCOPIC_LIMIT: usize = 10;

/// Subsets of `t` with at most `d` elements.
fn small_subsets(t: Subset, d: usize) -> Vec<Subset> {
    t.subsets().filter(|s| s.len() <= d).collect()
}

pub(crate) fn scopic_submodular_in<S: Scalar>(tab: &[S], m: usize, d: usize) -> bool {
    let full = Subset::full(m);
    let margin = |v: usize, a: Subset| tab[a.with(v).index()] - tab[a.index()];
    for v in 0..m {
        for t in full.without(v).subsets() {
            let lhs = margin(v, t);
            let scope = small_subsets(t, d);
            for s in t.subsets() {
                let ok = scope.iter().any(|&tp| lhs.le_tol(margin(v, s.union(tp))));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn scopic_subadditive_in<S: Scalar>(tab: &[S], m: usize, d: usize) -> bool {
    let full = Subset::full(m);
    let margin = |s: Subset, a: Subset| tab[s.union(a).index()] - tab[a.index()];
    for t in full.subsets() {
        let scope = small_subsets(t, d);
        for s in full.difference(t).subsets() {
            let lhs = margin(s, t);
            if !scope.iter().any(|&tp| lhs.le_tol(margin(s, tp))) {
                return false;
            }
        }
    }
    true
}

/// `f(v | T) <= max_{T' ⊆ T, |T'| <= d} f(v | S ∪ T')` for all `S ⊆ T`,
/// `v ∉ T`. Needs `m <= 10`.
pub fn is_d_scopic_submodular<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    d: usize,
) -> Result<bool> {
    let m = f.size();
    require_at_most("scopic submodularity", m, SCOPIC_LIMIT)?;
    let t = tabulate(f)?;
    Ok(scopic_submodular_in(&t, m, d))
}

/// `f(S | T) <= max_{T' ⊆ T, |T'| <= d} f(S | T')` for all disjoint `S, T`.
/// Needs `m <= 10`.
pub fn is_d_scopic_subadditive<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    d: usize,
) -> Result<bool> {
    let m = f.size();
    require_at_most("scopic subadditivity", m, SCOPIC_LIMIT)?;
    let t = tabulate(f)?;
    Ok(scopic_subadditive_in(&t, m, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{pair_matching, symmetric_two_level, threshold_any_two};

    #[test]
    fn threshold_levels() {
        let f = threshold_any_two::<f64>(5).unwrap();
        assert!(is_d_scopic_submodular(&f, 1).unwrap());
        assert!(!is_d_scopic_submodular(&f, 0).unwrap());
    }

    #[test]
    fn top_level_always_holds() {
        for f in [
            Box::new(pair_matching::<f64>(2).unwrap()) as Box<dyn SetFunction<f64>>,
            Box::new(symmetric_two_level::<f64>(4).unwrap()),
        ] {
            let m = f.size();
            assert!(is_d_scopic_submodular(&f, m - 1).unwrap());
            assert!(is_d_scopic_subadditive(&f, m - 1).unwrap());
        }
    }

    #[test]
    fn two_level_needs_m_minus_two() {
        let f = symmetric_two_level::<f64>(5).unwrap();
        assert!(is_d_scopic_submodular(&f, 3).unwrap());
        assert!(!is_d_scopic_submodular(&f, 2).unwrap());
    }
}
