//! Positive-hypergraph level and small-scale MPH membership.

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use serde::{Serialize, Serializer};

use crate::error::{require_at_most, Error, Result};
use crate::scalar::Scalar;
use crate::setfn::{mobius_table, tabulate, HypergraphFunction, SetFunction};
use crate::subset::Subset;

const PH_LIMIT: usize = 20;
const MPH_LIMIT: usize = 8;
const LP_TOLERANCE: f64 = 1e-7;

/// Largest hyperedge of a nonnegative Möbius representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhLevel {
    Level(usize),
    NotPh,
}

impl Serialize for PhLevel {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        match *self {
            PhLevel::Level(k) => s.serialize_u64(k as u64),
            PhLevel::NotPh => s.serialize_str("not-ph"),
        }
    }
}

impl std::fmt::Display for PhLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PhLevel::Level(k) => write!(f, "{k}"),
            PhLevel::NotPh => write!(f, "not-ph"),
        }
    }
}

pub(crate) fn ph_level_in<S: Scalar>(table: &[S]) -> PhLevel {
    let mut h = table.to_vec();
    mobius_table(&mut h);
    let tol = S::tolerance();
    if h.iter().any(|&w| w < -tol) {
        return PhLevel::NotPh;
    }
    let level = h
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > tol)
        .map(|(i, _)| (i as u64).count_ones() as usize)
        .max()
        .unwrap_or(0);
    PhLevel::Level(level)
}

/// Needs `m <= 20`.
pub fn ph_level<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<PhLevel> {
    require_at_most("PH level", f.size(), PH_LIMIT)?;
    Ok(ph_level_in(&tabulate(f)?))
}

/// Nonnegative weights on hyperedges of size `<= d` inside `target` whose
/// function reaches `f(target)` while staying below `f` everywhere, if any.
fn ph_component(table: &[f64], m: usize, target: Subset, d: usize) -> Result<Option<Vec<(Subset, f64)>>> {
    let full = Subset::full(m);
    let edges: Vec<Subset> = target
        .subsets()
        .filter(|t| !t.is_empty() && t.len() <= d)
        .collect();
    if table[target.index()] <= LP_TOLERANCE {
        return Ok(Some(Vec::new()));
    }
    if edges.is_empty() {
        return Ok(None);
    }
    // tightest upper bound per trace W = U ∩ target
    let mut cap = vec![f64::INFINITY; table.len()];
    for u in full.subsets() {
        let w = u.intersection(target).index();
        cap[w] = cap[w].min(table[u.index()]);
    }

    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = edges.iter().map(|_| lp.add_var(1.0, (0.0, f64::INFINITY))).collect();
    let terms = |within: Subset| -> Vec<(minilp::Variable, f64)> {
        edges
            .iter()
            .zip(&vars)
            .filter(|(e, _)| e.is_subset_of(within))
            .map(|(_, &v)| (v, 1.0))
            .collect()
    };
    lp.add_constraint(
        terms(target).as_slice(),
        ComparisonOp::Ge,
        table[target.index()] - LP_TOLERANCE,
    );
    for w in target.subsets().skip(1) {
        let t = terms(w);
        if !t.is_empty() {
            lp.add_constraint(t.as_slice(), ComparisonOp::Le, cap[w.index()] + LP_TOLERANCE);
        }
    }
    let sol = match lp.solve() {
        Ok(sol) => sol,
        Err(minilp::Error::Infeasible) => return Ok(None),
        Err(e) => return Err(Error::Solver(e.to_string())),
    };
    let weights: Vec<(Subset, f64)> = edges
        .iter()
        .zip(&vars)
        .map(|(&e, &v)| (e, *sol.var_value(v)))
        .filter(|&(_, w)| w > 0.0)
        .collect();

    // independent re-check of the returned point
    let value = |within: Subset| -> f64 {
        weights
            .iter()
            .filter(|(e, _)| e.is_subset_of(within))
            .map(|(_, w)| w)
            .sum()
    };
    let slack = 10.0 * LP_TOLERANCE;
    if weights.iter().any(|&(_, w)| w < -slack)
        || value(target) < table[target.index()] - slack
        || full.subsets().any(|u| value(u) > table[u.index()] + slack)
    {
        return Err(Error::Solver(format!(
            "LP point for target {target} violates its constraints"
        )));
    }
    Ok(Some(weights))
}

/// Witnessing PH-`d` components, one per subset (ascending mask), or `None`
/// when some subset admits none. Needs `m <= 8`.
pub fn mph_decomposition<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    d: usize,
) -> Result<Option<Vec<HypergraphFunction<f64>>>> {
    let m = f.size();
    require_at_most("MPH membership", m, MPH_LIMIT)?;
    let table: Vec<f64> = tabulate(f)?.into_iter().map(|v| v.to_f64_lossy()).collect();
    let mut out = Vec::with_capacity(table.len());
    for s in f.ground().subsets() {
        match ph_component(&table, m, s, d)? {
            Some(w) => out.push(HypergraphFunction::new(m, w)?),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Whether `f` is a maximum of PH-`d` functions, decided by one linear
/// feasibility problem per subset. Needs `m <= 8`.
pub fn mph_level_at_most<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F, d: usize) -> Result<bool> {
    let m = f.size();
    require_at_most("MPH membership", m, MPH_LIMIT)?;
    let table: Vec<f64> = tabulate(f)?.into_iter().map(|v| v.to_f64_lossy()).collect();
    for s in f.ground().subsets() {
        if ph_component(&table, m, s, d)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{additive, all_pairs, symmetric_two_level};
    use crate::setfn::SymmetricFunction;

    #[test]
    fn levels() {
        assert_eq!(ph_level(&all_pairs::<f64>(5).unwrap()).unwrap(), PhLevel::Level(2));
        assert_eq!(ph_level(&additive::<f64>(&[1.0, 2.0]).unwrap()).unwrap(), PhLevel::Level(1));
        assert_eq!(ph_level(&symmetric_two_level::<f64>(4).unwrap()).unwrap(), PhLevel::NotPh);
        let zero = SymmetricFunction::new(3, vec![0.0; 4]).unwrap();
        assert_eq!(ph_level(&zero).unwrap(), PhLevel::Level(0));
    }

    #[test]
    fn mph_membership() {
        assert!(mph_level_at_most(&all_pairs::<f64>(4).unwrap(), 2).unwrap());
        assert!(!mph_level_at_most(&all_pairs::<f64>(4).unwrap(), 1).unwrap());
        let two_level = symmetric_two_level::<f64>(4).unwrap();
        assert!(!mph_level_at_most(&two_level, 1).unwrap());
        assert!(mph_level_at_most(&two_level, 4).unwrap());
    }

    #[test]
    fn decomposition_components_are_below() {
        let f = all_pairs::<f64>(4).unwrap();
        let parts = mph_decomposition(&f, 2).unwrap().unwrap();
        for (s, g) in f.ground().subsets().zip(&parts) {
            assert!((g.value(s) - f.value(s)).abs() < 1e-6);
            assert!(f.ground().subsets().all(|u| g.value(u) <= f.value(u) + 1e-6));
        }
    }

    #[test]
    fn mph_cap() {
        let f = all_pairs::<f64>(9).unwrap();
        assert!(matches!(mph_level_at_most(&f, 2), Err(Error::ResourceLimit { .. })));
    }
}
