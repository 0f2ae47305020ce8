//! Supermodular and superadditive sets.
//!
//! Two routes are provided. The direct predicates follow the definitions
//! literally (every proper subset `T' ⊊ T` is compared). The sweep routines
//! flag every set at once: for a fixed context they walk the candidate sets
//! in ascending mask order while maintaining the running subset maximum, so
//! the strict-domination test for `T` is a maximum over the `|T|` sets
//! `T \ {t}`.

use serde::{Deserialize, Serialize};

use crate::error::{require_at_most, Result};
use crate::scalar::Scalar;
use crate::setfn::{tabulate, SetFunction};
use crate::subset::Subset;

pub(crate) const SET_LIMIT: usize = 12;

/// `T` complements item `v` given the context `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupermodularWitness {
    pub set: Subset,
    pub context: Subset,
    pub item: usize,
}

/// `T` complements the disjoint set `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperadditiveWitness {
    pub set: Subset,
    pub complemented: Subset,
}

#[inline]
fn item_margin<S: Scalar>(t: &[S], v: usize, a: Subset) -> S {
    t[a.with(v).index()] - t[a.index()]
}

#[inline]
fn set_margin<S: Scalar>(t: &[S], s: Subset, a: Subset) -> S {
    t[s.union(a).index()] - t[a.index()]
}

/// Largest value of `value(T')` over proper subsets `T' ⊊ t`; `None` when
/// `t = ∅` (an empty family has no maximum and never dominates).
fn max_over_proper<S: Scalar>(t: Subset, mut value: impl FnMut(Subset) -> S) -> Option<S> {
    t.subsets()
        .filter(|&sub| sub != t)
        .map(&mut value)
        .reduce(|a, b| a.max_of(b))
}

pub(crate) fn supermodular_witness_in<S: Scalar>(
    table: &[S],
    m: usize,
    set: Subset,
) -> Option<SupermodularWitness> {
    let full = Subset::full(m);
    for v in (0..m).filter(|&v| !set.contains(v)) {
        for ctx in full.subsets() {
            let lhs = item_margin(table, v, ctx.union(set));
            let rhs = max_over_proper(set, |sub| item_margin(table, v, ctx.union(sub)))?;
            if lhs.gt_tol(rhs) {
                return Some(SupermodularWitness {
                    set,
                    context: ctx,
                    item: v,
                });
            }
        }
    }
    None
}

pub(crate) fn superadditive_witness_in<S: Scalar>(
    table: &[S],
    m: usize,
    set: Subset,
) -> Option<SuperadditiveWitness> {
    let free = Subset::full(m).difference(set);
    for s in free.subsets() {
        let lhs = set_margin(table, s, set);
        let rhs = max_over_proper(set, |sub| set_margin(table, s, sub))?;
        if lhs.gt_tol(rhs) {
            return Some(SuperadditiveWitness {
                set,
                complemented: s,
            });
        }
    }
    None
}

/// Direct check of whether `set` is supermodular. Search order: `v`
/// ascending, then `S` by ascending mask. Needs `m <= 12`.
pub fn is_supermodular_set<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    set: Subset,
) -> Result<Option<SupermodularWitness>> {
    let m = f.size();
    require_at_most("supermodular set check", m, SET_LIMIT)?;
    f.ground().check(set)?;
    let t = tabulate(f)?;
    Ok(supermodular_witness_in(&t, m, set))
}

/// Direct check of whether `set` is superadditive (`S` by ascending mask).
/// Needs `m <= 12`.
pub fn is_superadditive_set<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    set: Subset,
) -> Result<Option<SuperadditiveWitness>> {
    let m = f.size();
    require_at_most("superadditive set check", m, SET_LIMIT)?;
    f.ground().check(set)?;
    let t = tabulate(f)?;
    Ok(superadditive_witness_in(&t, m, set))
}

/// Sweeps all sets `T ⊆ candidates` in ascending order for one context,
/// calling `hit(T)` whenever `value(T)` strictly exceeds every proper subset.
fn sweep<S: Scalar>(
    candidates: Subset,
    scratch: &mut [S],
    mut value: impl FnMut(Subset) -> S,
    mut hit: impl FnMut(Subset),
) {
    for t in candidates.subsets() {
        let v = value(t);
        if t.is_empty() {
            scratch[0] = v;
            continue;
        }
        let strict = t
            .elements()
            .map(|e| scratch[t.without(e).index()])
            .reduce(|a, b| a.max_of(b))
            .expect("nonempty");
        if v.gt_tol(strict) {
            hit(t);
        }
        scratch[t.index()] = v.max_of(strict);
    }
}

/// Flags, per mask, whether the set is supermodular.
pub(crate) fn supermodular_flags<S: Scalar>(table: &[S], m: usize) -> Vec<bool> {
    let full = Subset::full(m);
    let mut flags = vec![false; table.len()];
    let mut scratch = vec![S::zero(); table.len()];
    for v in 0..m {
        let rest = full.without(v);
        for ctx in rest.subsets() {
            sweep(
                rest.difference(ctx),
                &mut scratch,
                |t| item_margin(table, v, ctx.union(t)),
                |t| flags[t.index()] = true,
            );
        }
    }
    flags
}

/// Flags, per mask, whether the set is superadditive.
pub(crate) fn superadditive_flags<S: Scalar>(table: &[S], m: usize) -> Vec<bool> {
    let full = Subset::full(m);
    let mut flags = vec![false; table.len()];
    let mut scratch = vec![S::zero(); table.len()];
    for s in full.subsets().skip(1) {
        sweep(
            full.difference(s),
            &mut scratch,
            |t| set_margin(table, s, t),
            |t| flags[t.index()] = true,
        );
    }
    flags
}

/// Largest flagged set, smallest mask among ties.
fn widest(flags: &[bool]) -> Option<Subset> {
    let mut best: Option<Subset> = None;
    for (i, _) in flags.iter().enumerate().filter(|(_, &f)| f) {
        let s = Subset(i as u64);
        if best.is_none_or(|b| s.len() > b.len()) {
            best = Some(s);
        }
    }
    best
}

pub(crate) fn supermodular_width_in<S: Scalar>(
    table: &[S],
    m: usize,
) -> (usize, Option<SupermodularWitness>) {
    match widest(&supermodular_flags(table, m)) {
        None => (0, None),
        Some(t) => {
            let w = supermodular_witness_in(table, m, t);
            debug_assert!(w.is_some());
            (t.len(), w)
        }
    }
}

pub(crate) fn superadditive_width_in<S: Scalar>(
    table: &[S],
    m: usize,
) -> (usize, Option<SuperadditiveWitness>) {
    match widest(&superadditive_flags(table, m)) {
        None => (0, None),
        Some(t) => {
            let w = superadditive_witness_in(table, m, t);
            debug_assert!(w.is_some());
            (t.len(), w)
        }
    }
}

/// Supermodular width with a witness for a largest supermodular set
/// (smallest mask among the largest). Needs `m <= 12`.
pub fn supermodular_width<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
) -> Result<(usize, Option<SupermodularWitness>)> {
    let m = f.size();
    require_at_most("supermodular width", m, SET_LIMIT)?;
    let t = tabulate(f)?;
    Ok(supermodular_width_in(&t, m))
}

/// Superadditive width with a witness. Needs `m <= 12`.
pub fn superadditive_width<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
) -> Result<(usize, Option<SuperadditiveWitness>)> {
    let m = f.size();
    require_at_most("superadditive width", m, SET_LIMIT)?;
    let t = tabulate(f)?;
    Ok(superadditive_width_in(&t, m))
}

/// Re-verifies a supermodular witness against every proper subset.
pub fn check_supermodular_witness<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    w: &SupermodularWitness,
) -> bool {
    if w.set.contains(w.item) || w.set.is_empty() {
        return false;
    }
    let margin = |a: Subset| f.value(a.with(w.item)) - f.value(a);
    let lhs = margin(w.context.union(w.set));
    w.set
        .subsets()
        .filter(|&s| s != w.set)
        .all(|sub| lhs.gt_tol(margin(w.context.union(sub))))
}

/// Re-verifies a superadditive witness against every proper subset.
pub fn check_superadditive_witness<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    w: &SuperadditiveWitness,
) -> bool {
    if !w.set.is_disjoint(w.complemented) || w.set.is_empty() {
        return false;
    }
    let margin = |a: Subset| f.value(a.union(w.complemented)) - f.value(a);
    let lhs = margin(w.set);
    w.set
        .subsets()
        .filter(|&s| s != w.set)
        .all(|sub| lhs.gt_tol(margin(sub)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{all_pairs, pair_matching, symmetric_two_level, threshold_any_two};

    #[test]
    fn threshold_singletons_only() {
        let f = threshold_any_two::<f64>(4).unwrap();
        let w = is_supermodular_set(&f, Subset::singleton(1)).unwrap().unwrap();
        assert_eq!((w.context, w.item), (Subset::EMPTY, 0));
        assert!(is_supermodular_set(&f, Subset::from_elements([1, 2])).unwrap().is_none());
        assert!(is_supermodular_set(&f, Subset::EMPTY).unwrap().is_none());
    }

    #[test]
    fn sweep_matches_direct_definition() {
        let fs: Vec<Box<dyn SetFunction<f64>>> = vec![
            Box::new(threshold_any_two(5).unwrap()),
            Box::new(pair_matching(2).unwrap()),
            Box::new(symmetric_two_level(5).unwrap()),
            Box::new(all_pairs(4).unwrap()),
        ];
        for f in &fs {
            let m = f.size();
            let t = tabulate(f.as_ref()).unwrap();
            let sm = supermodular_flags(&t, m);
            let sa = superadditive_flags(&t, m);
            for s in f.ground().subsets() {
                assert_eq!(sm[s.index()], supermodular_witness_in(&t, m, s).is_some());
                assert_eq!(sa[s.index()], superadditive_witness_in(&t, m, s).is_some());
            }
        }
    }

    #[test]
    fn widths_of_fixtures() {
        let f = symmetric_two_level::<f64>(5).unwrap();
        // X \ {u} only ties with the empty subset, so the widest set has m - 2 items
        let (smw, w) = supermodular_width(&f).unwrap();
        assert_eq!(smw, 3);
        assert!(check_supermodular_witness(&f, &w.unwrap()));
        assert_eq!(superadditive_width(&f).unwrap(), (0, None));

        let f = pair_matching::<f64>(3).unwrap();
        let (saw, w) = superadditive_width(&f).unwrap();
        assert_eq!(saw, 3);
        assert!(check_superadditive_witness(&f, &w.unwrap()));
    }

    #[test]
    fn width_cap() {
        let f = threshold_any_two::<f64>(13).unwrap();
        assert!(supermodular_width(&f).is_err());
    }
}
