//! Exact widths for two-class functions at any `m <= 64`.
//!
//! When `f(A)` depends only on `(|A ∩ R|, |A \ R|)`, whether a set is
//! supermodular or superadditive depends only on its profile. A witness
//! context must be disjoint from `T` (an overlapping context makes some
//! proper subset reach the same union), so contexts reduce to profiles too,
//! and every question becomes a scan over a small grid.

use crate::instances::TwoClass;
use crate::scalar::Scalar;
use crate::subset::Subset;

use super::sets::{SuperadditiveWitness, SupermodularWitness};

/// First `a` items of `inside` and first `b` items of `outside`, skipping
/// the first `skip_a`/`skip_b` of each.
fn take(inside: &[usize], outside: &[usize], skip: (usize, usize), n: (usize, usize)) -> Subset {
    inside[skip.0..skip.0 + n.0]
        .iter()
        .chain(&outside[skip.1..skip.1 + n.1])
        .copied()
        .collect()
}

/// Profiles `(a, b)` in the grid `[0, na] × [0, nb]` where `margin(a, b)`
/// strictly exceeds the margin of every proper sub-profile.
fn dominating<S: Scalar>(na: usize, nb: usize, margin: impl Fn(usize, usize) -> S) -> Vec<(usize, usize)> {
    let cols = nb + 1;
    let mut best = vec![S::zero(); (na + 1) * cols];
    let mut out = Vec::new();
    for a in 0..=na {
        for b in 0..=nb {
            let here = margin(a, b);
            let below = match (a, b) {
                (0, 0) => None,
                (0, _) => Some(best[b - 1]),
                (_, 0) => Some(best[(a - 1) * cols]),
                _ => Some(best[(a - 1) * cols + b].max_of(best[a * cols + b - 1])),
            };
            if let Some(p) = below {
                if here.gt_tol(p) {
                    out.push((a, b));
                }
            }
            best[a * cols + b] = below.map_or(here, |p| p.max_of(here));
        }
    }
    out
}

fn classes<S: Scalar, F: TwoClass<S> + ?Sized>(f: &F) -> (Vec<usize>, Vec<usize>) {
    let r = f.special();
    let rest = f.ground().full().difference(r);
    (r.elements().collect(), rest.elements().collect())
}

/// Supermodular width of a two-class function, with a concrete witness.
pub fn two_class_supermodular_width<S: Scalar, F: TwoClass<S> + ?Sized>(
    f: &F,
) -> (usize, Option<SupermodularWitness>) {
    let (inside, outside) = classes(f);
    let (ni, no) = (inside.len(), outside.len());
    let mut found: Option<(usize, SupermodularWitness)> = None;
    for v_in in [true, false] {
        let (vi, vo) = if v_in { (1, 0) } else { (0, 1) };
        if vi > ni || vo > no {
            continue;
        }
        for si in 0..=ni - vi {
            for so in 0..=no - vo {
                let margin = |a: usize, b: usize| {
                    f.profile(si + a + vi, so + b + vo) - f.profile(si + a, so + b)
                };
                for (a, b) in dominating(ni - vi - si, no - vo - so, margin) {
                    if found.as_ref().is_none_or(|(w, _)| a + b > *w) {
                        let set = take(&inside, &outside, (0, 0), (a, b));
                        let context = take(&inside, &outside, (a, b), (si, so));
                        let item = if v_in { inside[a + si] } else { outside[b + so] };
                        found = Some((a + b, SupermodularWitness { set, context, item }));
                    }
                }
            }
        }
    }
    match found {
        Some((w, wit)) => (w, Some(wit)),
        None => (0, None),
    }
}

/// Superadditive width of a two-class function, with a concrete witness.
pub fn two_class_superadditive_width<S: Scalar, F: TwoClass<S> + ?Sized>(
    f: &F,
) -> (usize, Option<SuperadditiveWitness>) {
    let (inside, outside) = classes(f);
    let (ni, no) = (inside.len(), outside.len());
    let mut found: Option<(usize, SuperadditiveWitness)> = None;
    for si in 0..=ni {
        for so in 0..=no {
            if si + so == 0 {
                continue;
            }
            let margin = |a: usize, b: usize| f.profile(si + a, so + b) - f.profile(a, b);
            for (a, b) in dominating(ni - si, no - so, margin) {
                if found.as_ref().is_none_or(|(w, _)| a + b > *w) {
                    let set = take(&inside, &outside, (0, 0), (a, b));
                    let complemented = take(&inside, &outside, (a, b), (si, so));
                    found = Some((a + b, SuperadditiveWitness { set, complemented }));
                }
            }
        }
    }
    match found {
        Some((w, wit)) => (w, Some(wit)),
        None => (0, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{hard_cm_instance, hard_wm_instance, HardCmParams, HardWmParams};
    use crate::widths::{
        check_superadditive_witness, check_supermodular_witness, superadditive_width,
        supermodular_width,
    };

    #[test]
    fn agrees_with_exhaustive_on_constrained_instances() {
        for (m, d, c2) in [(10, 1, 2), (12, 1, 2), (12, 2, 1), (9, 1, 1)] {
            let f = hard_cm_instance::<f64>(HardCmParams::adversarial(m, d, 1, c2).unwrap());
            let (sm, wsm) = two_class_supermodular_width(&f);
            let (sa, wsa) = two_class_superadditive_width(&f);
            assert_eq!(sm, supermodular_width(&f).unwrap().0, "m={m} d={d}");
            assert_eq!(sa, superadditive_width(&f).unwrap().0, "m={m} d={d}");
            if let Some(w) = wsm {
                assert!(check_supermodular_witness(&f, &w));
            }
            if let Some(w) = wsa {
                assert!(check_superadditive_witness(&f, &w));
            }
        }
    }

    #[test]
    fn agrees_with_exhaustive_on_welfare_instance() {
        let p = HardWmParams::blocked(1, 1, 2, 2).unwrap();
        for f in hard_wm_instance::<f64>(&p).unwrap() {
            assert_eq!(two_class_supermodular_width(&f).0, supermodular_width(&f).unwrap().0);
            assert_eq!(two_class_superadditive_width(&f).0, superadditive_width(&f).unwrap().0);
        }
    }
}
