//! Exhaustive structural checks on tabulable set functions.

use crate::error::{require_at_most, Result};
use crate::scalar::Scalar;
use crate::subset::Subset;

use super::{tabulate, SetFunction};

pub fn is_normalized<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> bool {
    f.query(Subset::EMPTY).is_zero()
}

/// Adjacent-pair check `f(S) <= f(S ∪ {v})`.
pub fn is_monotone<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> bool {
    let Ok(t) = tabulate(f) else {
        return false;
    };
    let m = f.size();
    (0..t.len()).all(|s| {
        (0..m)
            .filter(|&v| s >> v & 1 == 0)
            .all(|v| t[s].le_tol(t[s | 1 << v]))
    })
}

/// Local condition `f(v | S ∪ {u}) <= f(v | S)` for all `S` and `u ≠ v`
/// outside `S`. Needs `m <= 20`.
pub fn is_submodular<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<bool> {
    let m = f.size();
    require_at_most("submodularity check", m, 20)?;
    let t = tabulate(f)?;
    for s in 0..t.len() {
        for v in (0..m).filter(|&v| s >> v & 1 == 0) {
            let base = t[s | 1 << v] - t[s];
            for u in (v + 1..m).filter(|&u| s >> u & 1 == 0) {
                let su = s | 1 << u;
                if (t[su | 1 << v] - t[su]).gt_tol(base) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `f(A ∪ B) <= f(A) + f(B)` over disjoint pairs. Needs `m <= 14`.
pub fn is_subadditive<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<bool> {
    disjoint_pairs_all(f, "subadditivity check", |ab, a, b| ab.le_tol(a + b))
}

/// `f(A ∪ B) >= f(A) + f(B)` over disjoint pairs. Needs `m <= 14`.
pub fn is_superadditive<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<bool> {
    disjoint_pairs_all(f, "superadditivity check", |ab, a, b| (a + b).le_tol(ab))
}

fn disjoint_pairs_all<S, F, P>(f: &F, what: &'static str, pred: P) -> Result<bool>
where
    S: Scalar,
    F: SetFunction<S> + ?Sized,
    P: Fn(S, S, S) -> bool,
{
    let m = f.size();
    require_at_most(what, m, 14)?;
    let t = tabulate(f)?;
    let full = f.ground().full();
    for a in f.ground().subsets() {
        for b in full.difference(a).subsets() {
            // each unordered pair once
            if b < a {
                continue;
            }
            if !pred(t[a.union(b).index()], t[a.index()], t[b.index()]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::{ChFunction, ExplicitFunction};

    #[test]
    fn monotone_violation() {
        let f = ExplicitFunction::new(2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(!is_monotone(&f));
        assert!(is_normalized(&f));
    }

    #[test]
    fn single_block_ch_is_neither() {
        let f = ChFunction::new(2, 1.0, vec![Subset(0b11)], 2).unwrap();
        assert!(!is_submodular(&f).unwrap());
        assert!(!is_subadditive(&f).unwrap());
        assert!(is_superadditive(&f).unwrap());
    }

    #[test]
    fn additive_is_both() {
        let f = ExplicitFunction::new(2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert!(is_submodular(&f).unwrap());
        assert!(is_subadditive(&f).unwrap());
    }

    #[test]
    fn caps() {
        let f = crate::setfn::SymmetricFunction::new(15, vec![0.0; 16]).unwrap();
        assert!(matches!(
            is_subadditive(&f),
            Err(crate::Error::ResourceLimit { .. })
        ));
        assert!(is_submodular(&f).unwrap());
    }
}
