use crate::error::{require_at_most, Result};
use crate::scalar::Scalar;
use crate::setfn::{tabulate, SetFunction};
use crate::subset::Subset;

const DEGREE_LIMIT: usize = 14;

pub(crate) fn dep_plus_in<S: Scalar>(t: &[S], m: usize, u: usize) -> Subset {
    let rest = Subset::full(m).without(u);
    let margin = |a: Subset| t[a.with(u).index()] - t[a.index()];
    let mut deps = Subset::EMPTY;
    for s in rest.subsets() {
        let at_s = margin(s);
        for v in s.difference(deps).elements() {
            if at_s.gt_tol(margin(s.without(v))) {
                deps = deps.with(v);
            }
        }
    }
    deps
}

/// Elements `v` on which `u` depends positively:
/// `f(u | S) > f(u | S \ {v})` for some `S`. Needs `m <= 14`.
pub fn dep_plus<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F, u: usize) -> Result<Subset> {
    let m = f.size();
    require_at_most("positive dependency scan", m, DEGREE_LIMIT)?;
    if u >= m {
        return Err(crate::Error::invalid(format!("element {u} outside ground set")));
    }
    let t = tabulate(f)?;
    Ok(dep_plus_in(&t, m, u))
}

/// Per-element dependency sets and their maximum size.
pub(crate) fn degree_in<S: Scalar>(t: &[S], m: usize) -> (usize, Vec<Subset>) {
    let deps: Vec<Subset> = (0..m).map(|u| dep_plus_in(t, m, u)).collect();
    (deps.iter().map(|d| d.len()).max().unwrap_or(0), deps)
}

/// `max_u |Dep⁺(u)|`. Needs `m <= 14`.
pub fn supermodular_degree<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<usize> {
    let m = f.size();
    require_at_most("supermodular degree", m, DEGREE_LIMIT)?;
    let t = tabulate(f)?;
    Ok(degree_in(&t, m).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{additive, pair_matching, threshold_any_two};

    #[test]
    fn threshold_depends_on_everything() {
        let f = threshold_any_two::<f64>(5).unwrap();
        assert_eq!(dep_plus(&f, 0).unwrap(), Subset::from_elements([1, 2, 3, 4]));
        assert_eq!(supermodular_degree(&f).unwrap(), 4);
    }

    #[test]
    fn additive_has_no_dependencies() {
        let f = additive::<f64>(&[1.0, 2.0, 0.5]).unwrap();
        assert_eq!(dep_plus(&f, 1).unwrap(), Subset::EMPTY);
        assert_eq!(supermodular_degree(&f).unwrap(), 0);
    }

    #[test]
    fn matching_partner_only() {
        let f = pair_matching::<f64>(2).unwrap();
        assert_eq!(dep_plus(&f, 0).unwrap(), Subset::singleton(2));
        assert_eq!(supermodular_degree(&pair_matching::<f64>(3).unwrap()).unwrap(), 1);
    }
}
