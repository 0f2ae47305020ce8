use crate::error::{require_at_most, Error, Result};
use crate::scalar::Scalar;
use crate::setfn::SetFunction;
use crate::subset::{binomial, Subset};

use super::{batches, beats, evaluate, GreedyStep, GreedyTrace};

const BRUTE_LIMIT: usize = 20;

/// Largest number of oracle calls the constrained greedy may make with
/// batch bound `d + 1`: `2·k·Σ_{j ≤ d+1} C(m, j)`.
pub fn query_budget(m: usize, k: usize, d: usize) -> u128 {
    let per_step: u128 = (0..=d + 1).map(|j| binomial(m, j)).sum();
    2 * k as u128 * per_step
}

/// Batched greedy under `|S| <= k`, adding at each step the batch of at most
/// `min(d + 1, k - |S|)` items with the largest margin.
pub fn batched_greedy_constrained<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    k: usize,
    d: usize,
) -> Result<(Subset, GreedyTrace<S>)> {
    let m = f.size();
    if k == 0 || k > m {
        return Err(Error::invalid(format!("k must be in 1..={m}, got {k}")));
    }
    let start = f.queries();
    let full = f.ground().full();
    let mut chosen = Subset::EMPTY;
    let mut current = f.query(chosen);
    let mut steps = Vec::new();

    while chosen.len() < k {
        let s = (d + 1).min(k - chosen.len());
        let cands = batches(full.difference(chosen), s);
        if cands.is_empty() {
            break;
        }
        let values = evaluate(f, chosen, &cands);
        let mut best: Option<(S, Subset)> = None;
        let mut best_value = current;
        for (&t, &v) in cands.iter().zip(&values) {
            let gain = v - current;
            if beats(gain, t, best) {
                best = Some((gain, t));
                best_value = v;
            }
        }
        let (gain, batch) = best.expect("nonempty candidate list");
        chosen = chosen.union(batch);
        current = best_value;
        steps.push(GreedyStep {
            batch,
            agent: None,
            gain,
        });
    }

    Ok((
        chosen,
        GreedyTrace {
            steps,
            value: current,
            queries: f.queries() - start,
        },
    ))
}

/// Exact maximum over all sets of size at most `k` (smallest mask among
/// maximizers). Needs `m <= 20`.
pub fn brute_force_constrained<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    k: usize,
) -> Result<(Subset, S)> {
    let m = f.size();
    require_at_most("brute-force constrained maximization", m, BRUTE_LIMIT)?;
    let mut best = (Subset::EMPTY, f.query(Subset::EMPTY));
    for s in f.ground().subsets().filter(|s| !s.is_empty() && s.len() <= k) {
        let v = f.query(s);
        if v.gt_tol(best.1) {
            best = (s, v);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{
        additive, hard_cm_instance, pair_matching, threshold_any_two, HardCmParams,
    };

    #[test]
    fn additive_is_optimal() {
        let f = additive(&[5.0, 1.0, 1.0, 1.0]).unwrap();
        let (s, tr) = batched_greedy_constrained(&f, 2, 0).unwrap();
        assert_eq!(s, Subset::from_elements([0, 1]));
        assert_eq!(tr.value, 6.0);
    }

    #[test]
    fn threshold_pair_in_one_batch() {
        let f = threshold_any_two::<f64>(6).unwrap();
        let (s, tr) = batched_greedy_constrained(&f, 2, 1).unwrap();
        assert_eq!((s.len(), tr.value, tr.steps.len()), (2, 1.0, 1));
        assert_eq!(brute_force_constrained(&f, 2).unwrap().1, 1.0);
        assert_eq!(brute_force_constrained(&f, 1).unwrap().1, 0.0);
    }

    #[test]
    fn k_beyond_m_rejected() {
        let f = threshold_any_two::<f64>(3).unwrap();
        assert!(matches!(batched_greedy_constrained(&f, 4, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn matching_brute_force() {
        let f = pair_matching::<f64>(3).unwrap();
        assert_eq!(brute_force_constrained(&f, 4).unwrap().1, 2.0);
        assert_eq!(brute_force_constrained(&f, 6).unwrap().1, 3.0);
    }

    #[test]
    fn hard_instance_gap() {
        let f = hard_cm_instance::<f64>(HardCmParams::adversarial(12, 1, 1, 2).unwrap());
        let (s, tr) = batched_greedy_constrained(&f, 6, 1).unwrap();
        assert!(!f.params().r.is_subset_of(s));
        assert_eq!(tr.value, 3.0);
        assert_eq!(brute_force_constrained(&f, 6).unwrap().1, 5.0);
    }

    #[test]
    fn budget_respected() {
        let f = threshold_any_two::<f64>(8).unwrap();
        let (_, tr) = batched_greedy_constrained(&f, 5, 1).unwrap();
        assert!(tr.queries as u128 <= query_budget(8, 5, 1));
    }
}
