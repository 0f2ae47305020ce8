use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::setfn::{tabulate, SetFunction};
use crate::subset::{GroundSet, Subset};

use super::{batches, beats, evaluate, Allocation, GreedyStep, GreedyTrace};

const BRUTE_LIMIT: usize = 16;

fn common_ground<S: Scalar, F: SetFunction<S>>(fs: &[F]) -> Result<GroundSet> {
    let first = fs.first().ok_or_else(|| Error::invalid("need at least one agent"))?;
    let g = first.ground();
    if fs.iter().any(|f| f.ground() != g) {
        return Err(Error::invalid("agents must share one ground set"));
    }
    Ok(g)
}

/// Batched greedy allocation: each step hands the batch-agent pair with the
/// largest margin, batches of at most `min(d + 1, remaining)` items, until
/// every item is assigned. Ties go to the smaller agent, then smaller mask.
pub fn batched_greedy_welfare<S: Scalar, F: SetFunction<S>>(
    fs: &[F],
    d: usize,
) -> Result<(Allocation<S>, GreedyTrace<S>)> {
    let ground = common_ground(fs)?;
    let start: u64 = fs.iter().map(|f| f.queries()).sum();
    let n = fs.len();
    let mut parts = vec![Subset::EMPTY; n];
    let mut current: Vec<S> = fs.iter().map(|f| f.query(Subset::EMPTY)).collect();
    let mut assigned = Subset::EMPTY;
    let mut steps = Vec::new();

    while assigned != ground.full() {
        let free = ground.full().difference(assigned);
        let cands = batches(free, (d + 1).min(free.len()));
        let mut best: Option<(S, (usize, Subset))> = None;
        let mut best_value = S::zero();
        for (j, f) in fs.iter().enumerate() {
            let values = evaluate(f, parts[j], &cands);
            for (&t, &v) in cands.iter().zip(&values) {
                let gain = v - current[j];
                if beats(gain, (j, t), best) {
                    best = Some((gain, (j, t)));
                    best_value = v;
                }
            }
        }
        let (gain, (j, batch)) = best.expect("free items remain");
        parts[j] = parts[j].union(batch);
        current[j] = best_value;
        assigned = assigned.union(batch);
        steps.push(GreedyStep {
            batch,
            agent: Some(j),
            gain,
        });
    }

    let welfare: S = current.iter().copied().sum();
    let end: u64 = fs.iter().map(|f| f.queries()).sum();
    Ok((
        Allocation { parts, welfare },
        GreedyTrace {
            steps,
            value: welfare,
            queries: end - start,
        },
    ))
}

/// Exact optimal allocation by dynamic programming over item subsets
/// (`O(n·3^m)`); unassigned items are allowed. Needs `m <= 16`.
pub fn brute_force_welfare<S: Scalar, F: SetFunction<S>>(fs: &[F]) -> Result<(Allocation<S>, S)> {
    let ground = common_ground(fs)?;
    let m = ground.size();
    crate::error::require_at_most("brute-force welfare", m, BRUTE_LIMIT)?;
    let tables = fs.iter().map(|f| tabulate(f)).collect::<Result<Vec<_>>>()?;
    let size = ground.subset_count();

    // best[u] over agents 0..j, choice[j][u] = bundle of agent j
    let mut best: Vec<S> = tables[0].clone();
    let mut choice: Vec<Vec<Subset>> = vec![(0..size as u64).map(Subset).collect()];
    for t in &tables[1..] {
        let mut next = vec![S::zero(); size];
        let mut pick = vec![Subset::EMPTY; size];
        for u in ground.subsets() {
            let mut top: Option<(S, Subset)> = None;
            for a in u.subsets() {
                let v = t[a.index()] + best[u.difference(a).index()];
                if top.is_none_or(|(b, _)| v.gt_tol(b)) {
                    top = Some((v, a));
                }
            }
            let (v, a) = top.expect("submask list is nonempty");
            next[u.index()] = v;
            pick[u.index()] = a;
        }
        best = next;
        choice.push(pick);
    }

    let mut parts = vec![Subset::EMPTY; fs.len()];
    let mut left = ground.full();
    for j in (0..fs.len()).rev() {
        let a = choice[j][left.index()];
        parts[j] = a;
        left = left.difference(a);
    }
    let welfare = best[ground.full().index()];
    Ok((Allocation { parts, welfare }, welfare))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{additive, hard_wm_instance, pair_matching, HardWmParams};

    #[test]
    fn additive_agents_split() {
        let fs = vec![additive(&[3.0, 0.0]).unwrap(), additive(&[0.0, 3.0]).unwrap()];
        let (a, _) = batched_greedy_welfare(&fs, 0).unwrap();
        assert_eq!(a.welfare, 6.0);
        assert_eq!(a.parts, vec![Subset::singleton(0), Subset::singleton(1)]);
        assert_eq!(brute_force_welfare(&fs).unwrap().1, 6.0);
    }

    #[test]
    fn matching_copies() {
        let fs = vec![pair_matching::<f64>(2).unwrap(), pair_matching(2).unwrap()];
        let (a, tr) = batched_greedy_welfare(&fs, 1).unwrap();
        assert_eq!(a.welfare, 2.0);
        assert!(a.is_disjoint());
        assert_eq!(a.recompute(&fs), 2.0);
        assert_eq!(tr.steps.len(), 2);
        assert_eq!(brute_force_welfare(&fs).unwrap().1, 2.0);
    }

    #[test]
    fn single_agent_takes_everything() {
        let fs = vec![pair_matching::<f64>(2).unwrap()];
        let (a, _) = batched_greedy_welfare(&fs, 1).unwrap();
        assert_eq!(a.parts[0], Subset::full(4));
        assert_eq!(brute_force_welfare(&fs).unwrap().1, 2.0);
    }

    #[test]
    fn hard_instance_optimum() {
        let p = HardWmParams::blocked(1, 1, 2, 2).unwrap();
        let fs = hard_wm_instance::<f64>(&p).unwrap();
        let (a, w) = brute_force_welfare(&fs).unwrap();
        assert_eq!(w, p.optimum() as f64);
        for (part, r) in a.parts.iter().zip(&p.rs) {
            assert!(r.is_subset_of(*part));
        }
    }
}
