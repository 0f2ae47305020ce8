//! Pointwise approximation by constraint-homogeneous (CH) functions.
//!
//! The target `f` is restricted to `2^S`, `S` is split greedily into blocks,
//! and for every union `U` of whole blocks the largest per-item value `f̂`
//! keeping the CH function on `U` below `f` is computed exactly. The best
//! resulting ratio `f(S) / g(S)` is then re-verified from scratch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{require_at_most, Error, Result};
use crate::scalar::Scalar;
use crate::setfn::{tabulate, ChFunction, MaxFunction, SetFunction};
use crate::subset::Subset;
use crate::widths::{superadditive_width, supermodular_width};

const PARTITION_LIMIT: usize = 14;
const VERIFY_LIMIT: usize = 16;
const SEARCH_LIMIT: usize = 12;

/// `H_i = Σ_{k ≤ i} 1/k` in the scalar type (exact for rationals).
pub fn harmonic_in<S: Scalar>(i: usize) -> Result<S> {
    if i == 0 {
        return Err(Error::invalid("harmonic numbers start at i = 1"));
    }
    Ok((1..=i).map(|k| S::one() / S::from_count(k)).sum())
}

pub fn harmonic(i: usize) -> Result<f64> {
    harmonic_in::<f64>(i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxMode {
    /// Superadditive width `d`, blocks of size `2d`.
    Saw,
    /// Superadditive with supermodular width `d`, blocks of size `d + 1`.
    #[serde(rename = "smw")]
    SmwSuperadditive,
}

impl ApproxMode {
    pub fn block_bound(self, d: usize) -> usize {
        match self {
            ApproxMode::Saw => 2 * d.max(1),
            ApproxMode::SmwSuperadditive => d + 1,
        }
    }

    /// Guaranteed ratio for a target of `size` items.
    pub fn guarantee<S: Scalar>(self, d: usize, size: usize) -> Result<S> {
        let b = self.block_bound(d);
        let lead = match self {
            ApproxMode::Saw => S::from_count(2),
            ApproxMode::SmwSuperadditive => S::from_count(d + 1),
        };
        Ok(lead * harmonic_in::<S>(size.div_ceil(b).max(1))?)
    }
}

impl fmt::Display for ApproxMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ApproxMode::Saw => "saw",
            ApproxMode::SmwSuperadditive => "smw",
        })
    }
}

impl FromStr for ApproxMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "saw" => Ok(ApproxMode::Saw),
            "smw" | "smw-superadditive" => Ok(ApproxMode::SmwSuperadditive),
            _ => Err(Error::invalid(format!("unknown approximation mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockPartition<S> {
    pub blocks: Vec<Subset>,
    pub block_bound: usize,
    pub values: Vec<S>,
}

impl<S: Scalar> BlockPartition<S> {
    pub fn cover(&self) -> Subset {
        self.blocks.iter().fold(Subset::EMPTY, |a, &b| a.union(b))
    }

    /// Whether `mask` is a union of whole blocks.
    pub fn is_aligned(&self, mask: Subset) -> bool {
        mask.is_subset_of(self.cover())
            && self
                .blocks
                .iter()
                .all(|&b| b.is_subset_of(mask) || b.is_disjoint(mask))
    }

    /// Re-checks that each block maximizes `f` among the admissible
    /// candidates left at its step.
    pub fn check_greedy<F: SetFunction<S> + ?Sized>(&self, f: &F) -> bool {
        let mut left = self.cover();
        for (&b, &v) in self.blocks.iter().zip(&self.values) {
            if b.len() > self.block_bound || !b.is_subset_of(left) {
                return false;
            }
            let beaten = (1..=self.block_bound)
                .flat_map(|j| left.subsets_of_size(j))
                .any(|q| f.value(q).gt_tol(v));
            if beaten {
                return false;
            }
            left = left.difference(b);
        }
        left.is_empty()
    }
}

/// Greedy split of `within` into blocks of at most `bound` items: each step
/// takes a remaining set with the largest value, preferring more items, then
/// the smaller mask. Needs `m <= 14`.
pub fn greedy_partition_of<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    within: Subset,
    bound: usize,
) -> Result<BlockPartition<S>> {
    require_at_most("greedy block partition", f.size(), PARTITION_LIMIT)?;
    f.ground().check(within)?;
    if bound == 0 {
        return Err(Error::invalid("block bound must be positive"));
    }
    let mut left = within;
    let mut blocks = Vec::new();
    let mut values = Vec::new();
    while !left.is_empty() {
        let mut best: Option<(S, Subset)> = None;
        for q in (1..=bound).flat_map(|j| left.subsets_of_size(j)) {
            let v = f.query(q);
            let better = match best {
                None => true,
                Some((bv, bq)) => {
                    v.gt_tol(bv)
                        || (!bv.gt_tol(v) && (q.len() > bq.len() || (q.len() == bq.len() && q < bq)))
                }
            };
            if better {
                best = Some((v, q));
            }
        }
        let (v, q) = best.expect("left is nonempty");
        blocks.push(q);
        values.push(v);
        left = left.difference(q);
    }
    Ok(BlockPartition {
        blocks,
        block_bound: bound,
        values,
    })
}

/// Greedy partition of the whole ground set.
pub fn greedy_partition<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    bound: usize,
) -> Result<BlockPartition<S>> {
    greedy_partition_of(f, f.ground().full(), bound)
}

/// CH function over the blocks inside `union`, with per-item value
/// `f(cover) / (beta·|union|)` where `cover` is the partitioned set.
pub fn ch_candidate<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    partition: &BlockPartition<S>,
    union: Subset,
    beta: S,
) -> Result<ChFunction<S>> {
    if union.is_empty() {
        return Err(Error::invalid("candidate needs at least one block"));
    }
    if !partition.is_aligned(union) {
        return Err(Error::invalid(format!("{union} is not a union of blocks")));
    }
    if !beta.is_positive() {
        return Err(Error::invalid("beta must be positive"));
    }
    let base = f.query(partition.cover()) / (beta * S::from_count(union.len()));
    let blocks = partition
        .blocks
        .iter()
        .copied()
        .filter(|b| b.is_subset_of(union))
        .collect();
    ChFunction::new(f.size(), base, blocks, partition.block_bound)
}

/// `beta·g(S) >= f(S)` and `g <= f` everywhere, both up to the tolerance.
/// Needs `m <= 16`.
pub fn verify_pointwise<S: Scalar, F, G>(f: &F, g: &G, target: Subset, beta: S) -> Result<bool>
where
    F: SetFunction<S> + ?Sized,
    G: SetFunction<S> + ?Sized,
{
    require_at_most("pointwise verification", f.size(), VERIFY_LIMIT)?;
    if g.ground() != f.ground() {
        return Err(Error::invalid("functions live on different ground sets"));
    }
    f.ground().check(target)?;
    if f.value(target).gt_tol(beta * g.value(target)) {
        return Ok(false);
    }
    Ok(f.ground().subsets().all(|t| g.value(t).le_tol(f.value(t))))
}

#[derive(Debug, Clone, Serialize)]
pub struct PointwiseCertificate<S> {
    pub target: Subset,
    pub mode: ApproxMode,
    pub d: usize,
    pub beta: S,
    pub guarantee: S,
    pub verified: bool,
    #[serde(skip)]
    pub ch: ChFunction<S>,
    pub blocks: Vec<Subset>,
    pub base: S,
}

/// Block-membership pattern of `t`: bit `i` set when block `i` lies in `t`.
fn pattern(blocks: &[Subset], t: Subset) -> usize {
    blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_subset_of(t))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Searches CH approximators of `f` at `target` over block-aligned unions.
/// Needs `m <= 12`.
pub fn find_pointwise_approximator<S: Scalar, F: SetFunction<S> + ?Sized>(
    f: &F,
    d: usize,
    target: Subset,
    mode: ApproxMode,
) -> Result<PointwiseCertificate<S>> {
    let m = f.size();
    require_at_most("pointwise approximation search", m, SEARCH_LIMIT)?;
    f.ground().check(target)?;
    let bound = mode.block_bound(d);
    let fs = f.query(target);
    let zero_cert = |guarantee: S| -> Result<PointwiseCertificate<S>> {
        let ch = ChFunction::new(m, S::zero(), Vec::new(), bound)?;
        Ok(PointwiseCertificate {
            target,
            mode,
            d,
            beta: S::one(),
            guarantee,
            verified: verify_pointwise(f, &ch, target, S::one())?,
            blocks: Vec::new(),
            base: S::zero(),
            ch,
        })
    };
    if target.is_empty() {
        return zero_cert(S::one());
    }
    let guarantee = mode.guarantee::<S>(d, target.len())?;
    if !fs.gt_tol(S::zero()) {
        return zero_cert(guarantee);
    }

    let part = greedy_partition_of(f, target, bound)?;
    let blocks = &part.blocks;
    let h = blocks.len();
    let table = tabulate(f)?;
    let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let weight = |p: usize| -> usize { (0..h).filter(|i| p >> i & 1 == 1).map(|i| sizes[i]).sum() };

    // smallest f over all T with a given full block pattern
    let mut min_by_pattern: Vec<Option<S>> = vec![None; 1 << h];
    for t in f.ground().subsets() {
        let p = pattern(blocks, t);
        let v = table[t.index()];
        min_by_pattern[p] = Some(min_by_pattern[p].map_or(v, |c| c.min_of(v)));
    }

    let mut best: Option<(S, usize, S)> = None; // (beta, union pattern, base)
    for u in 1usize..1 << h {
        // largest base keeping the CH function on u below f
        let mut limit: Option<S> = None;
        for (p_all, v) in min_by_pattern.iter().enumerate() {
            let Some(v) = *v else { continue };
            let w = weight(p_all & u);
            if w > 0 {
                let r = v / S::from_count(w);
                limit = Some(limit.map_or(r, |c| c.min_of(r)));
            }
        }
        let base = limit.expect("the full pattern is always present");
        if !base.is_positive() {
            continue;
        }
        let beta = fs / (base * S::from_count(weight(u)));
        if best.is_none_or(|(b, _, _)| beta < b) {
            best = Some((beta, u, base));
        }
    }

    let (beta, u, base) = match best {
        Some(x) => x,
        None => return Err(Error::Internal("no block union admits a positive scaling".into())),
    };
    let chosen: Vec<Subset> = (0..h).filter(|i| u >> i & 1 == 1).map(|i| blocks[i]).collect();
    let ch = ChFunction::new(m, base, chosen.clone(), bound)?;
    let verified = verify_pointwise(f, &ch, target, beta)? && beta.le_tol(guarantee);
    if !verified && in_class(f, d, mode)? {
        return Err(Error::Internal(format!(
            "no verified approximator at {target} (best beta {beta}, guarantee {guarantee})"
        )));
    }
    Ok(PointwiseCertificate {
        target,
        mode,
        d,
        beta,
        guarantee,
        verified,
        ch,
        blocks: chosen,
        base,
    })
}

/// Whether `f` is certified to meet the mode's width precondition.
fn in_class<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F, d: usize, mode: ApproxMode) -> Result<bool> {
    match mode {
        ApproxMode::Saw => Ok(superadditive_width(f)?.0 <= d.max(1)),
        ApproxMode::SmwSuperadditive => {
            Ok(supermodular_width(f)?.0 <= d && crate::setfn::is_superadditive(f)?)
        }
    }
}

/// Certificate for a maximum of functions, built from the component that
/// attains the maximum at `target` and re-verified against the maximum.
pub fn find_for_max<S: Scalar>(
    f: &MaxFunction<S>,
    d: usize,
    target: Subset,
    mode: ApproxMode,
) -> Result<PointwiseCertificate<S>> {
    let j = f.argmax(target);
    let mut cert = find_pointwise_approximator(f.components()[j].as_ref(), d, target, mode)?;
    cert.verified = cert.verified && verify_pointwise(f, &cert.ch, target, cert.beta)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{additive, pair_matching, symmetric_two_level};

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), 1.0);
        assert!((harmonic(3).unwrap() - 11.0 / 6.0).abs() < 1e-12);
        assert!((harmonic(6).unwrap() - 2.45).abs() < 1e-12);
        assert!(harmonic(0).is_err());
        let exact: crate::Rational = harmonic_in(3).unwrap();
        assert_eq!(exact, crate::Rational::new(11, 6));
    }

    #[test]
    fn partitions() {
        let f = additive(&[1.0, 4.0, 2.0]).unwrap();
        let p = greedy_partition(&f, 1).unwrap();
        assert_eq!(p.blocks, vec![Subset::singleton(1), Subset::singleton(2), Subset::singleton(0)]);
        assert!(p.check_greedy(&f));

        let g = pair_matching::<f64>(2).unwrap();
        let p = greedy_partition(&g, 2).unwrap();
        assert_eq!(p.blocks, vec![Subset::from_elements([0, 2]), Subset::from_elements([1, 3])]);

        let p = greedy_partition(&g, 4).unwrap();
        assert_eq!(p.blocks, vec![Subset::full(4)]);
    }

    #[test]
    fn candidates() {
        let g = pair_matching::<f64>(2).unwrap();
        let p = greedy_partition(&g, 2).unwrap();
        let all = ch_candidate(&g, &p, Subset::full(4), 1.0).unwrap();
        assert_eq!(all.value(Subset::full(4)), 2.0);
        let half = ch_candidate(&g, &p, p.blocks[0], 2.0).unwrap();
        assert_eq!(half.base(), 2.0 / (2.0 * 2.0));
        assert!(ch_candidate(&g, &p, Subset::EMPTY, 1.0).is_err());
        assert!(ch_candidate(&g, &p, Subset::singleton(0), 1.0).is_err());
    }

    #[test]
    fn verification() {
        let f = pair_matching::<f64>(2).unwrap();
        assert!(verify_pointwise(&f, &f, Subset::full(4), 1.0).unwrap());
        let zero = ChFunction::new(4, 0.0, vec![], 2).unwrap();
        assert!(!verify_pointwise(&f, &zero, Subset::full(4), 1e6).unwrap());
    }

    #[test]
    fn search_on_fixtures() {
        let f = pair_matching::<f64>(2).unwrap();
        let c = find_pointwise_approximator(&f, 2, Subset::full(4), ApproxMode::Saw).unwrap();
        assert!(c.verified && c.beta <= 2.0 + 1e-9);

        let g = symmetric_two_level::<f64>(6).unwrap();
        let c = find_pointwise_approximator(&g, 1, Subset::full(6), ApproxMode::Saw).unwrap();
        assert!(c.verified && c.beta <= 11.0 / 3.0 + 1e-9, "beta {}", c.beta);

        let ch = ChFunction::new(4, 1.5f64, vec![Subset(0b0011), Subset(0b1100)], 2).unwrap();
        let c = find_pointwise_approximator(&ch, 1, Subset::full(4), ApproxMode::Saw).unwrap();
        assert!((c.beta - 1.0).abs() < 1e-12);
    }
}
