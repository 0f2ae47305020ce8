//! Named functions: separation fixtures, lower-bound families, auction
//! instances and seeded random corpora. Items are 0-indexed throughout.

mod fixtures;
mod hard;
mod plane;
mod random;

pub use fixtures::{additive, all_pairs, pair_matching, single_minded, symmetric_two_level, threshold_any_two};
pub use hard::{
    hard_cm_instance, hard_wm_instance, HardCmParams, HardConstrained, HardWelfare, HardWmFormula,
    HardWmParams, TwoClass,
};
pub use plane::{projective_plane_instance, ProjectivePlane};
pub use random::{corpus, fixture_corpus, random_additive, random_monotone, RandomStyle, RANDOM_MAX_M};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::setfn::HypergraphFunction;
use crate::subset::Subset;

/// Two bidders over `m = d + 1` items: bidder 0 values each pair `{0, i}`
/// at 1, bidder 1 values item 0 alone at `d/(d+1) + eps`.
pub fn single_bid_pos_instance<S: Scalar>(d: usize, eps: S) -> Result<Vec<HypergraphFunction<S>>> {
    if d == 0 {
        return Err(Error::invalid("single_bid_pos_instance needs d >= 1"));
    }
    if !eps.is_positive() {
        return Err(Error::invalid("eps must be positive"));
    }
    let m = d + 1;
    let f1 = HypergraphFunction::new(m, (1..m).map(|i| (Subset::from_elements([0, i]), S::one())))?;
    let f2 = HypergraphFunction::new(
        m,
        [(Subset::singleton(0), S::from_count(d) / S::from_count(d + 1) + eps)],
    )?;
    Ok(vec![f1, f2])
}
