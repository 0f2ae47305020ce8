//! Finite auction games: bid grids, pure-Nash enumeration and no-regret
//! dynamics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maximize::brute_force_welfare;
use crate::setfn::{ExplicitFunction, SetFunction};
use crate::subset::Subset;

use super::mechanism::{AuctionOutcome, Valuations};
use super::Mechanism;

const TOL: f64 = 1e-9;
const DEFAULT_LEVELS: usize = 64;
/// Largest number of stored payoff entries (`profiles × (n + 1)`).
const TABLE_LIMIT: u128 = 1 << 23;
/// Largest profile count for exhaustive equilibrium search.
pub const NASH_LIMIT: u128 = 10_000_000;

/// Allowed per-item bid levels, strictly increasing and starting at 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BidGrid {
    levels: Vec<f64>,
    delta: f64,
}

impl BidGrid {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if levels.first() != Some(&0.0) {
            return Err(Error::invalid("bid grid must start at 0"));
        }
        if levels.iter().any(|l| !l.is_finite()) || levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("bid levels must be finite and strictly increasing"));
        }
        let delta = levels
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max);
        Ok(BidGrid { levels, delta })
    }

    /// `0, δ, 2δ, …` up to `top`.
    pub fn uniform(delta: f64, top: f64) -> Result<Self> {
        if delta.is_nan() || delta <= 0.0 || top.is_nan() || top < 0.0 || !top.is_finite() {
            return Err(Error::invalid("grid needs delta > 0 and a finite top >= 0"));
        }
        let steps = (top / delta + 1e-9).floor() as usize;
        if steps > 1_000_000 {
            return Err(Error::invalid("grid has too many levels"));
        }
        let mut grid = Self::new((0..=steps).map(|k| k as f64 * delta).collect())?;
        if steps > 0 {
            grid.delta = delta;
        }
        Ok(grid)
    }

    /// Largest per-item average value any bidder has for any nonempty set.
    pub fn top_for<F: SetFunction<f64>>(valuations: &[F]) -> Result<f64> {
        let v = Valuations::new(valuations)?;
        Ok(v.tables
            .iter()
            .flat_map(|t| {
                v.ground
                    .subsets()
                    .skip(1)
                    .map(move |s| t[s.index()] / s.len() as f64)
            })
            .fold(0.0, f64::max))
    }

    /// Default grid: up to [`BidGrid::top_for`], step `max(0.01·top, top/63)`.
    pub fn default_for<F: SetFunction<f64>>(valuations: &[F]) -> Result<Self> {
        let top = Self::top_for(valuations)?;
        if top <= 0.0 {
            return Self::new(vec![0.0]);
        }
        Self::uniform((0.01 * top).max(top / (DEFAULT_LEVELS - 1) as f64), top)
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Largest gap between consecutive levels.
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// One bidder's move.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum Action {
    /// Single-bid: one per-item price.
    Bid { level: f64 },
    /// Simultaneous auctions: `level` on every item of `support`, 0 elsewhere.
    Bundle { support: Subset, level: f64 },
}

/// A finite normal-form auction game.
#[derive(Debug, Clone)]
pub struct AuctionGame {
    mechanism: Mechanism,
    vals: Valuations,
    actions: Vec<Vec<Action>>,
    strides: Vec<u128>,
    profiles: u128,
    table: Option<Vec<f64>>,
}

impl AuctionGame {
    /// Single-bid auction with every grid level as an action.
    pub fn single_bid<F: SetFunction<f64>>(valuations: &[F], grid: &BidGrid) -> Result<Self> {
        let vals = Valuations::new(valuations)?;
        let acts: Vec<Action> = grid.levels().iter().map(|&level| Action::Bid { level }).collect();
        Self::build(Mechanism::SingleBid, vals.clone(), vec![acts; vals.n()])
    }

    /// Simultaneous first-price auctions where bidder `i` bids one positive
    /// grid level uniformly on one of `supports[i]` (or everything when the
    /// list is empty), or bids 0 everywhere.
    pub fn sia<F: SetFunction<f64>>(valuations: &[F], grid: &BidGrid, supports: &[Vec<Subset>]) -> Result<Self> {
        let vals = Valuations::new(valuations)?;
        if !supports.is_empty() && supports.len() != vals.n() {
            return Err(Error::invalid("give one support list per bidder"));
        }
        let full = vals.ground.full();
        let mut actions = Vec::with_capacity(vals.n());
        for i in 0..vals.n() {
            let own: Vec<Subset> = match supports.get(i) {
                Some(list) if !list.is_empty() => list.clone(),
                _ => vec![full],
            };
            let mut acts = vec![Action::Bundle {
                support: Subset::EMPTY,
                level: 0.0,
            }];
            for &support in &own {
                vals.ground.check(support)?;
                if support.is_empty() {
                    continue;
                }
                for &level in grid.levels().iter().filter(|&&l| l > 0.0) {
                    acts.push(Action::Bundle { support, level });
                }
            }
            actions.push(acts);
        }
        Self::build(Mechanism::Sia, vals, actions)
    }

    fn build(mechanism: Mechanism, vals: Valuations, actions: Vec<Vec<Action>>) -> Result<Self> {
        if actions.iter().any(|a| a.is_empty()) {
            return Err(Error::invalid("every bidder needs at least one action"));
        }
        let mut strides = Vec::with_capacity(actions.len());
        let mut profiles: u128 = 1;
        for a in &actions {
            strides.push(profiles);
            profiles = profiles.saturating_mul(a.len() as u128);
        }
        let mut game = AuctionGame {
            mechanism,
            vals,
            actions,
            strides,
            profiles,
            table: None,
        };
        let n = game.n() as u128;
        if profiles.saturating_mul(n + 1) <= TABLE_LIMIT {
            let width = game.n() + 1;
            let mut table = vec![0.0; profiles as usize * width];
            table
                .par_chunks_mut(width)
                .enumerate()
                .for_each(|(p, row)| {
                    let o = game.outcome_of(&game.decode(p as u128));
                    row[..width - 1].copy_from_slice(&o.utilities);
                    row[width - 1] = o.welfare;
                });
            game.table = Some(table);
        }
        Ok(game)
    }

    pub fn mechanism(&self) -> Mechanism {
        self.mechanism
    }

    pub fn n(&self) -> usize {
        self.actions.len()
    }

    pub fn m(&self) -> usize {
        self.vals.ground.size()
    }

    pub fn actions(&self, i: usize) -> &[Action] {
        &self.actions[i]
    }

    pub fn profile_count(&self) -> u128 {
        self.profiles
    }

    fn encode(&self, profile: &[usize]) -> u128 {
        profile.iter().zip(&self.strides).map(|(&a, &s)| a as u128 * s).sum()
    }

    fn decode(&self, mut p: u128) -> Vec<usize> {
        self.actions
            .iter()
            .map(|a| {
                let k = a.len() as u128;
                let x = (p % k) as usize;
                p /= k;
                x
            })
            .collect()
    }

    /// Outcome of a profile of action indices.
    pub fn outcome_of(&self, profile: &[usize]) -> AuctionOutcome {
        let acts: Vec<Action> = profile.iter().enumerate().map(|(i, &a)| self.actions[i][a]).collect();
        match self.mechanism {
            Mechanism::SingleBid => {
                let bids: Vec<f64> = acts
                    .iter()
                    .map(|a| match *a {
                        Action::Bid { level } => level,
                        Action::Bundle { level, .. } => level,
                    })
                    .collect();
                self.vals.single_bid(&bids)
            }
            Mechanism::Sia => {
                let m = self.m();
                let bids: Vec<Vec<f64>> = acts
                    .iter()
                    .map(|a| match *a {
                        Action::Bundle { support, level } => {
                            (0..m).map(|j| if support.contains(j) { level } else { 0.0 }).collect()
                        }
                        Action::Bid { level } => vec![level; m],
                    })
                    .collect();
                self.vals.sia(&bids)
            }
        }
    }

    /// Utility of player `i` and the welfare at encoded profile `p`.
    fn payoff(&self, p: u128, i: usize) -> f64 {
        match &self.table {
            Some(t) => t[p as usize * (self.n() + 1) + i],
            None => self.outcome_of(&self.decode(p)).utilities[i],
        }
    }

    fn welfare(&self, p: u128) -> f64 {
        match &self.table {
            Some(t) => t[p as usize * (self.n() + 1) + self.n()],
            None => self.outcome_of(&self.decode(p)).welfare,
        }
    }

    fn is_pure_nash(&self, p: u128, profile: &[usize]) -> bool {
        (0..self.n()).all(|i| {
            let here = self.payoff(p, i);
            let base = p - profile[i] as u128 * self.strides[i];
            (0..self.actions[i].len()).all(|a| self.payoff(base + a as u128 * self.strides[i], i) <= here + TOL)
        })
    }

    /// Optimal welfare over all allocations (not only those the game reaches).
    pub fn optimum(&self) -> Result<f64> {
        let m = self.m();
        let fs = self
            .vals
            .tables
            .iter()
            .map(|t| ExplicitFunction::new(m, t.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(brute_force_welfare(&fs)?.1)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PureNash {
    pub profile: Vec<usize>,
    pub actions: Vec<Action>,
    pub outcome: AuctionOutcome,
}

/// Every pure profile in which no bidder gains more than the tolerance by a
/// unilateral switch, sorted by welfare (highest first).
pub fn enumerate_pure_nash(game: &AuctionGame) -> Result<Vec<PureNash>> {
    if game.profiles > NASH_LIMIT {
        return Err(Error::ResourceLimit {
            what: "pure Nash enumeration (profiles)",
            limit: NASH_LIMIT as usize,
            m: usize::try_from(game.profiles).unwrap_or(usize::MAX),
        });
    }
    let mut found: Vec<PureNash> = (0..game.profiles as u64)
        .into_par_iter()
        .filter_map(|p| {
            let p = p as u128;
            let profile = game.decode(p);
            game.is_pure_nash(p, &profile).then(|| PureNash {
                actions: profile.iter().enumerate().map(|(i, &a)| game.actions[i][a]).collect(),
                outcome: game.outcome_of(&profile),
                profile,
            })
        })
        .collect();
    found.sort_by(|a, b| b.outcome.welfare.total_cmp(&a.outcome.welfare));
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Learner {
    #[default]
    RegretMatching,
    MultiplicativeWeights,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModalAction {
    pub action: Action,
    pub frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DynamicsReport {
    pub mechanism: Mechanism,
    pub learner: Learner,
    pub rounds: u64,
    pub seed: u64,
    /// Average external regret per round, clamped at 0.
    pub regrets: Vec<f64>,
    pub avg_welfare: f64,
    pub opt: f64,
    /// `opt / avg_welfare`; absent when the average welfare is 0.
    pub empirical_poa: Option<f64>,
    pub modal_actions: Vec<ModalAction>,
}

fn sample(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return rng.gen_range(0..weights.len());
    }
    let mut x = rng.gen::<f64>() * total;
    for (a, &w) in weights.iter().enumerate() {
        if x < w {
            return a;
        }
        x -= w;
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

/// Plays the game for `rounds` rounds with one learner per bidder and
/// reports the time-averaged play. Deterministic in `seed`.
pub fn no_regret_dynamics(game: &AuctionGame, rounds: u64, seed: u64, learner: Learner) -> Result<DynamicsReport> {
    if rounds == 0 {
        return Err(Error::invalid("need at least one round"));
    }
    let n = game.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes: Vec<usize> = (0..n).map(|i| game.actions[i].len()).collect();
    let mut cf: Vec<Vec<f64>> = sizes.iter().map(|&k| vec![0.0; k]).collect();
    let mut realized = vec![0.0; n];
    let mut counts: Vec<Vec<u64>> = sizes.iter().map(|&k| vec![0; k]).collect();
    let mut welfare_sum = 0.0;

    let scale = match &game.table {
        Some(t) => {
            let (lo, hi) = t.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
            (hi - lo).max(1e-12)
        }
        None => 1.0,
    };

    let mut weights: Vec<Vec<f64>> = sizes.iter().map(|&k| vec![1.0; k]).collect();
    let mut profile = vec![0usize; n];
    for _ in 0..rounds {
        for i in 0..n {
            match learner {
                Learner::RegretMatching => {
                    for (w, c) in weights[i].iter_mut().zip(&cf[i]) {
                        *w = (c - realized[i]).max(0.0);
                    }
                }
                Learner::MultiplicativeWeights => {
                    let eta = ((sizes[i] as f64).ln().max(1e-12) / rounds as f64).sqrt() / scale;
                    let top = cf[i].iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    for (w, c) in weights[i].iter_mut().zip(&cf[i]) {
                        *w = (eta * (c - top)).exp();
                    }
                }
            }
            profile[i] = sample(&mut rng, &weights[i]);
        }
        let p = game.encode(&profile);
        welfare_sum += game.welfare(p);
        for i in 0..n {
            counts[i][profile[i]] += 1;
            realized[i] += game.payoff(p, i);
            let base = p - profile[i] as u128 * game.strides[i];
            for (a, c) in cf[i].iter_mut().enumerate() {
                *c += game.payoff(base + a as u128 * game.strides[i], i);
            }
        }
    }

    let t = rounds as f64;
    let regrets = (0..n)
        .map(|i| {
            let best = cf[i].iter().copied().fold(f64::NEG_INFINITY, f64::max);
            ((best - realized[i]) / t).max(0.0)
        })
        .collect();
    let modal_actions = (0..n)
        .map(|i| {
            let (a, &c) = counts[i]
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))
                .expect("nonempty action set");
            ModalAction {
                action: game.actions[i][a],
                frequency: c as f64 / t,
            }
        })
        .collect();
    let avg_welfare = welfare_sum / t;
    let opt = game.optimum()?;
    Ok(DynamicsReport {
        mechanism: game.mechanism,
        learner,
        rounds,
        seed,
        regrets,
        avg_welfare,
        opt,
        empirical_poa: (avg_welfare > 0.0).then(|| opt / avg_welfare),
        modal_actions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{additive, single_bid_pos_instance};

    #[test]
    fn grid_validation() {
        assert!(BidGrid::new(vec![0.1, 0.2]).is_err());
        assert!(BidGrid::new(vec![0.0, 0.2, 0.2]).is_err());
        let g = BidGrid::uniform(0.25, 1.0).unwrap();
        assert_eq!(g.levels(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(g.delta(), 0.25);
    }

    #[test]
    fn single_bidder_zero_bid_is_equilibrium() {
        let fs = vec![additive(&[1.0, 2.0]).unwrap()];
        let grid = BidGrid::uniform(0.5, 2.0).unwrap();
        let game = AuctionGame::single_bid(&fs, &grid).unwrap();
        let eq = enumerate_pure_nash(&game).unwrap();
        assert!(eq.iter().any(|e| e.profile == vec![0] && e.outcome.allocation.parts[0] == Subset(0b11)));
    }

    #[test]
    fn single_bidder_regret_vanishes() {
        let fs = vec![additive(&[1.0, 2.0]).unwrap()];
        let grid = BidGrid::uniform(0.5, 2.0).unwrap();
        let game = AuctionGame::single_bid(&fs, &grid).unwrap();
        let r = no_regret_dynamics(&game, 5000, 3, Learner::RegretMatching).unwrap();
        assert!(r.regrets[0] < 0.01, "{:?}", r.regrets);
        let again = no_regret_dynamics(&game, 5000, 3, Learner::RegretMatching).unwrap();
        assert_eq!(r, again);
        let mw = no_regret_dynamics(&game, 5000, 3, Learner::MultiplicativeWeights).unwrap();
        assert!(mw.regrets[0] < 0.1);
    }

    #[test]
    fn pos_equilibria_are_individually_rational() {
        let fs = single_bid_pos_instance(2, 0.1).unwrap();
        let grid = BidGrid::uniform(0.05, 0.8).unwrap();
        let game = AuctionGame::single_bid(&fs, &grid).unwrap();
        let eq = enumerate_pure_nash(&game).unwrap();
        assert!(!eq.is_empty());
        for e in &eq {
            assert!(e.outcome.utilities.iter().all(|&u| u >= -1e-9));
        }
    }
}
