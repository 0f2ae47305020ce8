//! Single-bid and simultaneous first-price auctions: outcome rules, closed
//! form price-of-anarchy bounds, equilibrium enumeration and no-regret play.

mod bounds;
mod game;
mod mechanism;

pub use bounds::{poa_from_smoothness, poa_upper_bound, Hierarchy, Mechanism, SmoothnessBound};
pub use game::{
    enumerate_pure_nash, no_regret_dynamics, Action, AuctionGame, BidGrid, DynamicsReport, Learner,
    ModalAction, PureNash, NASH_LIMIT,
};
pub use mechanism::{sia_outcome, single_bid_outcome, AuctionOutcome, AUCTION_LIMIT};
