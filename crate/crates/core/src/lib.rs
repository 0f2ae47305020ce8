//! Complementarity widths, batched greedy maximization and simple-auction
//! experiments for set functions.
//!
//! All value-level code is generic over [`Scalar`]; the aliases at the
//! bottom of this file fix the common instantiations.

pub mod approx;
pub mod auctions;
pub mod error;
pub mod format;
pub mod instances;
pub mod maximize;
pub mod scalar;
pub mod setfn;
pub mod subset;
pub mod widths;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use setfn::{
    ChFunction, ExplicitFunction, HypergraphFunction, MaxFunction, QueryCounter, SetFunction,
    SymmetricFunction,
};
pub use subset::{GroundSet, Subset};

/// Exact rational values.
pub type Rational = num_rational::Ratio<i128>;

pub type ExplicitF64 = ExplicitFunction<f64>;
pub type ExplicitF32 = ExplicitFunction<f32>;
pub type ExplicitRational = ExplicitFunction<Rational>;
pub type HypergraphF64 = HypergraphFunction<f64>;
pub type HypergraphRational = HypergraphFunction<Rational>;
pub type SymmetricF64 = SymmetricFunction<f64>;
pub type ChF64 = ChFunction<f64>;
