//! Closed-form price-of-anarchy bounds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::approx::harmonic;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    SingleBid,
    Sia,
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mechanism::SingleBid => "single-bid",
            Mechanism::Sia => "sia",
        })
    }
}

impl FromStr for Mechanism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single-bid" => Ok(Mechanism::SingleBid),
            "sia" => Ok(Mechanism::Sia),
            _ => Err(Error::invalid(format!("unknown mechanism {s:?}"))),
        }
    }
}

/// Valuation class a bound is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hierarchy {
    /// Maximum over superadditive-width-`d` functions.
    Saw,
    /// Superadditive functions of supermodular width `d` (and maxima).
    SmwSuperadditive,
    Ch,
    Mph,
}

impl FromStr for Hierarchy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "saw" => Ok(Hierarchy::Saw),
            "smw" | "smw-superadditive" => Ok(Hierarchy::SmwSuperadditive),
            "ch" => Ok(Hierarchy::Ch),
            "mph" => Ok(Hierarchy::Mph),
            _ => Err(Error::invalid(format!("unknown hierarchy {s:?}"))),
        }
    }
}

/// A `(λ, μ)`-smoothness pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessBound {
    pub lambda: f64,
    pub mu: f64,
}

impl SmoothnessBound {
    pub fn poa(&self) -> Result<f64> {
        poa_from_smoothness(*self)
    }
}

/// `max(1, μ) / λ`.
pub fn poa_from_smoothness(b: SmoothnessBound) -> Result<f64> {
    if b.lambda.is_nan() || b.lambda <= 0.0 || !b.mu.is_finite() {
        return Err(Error::invalid("smoothness needs lambda > 0 and finite mu"));
    }
    Ok(b.mu.max(1.0) / b.lambda)
}

fn harmonic_ceil(m: usize, block: usize) -> Result<f64> {
    harmonic(m.div_ceil(block).max(1))
}

/// Upper bound on the coarse-correlated price of anarchy for the given class
/// and mechanism; harmonic indices are rounded up.
pub fn poa_upper_bound(h: Hierarchy, d: usize, m: usize, mech: Mechanism) -> Result<f64> {
    let needs_positive = |d: usize| {
        if d == 0 {
            Err(Error::invalid("d must be at least 1 for this class"))
        } else {
            Ok(d as f64)
        }
    };
    match (h, mech) {
        (Hierarchy::Saw, Mechanism::SingleBid) => {
            let df = needs_positive(d)?;
            Ok(2.0 * df / (1.0 - (-2.0 * df).exp()) * harmonic_ceil(m, 2 * d)?)
        }
        (Hierarchy::Saw, Mechanism::Sia) => {
            let df = needs_positive(d)?;
            Ok(8.0 * df * harmonic_ceil(m, 2 * d)?)
        }
        (Hierarchy::SmwSuperadditive, Mechanism::SingleBid) => {
            let dp = (d + 1) as f64;
            Ok(dp * dp / (1.0 - (-dp).exp()) * harmonic_ceil(m, d + 1)?)
        }
        (Hierarchy::SmwSuperadditive, Mechanism::Sia) => {
            let dp = (d + 1) as f64;
            Ok(2.0 * dp * dp * harmonic_ceil(m, d + 1)?)
        }
        (Hierarchy::Ch, Mechanism::SingleBid) => {
            let df = needs_positive(d)?;
            poa_from_smoothness(SmoothnessBound {
                lambda: (1.0 - (-df).exp()) / df,
                mu: 1.0,
            })
        }
        (Hierarchy::Ch | Hierarchy::Mph, Mechanism::Sia) => Ok(2.0 * needs_positive(d)?),
        (Hierarchy::Mph, Mechanism::SingleBid) => Err(Error::invalid(
            "no single-bid bound is available for the MPH class",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothness_arithmetic() {
        let d = 3.0f64;
        let b = SmoothnessBound { lambda: (1.0 - (-d).exp()) / d, mu: 1.0 };
        assert!((poa_from_smoothness(b).unwrap() - 3.0 / (1.0 - (-3.0f64).exp())).abs() < 1e-12);
        assert_eq!(poa_from_smoothness(SmoothnessBound { lambda: 1.0, mu: 1.0 }).unwrap(), 1.0);
        assert_eq!(poa_from_smoothness(SmoothnessBound { lambda: 0.5, mu: 2.0 }).unwrap(), 4.0);
        assert!(poa_from_smoothness(SmoothnessBound { lambda: 0.0, mu: 1.0 }).is_err());
    }

    #[test]
    fn closed_forms() {
        let v = poa_upper_bound(Hierarchy::Saw, 2, 8, Mechanism::SingleBid).unwrap();
        assert!((v - 4.0 / (1.0 - (-4.0f64).exp()) * 1.5).abs() < 1e-12);
        assert!((v - 6.11).abs() < 0.01);
        assert_eq!(poa_upper_bound(Hierarchy::Mph, 3, 0, Mechanism::Sia).unwrap(), 6.0);
        assert_eq!(poa_upper_bound(Hierarchy::Saw, 2, 8, Mechanism::Sia).unwrap(), 24.0);
        assert!(poa_upper_bound(Hierarchy::Mph, 3, 8, Mechanism::SingleBid).is_err());
    }

    #[test]
    fn monotone_in_parameters() {
        let base = poa_from_smoothness(SmoothnessBound { lambda: 0.4, mu: 1.5 }).unwrap();
        assert!(poa_from_smoothness(SmoothnessBound { lambda: 0.4, mu: 2.0 }).unwrap() >= base);
        assert!(poa_from_smoothness(SmoothnessBound { lambda: 0.3, mu: 1.5 }).unwrap() >= base);
    }
}
