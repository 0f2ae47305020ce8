//! Outcome rules of the two auction formats.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maximize::Allocation;
use crate::setfn::{tabulate, SetFunction};
use crate::subset::{GroundSet, Subset};

const TOL: f64 = 1e-9;

/// Largest ground set the auction code tabulates.
pub const AUCTION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuctionOutcome {
    pub allocation: Allocation<f64>,
    pub payments: Vec<f64>,
    pub utilities: Vec<f64>,
    pub welfare: f64,
}

/// Value tables of every bidder over a shared ground set.
#[derive(Debug, Clone)]
pub(crate) struct Valuations {
    pub ground: GroundSet,
    pub tables: Vec<Vec<f64>>,
}

impl Valuations {
    pub fn new<F: SetFunction<f64>>(fs: &[F]) -> Result<Self> {
        let first = fs.first().ok_or_else(|| Error::invalid("need at least one bidder"))?;
        let ground = first.ground();
        if fs.iter().any(|f| f.ground() != ground) {
            return Err(Error::invalid("bidders must share one ground set"));
        }
        crate::error::require_at_most("auction valuations", ground.size(), AUCTION_LIMIT)?;
        let tables = fs.iter().map(|f| tabulate(f)).collect::<Result<_>>()?;
        Ok(Valuations { ground, tables })
    }

    pub fn n(&self) -> usize {
        self.tables.len()
    }

    fn finish(&self, parts: Vec<Subset>, payments: Vec<f64>) -> AuctionOutcome {
        let values: Vec<f64> = parts
            .iter()
            .zip(&self.tables)
            .map(|(p, t)| t[p.index()])
            .collect();
        let utilities = values.iter().zip(&payments).map(|(v, p)| v - p).collect();
        let welfare = values.iter().sum();
        AuctionOutcome {
            allocation: Allocation { parts, welfare },
            payments,
            utilities,
            welfare,
        }
    }

    /// Bidders in descending bid order (lower index first on ties) each buy
    /// a surplus-maximizing available set at their per-item bid.
    pub fn single_bid(&self, bids: &[f64]) -> AuctionOutcome {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| bids[b].total_cmp(&bids[a]).then(a.cmp(&b)));
        let mut available = self.ground.full();
        let mut parts = vec![Subset::EMPTY; n];
        let mut payments = vec![0.0; n];
        for i in order {
            let b = bids[i];
            let t = &self.tables[i];
            let mut best: Option<(f64, Subset)> = None;
            for s in available.subsets().skip(1) {
                let surplus = t[s.index()] - b * s.len() as f64;
                let better = match best {
                    None => true,
                    Some((bs, bset)) => {
                        surplus > bs + TOL
                            || (surplus >= bs - TOL
                                && (s.len(), s) < (bset.len(), bset))
                    }
                };
                if better {
                    best = Some((surplus, s));
                }
            }
            if let Some((surplus, s)) = best {
                if surplus >= -TOL {
                    parts[i] = s;
                    payments[i] = b * s.len() as f64;
                    available = available.difference(s);
                }
            }
        }
        self.finish(parts, payments)
    }

    /// One first-price auction per item; ties go to the lower index.
    pub fn sia(&self, bids: &[Vec<f64>]) -> AuctionOutcome {
        let n = self.n();
        let mut parts = vec![Subset::EMPTY; n];
        let mut payments = vec![0.0; n];
        for j in 0..self.ground.size() {
            let mut winner = 0;
            for (i, b) in bids.iter().enumerate().skip(1) {
                if b[j] > bids[winner][j] {
                    winner = i;
                }
            }
            parts[winner] = parts[winner].with(j);
            payments[winner] += bids[winner][j];
        }
        self.finish(parts, payments)
    }
}

/// Single-bid auction outcome for one bid per bidder.
pub fn single_bid_outcome<F: SetFunction<f64>>(valuations: &[F], bids: &[f64]) -> Result<AuctionOutcome> {
    let v = Valuations::new(valuations)?;
    if bids.len() != v.n() {
        return Err(Error::invalid(format!("{} bids for {} bidders", bids.len(), v.n())));
    }
    if bids.iter().any(|b| !b.is_finite() || *b < 0.0) {
        return Err(Error::invalid("bids must be finite and nonnegative"));
    }
    Ok(v.single_bid(bids))
}

/// Simultaneous first-price outcome for an `n × m` bid matrix.
pub fn sia_outcome<F: SetFunction<f64>>(valuations: &[F], bids: &[Vec<f64>]) -> Result<AuctionOutcome> {
    let v = Valuations::new(valuations)?;
    let m = v.ground.size();
    if bids.len() != v.n() || bids.iter().any(|row| row.len() != m) {
        return Err(Error::invalid(format!("bid matrix must be {} × {m}", v.n())));
    }
    if bids.iter().flatten().any(|b| !b.is_finite() || *b < 0.0) {
        return Err(Error::invalid("bids must be finite and nonnegative"));
    }
    Ok(v.sia(bids))
}
