//! Seeded integer-valued monotone functions for property tests.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::setfn::{to_explicit, ExplicitFunction, HypergraphFunction};
use crate::subset::Subset;

pub const RANDOM_MAX_M: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomStyle {
    NonnegHypergraph,
    MaxOfAdditive,
    Coverage,
    Mixed,
}

impl RandomStyle {
    pub const ALL: [RandomStyle; 4] = [
        RandomStyle::NonnegHypergraph,
        RandomStyle::MaxOfAdditive,
        RandomStyle::Coverage,
        RandomStyle::Mixed,
    ];

    fn name(self) -> &'static str {
        match self {
            RandomStyle::NonnegHypergraph => "nonneg-hypergraph",
            RandomStyle::MaxOfAdditive => "max-of-additive",
            RandomStyle::Coverage => "coverage",
            RandomStyle::Mixed => "mixed",
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for RandomStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RandomStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown random style {s:?}")))
    }
}

fn random_subset(rng: &mut impl Rng, m: usize, size: usize) -> Subset {
    sample(rng, m, size).into_iter().collect()
}

fn hypergraph_table(rng: &mut impl Rng, m: usize) -> Vec<u64> {
    let edges = rng.gen_range(1..=2 * m);
    let mut h = vec![0u64; 1 << m];
    for _ in 0..edges {
        // mostly small edges, occasionally wide ones
        let size = if rng.gen_bool(0.15) {
            rng.gen_range(1..=m)
        } else {
            rng.gen_range(1..=m.min(3))
        };
        h[random_subset(rng, m, size).index()] += rng.gen_range(1..=3);
    }
    for i in 0..m {
        for s in 0..h.len() {
            if s >> i & 1 == 1 {
                h[s] += h[s ^ (1 << i)];
            }
        }
    }
    h
}

fn additive_table(rng: &mut impl Rng, m: usize) -> Vec<u64> {
    let w: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=3)).collect();
    Subset::full(m)
        .subsets()
        .map(|s| s.elements().map(|i| w[i]).sum())
        .collect()
}

fn coverage_table(rng: &mut impl Rng, m: usize) -> Vec<u64> {
    let universe = 2 * m;
    let covers: Vec<u64> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=3);
            random_subset(rng, universe, size).bits()
        })
        .collect();
    Subset::full(m)
        .subsets()
        .map(|s| s.elements().fold(0u64, |acc, i| acc | covers[i]).count_ones() as u64)
        .collect()
}

fn pointwise_max(a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    a.into_iter().zip(b).map(|(x, &y)| x.max(y)).collect()
}

/// Deterministic in `(m, seed, style)`; normalized and monotone by
/// construction. Needs `1 <= m <= 10`.
pub fn random_monotone<S: Scalar>(m: usize, seed: u64, style: RandomStyle) -> Result<ExplicitFunction<S>> {
    if m == 0 || m > RANDOM_MAX_M {
        return Err(Error::invalid(format!(
            "random_monotone supports 1 <= m <= {RANDOM_MAX_M}, got {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ style.tag());
    let table = match style {
        RandomStyle::NonnegHypergraph => hypergraph_table(&mut rng, m),
        RandomStyle::MaxOfAdditive => {
            let parts = rng.gen_range(2..=3);
            let mut t = additive_table(&mut rng, m);
            for _ in 1..parts {
                let next = additive_table(&mut rng, m);
                t = pointwise_max(t, &next);
            }
            t
        }
        RandomStyle::Coverage => coverage_table(&mut rng, m),
        RandomStyle::Mixed => {
            let h = hypergraph_table(&mut rng, m);
            let a = additive_table(&mut rng, m);
            pointwise_max(h, &a)
        }
    };
    ExplicitFunction::new_monotone(m, table.into_iter().map(|v| S::from_count(v as usize)).collect())
}

/// Additive draw as a hypergraph (singleton edges only).
pub fn random_additive<S: Scalar>(m: usize, seed: u64) -> Result<HypergraphFunction<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<S> = (0..m).map(|_| S::from_count(rng.gen_range(0..=3))).collect();
    super::additive(&values)
}

/// The standard test corpus: `per_size` draws for each `m` in `sizes`,
/// cycling through the styles.
pub fn corpus<S: Scalar>(sizes: &[usize], per_size: usize, seed: u64) -> Result<Vec<ExplicitFunction<S>>> {
    let mut out = Vec::with_capacity(sizes.len() * per_size);
    for &m in sizes {
        for i in 0..per_size {
            let style = RandomStyle::ALL[i % RandomStyle::ALL.len()];
            out.push(random_monotone(m, seed + (m * 1000 + i) as u64, style)?);
        }
    }
    Ok(out)
}

/// Explicit copies of the named fixtures that fit in `m <= max_m`.
pub fn fixture_corpus<S: Scalar>(max_m: usize) -> Result<Vec<(String, ExplicitFunction<S>)>> {
    let mut out = Vec::new();
    for m in 2..=max_m {
        out.push((format!("threshold_any_two({m})"), to_explicit(&super::threshold_any_two::<S>(m)?)?));
        out.push((format!("symmetric_two_level({m})"), to_explicit(&super::symmetric_two_level::<S>(m)?)?));
        out.push((format!("all_pairs({m})"), to_explicit(&super::all_pairs::<S>(m)?)?));
    }
    for t in 1..=max_m / 2 {
        out.push((format!("pair_matching({t})"), to_explicit(&super::pair_matching::<S>(t)?)?));
    }
    Ok(out)
}
