//! JSON function files.
//!
//! ```json
//! {"m": 3, "kind": "hypergraph", "edges": [{"set": [0, 1], "w": 1.0}]}
//! ```
//!
//! Kinds: `explicit`, `hypergraph`, `symmetric`, `ch`, `max`, plus the
//! oracle-backed descriptors `hard-cm` and `hard-wm`. A file may also hold a
//! JSON array of function objects (one per agent).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{HardCmParams, HardConstrained, HardWelfare, HardWmFormula};
use crate::scalar::Scalar;
use crate::setfn::{
    ChFunction, ExplicitFunction, HypergraphFunction, MaxFunction, SetFunction, SymmetricFunction,
};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub set: Vec<usize>,
    pub w: f64,
}

/// Serialized form of a set function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    Explicit {
        m: usize,
        table: Vec<f64>,
    },
    Hypergraph {
        m: usize,
        edges: Vec<Edge>,
    },
    Symmetric {
        m: usize,
        levels: Vec<f64>,
    },
    Ch {
        m: usize,
        base: f64,
        blocks: Vec<Vec<usize>>,
        d: usize,
    },
    Max {
        m: usize,
        components: Vec<FunctionSpec>,
    },
    HardCm {
        m: usize,
        d: usize,
        c1: usize,
        c2: usize,
        #[serde(rename = "R")]
        r: Vec<usize>,
    },
    HardWm {
        m: usize,
        d: usize,
        c1: usize,
        c2: usize,
        #[serde(rename = "R")]
        r: Vec<usize>,
    },
}

/// A function file: one function or a list of agent valuations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionFile {
    One(FunctionSpec),
    Many(Vec<FunctionSpec>),
}

impl FunctionFile {
    pub fn into_specs(self) -> Vec<FunctionSpec> {
        match self {
            FunctionFile::One(s) => vec![s],
            FunctionFile::Many(v) => v,
        }
    }
}

fn scalar<S: Scalar>(x: f64) -> Result<S> {
    if !x.is_finite() {
        return Err(Error::Format(format!("non-finite value {x}")));
    }
    S::from_f64(x).ok_or_else(|| Error::Format(format!("value {x} not representable")))
}

fn mask(m: usize, items: &[usize]) -> Result<Subset> {
    if let Some(&bad) = items.iter().find(|&&i| i >= m) {
        return Err(Error::Format(format!("element {bad} outside ground set of size {m}")));
    }
    Ok(Subset::from_elements(items.iter().copied()))
}

impl FunctionSpec {
    pub fn m(&self) -> usize {
        match *self {
            FunctionSpec::Explicit { m, .. }
            | FunctionSpec::Hypergraph { m, .. }
            | FunctionSpec::Symmetric { m, .. }
            | FunctionSpec::Ch { m, .. }
            | FunctionSpec::Max { m, .. }
            | FunctionSpec::HardCm { m, .. }
            | FunctionSpec::HardWm { m, .. } => m,
        }
    }

    /// Builds the oracle described by this spec.
    pub fn build<S: Scalar>(&self) -> Result<Box<dyn SetFunction<S>>> {
        let f: Box<dyn SetFunction<S>> = match self {
            FunctionSpec::Explicit { m, table } => {
                let expected = 1usize.checked_shl(*m as u32).unwrap_or(0);
                if table.len() != expected {
                    return Err(Error::Format(format!(
                        "explicit table has {} entries, expected 2^{m}",
                        table.len()
                    )));
                }
                let t = table.iter().map(|&x| scalar(x)).collect::<Result<Vec<S>>>()?;
                Box::new(ExplicitFunction::new(*m, t)?)
            }
            FunctionSpec::Hypergraph { m, edges } => {
                let es = edges
                    .iter()
                    .map(|e| Ok((mask(*m, &e.set)?, scalar(e.w)?)))
                    .collect::<Result<Vec<_>>>()?;
                Box::new(HypergraphFunction::new(*m, es)?)
            }
            FunctionSpec::Symmetric { m, levels } => {
                let l = levels.iter().map(|&x| scalar(x)).collect::<Result<Vec<S>>>()?;
                Box::new(SymmetricFunction::new(*m, l)?)
            }
            FunctionSpec::Ch { m, base, blocks, d } => {
                let bs = blocks
                    .iter()
                    .map(|b| mask(*m, b))
                    .collect::<Result<Vec<_>>>()?;
                Box::new(ChFunction::new(*m, scalar(*base)?, bs, *d)?)
            }
            FunctionSpec::Max { m, components } => {
                let cs = components
                    .iter()
                    .map(|c| {
                        if c.m() != *m {
                            return Err(Error::Format(format!(
                                "component over {} elements inside max over {m}",
                                c.m()
                            )));
                        }
                        c.build::<S>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Box::new(MaxFunction::new(cs)?)
            }
            FunctionSpec::HardCm { m, d, c1, c2, r } => Box::new(HardConstrained::new(
                HardCmParams::new(*m, *d, *c1, *c2, mask(*m, r)?)?,
            )),
            FunctionSpec::HardWm { m, d, c1, c2, r } => Box::new(HardWelfare::new(
                HardWmFormula::new(*m, *d, *c1, *c2, mask(*m, r)?)?,
            )),
        };
        Ok(f)
    }

    /// Explicit table spec of any tabulable function.
    pub fn explicit_from<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<Self> {
        let table = crate::setfn::tabulate(f)?;
        Ok(FunctionSpec::Explicit {
            m: f.size(),
            table: table.into_iter().map(|v| v.to_f64_lossy()).collect(),
        })
    }

    pub fn hypergraph_from<S: Scalar>(h: &HypergraphFunction<S>) -> Self {
        FunctionSpec::Hypergraph {
            m: h.size(),
            edges: h
                .edges()
                .map(|(s, w)| Edge {
                    set: s.elements().collect(),
                    w: w.to_f64_lossy(),
                })
                .collect(),
        }
    }

    pub fn symmetric_from<S: Scalar>(f: &SymmetricFunction<S>) -> Self {
        FunctionSpec::Symmetric {
            m: f.size(),
            levels: f.levels().iter().map(|v| v.to_f64_lossy()).collect(),
        }
    }

    pub fn ch_from<S: Scalar>(f: &ChFunction<S>) -> Self {
        FunctionSpec::Ch {
            m: f.size(),
            base: f.base().to_f64_lossy(),
            blocks: f.blocks().iter().map(|b| b.elements().collect()).collect(),
            d: f.block_bound(),
        }
    }
}

/// Parses a function file (single object or array).
pub fn parse(text: &str) -> Result<Vec<FunctionSpec>> {
    let file: FunctionFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let specs = file.into_specs();
    if specs.is_empty() {
        return Err(Error::Format("empty function list".into()));
    }
    Ok(specs)
}

/// Parses and builds every function in a file.
pub fn load<S: Scalar>(text: &str) -> Result<Vec<Box<dyn SetFunction<S>>>> {
    parse(text)?.iter().map(|s| s.build::<S>()).collect()
}
