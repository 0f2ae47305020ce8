//! Subcommand implementations other than `reproduce`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use widthlab::approx::{find_for_max, find_pointwise_approximator, ApproxMode, PointwiseCertificate};
use widthlab::auctions::{
    enumerate_pure_nash, no_regret_dynamics, AuctionGame, BidGrid, Learner, Mechanism,
};
use widthlab::format::{self, FunctionFile, FunctionSpec};
use widthlab::instances::{
    all_pairs, hard_wm_instance, pair_matching, projective_plane_instance, random_monotone,
    single_bid_pos_instance, symmetric_two_level, threshold_any_two, HardCmParams, HardWmParams,
    RandomStyle,
};
use widthlab::maximize::{
    batched_greedy_constrained, batched_greedy_welfare, brute_force_constrained, brute_force_welfare,
    query_budget,
};
use widthlab::widths::{
    is_d_scopic_subadditive, is_d_scopic_submodular, superadditive_width, supermodular_width,
    width_report,
};
use widthlab::{MaxFunction, SetFunction, Subset};

use crate::args::{AuctionArgs, InstanceKind, LearnerArg, MaximizeCommand};
use crate::error::{CliError, CliResult};
use crate::output::Report;

type BoxFn = Box<dyn SetFunction<f64>>;

fn to_value<T: Serialize>(x: &T) -> CliResult<Value> {
    serde_json::to_value(x).map_err(|e| CliError::usage(e.to_string()))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_specs(path: &Path) -> CliResult<Vec<FunctionSpec>> {
    Ok(format::parse(&read(path)?)?)
}

fn load_one(path: &Path) -> CliResult<(FunctionSpec, BoxFn)> {
    let mut specs = load_specs(path)?;
    if specs.len() != 1 {
        return Err(CliError::usage(format!(
            "{} holds {} functions, expected one",
            path.display(),
            specs.len()
        )));
    }
    let spec = specs.remove(0);
    let f = spec.build::<f64>()?;
    Ok((spec, f))
}

fn load_many(paths: &[PathBuf]) -> CliResult<Vec<BoxFn>> {
    let mut out = Vec::new();
    for p in paths {
        for spec in load_specs(p)? {
            out.push(spec.build::<f64>()?);
        }
    }
    Ok(out)
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

pub fn widths(file: &Path, max_d: Option<usize>) -> CliResult<Report> {
    let (_, f) = load_one(file)?;
    let report = width_report(f.as_ref())?;
    let mut value = to_value(&report)?;
    if let Some(k) = max_d {
        let rows = (0..=k)
            .map(|d| {
                Ok(json!({
                    "d": d,
                    "submodular": is_d_scopic_submodular(f.as_ref(), d)?,
                    "subadditive": is_d_scopic_subadditive(f.as_ref(), d)?,
                }))
            })
            .collect::<CliResult<Vec<_>>>()?;
        value["scopic"] = Value::Array(rows);
    }
    Ok(Report::single(label(file), value))
}

fn pick_d(d: Option<usize>, auto: bool, width: impl FnOnce() -> CliResult<usize>) -> CliResult<usize> {
    match (d, auto) {
        (Some(_), true) => Err(CliError::usage("give either --d or --auto-width, not both")),
        (Some(d), false) => Ok(d),
        (None, true) => width(),
        (None, false) => Err(CliError::usage("--d is required unless --auto-width is set")),
    }
}

fn ratio(value: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        value / opt
    } else {
        1.0
    }
}

pub fn maximize(cmd: &MaximizeCommand) -> CliResult<Report> {
    match cmd {
        MaximizeCommand::Constrained {
            file,
            k,
            d,
            auto_width,
            brute_force,
        } => {
            let (_, f) = load_one(file)?;
            let d = pick_d(*d, *auto_width, || Ok(supermodular_width(f.as_ref())?.0))?;
            let (set, trace) = batched_greedy_constrained(f.as_ref(), *k, d)?;
            let optimum = if *brute_force {
                Some(brute_force_constrained(f.as_ref(), *k)?.1)
            } else {
                None
            };
            let value = json!({
                "k": k,
                "d": d,
                "set": set,
                "value": trace.value,
                "queries": trace.queries,
                "query_budget": u64::try_from(query_budget(f.size(), *k, d)).unwrap_or(u64::MAX),
                "trace": to_value(&trace.steps)?,
                "optimum": optimum,
                "ratio": optimum.map(|o| ratio(trace.value, o)),
            });
            Ok(Report::single(label(file), value))
        }
        MaximizeCommand::Welfare {
            files,
            d,
            auto_width,
            brute_force,
        } => {
            let fs = load_many(files)?;
            let d = pick_d(*d, *auto_width, || {
                fs.iter()
                    .map(|f| Ok(supermodular_width(f.as_ref())?.0))
                    .try_fold(0, |acc, w: CliResult<usize>| Ok(acc.max(w?)))
            })?;
            let (alloc, trace) = batched_greedy_welfare(&fs, d)?;
            let optimum = if *brute_force {
                Some(brute_force_welfare(&fs)?.1)
            } else {
                None
            };
            let value = json!({
                "d": d,
                "agents": fs.len(),
                "allocation": alloc.parts,
                "value": alloc.welfare,
                "queries": trace.queries,
                "trace": to_value(&trace.steps)?,
                "optimum": optimum,
                "ratio": optimum.map(|o| ratio(alloc.welfare, o)),
            });
            let name = files.iter().map(|p| label(p)).collect::<Vec<_>>().join("+");
            Ok(Report::single(name, value))
        }
    }
}

fn elements(s: Subset) -> Vec<usize> {
    s.elements().collect()
}

/// The function file for a named instance.
pub fn instance_file(kind: &InstanceKind, seed: u64) -> CliResult<FunctionFile> {
    let one = FunctionFile::One;
    Ok(match kind {
        InstanceKind::ThresholdAnyTwo { m } => one(FunctionSpec::symmetric_from(&threshold_any_two::<f64>(*m)?)),
        InstanceKind::PairMatching { t } => one(FunctionSpec::hypergraph_from(&pair_matching::<f64>(*t)?)),
        InstanceKind::SymmetricTwoLevel { m } => {
            one(FunctionSpec::symmetric_from(&symmetric_two_level::<f64>(*m)?))
        }
        InstanceKind::AllPairs { m } => one(FunctionSpec::hypergraph_from(&all_pairs::<f64>(*m)?)),
        InstanceKind::Additive { values } => {
            one(FunctionSpec::hypergraph_from(&widthlab::instances::additive(values)?))
        }
        InstanceKind::Random { m, style } => {
            let style: RandomStyle = style.parse()?;
            one(FunctionSpec::explicit_from(&random_monotone::<f64>(*m, seed, style)?)?)
        }
        InstanceKind::HardCm { m, d, c1, c2 } => {
            let p = HardCmParams::adversarial(*m, *d, *c1, *c2)?;
            one(FunctionSpec::HardCm {
                m: p.m,
                d: p.d,
                c1: p.c1,
                c2: p.c2,
                r: elements(p.r),
            })
        }
        InstanceKind::HardWm { d, c1, c2, n } => {
            let p = HardWmParams::blocked(*d, *c1, *c2, *n)?;
            hard_wm_instance::<f64>(&p)?;
            FunctionFile::Many(
                p.rs.iter()
                    .map(|&r| FunctionSpec::HardWm {
                        m: p.m(),
                        d: p.d,
                        c1: p.c1,
                        c2: p.c2,
                        r: elements(r),
                    })
                    .collect(),
            )
        }
        InstanceKind::ProjectivePlane { q } => FunctionFile::Many(
            projective_plane_instance::<f64>(*q)?
                .valuations
                .iter()
                .map(FunctionSpec::hypergraph_from)
                .collect(),
        ),
        InstanceKind::SingleBidPos { d, eps } => FunctionFile::Many(
            single_bid_pos_instance::<f64>(*d, *eps)?
                .iter()
                .map(FunctionSpec::hypergraph_from)
                .collect(),
        ),
    })
}

pub fn instance(kind: &InstanceKind, output: Option<&Path>, seed: u64) -> CliResult<Report> {
    let file = instance_file(kind, seed)?;
    let value = to_value(&file)?;
    let count = match &file {
        FunctionFile::One(_) => 1,
        FunctionFile::Many(v) => v.len(),
    };
    match output {
        None => Ok(Report::single("instance", value)),
        Some(path) => {
            let mut text = serde_json::to_string_pretty(&value).map_err(|e| CliError::usage(e.to_string()))?;
            text.push('\n');
            fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(Report::single(
                "instance",
                json!({ "written": label(path), "functions": count }),
            ))
        }
    }
}

fn parse_mask(text: &str) -> CliResult<Subset> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse::<u64>(),
    };
    parsed
        .map(Subset)
        .map_err(|_| CliError::usage(format!("cannot read {text:?} as a set mask")))
}

#[derive(Serialize)]
struct CertificateOut {
    beta: f64,
    guarantee: f64,
    verified: bool,
    d: usize,
    mode: ApproxMode,
    target: Subset,
    ch: FunctionSpec,
}

impl From<PointwiseCertificate<f64>> for CertificateOut {
    fn from(c: PointwiseCertificate<f64>) -> Self {
        CertificateOut {
            beta: c.beta,
            guarantee: c.guarantee,
            verified: c.verified,
            d: c.d,
            mode: c.mode,
            target: c.target,
            ch: FunctionSpec::ch_from(&c.ch),
        }
    }
}

pub fn approx(file: &Path, d: Option<usize>, mode: &str, target: Option<&str>) -> CliResult<Report> {
    let mode: ApproxMode = mode.parse()?;
    let (spec, f) = load_one(file)?;
    let target = match target {
        Some(t) => parse_mask(t)?,
        None => f.ground().full(),
    };
    let d = match d {
        Some(d) => d,
        None => match mode {
            ApproxMode::Saw => superadditive_width(f.as_ref())?.0,
            ApproxMode::SmwSuperadditive => supermodular_width(f.as_ref())?.0,
        },
    };
    let cert = match spec {
        FunctionSpec::Max { components, .. } => {
            let parts = components
                .iter()
                .map(|c| c.build::<f64>())
                .collect::<widthlab::Result<Vec<_>>>()?;
            find_for_max(&MaxFunction::new(parts)?, d, target, mode)?
        }
        _ => find_pointwise_approximator(f.as_ref(), d, target, mode)?,
    };
    Ok(Report::single(label(file), to_value(&CertificateOut::from(cert))?))
}

fn parse_support(text: &str, n: usize) -> CliResult<(usize, Subset)> {
    let (i, mask) = text
        .split_once(':')
        .ok_or_else(|| CliError::usage(format!("support {text:?} is not of the form i:mask")))?;
    let i: usize = i
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("bad bidder index in {text:?}")))?;
    if i >= n {
        return Err(CliError::usage(format!("bidder {i} out of range (n = {n})")));
    }
    Ok((i, parse_mask(mask)?))
}

/// Most equilibria listed in a report; the count is always exact.
const NASH_LISTED: usize = 100;

pub fn auction(mechanism: Mechanism, a: &AuctionArgs, seed: u64) -> CliResult<Report> {
    let fs = load_many(&a.valuations)?;
    let grid = match a.grid {
        Some(delta) => BidGrid::uniform(delta, BidGrid::top_for(&fs)?)?,
        None => BidGrid::default_for(&fs)?,
    };
    let game = match mechanism {
        Mechanism::SingleBid => {
            if !a.support.is_empty() {
                return Err(CliError::usage("--support only applies to sia"));
            }
            AuctionGame::single_bid(&fs, &grid)?
        }
        Mechanism::Sia => {
            let mut supports = vec![Vec::new(); fs.len()];
            for s in &a.support {
                let (i, mask) = parse_support(s, fs.len())?;
                supports[i].push(mask);
            }
            AuctionGame::sia(&fs, &grid, &supports)?
        }
    };
    let learner = match a.learner {
        LearnerArg::RegretMatching => Learner::RegretMatching,
        LearnerArg::MultiplicativeWeights => Learner::MultiplicativeWeights,
    };
    let dynamics = if a.rounds > 0 {
        Some(no_regret_dynamics(&game, a.rounds, seed, learner)?)
    } else {
        None
    };
    let nash = if a.enumerate_nash {
        Some(enumerate_pure_nash(&game)?)
    } else {
        None
    };
    let opt = game.optimum()?;
    let value = json!({
        "mechanism": mechanism,
        "bidders": game.n(),
        "m": game.m(),
        "grid": grid,
        "profiles": u64::try_from(game.profile_count()).unwrap_or(u64::MAX),
        "opt": opt,
        "rounds": a.rounds,
        "seed": seed,
        "learner": learner,
        "avg_welfare": dynamics.as_ref().map(|r| r.avg_welfare),
        "empirical_poa": dynamics.as_ref().and_then(|r| r.empirical_poa),
        "regrets": dynamics.as_ref().map(|r| r.regrets.clone()),
        "modal_actions": dynamics.as_ref().map(|r| to_value(&r.modal_actions)).transpose()?,
        "nash_count": nash.as_ref().map(|v| v.len()),
        "nash": nash
            .as_ref()
            .map(|v| to_value(&v.iter().take(NASH_LISTED).collect::<Vec<_>>()))
            .transpose()?,
    });
    let names = a.valuations.iter().map(|p| label(p)).collect::<Vec<_>>().join("+");
    Ok(Report::single(names, value))
}
