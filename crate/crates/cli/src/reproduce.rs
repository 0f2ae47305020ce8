//! Acceptance suites: each criterion recomputes its measurements from
//! scratch and compares them with the expected values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use widthlab::approx::{find_pointwise_approximator, harmonic, ApproxMode};
use widthlab::auctions::{
    enumerate_pure_nash, no_regret_dynamics, poa_upper_bound, AuctionGame, BidGrid, Hierarchy,
    Learner, Mechanism,
};
use widthlab::instances::{
    all_pairs, corpus, fixture_corpus, hard_cm_instance, pair_matching, projective_plane_instance,
    random_monotone, single_minded, single_bid_pos_instance, symmetric_two_level,
    threshold_any_two, HardCmParams, RandomStyle, TwoClass,
};
use widthlab::maximize::{
    batched_greedy_constrained, batched_greedy_welfare, brute_force_constrained, brute_force_welfare,
    query_budget,
};
use widthlab::setfn::{is_superadditive, mobius_table, zeta_table};
use widthlab::widths::{
    is_d_scopic_subadditive, is_d_scopic_submodular, mph_level_at_most, superadditive_width,
    supermodular_degree, supermodular_width, two_class_supermodular_width, width_report, PhLevel,
};
use widthlab::{ExplicitF64, MaxFunction, Rational, SetFunction, Subset};

use crate::args::Suite;
use crate::error::CliResult;

const TOL: f64 = 1e-9;
/// Random draws per ground-set size in the shared corpus.
const PER_SIZE: usize = 50;
const CORPUS_SIZES: [usize; 4] = [4, 5, 6, 7];
const FIXTURE_MAX_M: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: Value,
    pub expected: Value,
    pub passed: bool,
    /// Reported for context only; does not affect the verdict.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl Check {
    fn new(name: impl Into<String>, measured: Value, expected: Value, passed: bool) -> Self {
        Check {
            name: name.into(),
            measured,
            expected,
            passed,
            informational: false,
        }
    }

    fn info(name: impl Into<String>, measured: Value) -> Self {
        Check {
            name: name.into(),
            measured,
            expected: Value::Null,
            passed: true,
            informational: true,
        }
    }

    fn equal<T: Serialize + PartialEq>(name: impl Into<String>, measured: T, expected: T) -> Self {
        let passed = measured == expected;
        Check::new(name, json!(measured), json!(expected), passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    /// The property being checked, in plain words.
    pub claim: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Criterion {
    fn new(id: u8, title: &'static str, claim: &'static str, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.informational || c.passed);
        Criterion {
            id,
            title,
            claim,
            passed,
            checks,
        }
    }

    /// One summary line, e.g. `PASS criterion 4 (constrained guarantee)`.
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let failing: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.informational && !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        if failing.is_empty() {
            format!("{verdict} criterion {} ({})", self.id, self.title)
        } else {
            format!("{verdict} criterion {} ({}): {}", self.id, self.title, failing.join("; "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub criteria: Vec<Criterion>,
}

impl SuiteReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            out.push_str(&c.line());
            out.push('\n');
            for k in &c.checks {
                let tag = if k.informational {
                    "info"
                } else if k.passed {
                    "ok"
                } else {
                    "MISMATCH"
                };
                out.push_str(&format!(
                    "    [{tag}] {}: measured {} expected {}\n",
                    k.name, k.measured, k.expected
                ));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

pub fn suite_ids(suite: Suite) -> &'static [u8] {
    match suite {
        Suite::Propositions => &[2, 3],
        Suite::Theorems => &[1, 6],
        Suite::Maximization => &[4, 5, 6],
        Suite::Approximation => &[7],
        Suite::Auctions => &[8, 9, 10],
        Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> CliResult<SuiteReport> {
    let criteria = suite_ids(suite)
        .iter()
        .map(|&id| criterion(id, seed))
        .collect::<CliResult<Vec<_>>>()?;
    let passed = criteria.iter().filter(|c| c.passed).count();
    Ok(SuiteReport {
        suite: format!("{suite:?}").to_lowercase(),
        seed,
        passed,
        failed: criteria.len() - passed,
        criteria,
    })
}

/// Runs one criterion (1 to 11).
pub fn criterion(id: u8, seed: u64) -> CliResult<Criterion> {
    match id {
        1 => scopic_equivalence(seed),
        2 => degree_below_width(seed),
        3 => separation_fixtures(),
        4 => constrained_guarantee(seed),
        5 => welfare_guarantee(seed),
        6 => hard_instance_gap(),
        7 => pointwise_approximation(seed),
        8 => single_bid_pos(),
        9 => sia_projective_plane(),
        10 => cce_consistency(seed),
        11 => round_trip_and_determinism(seed),
        _ => Err(crate::error::CliError::usage(format!("no criterion {id}"))),
    }
}

/// Seeded random corpus followed by the named fixtures.
pub fn shared_corpus(seed: u64) -> CliResult<(Vec<(String, ExplicitF64)>, usize)> {
    let random = corpus::<f64>(&CORPUS_SIZES, PER_SIZE, seed)?;
    let n_random = random.len();
    let mut out: Vec<(String, ExplicitF64)> = random
        .into_iter()
        .enumerate()
        .map(|(i, f)| (format!("random#{i}(m={})", f.size()), f))
        .collect();
    out.extend(fixture_corpus::<f64>(FIXTURE_MAX_M)?);
    Ok((out, n_random))
}

fn first<T: Clone>(items: &[Option<T>]) -> Option<T> {
    items.iter().flatten().next().cloned()
}

fn scopic_equivalence(seed: u64) -> CliResult<Criterion> {
    let (fs, n_random) = shared_corpus(seed)?;
    let per_fn = fs
        .par_iter()
        .map(|(name, f)| {
            let m = f.size();
            let smw = supermodular_width(f)?.0;
            let saw = superadditive_width(f)?.0;
            let mut bad_sub = None;
            let mut bad_add = None;
            for d in 0..m {
                if bad_sub.is_none() && (smw <= d) != is_d_scopic_submodular(f, d)? {
                    bad_sub = Some(format!("{name} d={d} smw={smw}"));
                }
                if bad_add.is_none() && (saw <= d) != is_d_scopic_subadditive(f, d)? {
                    bad_add = Some(format!("{name} d={d} saw={saw}"));
                }
            }
            Ok((bad_sub, bad_add))
        })
        .collect::<widthlab::Result<Vec<_>>>()?;
    let subs: Vec<_> = per_fn.iter().map(|p| p.0.clone()).collect();
    let adds: Vec<_> = per_fn.iter().map(|p| p.1.clone()).collect();
    let count = |v: &[Option<String>]| v.iter().flatten().count();
    Ok(Criterion::new(
        1,
        "scopic equivalence",
        "Supermodular width at most d holds exactly when the function is d-scopic submodular; \
         superadditive width at most d holds exactly when it is d-scopic subadditive.",
        vec![
            Check::new(
                "random functions in corpus",
                json!(n_random),
                json!(">= 200"),
                n_random >= 200,
            ),
            Check::info("fixtures in corpus", json!(fs.len() - n_random)),
            Check::equal("functions where smw and scopic submodularity disagree", count(&subs), 0),
            Check::equal("functions where saw and scopic subadditivity disagree", count(&adds), 0),
            Check::info("first disagreement", json!(first(&subs).or(first(&adds)))),
        ],
    ))
}

fn degree_below_width(seed: u64) -> CliResult<Criterion> {
    let (fs, _) = shared_corpus(seed)?;
    let pairs = fs
        .par_iter()
        .map(|(name, f)| Ok((name.clone(), supermodular_degree(f)?, supermodular_width(f)?.0)))
        .collect::<widthlab::Result<Vec<_>>>()?;
    let stated: Vec<_> = pairs.iter().filter(|(_, sd, smw)| sd > smw).collect();
    let reverse = pairs.iter().filter(|(_, sd, smw)| smw > sd).count();
    let example = stated
        .first()
        .map(|(n, sd, smw)| format!("{n}: sd={sd}, smw={smw}"));
    Ok(Criterion::new(
        2,
        "degree below width",
        "The supermodular degree never exceeds the supermodular width.",
        vec![
            Check::info("functions checked", json!(pairs.len())),
            Check::equal("functions with sd > smw", stated.len(), 0),
            Check::info("first function with sd > smw", json!(example)),
            Check::info("functions with smw > sd (reverse direction)", json!(reverse)),
        ],
    ))
}

fn separation_fixtures() -> CliResult<Criterion> {
    let th = threshold_any_two::<f64>(6)?;
    let pm = pair_matching::<f64>(3)?;
    let tl = symmetric_two_level::<f64>(5)?;
    let ap = width_report(&all_pairs::<f64>(4)?)?;
    let ph = match ap.ph_level {
        PhLevel::Level(k) => json!(k),
        PhLevel::NotPh => json!("not-ph"),
    };
    Ok(Criterion::new(
        3,
        "separation fixtures",
        "Each fixture separates two complementarity measures with the stated exact values.",
        vec![
            Check::equal(
                "threshold_any_two(6) (sd, smw)",
                (supermodular_degree(&th)?, supermodular_width(&th)?.0),
                (5, 1),
            ),
            Check::equal(
                "pair_matching(3) (smw, saw)",
                (supermodular_width(&pm)?.0, superadditive_width(&pm)?.0),
                (1, 3),
            ),
            Check::equal(
                "symmetric_two_level(5) (saw, smw)",
                (superadditive_width(&tl)?.0, supermodular_width(&tl)?.0),
                (0, 4),
            ),
            Check::equal(
                "all_pairs(4) (ph_level, smw, saw)",
                json!([ph, ap.smw, ap.saw]),
                json!([2, 3, 3]),
            ),
            Check::equal(
                "symmetric_two_level(4) in MPH-1",
                mph_level_at_most(&symmetric_two_level::<f64>(4)?, 1)?,
                false,
            ),
        ],
    ))
}

fn constrained_guarantee(seed: u64) -> CliResult<Criterion> {
    let (fs, _) = shared_corpus(seed)?;
    // (runs, ratio violations, query violations, worst margin, first failure)
    let rows = fs
        .par_iter()
        .map(|(name, f)| {
            let m = f.size();
            let smw = supermodular_width(f)?.0;
            let bound = 1.0 - (-1.0 / (smw as f64 + 1.0)).exp();
            let mut out = (0usize, 0usize, 0usize, f64::INFINITY, None);
            for k in 1..=m {
                let (_, trace) = batched_greedy_constrained(f, k, smw)?;
                let opt = brute_force_constrained(f, k)?.1;
                let r = if opt > 0.0 { trace.value / opt } else { 1.0 };
                out.0 += 1;
                out.3 = out.3.min(r - bound);
                if r < bound - TOL {
                    out.1 += 1;
                    out.4.get_or_insert(format!("{name} k={k}: ratio {r} < {bound}"));
                }
                if u128::from(trace.queries) > query_budget(m, k, smw) {
                    out.2 += 1;
                    out.4.get_or_insert(format!("{name} k={k}: {} queries", trace.queries));
                }
            }
            Ok(out)
        })
        .collect::<widthlab::Result<Vec<_>>>()?;
    let runs: usize = rows.iter().map(|r| r.0).sum();
    let ratio_bad: usize = rows.iter().map(|r| r.1).sum();
    let query_bad: usize = rows.iter().map(|r| r.2).sum();
    let worst = rows.iter().map(|r| r.3).fold(f64::INFINITY, f64::min);
    let failure = rows.iter().find_map(|r| r.4.clone());
    Ok(Criterion::new(
        4,
        "constrained guarantee",
        "Batched greedy with batch bound smw + 1 reaches 1 - exp(-1/(smw + 1)) of the best set of \
         size at most k, within 2k times the number of batches of size at most smw + 1 queries.",
        vec![
            Check::info("(function, k) runs", json!(runs)),
            Check::equal("runs below the ratio bound", ratio_bad, 0),
            Check::equal("runs over the query budget", query_bad, 0),
            Check::info("smallest ratio minus bound", json!(worst)),
            Check::info("first failure", json!(failure)),
        ],
    ))
}

/// Agents for the welfare suite: `n` in {2, 3}, `m` in 4..=8.
pub fn welfare_instances(seed: u64, count: usize) -> CliResult<Vec<Vec<ExplicitF64>>> {
    (0..count)
        .map(|i| {
            let n = 2 + i % 2;
            let m = 4 + i % 5;
            (0..n)
                .map(|j| {
                    let style = RandomStyle::ALL[(i + j) % RandomStyle::ALL.len()];
                    let s = seed ^ ((i as u64) << 20) ^ ((j as u64) << 8) ^ 0x5e1f;
                    Ok(random_monotone::<f64>(m, s, style)?)
                })
                .collect()
        })
        .collect()
}

fn welfare_guarantee(seed: u64) -> CliResult<Criterion> {
    let instances = welfare_instances(seed, 60)?;
    let rows = instances
        .par_iter()
        .enumerate()
        .map(|(i, fs)| {
            let d = fs
                .iter()
                .map(|f| Ok(supermodular_width(f)?.0))
                .collect::<widthlab::Result<Vec<_>>>()?
                .into_iter()
                .max()
                .unwrap_or(0);
            let (alloc, _) = batched_greedy_welfare(fs, d)?;
            let opt = brute_force_welfare(fs)?.1;
            let r = if opt > 0.0 { alloc.welfare / opt } else { 1.0 };
            let bound = 1.0 / (d as f64 + 2.0);
            Ok((i, r, bound, alloc.is_disjoint()))
        })
        .collect::<widthlab::Result<Vec<_>>>()?;
    let bad: Vec<_> = rows.iter().filter(|r| r.1 < r.2 - TOL || !r.3).collect();
    let worst = rows.iter().map(|r| r.1 - r.2).fold(f64::INFINITY, f64::min);
    Ok(Criterion::new(
        5,
        "welfare guarantee",
        "Batched greedy allocation with batch bound (largest agent width) + 1 reaches a \
         1/(width + 2) fraction of the optimal welfare.",
        vec![
            Check::new(
                "instances",
                json!(rows.len()),
                json!(">= 50"),
                rows.len() >= 50,
            ),
            Check::equal("instances below the bound", bad.len(), 0),
            Check::info("smallest ratio minus bound", json!(worst)),
            Check::info("first failing instance", json!(bad.first().map(|r| r.0))),
        ],
    ))
}

fn hard_instance_gap() -> CliResult<Criterion> {
    let (c1, c2) = (1, 3);
    let mut checks = Vec::new();
    for d in [1usize, 2] {
        let m = 4 * (c1 + c2) * (d + 1);
        let f = hard_cm_instance::<Rational>(HardCmParams::adversarial(m, d, c1, c2)?);
        let p = *f.params();
        let k = p.k();
        let (smw, _) = two_class_supermodular_width(&f);
        checks.push(Check::new(
            format!("d={d}, m={m}: smw(f_R)"),
            json!(smw),
            json!(format!("<= {d}")),
            smw <= d,
        ));

        let r_size = p.r.len();
        let avoid = f.profile(0, k);
        let opt = (0..=r_size.min(k))
            .map(|a| f.profile(a, (k - a).min(m - r_size)))
            .max()
            .expect("nonempty range");
        let ratio = avoid / opt;
        let expected = Rational::new((c1 + c2) as i128, (c1 + c2 * (d + 1)) as i128);
        checks.push(Check::equal(
            format!("d={d}, m={m}: R-avoiding value / OPT at k={k}"),
            ratio.to_string(),
            expected.to_string(),
        ));

        let (set, trace) = batched_greedy_constrained(&f, k, d)?;
        checks.push(Check::equal(
            format!("d={d}, m={m}: greedy value"),
            trace.value.to_string(),
            avoid.to_string(),
        ));
        checks.push(Check::info(
            format!("d={d}, m={m}: greedy set meets R in"),
            json!(set.intersection(p.r).len()),
        ));
    }
    Ok(Criterion::new(
        6,
        "hard-instance gap",
        "On the lower-bound instance the supermodular width is at most d, the best set avoiding \
         the hidden set R loses the stated factor against the optimum, and greedy with \
         adversarial ties attains exactly the R-avoiding value.",
        checks,
    ))
}

fn random_targets(m: usize, seed: u64, count: usize) -> Vec<Subset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = Subset::full(m).bits();
    (0..count).map(|_| Subset(rng.gen_range(1..=full))).collect()
}

fn pointwise_approximation(seed: u64) -> CliResult<Criterion> {
    let (fs, _) = shared_corpus(seed)?;
    // (certificates, failures, superadditive functions, first failure)
    let rows = fs
        .par_iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let m = f.size();
            let full = f.ground().full();
            let mut targets = vec![full];
            targets.extend(random_targets(m, seed ^ (i as u64) << 16, 20));
            let mut out = (0usize, 0usize, 0usize, None);
            let mut run = |mode: ApproxMode, d: usize, bound: f64| -> widthlab::Result<()> {
                for &t in &targets {
                    let c = find_pointwise_approximator(f, d, t, mode)?;
                    out.0 += 1;
                    if !c.verified || c.beta > bound + TOL {
                        out.1 += 1;
                        out.3.get_or_insert(format!("{name} {mode:?} S={t}: beta {}", c.beta));
                    }
                }
                Ok(())
            };
            let saw = superadditive_width(f)?.0;
            if saw <= 3 {
                let b = ApproxMode::Saw.block_bound(saw);
                run(ApproxMode::Saw, saw, 2.0 * harmonic(m.div_ceil(b))?)?;
            }
            if is_superadditive(f)? {
                let smw = supermodular_width(f)?.0;
                let bound = (smw + 1) as f64 * harmonic(m.div_ceil(smw + 1))?;
                run(ApproxMode::SmwSuperadditive, smw, bound)?;
                out.2 += 1;
            }
            Ok(out)
        })
        .collect::<widthlab::Result<Vec<_>>>()?;
    let certs: usize = rows.iter().map(|r| r.0).sum();
    let bad: usize = rows.iter().map(|r| r.1).sum();
    let superadditive: usize = rows.iter().map(|r| r.2).sum();
    Ok(Criterion::new(
        7,
        "CH pointwise approximation",
        "Every function of superadditive width d has a verified CH approximation at each set \
         within 2 H(ceil(m/2d)); superadditive functions of supermodular width d have one \
         within (d+1) H(ceil(m/(d+1))).",
        vec![
            Check::info("certificates searched", json!(certs)),
            Check::new(
                "superadditive functions covered",
                json!(superadditive),
                json!(">= 1"),
                superadditive >= 1,
            ),
            Check::equal("targets without a verified certificate in bound", bad, 0),
            Check::info("first failure", json!(rows.iter().find_map(|r| r.3.clone()))),
        ],
    ))
}

fn single_bid_pos() -> CliResult<Criterion> {
    let eps = 0.1;
    let mut checks = Vec::new();
    for d in [2usize, 3] {
        let fs = single_bid_pos_instance::<f64>(d, eps)?;
        let grid = BidGrid::uniform(0.01, BidGrid::top_for(&fs)?)?;
        let game = AuctionGame::single_bid(&fs, &grid)?;
        let eq = enumerate_pure_nash(&game)?;
        let opt = brute_force_welfare(&fs)?.1;
        checks.push(Check::new(
            format!("d={d}: pure equilibria"),
            json!(eq.len()),
            json!(">= 1"),
            !eq.is_empty(),
        ));
        let threshold = d as f64 + 1.0 - eps / d as f64 - 0.05;
        let ratio = eq.first().map(|e| opt / e.outcome.welfare);
        checks.push(Check::new(
            format!("d={d}: OPT / best equilibrium welfare"),
            json!(ratio),
            json!(format!(">= {threshold:.4}")),
            ratio.is_some_and(|r| r >= threshold),
        ));
    }
    Ok(Criterion::new(
        8,
        "single-bid price of stability",
        "In the single-bid lower-bound instance every pure equilibrium on the grid loses roughly \
         a factor d + 1 against the optimum.",
        checks,
    ))
}

fn sia_projective_plane() -> CliResult<Criterion> {
    let plane = projective_plane_instance::<f64>(2)?;
    let grid = BidGrid::new(vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])?;
    let supports: Vec<Vec<Subset>> = plane.lines.iter().map(|&l| vec![l]).collect();
    let game = AuctionGame::sia(&plane.valuations, &grid, &supports)?;
    let eq = enumerate_pure_nash(&game)?;
    let opt = brute_force_welfare(&plane.valuations)?.1;
    let threshold = 2.0 + 1.0 / 3.0 - 0.05;
    let worst = eq.last().map(|e| e.outcome.welfare);
    let ratio = worst.map(|w| if w > 0.0 { opt / w } else { f64::INFINITY });
    Ok(Criterion::new(
        9,
        "SIA projective plane",
        "In the projective-plane instance some pure equilibrium of simultaneous first-price \
         auctions loses a factor above 2 against the optimum.",
        vec![
            Check::equal(
                "OPT equals the largest set of disjoint lines",
                opt,
                plane.max_disjoint_lines() as f64,
            ),
            Check::info("pure equilibria", json!(eq.len())),
            Check::info("worst equilibrium welfare", json!(worst)),
            Check::new(
                "OPT / worst equilibrium welfare",
                json!(ratio.map(|r| if r.is_finite() { json!(r) } else { json!("inf") })),
                json!(format!(">= {threshold:.4}")),
                ratio.is_some_and(|r| r >= threshold),
            ),
        ],
    ))
}

/// Rounds of no-regret play per run in criterion 10.
pub const CCE_ROUNDS: u64 = 200_000;

fn cce_consistency(seed: u64) -> CliResult<Criterion> {
    let runs: Vec<(usize, usize, usize, Mechanism)> = (0..10)
        .flat_map(|i| {
            let (d, m) = (1 + i % 2, 4 + i % 3);
            [Mechanism::SingleBid, Mechanism::Sia].map(|mech| (i, d, m, mech))
        })
        .collect();
    let rows = runs
        .par_iter()
        .map(|&(i, d, m, mech)| {
            let s = seed ^ (i as u64) << 24;
            // each bidder: max of single-minded bundles of at most d + 1 items
            // and coverage functions, so every part has width <= d
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let mut width_ok = true;
            let mut fs = Vec::new();
            for _ in 0..2 {
                let mut comps: Vec<Box<dyn SetFunction<f64>>> = Vec::new();
                for _ in 0..rng.gen_range(2..=3) {
                    let part: Box<dyn SetFunction<f64>> = if rng.gen_bool(0.6) {
                        let size = rng.gen_range(1..=d + 1);
                        let bundle = Subset::from_elements(
                            rand::seq::index::sample(&mut rng, m, size),
                        );
                        Box::new(single_minded(m, bundle, rng.gen_range(1..=4) as f64)?)
                    } else {
                        Box::new(random_monotone::<f64>(m, rng.gen(), RandomStyle::Coverage)?)
                    };
                    width_ok &= superadditive_width(part.as_ref())?.0 <= d;
                    comps.push(part);
                }
                fs.push(MaxFunction::new(comps)?);
            }
            let grid = BidGrid::default_for(&fs)?;
            let game = match mech {
                Mechanism::SingleBid => AuctionGame::single_bid(&fs, &grid)?,
                Mechanism::Sia => AuctionGame::sia(&fs, &grid, &[])?,
            };
            let r = no_regret_dynamics(&game, CCE_ROUNDS, s, Learner::RegretMatching)?;
            let bound = poa_upper_bound(Hierarchy::Saw, d, m, mech)?;
            let slack: f64 = r.regrets.iter().sum::<f64>() + grid.delta() * m as f64;
            let floor = r.opt / bound - slack;
            Ok((i, mech, width_ok, r.avg_welfare - floor))
        })
        .collect::<widthlab::Result<Vec<_>>>()?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.2 || r.3 < -TOL).collect();
    Ok(Criterion::new(
        10,
        "CCE consistency",
        "Time-averaged welfare of no-regret play never falls below OPT divided by the smoothness \
         bound, minus the measured regret and grid slack.",
        vec![
            Check::new(
                "instances x mechanisms",
                json!(rows.len()),
                json!(">= 10 instances"),
                rows.len() >= 10,
            ),
            Check::info("rounds per run", json!(CCE_ROUNDS)),
            Check::equal("runs violating the bound or the width promise", bad.len(), 0),
            Check::info(
                "smallest margin above the floor",
                json!(rows.iter().map(|r| r.3).fold(f64::INFINITY, f64::min)),
            ),
        ],
    ))
}

/// JSON documents that must come out byte-identical on every run.
pub fn determinism_probe(seed: u64) -> CliResult<String> {
    let (fs, _) = shared_corpus(seed)?;
    let mut docs = Vec::new();
    for (_, f) in fs.iter().step_by(10) {
        docs.push(json!(width_report(f)?));
        docs.push(json!(batched_greedy_constrained(f, f.size() / 2 + 1, 1)?.1));
    }
    let fs = single_bid_pos_instance::<f64>(2, 0.1)?;
    let game = AuctionGame::single_bid(&fs, &BidGrid::default_for(&fs)?)?;
    docs.push(json!(no_regret_dynamics(&game, 2_000, seed, Learner::MultiplicativeWeights)?));
    serde_json::to_string(&docs).map_err(|e| crate::error::CliError::usage(e.to_string()))
}

fn round_trip_and_determinism(seed: u64) -> CliResult<Criterion> {
    let (fs, _) = shared_corpus(seed)?;
    let float_bad = fs
        .iter()
        .filter(|(_, f)| {
            let mut t = f.table().to_vec();
            mobius_table(&mut t);
            zeta_table(&mut t);
            t != f.table()
        })
        .count();
    let exact = corpus::<Rational>(&CORPUS_SIZES, 10, seed)?;
    let exact_bad = exact
        .iter()
        .filter(|f| {
            let mut t = f.table().to_vec();
            mobius_table(&mut t);
            zeta_table(&mut t);
            t != f.table()
        })
        .count();
    let a = determinism_probe(seed)?;
    let b = determinism_probe(seed)?;
    Ok(Criterion::new(
        11,
        "round trip and determinism",
        "Moebius then zeta reproduces every value table exactly, and repeated runs produce \
         byte-identical reports.",
        vec![
            Check::equal("f64 tables changed by the round trip", float_bad, 0),
            Check::equal("rational tables changed by the round trip", exact_bad, 0),
            Check::info("probe bytes", json!(a.len())),
            Check::equal("repeated reports identical", a == b, true),
        ],
    ))
}
