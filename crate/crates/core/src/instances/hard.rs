//! Cardinality-and-containment lower-bound functions `f_R`.
//!
//! Both families satisfy `f_R(S) = g(|S|, [R ⊆ S])`, so they are served by
//! an O(1) oracle and never tabulated. `D = d + 1` and `|R| = c1·D + 1`.

use std::marker::PhantomData;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::setfn::{QueryCounter, SetFunction};
use crate::subset::{GroundSet, Subset};

/// Functions whose value depends only on how many elements a set takes from
/// a distinguished set and how many from its complement.
pub trait TwoClass<S: Scalar>: SetFunction<S> {
    fn special(&self) -> Subset;

    /// Value of any set with `inside` elements of `special()` and `outside`
    /// elements of the rest.
    fn profile(&self, inside: usize, outside: usize) -> S;
}

fn check_common(m: usize, d: usize, c1: usize, c2: usize, r: Subset) -> Result<GroundSet> {
    let ground = GroundSet::new(m)?;
    ground.check(r)?;
    if c1 == 0 || c2 == 0 {
        return Err(Error::invalid("c1 and c2 must be positive"));
    }
    let want = c1 * (d + 1) + 1;
    if r.len() != want {
        return Err(Error::invalid(format!(
            "R must have c1·(d+1)+1 = {want} elements, got {}",
            r.len()
        )));
    }
    Ok(ground)
}

/// Parameters of the constrained-maximization instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HardCmParams {
    pub m: usize,
    pub d: usize,
    pub c1: usize,
    pub c2: usize,
    #[serde(rename = "R")]
    pub r: Subset,
}

impl HardCmParams {
    pub fn new(m: usize, d: usize, c1: usize, c2: usize, r: Subset) -> Result<Self> {
        check_common(m, d, c1, c2, r)?;
        Ok(HardCmParams { m, d, c1, c2, r })
    }

    /// `R` placed on the highest indices, where smallest-mask tie-breaking
    /// never looks first.
    pub fn adversarial(m: usize, d: usize, c1: usize, c2: usize) -> Result<Self> {
        let r = c1 * (d + 1) + 1;
        if r > m {
            return Err(Error::invalid(format!("|R| = {r} exceeds m = {m}")));
        }
        Self::new(m, d, c1, c2, Subset::from_elements(m - r..m))
    }

    pub fn big_d(&self) -> usize {
        self.d + 1
    }

    /// Cardinality at which the gap is read off, `(c1 + c2)·D`.
    pub fn k(&self) -> usize {
        (self.c1 + self.c2) * self.big_d()
    }

    /// The six-branch formula.
    pub fn g(&self, size: usize, has_r: bool) -> usize {
        let (c1, c2, dd) = (self.c1, self.c2, self.big_d());
        let mid = (c1 + c2) * dd;
        let top = mid + c2 * (dd - 1);
        if size <= c1 * dd {
            size / dd
        } else if size <= mid {
            if has_r {
                size - c1 * (dd - 1)
            } else {
                (size - c1 * dd) / dd + c1
            }
        } else if size <= top {
            if has_r {
                c1 + c2 * dd
            } else {
                size - (c1 + c2) * (dd - 1)
            }
        } else {
            c1 + c2 * dd
        }
    }
}

/// `f_R` for cardinality-constrained maximization.
#[derive(Debug, Clone)]
pub struct HardConstrained<S> {
    params: HardCmParams,
    ground: GroundSet,
    counter: QueryCounter,
    _scalar: PhantomData<S>,
}

impl<S: Scalar> HardConstrained<S> {
    pub fn new(params: HardCmParams) -> Self {
        HardConstrained {
            ground: GroundSet::new(params.m).expect("validated"),
            params,
            counter: QueryCounter::new(),
            _scalar: PhantomData,
        }
    }

    pub fn params(&self) -> &HardCmParams {
        &self.params
    }
}

impl<S: Scalar> SetFunction<S> for HardConstrained<S> {
    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn value(&self, set: Subset) -> S {
        S::from_count(self.params.g(set.len(), self.params.r.is_subset_of(set)))
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

impl<S: Scalar> TwoClass<S> for HardConstrained<S> {
    fn special(&self) -> Subset {
        self.params.r
    }
    fn profile(&self, inside: usize, outside: usize) -> S {
        S::from_count(self.params.g(inside + outside, inside == self.params.r.len()))
    }
}

/// The four-branch welfare formula for a single `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HardWmFormula {
    pub m: usize,
    pub d: usize,
    pub c1: usize,
    pub c2: usize,
    #[serde(rename = "R")]
    pub r: Subset,
}

impl HardWmFormula {
    pub fn new(m: usize, d: usize, c1: usize, c2: usize, r: Subset) -> Result<Self> {
        check_common(m, d, c1, c2, r)?;
        Ok(HardWmFormula { m, d, c1, c2, r })
    }

    pub fn big_d(&self) -> usize {
        self.d + 1
    }

    pub fn g(&self, size: usize, has_r: bool) -> usize {
        let (c1, c2, dd) = (self.c1, self.c2, self.big_d());
        let cap = c1 + c2 * dd;
        if !has_r {
            if size < c1 * dd + c2 * dd * dd {
                size / dd
            } else {
                cap
            }
        } else if size < (c1 + c2) * dd {
            size - c1 * (dd - 1)
        } else {
            cap
        }
    }
}

/// One agent's `f_{R_i}` in the welfare instance.
#[derive(Debug, Clone)]
pub struct HardWelfare<S> {
    formula: HardWmFormula,
    ground: GroundSet,
    counter: QueryCounter,
    _scalar: PhantomData<S>,
}

impl<S: Scalar> HardWelfare<S> {
    pub fn new(formula: HardWmFormula) -> Self {
        HardWelfare {
            ground: GroundSet::new(formula.m).expect("validated"),
            formula,
            counter: QueryCounter::new(),
            _scalar: PhantomData,
        }
    }

    pub fn formula(&self) -> &HardWmFormula {
        &self.formula
    }
}

impl<S: Scalar> SetFunction<S> for HardWelfare<S> {
    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn value(&self, set: Subset) -> S {
        S::from_count(self.formula.g(set.len(), self.formula.r.is_subset_of(set)))
    }
    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

impl<S: Scalar> TwoClass<S> for HardWelfare<S> {
    fn special(&self) -> Subset {
        self.formula.r
    }
    fn profile(&self, inside: usize, outside: usize) -> S {
        S::from_count(self.formula.g(inside + outside, inside == self.formula.r.len()))
    }
}

/// Parameters of the `n`-agent welfare instance; `m = n·(c1 + c2)·D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HardWmParams {
    pub d: usize,
    pub c1: usize,
    pub c2: usize,
    pub n: usize,
    #[serde(rename = "R")]
    pub rs: Vec<Subset>,
}

impl HardWmParams {
    pub fn new(d: usize, c1: usize, c2: usize, rs: Vec<Subset>) -> Result<Self> {
        let n = rs.len();
        if n == 0 {
            return Err(Error::invalid("need at least one agent"));
        }
        let p = HardWmParams { d, c1, c2, n, rs };
        let m = p.m();
        let mut seen = Subset::EMPTY;
        for &r in &p.rs {
            check_common(m, d, c1, c2, r)?;
            if !r.is_disjoint(seen) {
                return Err(Error::invalid("the sets R_i must be pairwise disjoint"));
            }
            seen = seen.union(r);
        }
        Ok(p)
    }

    /// `R_i` starts block `i` of `s = (c1 + c2)·D` consecutive items.
    pub fn blocked(d: usize, c1: usize, c2: usize, n: usize) -> Result<Self> {
        let s = (c1 + c2) * (d + 1);
        let r = c1 * (d + 1) + 1;
        Self::new(d, c1, c2, (0..n).map(|i| Subset::from_elements(i * s..i * s + r)).collect())
    }

    pub fn m(&self) -> usize {
        self.n * (self.c1 + self.c2) * (self.d + 1)
    }

    /// Welfare when every agent receives its own `R_i`.
    pub fn optimum(&self) -> usize {
        self.n * (self.c1 + self.c2 * (self.d + 1))
    }
}

/// One oracle per agent.
pub fn hard_wm_instance<S: Scalar>(p: &HardWmParams) -> Result<Vec<HardWelfare<S>>> {
    p.rs.iter()
        .map(|&r| Ok(HardWelfare::new(HardWmFormula::new(p.m(), p.d, p.c1, p.c2, r)?)))
        .collect()
}

/// Oracle for the constrained instance.
pub fn hard_cm_instance<S: Scalar>(p: HardCmParams) -> HardConstrained<S> {
    HardConstrained::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(m: usize) -> HardConstrained<f64> {
        hard_cm_instance(HardCmParams::adversarial(m, 1, 1, 2).unwrap())
    }

    #[test]
    fn constrained_branches() {
        let f = cm(12);
        // R = {9, 10, 11}
        assert_eq!(f.value(Subset::from_elements([0, 1])), 1.0);
        assert_eq!(f.value(Subset::from_elements(0..8)), 5.0);
        assert_eq!(f.value(Subset::from_elements(0..6)), 3.0);
        assert_eq!(f.value(Subset::from_elements([0, 1, 2, 9, 10, 11])), 5.0);
        assert_eq!(f.value(Subset::from_elements(0..7)), 4.0);
    }

    #[test]
    fn stepping_property() {
        let f = cm(12);
        let p = f.params();
        let dd = p.big_d();
        // past the last growing cardinality every margin is 0, and so is
        // every margin of a set that already holds R and has reached the cap
        let top = p.k() + p.c2 * (dd - 1);
        let capped = |s: Subset| p.r.is_subset_of(s) && s.len() > p.k();
        for s in f
            .ground()
            .subsets()
            .filter(|&s| s.len() % dd == dd - 1 && s.len() < top && !capped(s))
        {
            // a step that completes R jumps by more than 1
            let completes = |v: usize| !p.r.is_subset_of(s) && p.r.is_subset_of(s.with(v));
            for v in (0..12).filter(|&v| !s.contains(v) && !completes(v)) {
                assert_eq!(f.value(s.with(v)) - f.value(s), 1.0, "{s} + {v}");
            }
        }
    }

    #[test]
    fn rejects_bad_r() {
        assert!(HardCmParams::new(12, 1, 1, 2, Subset::from_elements([0, 1])).is_err());
        assert!(HardWmParams::new(1, 1, 2, vec![Subset(0b111), Subset(0b1100)]).is_err());
    }

    #[test]
    fn welfare_branches() {
        let p = HardWmParams::blocked(1, 1, 2, 2).unwrap();
        assert_eq!(p.m(), 12);
        let fs = hard_wm_instance::<f64>(&p).unwrap();
        let r0 = p.rs[0];
        assert_eq!(fs[0].value(r0), 2.0);
        assert_eq!(fs[0].value(Subset::from_elements(0..6)), 5.0);
        assert_eq!(fs[0].value(Subset::from_elements(3..9)), 3.0);
        // R ⊄ S and |S| >= c1·D + c2·D²
        assert_eq!(fs[0].value(Subset::from_elements(3..13 - 1)), 4.0);
        assert_eq!(fs[0].value(Subset::from_elements(1..12)), 5.0);
    }
}
