//! The projective plane PG(2, q) for prime `q`, and its single-minded
//! auction instance.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::setfn::HypergraphFunction;
use crate::subset::{Subset, MAX_M};

use super::fixtures::single_minded;

#[derive(Debug, Clone)]
pub struct ProjectivePlane<S> {
    pub q: usize,
    /// Normalized homogeneous coordinates (first nonzero entry is 1).
    pub points: Vec<[usize; 3]>,
    /// Each line as the set of point indices on it.
    pub lines: Vec<Subset>,
    /// Player `i` wants exactly line `i`.
    pub valuations: Vec<HypergraphFunction<S>>,
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| !q.is_multiple_of(p))
}

fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(q * q + q + 1);
    for y in 0..q {
        for z in 0..q {
            out.push([1, y, z]);
        }
    }
    for z in 0..q {
        out.push([0, 1, z]);
    }
    out.push([0, 0, 1]);
    out
}

impl<S: Scalar> ProjectivePlane<S> {
    pub fn new(q: usize) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::invalid(format!("q = {q} is not prime")));
        }
        let points = normalized_triples(q);
        let m = points.len();
        if m > MAX_M {
            return Err(Error::ResourceLimit {
                what: "projective plane points",
                limit: MAX_M,
                m,
            });
        }
        let lines: Vec<Subset> = normalized_triples(q)
            .iter()
            .map(|l| {
                (0..m)
                    .filter(|&p| {
                        let x = points[p];
                        (l[0] * x[0] + l[1] * x[1] + l[2] * x[2]).is_multiple_of(q)
                    })
                    .collect()
            })
            .collect();
        let valuations = lines
            .iter()
            .map(|&l| single_minded(m, l, S::one()))
            .collect::<Result<_>>()?;
        Ok(ProjectivePlane {
            q,
            points,
            lines,
            valuations,
        })
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    /// Largest number of pairwise-disjoint lines (1, since any two meet).
    pub fn max_disjoint_lines(&self) -> usize {
        let n = self.lines.len();
        let mut best = 0;
        fn grow(lines: &[Subset], from: usize, used: Subset, count: usize, best: &mut usize) {
            *best = (*best).max(count);
            for i in from..lines.len() {
                if lines[i].is_disjoint(used) {
                    grow(lines, i + 1, used.union(lines[i]), count + 1, best);
                }
            }
        }
        if n > 0 {
            grow(&self.lines, 0, Subset::EMPTY, 0, &mut best);
        }
        best
    }
}

pub fn projective_plane_instance<S: Scalar>(q: usize) -> Result<ProjectivePlane<S>> {
    ProjectivePlane::new(q)
}
