//! Complementarity measures: supermodular degree, supermodular and
//! superadditive widths, scopic predicates, PH level and MPH membership.

mod degree;
mod orbit;
mod ph;
mod scopic;
mod sets;

pub use degree::{dep_plus, supermodular_degree};
pub use orbit::{two_class_superadditive_width, two_class_supermodular_width};
pub use ph::{mph_decomposition, mph_level_at_most, ph_level, PhLevel};
pub use scopic::{is_d_scopic_subadditive, is_d_scopic_submodular};
pub use sets::{
    check_superadditive_witness, check_supermodular_witness, is_superadditive_set,
    is_supermodular_set, superadditive_width, supermodular_width, SuperadditiveWitness,
    SupermodularWitness,
};

use serde::Serialize;

use crate::error::{require_at_most, Result};
use crate::scalar::Scalar;
use crate::setfn::{tabulate, SetFunction};
use crate::subset::Subset;

/// Largest `m` for which a full [`WidthReport`] is computed.
pub const REPORT_LIMIT: usize = sets::SET_LIMIT;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WidthReport {
    pub m: usize,
    pub sd: usize,
    pub dep_plus: Vec<Subset>,
    pub smw: usize,
    pub smw_witness: Option<SupermodularWitness>,
    pub saw: usize,
    pub saw_witness: Option<SuperadditiveWitness>,
    pub ph_level: PhLevel,
}

/// All measures from one tabulation. Needs `m <= 12`.
pub fn width_report<S: Scalar, F: SetFunction<S> + ?Sized>(f: &F) -> Result<WidthReport> {
    let m = f.size();
    require_at_most("width report", m, REPORT_LIMIT)?;
    let t = tabulate(f)?;
    let (sd, deps) = degree::degree_in(&t, m);
    let (smw, smw_witness) = sets::supermodular_width_in(&t, m);
    let (saw, saw_witness) = sets::superadditive_width_in(&t, m);
    Ok(WidthReport {
        m,
        sd,
        dep_plus: deps,
        smw,
        smw_witness,
        saw,
        saw_witness,
        ph_level: ph::ph_level_in(&t),
    })
}
