use crate::error::{require_at_most, Result};
use crate::scalar::Scalar;
use crate::subset::{Subset, MAX_EXPLICIT_M};

use super::{ExplicitFunction, HypergraphFunction, SetFunction};

/// In-place subset-sum (zeta) transform: `t[S] ← Σ_{T ⊆ S} t[T]`.
pub fn zeta_table<S: Scalar>(table: &mut [S]) {
    assert!(table.len().is_power_of_two());
    let n = table.len();
    let mut bit = 1;
    while bit < n {
        for s in 0..n {
            if s & bit != 0 {
                let lo = table[s ^ bit];
                table[s] += lo;
            }
        }
        bit <<= 1;
    }
}

/// In-place inverse of [`zeta_table`] (Möbius inversion).
pub fn mobius_table<S: Scalar>(table: &mut [S]) {
    assert!(table.len().is_power_of_two());
    let n = table.len();
    let mut bit = 1;
    while bit < n {
        for s in 0..n {
            if s & bit != 0 {
                let lo = table[s ^ bit];
                table[s] -= lo;
            }
        }
        bit <<= 1;
    }
}

/// The unique hypergraph representation `h` with `Σ_{T ⊆ S} h(T) = f(S)`.
pub fn mobius_transform<S: Scalar>(f: &ExplicitFunction<S>) -> Result<HypergraphFunction<S>> {
    let m = f.size();
    require_at_most("Möbius transform", m, MAX_EXPLICIT_M)?;
    let mut h: Vec<S> = f.ground().subsets().map(|s| f.query(s)).collect();
    mobius_table(&mut h);
    HypergraphFunction::new(
        m,
        h.into_iter()
            .enumerate()
            .skip(1)
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| (Subset(i as u64), w)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::{tabulate, SymmetricFunction};

    #[test]
    fn additive_has_singleton_edges() {
        let f = ExplicitFunction::new(2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let h = mobius_transform(&f).unwrap();
        let edges: Vec<_> = h.edges().collect();
        assert_eq!(edges, vec![(Subset(1), 1.0), (Subset(2), 2.0)]);
    }

    #[test]
    fn two_level_round_trip() {
        let g = SymmetricFunction::new(3, vec![0.0f64, 1.0, 1.0, 2.0]).unwrap();
        let f = ExplicitFunction::new(3, tabulate(&g).unwrap()).unwrap();
        let h = mobius_transform(&f).unwrap();
        // inclusion–exclusion by hand: singletons 1, pairs -1, triple 2
        assert_eq!(h.weight(Subset(0b001)), 1.0);
        assert_eq!(h.weight(Subset(0b011)), -1.0);
        assert_eq!(h.weight(Subset(0b111)), 2.0);
        for s in f.ground().subsets() {
            assert!((h.value(s) - f.value(s)).abs() < 1e-9);
        }
    }
}
