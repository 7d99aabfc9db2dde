//! Hochster's formula: a combinatorial oracle for Stanley-Reisner Betti
//! tables.
//!
//! For a complex `K` on `m` vertices,
//!
//! ```text
//! beta^{-i,2j}(Q[K]) = Σ_{W ⊆ [m], |W| = j} dim H~^{j-i-1}(K_W; Q)
//! ```
//!
//! where `K_W` is the full subcomplex on `W` and reduced cohomology follows
//! the convention `H~^{-1}({∅}) = Q`. The route to the same table is disjoint
//! from the Koszul engine — subset-by-subset simplicial cohomology instead of
//! strand matrices over a monomial basis — which is what makes it a useful
//! cross-check. A ghost vertex `v` shows up here through `W = {v}`, whose
//! full subcomplex is `{∅}`, contributing `beta^{-1,2} = 1`.

use crate::koszul::BettiTable;
use crate::simplicial::SimplicialComplex;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// The formula walks all `2^m` vertex subsets; refuse beyond this.
pub const SUBSET_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HochsterError {
    #[error("{vertex_count} vertices exceeds the Hochster subset cap {SUBSET_CAP} (2^m subcomplexes)")]
    SubsetCapExceeded { vertex_count: usize },
}

/// Betti table of `Q[K]` via Hochster's formula.
pub fn hochster_betti(complex: &SimplicialComplex) -> Result<BettiTable, HochsterError> {
    let m = complex.vertex_count();
    if m > SUBSET_CAP {
        return Err(HochsterError::SubsetCapExceeded { vertex_count: m });
    }
    // Subsets in (cardinality, mask) order; each contributes independently,
    // so the parallel fold below reduces in any grouping to the same table.
    let mut subsets: Vec<u64> = (0..(1u64 << m)).collect();
    subsets.sort_by_key(|&w| (w.count_ones(), w));
    let entries = subsets
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<(usize, usize), u64>, &w| {
            let j = w.count_ones() as usize;
            let sub = complex.full_subcomplex(w);
            for (qi, dim) in sub.reduced_cohomology_dims().into_iter().enumerate() {
                if dim > 0 {
                    // Entry qi holds degree q = qi - 1, so i = j - q - 1 = j - qi.
                    let i = j - qi;
                    *acc.entry((i, j)).or_insert(0) += dim as u64;
                }
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(BettiTable::from_entries(m, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;
    use crate::grmod::stanley_reisner;
    use crate::koszul::betti_table;
    use crate::simplicial::{enumerate_complexes, SimplicialComplex};

    #[test]
    fn full_simplex_has_trivial_table() {
        let k = SimplicialComplex::from_facets(4, &[vec![1, 2, 3, 4]]).unwrap();
        let t = hochster_betti(&k).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        assert_eq!(t.hrk(), 1);
    }

    #[test]
    fn empty_complex_gives_binomials() {
        let k = SimplicialComplex::from_facets(5, &[]).unwrap();
        let t = hochster_betti(&k).unwrap();
        for i in 0..=5 {
            assert_eq!(t.beta(i, i), binomial(5, i));
        }
        assert_eq!(t.hrk(), 32);
    }

    #[test]
    fn ghost_vertex_contributes_one_in_degree_minus_one() {
        // A single edge plus one ghost vertex.
        let k = SimplicialComplex::from_facets(3, &[vec![1, 2]]).unwrap();
        let t = hochster_betti(&k).unwrap();
        assert_eq!(t.beta(1, 1), 1, "ghost vertex 3 contributes beta^(-1,2)");
    }

    #[test]
    fn square_table_matches_golden_values() {
        let k = SimplicialComplex::from_facets(
            4,
            &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]],
        )
        .unwrap();
        let t = hochster_betti(&k).unwrap();
        assert_eq!(
            t.entries().collect::<Vec<_>>(),
            vec![((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]
        );
    }

    #[test]
    fn cap_is_enforced() {
        let k = SimplicialComplex::from_facets(13, &[]).unwrap();
        assert!(matches!(
            hochster_betti(&k).unwrap_err(),
            HochsterError::SubsetCapExceeded { vertex_count: 13 }
        ));
    }

    #[test]
    fn agrees_with_koszul_on_all_small_complexes() {
        for m in 0..=3 {
            for k in enumerate_complexes(m).unwrap() {
                let via_koszul = betti_table(&stanley_reisner(&k, m), m).unwrap();
                let via_hochster = hochster_betti(&k).unwrap();
                assert_eq!(via_koszul, via_hochster, "mismatch on {k:?}");
            }
        }
    }
}
