//! Structural checks that crossing-optimal drawings are known to pass.

use std::fmt;

use thiserror::Error;

use crate::construct::{structure_template, ConstructError};
use crate::count::binomial;
use crate::drawing::{entries, Color, Drawing};
use crate::kedge::{edge_crossings, entry_k_values, k_edge_profile};
use crate::transform::{apply, GroupElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("structure checks need n >= 6, got {0}")]
    StructureSize(usize),
    #[error("k = {k} outside 0..={max} for n = {n}")]
    KOutOfRange { n: usize, k: usize, max: i64 },
    #[error("uncrossed subgraph has {edges} edges, above the cap of {cap}")]
    TooDense { edges: usize, cap: usize },
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// An entry whose color contradicts the structure template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub expected: Color,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}) expected {}",
            self.i,
            self.j,
            self.expected.name()
        )
    }
}

/// Entries of `d` that break the fixed cells of the structure template,
/// compared literally (no symmetry applied).
pub fn check_structure(d: &Drawing) -> Result<Vec<Violation>, AnalysisError> {
    if d.n() < 6 {
        return Err(AnalysisError::StructureSize(d.n()));
    }
    let template = structure_template(d.n())?;
    Ok(template
        .violations(d)
        .into_iter()
        .map(|((i, j), expected)| Violation { i, j, expected })
        .collect())
}

/// First group element (in [`GroupElement::all`] order) whose image of `d`
/// conforms to the structure template, with that image.
pub fn conforming_equivalent(
    d: &Drawing,
) -> Result<Option<(GroupElement, Drawing)>, AnalysisError> {
    if d.n() < 6 {
        return Err(AnalysisError::StructureSize(d.n()));
    }
    let template = structure_template(d.n())?;
    Ok(GroupElement::all(d.n()).into_iter().find_map(|t| {
        let image = apply(d, t);
        template.conforms(&image).then_some((t, image))
    }))
}

/// Edges crossed by no other edge, as `(i, j)` with `i < j`.
pub fn uncrossed_edges(d: &Drawing) -> Vec<(usize, usize)> {
    entries(d.n())
        .filter(|&(i, j)| edge_crossings(d, i, j) == 0)
        .collect()
}

/// Default cap on uncrossed edges for the Hamiltonian cycle search.
pub fn default_edge_cap(n: usize) -> usize {
    2 * n
}

/// Hamiltonian cycles of the uncrossed subgraph, using the default edge cap.
pub fn uncrossed_hamiltonian_cycles(d: &Drawing) -> Result<Vec<Vec<usize>>, AnalysisError> {
    uncrossed_hamiltonian_cycles_capped(d, default_edge_cap(d.n()))
}

/// Hamiltonian cycles of the uncrossed subgraph. Each cycle starts at vertex
/// 1 and continues to its smaller neighbour; cycles are sorted.
/// Fails when the subgraph has more than `max_edges` edges.
pub fn uncrossed_hamiltonian_cycles_capped(
    d: &Drawing,
    max_edges: usize,
) -> Result<Vec<Vec<usize>>, AnalysisError> {
    let n = d.n();
    let edges = uncrossed_edges(d);
    if edges.len() > max_edges {
        return Err(AnalysisError::TooDense {
            edges: edges.len(),
            cap: max_edges,
        });
    }
    let mut adjacent = vec![0u64; n + 1];
    for &(i, j) in &edges {
        adjacent[i] |= 1 << j;
        adjacent[j] |= 1 << i;
    }
    let mut cycles = Vec::new();
    let mut path = vec![1usize];
    extend_path(&adjacent, n, 1 << 1, &mut path, &mut cycles);
    cycles.sort();
    Ok(cycles)
}

fn extend_path(
    adjacent: &[u64],
    n: usize,
    visited: u64,
    path: &mut Vec<usize>,
    cycles: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("path starts at 1");
    if path.len() == n {
        if adjacent[last] >> 1 & 1 == 1 && (n < 3 || path[1] < last) {
            cycles.push(path.clone());
        }
        return;
    }
    let mut options = adjacent[last] & !visited;
    while options != 0 {
        let next = options.trailing_zeros() as usize;
        options &= options - 1;
        path.push(next);
        extend_path(adjacent, n, visited | 1 << next, path, cycles);
        path.pop();
    }
}

fn check_k(n: usize, k: usize) -> Result<(), AnalysisError> {
    let max = (n / 2) as i64 - 2;
    if k as i64 > max {
        return Err(AnalysisError::KOutOfRange { n, k, max });
    }
    Ok(())
}

/// Whether every `<=k`-edge lies in the first `k + 1` rows or the last
/// `k + 1` columns of the matrix.
pub fn support_check(d: &Drawing, k: usize) -> Result<bool, AnalysisError> {
    let n = d.n();
    check_k(n, k)?;
    let values = entry_k_values(d);
    let supported = values
        .iter()
        .all(|((i, j), &v)| v as usize > k || i <= k + 1 || j + k >= n);
    Ok(supported)
}

/// The entries that must be halving edges in an optimal drawing.
pub fn halving_entries(n: usize) -> [(usize, usize); 3] {
    let (lo, hi) = (n / 2, n.div_ceil(2));
    [(lo, hi + 1), (lo, lo + 1), (hi, hi + 1)]
}

/// Whether the three central entries are halving edges.
pub fn halving_check(d: &Drawing) -> bool {
    let n = d.n();
    let values = entry_k_values(d);
    let halving = (n / 2 - 1) as u32;
    halving_entries(n)
        .iter()
        .all(|&(i, j)| j <= n && *values.get(i, j) == halving)
}

/// Values of `k` for which the bounds below are claimed: `0 <= k < n/2 - 1`.
pub fn bound_range(n: usize) -> std::ops::Range<usize> {
    0..(n.saturating_sub(1)) / 2
}

/// Values of `k` covered by the optimal-drawing checks: `0 <= k <= floor(n/2) - 2`.
pub fn optimal_range(n: usize) -> std::ops::Range<usize> {
    0..(n / 2).saturating_sub(1)
}

/// `k` values with `E_<=k < 3 C(k+2, 2)`. Empty for optimal drawings; not
/// guaranteed in general.
pub fn leq_bound_failures(d: &Drawing) -> Vec<usize> {
    let profile = k_edge_profile(d);
    optimal_range(d.n())
        .filter(|&k| profile.leq(k as i64) < 3 * binomial(k as u64 + 2, 2))
        .collect()
}

/// `k` values with `E_<=<=k < 3 C(k+3, 3)`. Always empty for 2-page drawings.
pub fn leqleq_bound_failures(d: &Drawing) -> Vec<usize> {
    let profile = k_edge_profile(d);
    bound_range(d.n())
        .filter(|&k| profile.leqleq(k as i64) < 3 * binomial(k as u64 + 3, 3))
        .collect()
}

/// `k` values with `E_<=<=k != 3 C(k+3, 3)`. Empty for optimal drawings.
pub fn leqleq_equality_failures(d: &Drawing) -> Vec<usize> {
    let profile = k_edge_profile(d);
    optimal_range(d.n())
        .filter(|&k| profile.leqleq(k as i64) != 3 * binomial(k as u64 + 3, 3))
        .collect()
}

/// Pairs `(k, j)` where row `j <= k + 1` holds fewer than `2(k + 2 - j)`
/// entries with folded value at most `k`. Always empty.
pub fn row_count_failures(d: &Drawing) -> Vec<(usize, usize)> {
    let n = d.n();
    let values = entry_k_values(d);
    let mut failures = Vec::new();
    for k in bound_range(n) {
        for j in 1..=k + 1 {
            let count = (j + 1..=n)
                .filter(|&c| *values.get(j, c) as usize <= k)
                .count();
            if count < 2 * (k + 2 - j) {
                failures.push((k, j));
            }
        }
    }
    failures
}

/// Values `j` that appear fewer times in the last column than required:
/// twice for each `j < n/2 - 1`, and once for `n/2 - 1` when `n` is even.
/// Always empty.
pub fn last_column_failures(d: &Drawing) -> Vec<usize> {
    let n = d.n();
    let values = entry_k_values(d);
    let occurrences = |v: usize| (1..n).filter(|&r| *values.get(r, n) as usize == v).count();
    let mut failures: Vec<usize> = bound_range(n).filter(|&j| occurrences(j) < 2).collect();
    if n.is_multiple_of(2) && occurrences(n / 2 - 1) < 1 {
        failures.push(n / 2 - 1);
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{even_optimal, odd_family, random_drawing, FamilyMask};

    #[test]
    fn even_optimal_is_conforming_and_halving() {
        for n in (6..=20).step_by(2) {
            let d = even_optimal(n).unwrap();
            assert!(check_structure(&d).unwrap().is_empty());
            assert!(halving_check(&d));
            for k in 0..=n / 2 - 2 {
                assert!(support_check(&d, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn all_blue_violates() {
        let d = Drawing::all_blue(8).unwrap();
        let v = check_structure(&d).unwrap();
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.expected == Color::Red));
        assert!(conforming_equivalent(&d).unwrap().is_none());
        assert_eq!(
            check_structure(&Drawing::all_blue(5).unwrap()),
            Err(AnalysisError::StructureSize(5))
        );
    }

    #[test]
    fn violation_display() {
        let v = Violation {
            i: 2,
            j: 7,
            expected: Color::Blue,
        };
        assert_eq!(v.to_string(), "(2,7) expected blue");
    }

    #[test]
    fn family_has_one_spine_cycle() {
        let mask = FamilyMask::new(vec![false, true, true, false, true]);
        let d = odd_family(13, &mask).unwrap();
        let cycles = uncrossed_hamiltonian_cycles(&d).unwrap();
        assert_eq!(cycles, vec![(1..=13).collect::<Vec<_>>()]);
    }

    #[test]
    fn support_range() {
        let d = even_optimal(10).unwrap();
        assert!(matches!(
            support_check(&d, 4),
            Err(AnalysisError::KOutOfRange { .. })
        ));
    }

    #[test]
    fn universal_bounds_on_random_drawings() {
        for seed in 0..200 {
            let d = random_drawing(4 + (seed as usize % 20), seed).unwrap();
            assert!(row_count_failures(&d).is_empty());
            assert!(last_column_failures(&d).is_empty());
            assert!(leqleq_bound_failures(&d).is_empty());
        }
    }

    #[test]
    fn edge_cap_is_enforced() {
        let d = even_optimal(8).unwrap();
        assert!(matches!(
            uncrossed_hamiltonian_cycles_capped(&d, 3),
            Err(AnalysisError::TooDense { cap: 3, .. })
        ));
    }
}
