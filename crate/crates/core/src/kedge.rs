//! Crossings, triangle orientations and the k-edge machinery of a drawing.
//!
//! The k-value of an edge is read off the matrix: for entry `(i, j)` count
//! the same-colored entries to its right in row `i` and above it in column
//! `j`. That raw count is the number of vertices on one side of the edge;
//! the reported value is folded to `min(k, n - 2 - k)`.

use thiserror::Error;

use crate::count::binomial;
use crate::drawing::{bits_between, entries, Color, Drawing, EntryMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KEdgeError {
    #[error("cannot delete {c} vertices from a drawing of K_{n}: at least 3 must remain")]
    DeletionOutOfRange { n: usize, c: usize },
    #[error("k = {k} is outside 0..={max} for n = {n}")]
    KOutOfRange { n: usize, k: usize, max: usize },
}

/// Number of pairs of same-page edges whose endpoints interleave.
pub fn crossings_direct(d: &Drawing) -> u64 {
    let n = d.n();
    let mut total = 0u64;
    for i in 1..n {
        for j in i + 2..=n {
            let color = d.color(i, j);
            let beyond = bits_between(j, n + 1);
            for k in i + 1..j {
                total += (d.row_mask(k, color) & beyond).count_ones() as u64;
            }
        }
    }
    total
}

/// Number of edges crossing edge `(i, j)`.
pub fn edge_crossings(d: &Drawing, i: usize, j: usize) -> u64 {
    let n = d.n();
    let color = d.color(i, j);
    let mut total = 0u64;
    let beyond = bits_between(j, n + 1);
    for k in i + 1..j {
        total += (d.row_mask(k, color) & beyond).count_ones() as u64;
    }
    let inside = bits_between(i, j);
    for k in 1..i {
        total += (d.row_mask(k, color) & inside).count_ones() as u64;
    }
    total
}

/// Orientation of the triangle `i -> j -> l` for `i < j`: `true` when
/// counterclockwise.
pub fn is_counterclockwise(d: &Drawing, i: usize, j: usize, l: usize) -> bool {
    debug_assert!(i < j && l != i && l != j);
    if l < i {
        d.color(l, j) == Color::Blue
    } else if l > j {
        d.color(i, l) == Color::Blue
    } else {
        d.color(i, j) == Color::Red
    }
}

/// Unfolded side counts of every entry of a (possibly unnormalized) matrix.
pub(crate) fn raw_side_counts(n: usize, red: &[u64]) -> EntryMap<u32> {
    let mut red_columns = vec![0u64; n + 1];
    for (i, &row) in red.iter().enumerate().take(n).skip(1) {
        for (j, column) in red_columns.iter_mut().enumerate().skip(i + 1) {
            if row >> j & 1 == 1 {
                *column |= 1 << i;
            }
        }
    }
    EntryMap::from_fn(n, |i, j| {
        let is_red = red[i] >> j & 1 == 1;
        let right = bits_between(j, n + 1);
        let above = bits_between(0, i);
        let (row, column) = if is_red {
            (red[i], red_columns[j])
        } else {
            (
                bits_between(i, n + 1) & !red[i],
                bits_between(0, j) & !red_columns[j],
            )
        };
        (row & right).count_ones() + (column & above).count_ones()
    })
}

#[inline]
fn fold(n: usize, raw: u32) -> u32 {
    raw.min(n as u32 - 2 - raw)
}

/// Unfolded side count of every entry.
pub fn raw_k_values(d: &Drawing) -> EntryMap<u32> {
    raw_side_counts(d.n(), d.red_rows())
}

/// Folded k-value of every entry, in `0..=floor(n/2) - 1`.
pub fn entry_k_values(d: &Drawing) -> EntryMap<u32> {
    let n = d.n();
    let raw = raw_k_values(d);
    EntryMap::from_fn(n, |i, j| fold(n, *raw.get(i, j)))
}

/// Counts of k-edges with their prefix and double prefix sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KEdgeProfile {
    pub n: usize,
    /// `e[k]` is the number of k-edges, `0 <= k <= floor(n/2) - 1`.
    pub e: Vec<u64>,
    /// Number of `<=k`-edges.
    pub e_leq: Vec<u64>,
    /// Number of `<=<=k`-edges: `sum_{i<=k} (k + 1 - i) e[i]`.
    pub e_leqleq: Vec<u64>,
}

impl KEdgeProfile {
    pub fn from_counts(n: usize, e: Vec<u64>) -> Self {
        let e_leq: Vec<u64> = e
            .iter()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        let e_leqleq = e_leq
            .iter()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        KEdgeProfile {
            n,
            e,
            e_leq,
            e_leqleq,
        }
    }

    /// `E_<=k`, zero for negative `k`.
    pub fn leq(&self, k: i64) -> u64 {
        if k < 0 {
            0
        } else {
            self.e_leq[k as usize]
        }
    }

    /// `E_<=<=k`, zero for negative `k`.
    pub fn leqleq(&self, k: i64) -> u64 {
        if k < 0 {
            0
        } else {
            self.e_leqleq[k as usize]
        }
    }

    /// Largest valid k, `floor(n/2) - 1`.
    pub fn max_k(&self) -> usize {
        self.e.len() - 1
    }
}

fn profile_of(n: usize, folded: impl Iterator<Item = u32>) -> KEdgeProfile {
    let mut e = vec![0u64; n / 2];
    for k in folded {
        e[k as usize] += 1;
    }
    KEdgeProfile::from_counts(n, e)
}

pub fn k_edge_profile(d: &Drawing) -> KEdgeProfile {
    let n = d.n();
    profile_of(n, raw_k_values(d).values().iter().map(|&raw| fold(n, raw)))
}

/// Profile of the drawing of `K_{n-1}` obtained by deleting vertex `n`,
/// taken before the outer edge `(1, n - 1)` is recolored blue.
pub fn vertex_deleted_profile(d: &Drawing) -> KEdgeProfile {
    let n = d.n() - 1;
    let rows = truncated_rows(d, 1);
    profile_of(
        n,
        raw_side_counts(n, &rows)
            .values()
            .iter()
            .map(|&raw| fold(n, raw)),
    )
}

/// `3 C(n,4) - sum_k k (n - 2 - k) E_k`.
pub fn crossings_via_kedges(d: &Drawing) -> i64 {
    let n = d.n() as i64;
    let profile = k_edge_profile(d);
    let weighted: i64 = profile
        .e
        .iter()
        .enumerate()
        .map(|(k, &count)| k as i64 * (n - 2 - k as i64) * count as i64)
        .sum();
    3 * binomial(n as u64, 4) as i64 - weighted
}

/// Crossing count expressed through `<=<=k`-edges.
pub fn crossings_via_leqleq(d: &Drawing) -> i64 {
    let n = d.n() as i64;
    let profile = k_edge_profile(d);
    let top = n / 2 - 2;
    let sum: i64 = (0..=top).map(|k| profile.leqleq(k) as i64).sum();
    let pairs = binomial(n as u64, 2) as i64;
    let parity = if n % 2 == 0 { 2 } else { 0 };
    let doubled = 4 * sum - pairs * ((n - 2) / 2) - parity * profile.leqleq(top) as i64;
    debug_assert_eq!(doubled % 2, 0);
    doubled / 2
}

/// Classification of the induced `K_4` subdrawings.
///
/// A quadruple whose subdrawing has a crossing is of type B or C; the two
/// are not told apart and their total is held in `t_b`, with `t_c` always 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct K4Census {
    pub t_a: u64,
    pub t_b: u64,
    pub t_c: u64,
    pub separations: u64,
}

impl K4Census {
    pub fn crossing_quadruples(&self) -> u64 {
        self.t_b + self.t_c
    }
}

pub fn k4_census(d: &Drawing) -> K4Census {
    let n = d.n();
    let mut census = K4Census::default();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for e in c + 1..=n {
                    let quad = [a, b, c, e];
                    if d.color(a, c) == d.color(b, e) {
                        census.t_b += 1;
                    } else {
                        census.t_a += 1;
                    }
                    census.separations += quadruple_separations(d, quad);
                }
            }
        }
    }
    census
}

fn quadruple_separations(d: &Drawing, quad: [usize; 4]) -> u64 {
    let mut count = 0;
    for x in 0..4 {
        for y in x + 1..4 {
            let (p, q) = (quad[x], quad[y]);
            let mut others = quad.iter().copied().filter(|&v| v != p && v != q);
            let (r, s) = (others.next().unwrap(), others.next().unwrap());
            if is_counterclockwise(d, p, q, r) != is_counterclockwise(d, p, q, s) {
                count += 1;
            }
        }
    }
    count
}

fn truncated_rows(d: &Drawing, c: usize) -> Vec<u64> {
    let m = d.n() - c;
    let keep = bits_between(0, m + 1);
    d.red_rows()[..=m].iter().map(|row| row & keep).collect()
}

/// Deletes the last `c` vertices. The new outer entry `(1, n - c)` is
/// recolored blue if it was red.
pub fn suffix_delete(d: &Drawing, c: usize) -> Result<Drawing, KEdgeError> {
    let n = d.n();
    if c + 3 > n {
        return Err(KEdgeError::DeletionOutOfRange { n, c });
    }
    Ok(Drawing::from_red_rows_normalized(
        n - c,
        truncated_rows(d, c),
    ))
}

/// Number of `(D, D')`-invariant `<=k`-edges, where `D'` deletes vertex `n`
/// from `D`: edges not at `n` that are `j`-edges of both drawings for some
/// `j <= k`.
pub fn invariant_leq_k_count(d: &Drawing, k: usize) -> Result<u64, KEdgeError> {
    let n = d.n();
    let max = n / 2 - 1;
    if k > max {
        return Err(KEdgeError::KOutOfRange { n, k, max });
    }
    let full = raw_k_values(d);
    let reduced = raw_side_counts(n - 1, &truncated_rows(d, 1));
    let count = entries(n - 1)
        .filter(|&(i, j)| {
            let a = *full.get(i, j) as usize;
            let b = *reduced.get(i, j) as usize;
            let in_full = |j: usize| j == a || j + a == n - 2;
            let in_reduced = |j: usize| j == b || j + b == n - 3;
            (0..=k).any(|j| in_full(j) && in_reduced(j))
        })
        .count();
    Ok(count as u64)
}
