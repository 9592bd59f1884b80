//! Slow, independent reference computations used as test oracles.
//!
//! Nothing here shares code with the library beyond reading colors: the
//! crossing count loops over all edge pairs, and orientations come from the
//! signed area of the triangle drawn with semicircular arcs.

#![allow(dead_code)]

use twopage::{Color, Drawing};

/// Pairs of same-page edges whose endpoints interleave, by checking every pair.
pub fn pairwise_crossings(d: &Drawing) -> u64 {
    let n = d.n();
    let edges: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for (x, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[x + 1..] {
            let interleave = (a < c && c < b && b < e) || (c < a && a < e && e < b);
            if interleave && d.color(a, b) == d.color(c, e) {
                count += 1;
            }
        }
    }
    count
}

/// Signed area between the arc from `u` to `v` and the spine, scaled by `8/pi`.
fn arc_area(d: &Drawing, u: usize, v: usize) -> i64 {
    let (lo, hi) = (u.min(v), u.max(v));
    let len = (hi - lo) as i64;
    let upper = d.color(lo, hi) == Color::Blue;
    let left_to_right = u < v;
    // over the top from left to right is clockwise
    let sign = if upper == left_to_right { -1 } else { 1 };
    sign * len * len
}

/// Whether the closed curve `a -> b -> c -> a` runs counterclockwise.
pub fn geometric_ccw(d: &Drawing, a: usize, b: usize, c: usize) -> bool {
    arc_area(d, a, b) + arc_area(d, b, c) + arc_area(d, c, a) > 0
}

/// Vertices among `vertices` (other than `a`, `b`) to the left of `a -> b`.
pub fn side_count(d: &Drawing, a: usize, b: usize, vertices: impl Iterator<Item = usize>) -> usize {
    vertices
        .filter(|&c| c != a && c != b && geometric_ccw(d, a, b, c))
        .count()
}

/// Folded k-value of edge `ab` by counting triangle orientations.
pub fn oracle_k(d: &Drawing, a: usize, b: usize) -> usize {
    let n = d.n();
    let raw = side_count(d, a, b, 1..=n);
    raw.min(n - 2 - raw)
}

/// k-edge counts `E_0 ..= E_{floor(n/2)-1}` from the orientation oracle.
pub fn oracle_profile(d: &Drawing) -> Vec<u64> {
    let n = d.n();
    let mut e = vec![0u64; n / 2];
    for a in 1..=n {
        for b in a + 1..=n {
            e[oracle_k(d, a, b)] += 1;
        }
    }
    e
}

/// Total number of separations over all 4-subsets.
pub fn oracle_separations(d: &Drawing) -> u64 {
    let n = d.n();
    let mut total = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for e in c + 1..=n {
                    let quad = [a, b, c, e];
                    for x in 0..4 {
                        for y in x + 1..4 {
                            let rest: Vec<usize> = (0..4)
                                .filter(|&z| z != x && z != y)
                                .map(|z| quad[z])
                                .collect();
                            let (p, q) = (quad[x], quad[y]);
                            if geometric_ccw(d, p, q, rest[0]) != geometric_ccw(d, p, q, rest[1]) {
                                total += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    total
}

/// Edges avoiding vertex `n` that are `j`-edges of `d` and of `d` minus
/// vertex `n` for a common `j <= k`.
pub fn oracle_invariant_count(d: &Drawing, k: usize) -> u64 {
    let n = d.n();
    let mut count = 0;
    for a in 1..n {
        for b in a + 1..n {
            let full = side_count(d, a, b, 1..=n);
            let reduced = side_count(d, a, b, 1..n);
            let is_j_full = |j: usize| full == j || full + j == n - 2;
            let is_j_reduced = |j: usize| reduced == j || reduced + j == n - 3;
            if (0..=k).any(|j| is_j_full(j) && is_j_reduced(j)) {
                count += 1;
            }
        }
    }
    count
}
