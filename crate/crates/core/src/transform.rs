//! The equivalence group of order `4n` acting on drawings.
//!
//! It is generated by the rotation `f` (vertex 1 moves to the right end of
//! the spine, every other vertex shifts one step left), the reflection `g`
//! (`v -> n + 1 - v`) and the page swap `h`. Every element has the unique
//! form `h^a g^b f^i`.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::drawing::{entries, entry_count, is_convention_entry, Color, Drawing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("drawings have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
}

/// `h^a g^b f^i`, applied right to left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub swap_pages: bool,
    pub reflect: bool,
    pub rotation: usize,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        swap_pages: false,
        reflect: false,
        rotation: 0,
    };

    pub fn new(swap_pages: bool, reflect: bool, rotation: usize) -> Self {
        GroupElement {
            swap_pages,
            reflect,
            rotation,
        }
    }

    pub fn f() -> Self {
        GroupElement::new(false, false, 1)
    }

    pub fn g() -> Self {
        GroupElement::new(false, true, 0)
    }

    pub fn h() -> Self {
        GroupElement::new(true, false, 0)
    }

    /// All `4n` elements, ordered by `(a, b, i)`.
    pub fn all(n: usize) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(4 * n);
        for a in [false, true] {
            for b in [false, true] {
                for i in 0..n {
                    out.push(GroupElement::new(a, b, i));
                }
            }
        }
        out
    }

    /// `self ∘ other`: first `other`, then `self`.
    ///
    /// Uses `f^i g = g f^-i` and the centrality of `h`.
    pub fn compose(self, other: GroupElement, n: usize) -> GroupElement {
        let shifted = if other.reflect {
            (n - self.rotation % n) % n
        } else {
            self.rotation % n
        };
        GroupElement {
            swap_pages: self.swap_pages ^ other.swap_pages,
            reflect: self.reflect ^ other.reflect,
            rotation: (shifted + other.rotation) % n,
        }
    }

    pub fn inverse(self, n: usize) -> GroupElement {
        let rotation = if self.reflect {
            self.rotation % n
        } else {
            (n - self.rotation % n) % n
        };
        GroupElement {
            swap_pages: self.swap_pages,
            reflect: self.reflect,
            rotation,
        }
    }

    pub fn pow(self, exp: usize, n: usize) -> GroupElement {
        (0..exp).fold(GroupElement::IDENTITY, |acc, _| self.compose(acc, n))
    }

    /// Image of vertex `v` under the relabeling part `g^b f^i`.
    pub fn map_vertex(self, v: usize, n: usize) -> usize {
        let rotated = (v + n - 1 - self.rotation % n) % n + 1;
        if self.reflect {
            n + 1 - rotated
        } else {
            rotated
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "h^{} g^{} f^{}",
            self.swap_pages as u8, self.reflect as u8, self.rotation
        )
    }
}

/// Applies `t` to `d`, producing a new drawing.
pub fn apply(d: &Drawing, t: GroupElement) -> Drawing {
    let n = d.n();
    let mut red = vec![0u64; n + 1];
    for (i, j) in entries(n) {
        if is_convention_entry(n, i, j) {
            continue;
        }
        let (u, v) = {
            let (a, b) = (t.map_vertex(i, n), t.map_vertex(j, n));
            (a.min(b), a.max(b))
        };
        let mut color = d.color(i, j);
        if t.swap_pages {
            color = color.flip();
        }
        if color == Color::Red {
            red[u] |= 1 << v;
        }
    }
    Drawing::from_red_rows_normalized(n, red)
}

/// Lexicographically comparable packing of a drawing's matrix: row-major,
/// one bit per entry (red = 1), most significant bit first.
pub type PackedKey = Vec<u64>;

pub(crate) fn pack(d: &Drawing) -> PackedKey {
    let n = d.n();
    let mut words = vec![0u64; entry_count(n).div_ceil(64)];
    for (pos, (i, j)) in entries(n).enumerate() {
        if d.color(i, j) == Color::Red {
            words[pos / 64] |= 1 << (63 - pos % 64);
        }
    }
    words
}

pub(crate) fn unpack(n: usize, key: &PackedKey) -> Drawing {
    let mut red = vec![0u64; n + 1];
    for (pos, (i, j)) in entries(n).enumerate() {
        if key[pos / 64] >> (63 - pos % 64) & 1 == 1 {
            red[i] |= 1 << j;
        }
    }
    Drawing::from_red_rows_normalized(n, red)
}

/// Precomputed entry permutations for every group element of a fixed `n`,
/// so orbit minima can be taken without materializing drawings.
#[derive(Clone, Debug)]
pub struct Canonizer {
    n: usize,
    /// For each element: source `(row, column)` of each target entry in
    /// row-major order, plus whether colors are swapped.
    tables: Vec<(Vec<(u8, u8)>, bool)>,
    convention: Vec<bool>,
}

impl Canonizer {
    pub fn new(n: usize) -> Self {
        let convention: Vec<bool> = entries(n)
            .map(|(i, j)| is_convention_entry(n, i, j))
            .collect();
        let tables = GroupElement::all(n)
            .into_iter()
            .map(|t| {
                let inverse = t.inverse(n);
                let sources = entries(n)
                    .map(|(i, j)| {
                        let (a, b) = (inverse.map_vertex(i, n), inverse.map_vertex(j, n));
                        (a.min(b) as u8, a.max(b) as u8)
                    })
                    .collect();
                (sources, t.swap_pages)
            })
            .collect();
        Canonizer {
            n,
            tables,
            convention,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn image_key(&self, rows: &[u64], element: usize) -> PackedKey {
        let (sources, swap) = &self.tables[element];
        let mut words = vec![0u64; sources.len().div_ceil(64)];
        for (pos, &(i, j)) in sources.iter().enumerate() {
            let mut red = rows[i as usize] >> j & 1 == 1;
            if *swap && !self.convention[pos] {
                red = !red;
            }
            if red {
                words[pos / 64] |= 1 << (63 - pos % 64);
            }
        }
        words
    }

    /// Smallest packed image over the orbit.
    pub fn key(&self, d: &Drawing) -> PackedKey {
        debug_assert_eq!(d.n(), self.n);
        let rows = d.red_rows();
        (0..self.tables.len())
            .map(|t| self.image_key(rows, t))
            .min()
            .expect("group is nonempty")
    }

    /// Orbit minimum computed with the per-element work spread over threads.
    pub fn key_parallel(&self, d: &Drawing) -> PackedKey {
        let rows = d.red_rows();
        (0..self.tables.len())
            .into_par_iter()
            .map(|t| self.image_key(rows, t))
            .min()
            .expect("group is nonempty")
    }

    /// The orbit member with the smallest key.
    pub fn canonical_drawing(&self, d: &Drawing) -> Drawing {
        unpack(self.n, &self.key(d))
    }
}

/// Serialized matrix body of the lexicographically smallest orbit member.
pub fn canonical_key(d: &Drawing) -> Vec<u8> {
    Canonizer::new(d.n())
        .canonical_drawing(d)
        .body()
        .into_bytes()
}

pub fn are_equivalent(d1: &Drawing, d2: &Drawing) -> Result<bool, TransformError> {
    if d1.n() != d2.n() {
        return Err(TransformError::SizeMismatch(d1.n(), d2.n()));
    }
    let canonizer = Canonizer::new(d1.n());
    Ok(canonizer.key(d1) == canonizer.key(d2))
}

/// Distinct drawings in the orbit of `d`.
pub fn orbit(d: &Drawing) -> Vec<Drawing> {
    let mut members: Vec<Drawing> = GroupElement::all(d.n())
        .into_iter()
        .map(|t| apply(d, t))
        .collect();
    members.sort_by_key(pack);
    members.dedup();
    members
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderMode {
    /// The upper-triangular matrix, one row per line.
    Matrix,
    /// Two periods of the strip diagram.
    Strip,
}

/// ASCII picture of the matrix or its strip diagram.
pub fn render(d: &Drawing, mode: RenderMode) -> String {
    match mode {
        RenderMode::Matrix => render_matrix(d),
        RenderMode::Strip => render_strip(d),
    }
}

fn render_matrix(d: &Drawing) -> String {
    let n = d.n();
    let width = n.to_string().len();
    let mut out = String::new();
    out.push_str(&" ".repeat(width + 1));
    let header: Vec<String> = (2..=n).map(|j| format!("{j:>width$}")).collect();
    out.push_str(&header.join(" "));
    out.push('\n');
    for i in 1..n {
        let mut cells: Vec<String> = Vec::with_capacity(n - 1);
        for j in 2..=n {
            if j <= i {
                cells.push(" ".repeat(width));
            } else {
                cells.push(format!("{:>width$}", d.color(i, j).as_char()));
            }
        }
        out.push_str(&format!("{i:>width$} "));
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn render_strip(d: &Drawing) -> String {
    let n = d.n();
    let mut out = String::new();
    for r in 1..n {
        for c in 2..2 * n + 2 {
            let gap = c as isize - r as isize;
            if (1..n as isize).contains(&gap) {
                let u = (r - 1) % n + 1;
                let v = (c - 1) % n + 1;
                out.push(d.color(u.min(v), u.max(v)).as_char());
            } else {
                out.push('.');
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::random_drawing;
    use crate::kedge::crossings_direct;

    #[test]
    fn identity_and_generators() {
        let d = random_drawing(9, 4).unwrap();
        assert_eq!(apply(&d, GroupElement::IDENTITY), d);
        let mut e = d.clone();
        for _ in 0..9 {
            e = apply(&e, GroupElement::f());
        }
        assert_eq!(e, d);
        assert_eq!(apply(&apply(&d, GroupElement::g()), GroupElement::g()), d);
        assert_eq!(apply(&apply(&d, GroupElement::h()), GroupElement::h()), d);
    }

    #[test]
    fn f_matches_matrix_description() {
        // row 1 becomes column n; everything else shifts up-left
        let n = 8;
        let d = random_drawing(n, 11).unwrap();
        let fd = apply(&d, GroupElement::f());
        for (i, j) in entries(n) {
            if i == 1 {
                assert_eq!(fd.color(j - 1, n), d.color(1, j));
            } else {
                assert_eq!(fd.color(i - 1, j - 1), d.color(i, j));
            }
        }
    }

    #[test]
    fn g_and_h_match_matrix_description() {
        let n = 7;
        let d = random_drawing(n, 12).unwrap();
        let gd = apply(&d, GroupElement::g());
        let hd = apply(&d, GroupElement::h());
        for (i, j) in entries(n) {
            assert_eq!(gd.color(n + 1 - j, n + 1 - i), d.color(i, j));
            let expected = if is_convention_entry(n, i, j) {
                Color::Blue
            } else {
                d.color(i, j).flip()
            };
            assert_eq!(hd.color(i, j), expected);
        }
    }

    #[test]
    fn composition_matches_sequential_application() {
        let n = 6;
        let d = random_drawing(n, 2).unwrap();
        for s in GroupElement::all(n) {
            for t in GroupElement::all(n) {
                assert_eq!(
                    apply(&apply(&d, t), s),
                    apply(&d, s.compose(t, n)),
                    "{s} after {t}"
                );
            }
            assert_eq!(s.compose(s.inverse(n), n), GroupElement::IDENTITY);
        }
    }

    #[test]
    fn crossings_invariant() {
        let d = random_drawing(10, 5).unwrap();
        let c = crossings_direct(&d);
        for t in GroupElement::all(10) {
            assert_eq!(crossings_direct(&apply(&d, t)), c);
        }
    }

    #[test]
    fn all_blue_orbit() {
        for n in 4..10 {
            let d = Drawing::all_blue(n).unwrap();
            assert_eq!(apply(&d, GroupElement::f()), d);
            assert_eq!(apply(&d, GroupElement::g()), d);
            assert!(orbit(&d).len() <= 2);
        }
    }

    #[test]
    fn packing_round_trip() {
        let d = random_drawing(17, 3).unwrap();
        assert_eq!(unpack(17, &pack(&d)), d);
    }

    #[test]
    fn packed_order_matches_body_order() {
        let a = random_drawing(9, 20).unwrap();
        let b = random_drawing(9, 21).unwrap();
        assert_eq!(pack(&a).cmp(&pack(&b)), a.body().cmp(&b.body()));
    }

    #[test]
    fn canonical_key_is_orbit_invariant() {
        let d = random_drawing(8, 9).unwrap();
        let key = canonical_key(&d);
        for t in GroupElement::all(8) {
            assert_eq!(canonical_key(&apply(&d, t)), key);
        }
        let canonizer = Canonizer::new(8);
        assert_eq!(canonizer.key(&d), canonizer.key_parallel(&d));
    }

    #[test]
    fn equivalence_size_mismatch() {
        let a = Drawing::all_blue(5).unwrap();
        let b = Drawing::all_blue(6).unwrap();
        assert_eq!(
            are_equivalent(&a, &b),
            Err(TransformError::SizeMismatch(5, 6))
        );
    }

    #[test]
    fn render_all_blue_k4() {
        let d = Drawing::all_blue(4).unwrap();
        assert_eq!(
            render(&d, RenderMode::Matrix),
            "  2 3 4\n1 B B B\n2   B B\n3     B\n"
        );
        let strip = render(&d, RenderMode::Strip);
        let lines: Vec<&str> = strip.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.len() == 8));
    }
}
