//! 2-page book drawings of `K_n`, stored as their upper-triangular color matrix.
//!
//! Vertices are labeled `1..=n` from left to right along the spine. Entry
//! `(i, j)` with `i < j` records the page of the edge `ij`: [`Color::Blue`]
//! for the upper page (or the spine itself), [`Color::Red`] for the lower
//! page. The spine edges `(i, i + 1)` and the outer edge `(1, n)` are always
//! blue.

use std::fmt;

use thiserror::Error;

/// Largest supported number of vertices. Each matrix row is a `u64` bitmask
/// indexed by column label.
pub const MAX_N: usize = 63;

/// Page of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Blue => 'B',
            Color::Red => 'R',
        }
    }

    pub fn from_char(ch: char) -> Option<Color> {
        match ch {
            'B' => Some(Color::Blue),
            'R' => Some(Color::Red),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Red => "red",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("malformed header: expected `2pg 1 <n>`, found {0:?}")]
    MalformedHeader(String),
    #[error("vertex count {0} outside the supported range 3..={MAX_N}")]
    UnsupportedSize(usize),
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row}: expected {expected} entries, found {found}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, entry ({row},{column}): illegal character {ch:?}")]
    IllegalCharacter { row: usize, column: usize, ch: char },
    #[error("entry ({i},{j}) is a spine or outer edge and must be blue")]
    ConventionViolation { i: usize, j: usize },
}

/// True for the entries fixed blue by convention: `(i, i + 1)` and `(1, n)`.
#[inline]
pub fn is_convention_entry(n: usize, i: usize, j: usize) -> bool {
    j == i + 1 || (i == 1 && j == n)
}

/// Number of entries in the matrix of `K_n`.
#[inline]
pub fn entry_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Row-major position of entry `(i, j)`.
#[inline]
pub fn entry_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// All entries `(i, j)` in row-major order.
pub fn entries(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Entries not fixed by convention, in row-major order.
pub fn free_entries(n: usize) -> impl Iterator<Item = (usize, usize)> {
    entries(n).filter(move |&(i, j)| !is_convention_entry(n, i, j))
}

/// Bits `i + 1 ..= n`: the columns present in row `i`.
#[inline]
pub(crate) fn row_span(n: usize, i: usize) -> u64 {
    bits_between(i, n + 1)
}

/// Bits strictly between `lo` and `hi`.
#[inline]
pub(crate) fn bits_between(lo: usize, hi: usize) -> u64 {
    if hi <= lo + 1 {
        return 0;
    }
    let upto_hi = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
    let upto_lo = (1u64 << (lo + 1)) - 1;
    upto_hi & !upto_lo
}

/// A value attached to every entry of the matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EntryMap<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Clone> EntryMap<T> {
    pub fn filled(n: usize, value: T) -> Self {
        EntryMap {
            n,
            values: vec![value; entry_count(n)],
        }
    }
}

impl<T> EntryMap<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        EntryMap {
            n,
            values: entries(n).map(|(i, j)| f(i, j)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.values[entry_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let idx = entry_index(self.n, i, j);
        self.values[idx] = value;
    }

    /// `((i, j), value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        entries(self.n).zip(self.values.iter())
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// A 2-page book drawing of `K_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Drawing {
    n: usize,
    /// `red[i]` has bit `j` set iff entry `(i, j)` is red. Index 0 is unused.
    red: Vec<u64>,
}

impl Drawing {
    pub fn all_blue(n: usize) -> Result<Drawing, DrawingError> {
        check_size(n)?;
        Ok(Drawing {
            n,
            red: vec![0; n + 1],
        })
    }

    /// Builds a drawing from a coloring function. Convention entries must
    /// come out blue.
    pub fn from_fn(
        n: usize,
        mut color: impl FnMut(usize, usize) -> Color,
    ) -> Result<Drawing, DrawingError> {
        check_size(n)?;
        let mut red = vec![0u64; n + 1];
        for (i, j) in entries(n) {
            if color(i, j) == Color::Red {
                if is_convention_entry(n, i, j) {
                    return Err(DrawingError::ConventionViolation { i, j });
                }
                red[i] |= 1 << j;
            }
        }
        Ok(Drawing { n, red })
    }

    /// Rebuilds a drawing from row masks, forcing the convention entries
    /// blue.
    pub(crate) fn from_red_rows_normalized(n: usize, mut red: Vec<u64>) -> Drawing {
        debug_assert_eq!(red.len(), n + 1);
        red[0] = 0;
        for (i, row) in red.iter_mut().enumerate().skip(1) {
            *row &= row_span(n, i);
            if i < n {
                *row &= !(1u64 << (i + 1));
            }
        }
        red[1] &= !(1u64 << n);
        Drawing { n, red }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, i: usize, j: usize) -> Color {
        debug_assert!(1 <= i && i < j && j <= self.n);
        if self.red[i] >> j & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    /// Same drawing with entry `(i, j)` recolored.
    pub fn with_color(&self, i: usize, j: usize, color: Color) -> Result<Drawing, DrawingError> {
        if color == Color::Red && is_convention_entry(self.n, i, j) {
            return Err(DrawingError::ConventionViolation { i, j });
        }
        let mut red = self.red.clone();
        match color {
            Color::Red => red[i] |= 1 << j,
            Color::Blue => red[i] &= !(1 << j),
        }
        Ok(Drawing { n: self.n, red })
    }

    /// Row `i` as a bitmask of entries of `color`.
    #[inline]
    pub(crate) fn row_mask(&self, i: usize, color: Color) -> u64 {
        match color {
            Color::Red => self.red[i],
            Color::Blue => row_span(self.n, i) & !self.red[i],
        }
    }

    pub(crate) fn red_rows(&self) -> &[u64] {
        &self.red
    }

    pub fn red_count(&self) -> usize {
        self.red.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// The matrix rows as `B`/`R` strings, each terminated by a newline.
    pub fn body(&self) -> String {
        let mut out = String::with_capacity(entry_count(self.n) + self.n);
        for i in 1..self.n {
            for j in i + 1..=self.n {
                out.push(self.color(i, j).as_char());
            }
            out.push('\n');
        }
        out
    }

    /// The `.2pg` file representation.
    pub fn serialize(&self) -> String {
        format!("2pg 1 {}\n{}", self.n, self.body())
    }

    pub fn parse(text: &str) -> Result<Drawing, DrawingError> {
        let text = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or("");
        let n = parse_header(header)?;
        let rows: Vec<&str> = lines.collect();
        if rows.len() != n - 1 {
            return Err(DrawingError::RowCount {
                expected: n - 1,
                found: rows.len(),
            });
        }
        let mut red = vec![0u64; n + 1];
        for (idx, row) in rows.iter().enumerate() {
            let i = idx + 1;
            let found = row.chars().count();
            if found != n - i {
                return Err(DrawingError::RowLength {
                    row: i,
                    expected: n - i,
                    found,
                });
            }
            for (offset, ch) in row.chars().enumerate() {
                let j = i + 1 + offset;
                match Color::from_char(ch) {
                    Some(Color::Blue) => {}
                    Some(Color::Red) => red[i] |= 1 << j,
                    None => {
                        return Err(DrawingError::IllegalCharacter {
                            row: i,
                            column: j,
                            ch,
                        })
                    }
                }
            }
        }
        for (i, j) in entries(n) {
            if is_convention_entry(n, i, j) && red[i] >> j & 1 == 1 {
                return Err(DrawingError::ConventionViolation { i, j });
            }
        }
        Ok(Drawing { n, red })
    }
}

fn check_size(n: usize) -> Result<(), DrawingError> {
    if (3..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(DrawingError::UnsupportedSize(n))
    }
}

fn parse_header(header: &str) -> Result<usize, DrawingError> {
    let malformed = || DrawingError::MalformedHeader(header.to_string());
    let mut parts = header.split(' ');
    if parts.next() != Some("2pg") || parts.next() != Some("1") {
        return Err(malformed());
    }
    let n_text = parts.next().ok_or_else(malformed)?;
    if parts.next().is_some() || n_text.is_empty() || !n_text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let n: usize = n_text.parse().map_err(|_| malformed())?;
    check_size(n)?;
    Ok(n)
}

impl fmt::Debug for Drawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Drawing(n={}, ", self.n)?;
        f.write_str(&self.body().trim_end().replace('\n', "/"))?;
        f.write_str(")")
    }
}

impl fmt::Display for Drawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}
