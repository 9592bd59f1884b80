//! Generators for crossing-optimal drawings and random drawings.
//!
//! Crossing-optimal drawings have, up to equivalence, a rigid structure
//! along the antidiagonals `r + c = s` of the matrix: blue bands for small
//! sums, red bands for large ones, and a handful of undetermined entries
//! when `n` is odd. [`structure_template`] encodes those rules; for even `n`
//! they fix every entry.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::drawing::{entries, is_convention_entry, Color, Drawing, DrawingError, EntryMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("n = {0} must be even and at least 4")]
    NotEvenSize(usize),
    #[error("n = {0} must be odd and at least {1}")]
    NotOddSize(usize, usize),
    #[error("the structure rules are only defined for n >= 6 (got {0})")]
    TemplateSize(usize),
    #[error("family mask for n = {n} needs {expected} bits, got {found}")]
    MaskLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid mask character {0:?}; use 0/1 or B/R")]
    MaskCharacter(char),
    #[error("structure rules conflict at entry ({0},{1})")]
    Conflict(usize, usize),
    #[error("template for n = {n} has {found} free entries, expected {expected}")]
    FreeCount {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("completion has {expected} free entries, got {found} bits")]
    CompletionLength { expected: usize, found: usize },
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    FixedBlue,
    FixedRed,
    Free,
}

impl Cell {
    pub fn fixed_color(self) -> Option<Color> {
        match self {
            Cell::FixedBlue => Some(Color::Blue),
            Cell::FixedRed => Some(Color::Red),
            Cell::Free => None,
        }
    }
}

/// A partially colored matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    state: EntryMap<Cell>,
}

impl Template {
    pub fn n(&self) -> usize {
        self.state.n()
    }

    pub fn cell(&self, i: usize, j: usize) -> Cell {
        *self.state.get(i, j)
    }

    /// Free entries in row-major order.
    pub fn free_entries(&self) -> Vec<(usize, usize)> {
        self.state
            .iter()
            .filter(|(_, &cell)| cell == Cell::Free)
            .map(|(entry, _)| entry)
            .collect()
    }

    pub fn free_count(&self) -> usize {
        self.state
            .values()
            .iter()
            .filter(|&&c| c == Cell::Free)
            .count()
    }

    /// Fills the free entries in row-major order; `true` means red.
    pub fn complete(&self, free_colors: &[bool]) -> Result<Drawing, ConstructError> {
        let free = self.free_entries();
        if free.len() != free_colors.len() {
            return Err(ConstructError::CompletionLength {
                expected: free.len(),
                found: free_colors.len(),
            });
        }
        let mut colors = EntryMap::from_fn(self.n(), |i, j| {
            self.cell(i, j).fixed_color().unwrap_or(Color::Blue)
        });
        for (&(i, j), &red) in free.iter().zip(free_colors) {
            if red {
                colors.set(i, j, Color::Red);
            }
        }
        Ok(Drawing::from_fn(self.n(), |i, j| *colors.get(i, j))?)
    }

    /// Fills the free entries from the low bits of `mask`, bit `t` for the
    /// `t`-th free entry.
    pub fn complete_from_bits(&self, mask: u64) -> Result<Drawing, ConstructError> {
        let bits: Vec<bool> = (0..self.free_count()).map(|t| mask >> t & 1 == 1).collect();
        self.complete(&bits)
    }

    /// Entries of `d` whose color contradicts a fixed cell.
    pub fn violations(&self, d: &Drawing) -> Vec<((usize, usize), Color)> {
        self.state
            .iter()
            .filter_map(|((i, j), cell)| match cell.fixed_color() {
                Some(color) if d.color(i, j) != color => Some(((i, j), color)),
                _ => None,
            })
            .collect()
    }

    pub fn conforms(&self, d: &Drawing) -> bool {
        d.n() == self.n() && self.violations(d).is_empty()
    }
}

/// Color forced on `(r, c)` by the antidiagonal bands, if any.
fn band_color(n: usize, r: usize, c: usize) -> Option<Color> {
    let e = n % 2;
    // The bands cover entries at distance >= 2 + e from the diagonal; the
    // odd case leaves the second diagonal to the extra rules.
    if c - r < 2 + e {
        return None;
    }
    let s = r + c;
    let (floor_half, ceil_half) = (n / 2, n.div_ceil(2));
    let blue =
        (4 + e..=floor_half + 1).contains(&s) || (n + 2 + e..=n + floor_half + 1).contains(&s);
    let red = (ceil_half + 2 + e..=n + 1).contains(&s)
        || (n + ceil_half + 2 + e..=2 * n - 2 - e).contains(&s);
    match (blue, red) {
        (true, false) => Some(Color::Blue),
        (false, true) => Some(Color::Red),
        (false, false) => None,
        (true, true) => unreachable!("bands are disjoint"),
    }
}

/// The structure every crossing-optimal drawing has up to equivalence,
/// for `n >= 6`. Fully determined for even `n`.
pub fn structure_template(n: usize) -> Result<Template, ConstructError> {
    if n < 6 {
        return Err(ConstructError::TemplateSize(n));
    }
    structure_rules(n)
}

fn structure_rules(n: usize) -> Result<Template, ConstructError> {
    let mut state = EntryMap::filled(n, Cell::Free);
    for (i, j) in entries(n) {
        let cell = if is_convention_entry(n, i, j) {
            Cell::FixedBlue
        } else {
            match band_color(n, i, j) {
                Some(Color::Blue) => Cell::FixedBlue,
                Some(Color::Red) => Cell::FixedRed,
                None => Cell::Free,
            }
        };
        state.set(i, j, cell);
    }
    if n % 2 == 1 {
        let (lo, hi) = (n / 2, n.div_ceil(2));
        let extra = [
            ((1, hi + 1), Cell::FixedRed),
            ((lo, hi + 1), Cell::FixedRed),
            ((2, n), Cell::FixedBlue),
            ((hi, hi + 2), Cell::FixedBlue),
        ];
        for ((i, j), cell) in extra {
            match *state.get(i, j) {
                Cell::Free => state.set(i, j, cell),
                existing if existing == cell => {}
                _ => return Err(ConstructError::Conflict(i, j)),
            }
        }
    }
    Ok(Template { state })
}

/// The unique crossing-optimal drawing for even `n`.
pub fn even_optimal(n: usize) -> Result<Drawing, ConstructError> {
    if n % 2 == 1 || n < 4 {
        return Err(ConstructError::NotEvenSize(n));
    }
    let template = structure_rules(n)?;
    if let Some(&(i, j)) = template.free_entries().first() {
        return Err(ConstructError::Conflict(i, j));
    }
    template.complete(&[])
}

/// The odd-`n` template with `(5/2)(n - 5)` free entries.
pub fn odd_template(n: usize) -> Result<Template, ConstructError> {
    if n.is_multiple_of(2) || n < 7 {
        return Err(ConstructError::NotOddSize(n, 7));
    }
    let template = structure_rules(n)?;
    let expected = 5 * (n - 5) / 2;
    let found = template.free_count();
    if found != expected {
        return Err(ConstructError::FreeCount { n, expected, found });
    }
    Ok(template)
}

/// Free-color choices of the cyclic family: one bit per edge `rc` off the
/// spine cycle with `r + c ≡ (n + 3)/2 (mod n)`, ordered by `r`. `true` is red.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyMask {
    pub bits: Vec<bool>,
}

impl FamilyMask {
    pub fn new(bits: Vec<bool>) -> Self {
        FamilyMask { bits }
    }

    /// All `2^((n-3)/2)` masks, in counting order with bit 0 first.
    pub fn all(n: usize) -> Vec<FamilyMask> {
        let len = (n - 3) / 2;
        (0..1u64 << len)
            .map(|m| FamilyMask::new((0..len).map(|t| m >> t & 1 == 1).collect()))
            .collect()
    }

    /// Parses `0`/`1` or `B`/`R` characters.
    pub fn parse(text: &str) -> Result<FamilyMask, ConstructError> {
        text.chars()
            .map(|ch| match ch {
                '0' | 'B' => Ok(false),
                '1' | 'R' => Ok(true),
                other => Err(ConstructError::MaskCharacter(other)),
            })
            .collect::<Result<Vec<bool>, _>>()
            .map(FamilyMask::new)
    }
}

/// Edges of the family whose color is chosen by the mask, by ascending `r`.
pub fn family_free_edges(n: usize) -> Vec<(usize, usize)> {
    entries(n)
        .filter(|&(r, c)| !is_convention_entry(n, r, c) && family_class(n, r, c) == (n + 3) / 2)
        .collect()
}

/// Representative of `r + c` modulo `n` in `2..=n + 1`.
fn family_class(n: usize, r: usize, c: usize) -> usize {
    (r + c - 2) % n + 2
}

/// The cyclic family of crossing-optimal drawings for odd `n >= 5`.
pub fn odd_family(n: usize, mask: &FamilyMask) -> Result<Drawing, ConstructError> {
    if n.is_multiple_of(2) || n < 5 {
        return Err(ConstructError::NotOddSize(n, 5));
    }
    let free = family_free_edges(n);
    if mask.bits.len() != free.len() {
        return Err(ConstructError::MaskLength {
            n,
            expected: free.len(),
            found: mask.bits.len(),
        });
    }
    Drawing::all_blue(n)?;
    Ok(Drawing::from_fn(n, |r, c| {
        if is_convention_entry(n, r, c) {
            return Color::Blue;
        }
        let s = family_class(n, r, c);
        if s <= n.div_ceil(2) {
            Color::Blue
        } else if s >= (n + 5) / 2 {
            Color::Red
        } else {
            let slot = free.iter().position(|&e| e == (r, c)).expect("free edge");
            if mask.bits[slot] {
                Color::Red
            } else {
                Color::Blue
            }
        }
    })?)
}

/// Uniformly random colors on the non-convention entries.
pub fn random_drawing(n: usize, seed: u64) -> Result<Drawing, DrawingError> {
    Drawing::all_blue(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Drawing::from_fn(n, |i, j| {
        if is_convention_entry(n, i, j) || !rng.gen::<bool>() {
            Color::Blue
        } else {
            Color::Red
        }
    })
}
