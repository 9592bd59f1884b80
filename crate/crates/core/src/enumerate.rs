//! Exhaustive searches over colorings.
//!
//! All searches walk the free entries of a base drawing in Gray-code order,
//! so consecutive candidates differ in one entry and the crossing count is
//! updated from the flipped edge's same-page interleaving partners. The
//! space is split on its high-order bits into independent partitions which
//! run on a fixed-size thread pool; results are merged in partition order,
//! so reports do not depend on the number of workers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::construct::{odd_template, random_drawing, ConstructError};
use crate::count::{binomial, z_number};
use crate::drawing::{bits_between, free_entries, row_span, Drawing};
use crate::kedge::{crossings_direct, raw_side_counts};
use crate::transform::{pack, unpack, Canonizer, PackedKey};

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("brute force supports 3 <= n <= 10, got {0}")]
    BruteForceRange(usize),
    #[error("template enumeration supports odd 7 <= n <= 17, got {0}")]
    TemplateRange(usize),
    #[error("n = 17 walks 2^30 template completions; it must be requested explicitly")]
    NeedsBigFlag,
    #[error("coverage search needs n >= 4 and 0 <= k <= floor(n/2) - 2 (n = {n}, k = {k})")]
    CoverageRange { n: usize, k: usize },
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Template,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Template => "template",
        }
    }
}

/// Outcome of an exhaustive search for crossing-optimal drawings.
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub n: usize,
    pub z: u64,
    /// Smallest crossing count seen.
    pub min_crossings: u64,
    /// Number of colorings examined.
    pub candidates: u64,
    /// Colorings attaining `z` (template completions or raw colorings).
    pub optimal_colorings: u64,
    /// Distinct canonical keys among them.
    pub classes: usize,
    /// One drawing per class, ordered by canonical key: the
    /// lexicographically smallest member met during the search. For the
    /// template search it is a template completion; for brute force it is
    /// the canonical form itself.
    pub representatives: Vec<Drawing>,
    pub method: Method,
    pub elapsed: Duration,
}

impl ClassReport {
    /// Line-oriented `key value` report. The elapsed time is left out so
    /// repeated runs print identical reports.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "method {}", self.method.name());
        let _ = writeln!(out, "z {}", self.z);
        let _ = writeln!(out, "min {}", self.min_crossings);
        let _ = writeln!(out, "candidates {}", self.candidates);
        let _ = writeln!(out, "optimal_colorings {}", self.optimal_colorings);
        let _ = writeln!(out, "classes {}", self.classes);
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    /// Worker threads; 0 uses every available core.
    pub jobs: usize,
    /// Allows the n = 17 template run.
    pub allow_big: bool,
}

/// A coloring under Gray-code traversal with its crossing count kept
/// current.
pub(crate) struct FlipState {
    n: usize,
    red: Vec<u64>,
    crossings: u64,
}

impl FlipState {
    fn new(d: &Drawing) -> Self {
        FlipState {
            n: d.n(),
            red: d.red_rows().to_vec(),
            crossings: crossings_direct(d),
        }
    }

    #[inline]
    fn partners(&self, i: usize, j: usize, red: bool) -> u64 {
        let n = self.n;
        let beyond = bits_between(j, n + 1);
        let inside = bits_between(i, j);
        let row = |k: usize| {
            if red {
                self.red[k]
            } else {
                row_span(n, k) & !self.red[k]
            }
        };
        let mut total = 0u32;
        for k in i + 1..j {
            total += (row(k) & beyond).count_ones();
        }
        for k in 1..i {
            total += (row(k) & inside).count_ones();
        }
        total as u64
    }

    #[inline]
    fn flip(&mut self, i: usize, j: usize) {
        let was_red = self.red[i] >> j & 1 == 1;
        let before = self.partners(i, j, was_red);
        let after = self.partners(i, j, !was_red);
        self.red[i] ^= 1 << j;
        self.crossings = self.crossings - before + after;
    }

    fn drawing(&self) -> Drawing {
        Drawing::from_red_rows_normalized(self.n, self.red.clone())
    }
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, EnumerateError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| EnumerateError::Pool(e.to_string()))
}

/// Visits every coloring of `free` on top of `base`. Returns one
/// accumulator per partition, in partition order.
fn walk_colorings<T, I, V>(
    base: &Drawing,
    free: &[(usize, usize)],
    jobs: usize,
    init: I,
    visit: V,
) -> Result<Vec<T>, EnumerateError>
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &FlipState) + Sync,
{
    let split = free.len().min(10);
    let low = free.len() - split;
    let (high_entries, low_entries) = (&free[low..], &free[..low]);
    let run_partition = |part: u64| {
        let mut start = base.clone();
        for (t, &(i, j)) in high_entries.iter().enumerate() {
            if part >> t & 1 == 1 {
                start = start
                    .with_color(i, j, crate::Color::Red)
                    .expect("free entry");
            }
        }
        let mut state = FlipState::new(&start);
        let mut acc = init();
        visit(&mut acc, &state);
        for step in 1u64..1 << low {
            let (i, j) = low_entries[step.trailing_zeros() as usize];
            state.flip(i, j);
            visit(&mut acc, &state);
        }
        acc
    };
    let pool = thread_pool(jobs)?;
    Ok(pool.install(|| {
        (0..1u64 << split)
            .into_par_iter()
            .map(run_partition)
            .collect()
    }))
}

/// Canonical key of each class seen, with its smallest member so far.
type ClassMap = BTreeMap<PackedKey, PackedKey>;

fn record_class(classes: &mut ClassMap, key: PackedKey, member: PackedKey) {
    classes
        .entry(key)
        .and_modify(|best| {
            if member < *best {
                *best = member.clone();
            }
        })
        .or_insert(member);
}

struct MinTracker {
    min: u64,
    hits: Vec<Vec<u64>>,
}

/// Exact minimum crossing number over all colorings of `K_n`, with every
/// minimizer and the number of symmetry classes among them.
pub fn brute_force_min(n: usize, options: EnumerateOptions) -> Result<ClassReport, EnumerateError> {
    if !(3..=10).contains(&n) {
        return Err(EnumerateError::BruteForceRange(n));
    }
    let started = Instant::now();
    let base = Drawing::all_blue(n).expect("size checked");
    let free: Vec<(usize, usize)> = free_entries(n).collect();
    let parts = walk_colorings(
        &base,
        &free,
        options.jobs,
        || MinTracker {
            min: u64::MAX,
            hits: Vec::new(),
        },
        |acc, state| {
            if state.crossings < acc.min {
                acc.min = state.crossings;
                acc.hits.clear();
            }
            if state.crossings == acc.min {
                acc.hits.push(state.red.clone());
            }
        },
    )?;
    let min = parts.iter().map(|p| p.min).min().unwrap_or(0);
    let canonizer = Canonizer::new(n);
    let mut classes = ClassMap::new();
    let mut optimal = 0u64;
    for part in parts.into_iter().filter(|p| p.min == min) {
        for rows in part.hits {
            optimal += 1;
            let d = Drawing::from_red_rows_normalized(n, rows);
            record_class(&mut classes, canonizer.key(&d), pack(&d));
        }
    }
    Ok(finish_report(
        n,
        Method::Brute,
        min,
        1u64 << free.len(),
        optimal,
        classes,
        started,
    ))
}

#[allow(clippy::too_many_arguments)]
fn finish_report(
    n: usize,
    method: Method,
    min_crossings: u64,
    candidates: u64,
    optimal_colorings: u64,
    classes: ClassMap,
    started: Instant,
) -> ClassReport {
    let representatives: Vec<Drawing> = classes.values().map(|member| unpack(n, member)).collect();
    ClassReport {
        n,
        z: z_number(n as u64),
        min_crossings,
        candidates,
        optimal_colorings,
        classes: representatives.len(),
        representatives,
        method,
        elapsed: started.elapsed(),
    }
}

struct ClassCollector {
    min: u64,
    optimal: u64,
    classes: ClassMap,
}

/// All symmetry classes of crossing-optimal drawings of `K_n` for odd `n`,
/// found among the completions of the odd structure template.
pub fn enumerate_optimal_classes(
    n: usize,
    options: EnumerateOptions,
) -> Result<ClassReport, EnumerateError> {
    if n.is_multiple_of(2) || !(7..=17).contains(&n) {
        return Err(EnumerateError::TemplateRange(n));
    }
    if n == 17 && !options.allow_big {
        return Err(EnumerateError::NeedsBigFlag);
    }
    let started = Instant::now();
    let template = odd_template(n)?;
    let free = template.free_entries();
    let base = template.complete(&vec![false; free.len()])?;
    let z = z_number(n as u64);
    let canonizer = Canonizer::new(n);
    let parts = walk_colorings(
        &base,
        &free,
        options.jobs,
        || ClassCollector {
            min: u64::MAX,
            optimal: 0,
            classes: ClassMap::new(),
        },
        |acc, state| {
            acc.min = acc.min.min(state.crossings);
            if state.crossings == z {
                acc.optimal += 1;
                let d = state.drawing();
                record_class(&mut acc.classes, canonizer.key(&d), pack(&d));
            }
        },
    )?;
    let min = parts.iter().map(|p| p.min).min().unwrap_or(0);
    let optimal = parts.iter().map(|p| p.optimal).sum();
    let mut classes = ClassMap::new();
    for part in parts {
        for (key, member) in part.classes {
            record_class(&mut classes, key, member);
        }
    }
    Ok(finish_report(
        n,
        Method::Template,
        min,
        1u64 << free.len(),
        optimal,
        classes,
        started,
    ))
}

/// Result of [`search_low_coverage`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverageOutcome {
    /// A drawing with fewer than `3 C(k+2, 2)` `<=k`-edges.
    Found { drawing: Drawing, candidates: u64 },
    /// Every coloring was checked and none qualifies.
    Nonexistent { candidates: u64 },
    /// The candidate budget ran out first.
    BudgetExhausted { candidates: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct CoverageOptions {
    pub budget: u64,
    pub seed: u64,
}

impl Default for CoverageOptions {
    fn default() -> Self {
        CoverageOptions {
            budget: 10_000_000,
            seed: 0,
        }
    }
}

fn leq_k_edges(n: usize, red: &[u64], k: usize) -> u64 {
    raw_side_counts(n, red)
        .values()
        .iter()
        .filter(|&&raw| (raw.min(n as u32 - 2 - raw) as usize) <= k)
        .count() as u64
}

/// Looks for a drawing whose number of `<=k`-edges falls below
/// `3 C(k+2, 2)`.
///
/// When the whole coloring space fits in the budget it is walked in
/// Gray-code order and the first hit is returned, so a miss proves
/// nonexistence. Otherwise seeded random restarts run a descent on the
/// `<=k`-edge count.
pub fn search_low_coverage(
    n: usize,
    k: usize,
    options: CoverageOptions,
) -> Result<CoverageOutcome, EnumerateError> {
    if n < 4 || k + 2 > n / 2 {
        return Err(EnumerateError::CoverageRange { n, k });
    }
    let threshold = 3 * binomial(k as u64 + 2, 2);
    let free: Vec<(usize, usize)> = free_entries(n).collect();
    if free.len() < 63 && (1u64 << free.len()) <= options.budget {
        let mut red = vec![0u64; n + 1];
        let mut candidates = 0u64;
        for step in 0u64..1 << free.len() {
            if step > 0 {
                let (i, j) = free[step.trailing_zeros() as usize];
                red[i] ^= 1 << j;
            }
            candidates += 1;
            if leq_k_edges(n, &red, k) < threshold {
                return Ok(CoverageOutcome::Found {
                    drawing: Drawing::from_red_rows_normalized(n, red),
                    candidates,
                });
            }
        }
        return Ok(CoverageOutcome::Nonexistent { candidates });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut candidates = 0u64;
    let stall_limit = 20 * free.len() as u64;
    while candidates < options.budget {
        let start = random_drawing(n, rng.gen()).expect("n checked");
        let mut red = start.red_rows().to_vec();
        let mut current = leq_k_edges(n, &red, k);
        candidates += 1;
        let mut stalled = 0u64;
        while current >= threshold && stalled < stall_limit && candidates < options.budget {
            let (i, j) = free[rng.gen_range(0..free.len())];
            red[i] ^= 1 << j;
            let value = leq_k_edges(n, &red, k);
            candidates += 1;
            if value <= current {
                stalled = if value < current { 0 } else { stalled + 1 };
                current = value;
            } else {
                red[i] ^= 1 << j;
                stalled += 1;
            }
        }
        if current < threshold {
            return Ok(CoverageOutcome::Found {
                drawing: Drawing::from_red_rows_normalized(n, red),
                candidates,
            });
        }
    }
    Ok(CoverageOutcome::BudgetExhausted { candidates })
}
