//! `twopage` command-line tool.
//!
//! Exit codes: 0 success, 1 validation failure (bad input, failed check,
//! identity mismatch), 2 usage error, 3 I/O failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use twopage::analysis::{
    check_structure, conforming_equivalent, halving_check, support_check,
    uncrossed_hamiltonian_cycles,
};
use twopage::construct::{even_optimal, odd_family, random_drawing, FamilyMask};
use twopage::enumerate::{
    brute_force_min, enumerate_optimal_classes, search_low_coverage, ClassReport, CoverageOptions,
    CoverageOutcome, EnumerateOptions,
};
use twopage::kedge::{
    crossings_direct, crossings_via_kedges, crossings_via_leqleq, k4_census, k_edge_profile,
};
use twopage::transform::{are_equivalent, canonical_key, render, RenderMode};
use twopage::{binomial, z_number, Drawing};

#[derive(Parser)]
#[command(
    name = "twopage",
    version,
    about = "Counting, generating and enumerating 2-page book drawings of K_n"
)]
struct Cli {
    /// Output style: human-readable text or `key value` lines.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    EvenOpt,
    OddFamily,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Matrix,
    Strip,
}

#[derive(Subcommand)]
enum Command {
    /// Print Z(n), the 2-page crossing number of K_n.
    Z {
        #[arg(long)]
        n: u64,
    },
    /// Count the crossings of a drawing.
    Crossings { file: PathBuf },
    /// Print the k-edge profile of a drawing.
    Profile { file: PathBuf },
    /// Cross-check the three crossing computations and the K4 census identities.
    Verify { file: PathBuf },
    /// Generate a drawing in .2pg format.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Family mask as a string of 0/1 (or B/R), one character per free edge.
        #[arg(long)]
        mask: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write to this file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the canonical key (hex of the smallest equivalent matrix body).
    Canon {
        file: PathBuf,
        /// Print the canonical drawing instead of its key.
        #[arg(long)]
        drawing: bool,
    },
    /// Decide whether two drawings are equivalent. Exits 1 if they are not.
    Equiv { first: PathBuf, second: PathBuf },
    /// Count the symmetry classes of crossing-optimal drawings of K_n.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Allow n = 17 (2^30 template completions).
        #[arg(long)]
        big: bool,
        /// Write one .2pg file per class into this directory.
        #[arg(long)]
        emit_reps: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Exact minimum crossing number by exhaustive search (n <= 10).
    Mincross {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Search for a drawing with fewer than 3 C(k+2, 2) edges of order at most k.
    SearchCounterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a found drawing to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run structural checks; with no check flags every check runs.
    Check {
        file: PathBuf,
        #[arg(long)]
        structure: bool,
        #[arg(long)]
        support: bool,
        #[arg(long)]
        halving: bool,
        #[arg(long)]
        hamcycles: bool,
        /// Accept the structure check if some equivalent drawing conforms.
        #[arg(long)]
        up_to_equivalence: bool,
    },
    /// Draw the matrix or strip diagram in ASCII.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Matrix)]
        mode: Mode,
    },
}

/// Text produced by a subcommand plus whether its checks passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

/// Collects report lines in either output style.
struct Report {
    format: Format,
    text: String,
}

impl Report {
    fn new(format: Format) -> Self {
        Report {
            format,
            text: String::new(),
        }
    }

    /// A line shown in both styles: `key value` in kv mode, `human` otherwise.
    fn line(&mut self, key: &str, value: impl std::fmt::Display, human: impl std::fmt::Display) {
        match self.format {
            Format::Kv => writeln!(self.text, "{key} {value}"),
            Format::Text => writeln!(self.text, "{human}"),
        }
        .expect("writing to a String");
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.line(key, &value, format_args!("{key} {value}"));
    }
}

fn read_drawing(path: &Path) -> Result<Drawing> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Drawing::parse(&text).with_context(|| format!("{} is not a valid drawing", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Z { n } => {
            let mut r = Report::new(format);
            let z = z_number(n);
            r.line("z", z, z);
            Ok(Outcome::ok(r.text))
        }
        Command::Crossings { file } => {
            let d = read_drawing(&file)?;
            let mut r = Report::new(format);
            let c = crossings_direct(&d);
            r.line("crossings", c, c);
            Ok(Outcome::ok(r.text))
        }
        Command::Profile { file } => profile(&read_drawing(&file)?, format),
        Command::Verify { file } => verify(&read_drawing(&file)?, format),
        Command::Gen {
            kind,
            n,
            mask,
            seed,
            output,
        } => {
            let d = match kind {
                Kind::EvenOpt => even_optimal(n)?,
                Kind::OddFamily => {
                    let Some(mask) = mask else {
                        bail!("--kind odd-family needs --mask");
                    };
                    odd_family(n, &FamilyMask::parse(&mask)?)?
                }
                Kind::Random => random_drawing(n, seed)?,
            };
            emit(d.serialize(), output.as_deref())
        }
        Command::Canon { file, drawing } => {
            let d = read_drawing(&file)?;
            let key = canonical_key(&d);
            if drawing {
                let body = String::from_utf8(key).expect("matrix bodies are ASCII");
                Ok(Outcome::ok(format!("2pg 1 {}\n{body}", d.n())))
            } else {
                let mut r = Report::new(format);
                let hex = hex::encode(key);
                r.line("canonical", &hex, &hex);
                Ok(Outcome::ok(r.text))
            }
        }
        Command::Equiv { first, second } => {
            let a = read_drawing(&first)?;
            let b = read_drawing(&second)?;
            let same = are_equivalent(&a, &b)?;
            let mut r = Report::new(format);
            r.line(
                "equivalent",
                same,
                if same { "equivalent" } else { "not equivalent" },
            );
            Ok(Outcome {
                text: r.text,
                ok: same,
            })
        }
        Command::Enumerate {
            n,
            big,
            emit_reps,
            jobs,
        } => {
            if n == 17 && !big {
                bail!("n = 17 walks 2^30 template completions; pass --big to run it");
            }
            let options = EnumerateOptions {
                jobs,
                allow_big: big,
            };
            let report = if n % 2 == 1 && n >= 7 {
                enumerate_optimal_classes(n, options)?
            } else {
                // no template below 7, and even sizes have a single class
                brute_force_min(n, options)?
            };
            if let Some(dir) = emit_reps {
                emit_representatives(&report, &dir)?;
            }
            class_report(&report)
        }
        Command::Mincross { n, jobs } => class_report(&brute_force_min(
            n,
            EnumerateOptions {
                jobs,
                allow_big: false,
            },
        )?),
        Command::SearchCounterexample {
            n,
            k,
            budget,
            seed,
            output,
        } => search(
            n,
            k,
            CoverageOptions { budget, seed },
            output.as_deref(),
            format,
        ),
        Command::Check {
            file,
            structure,
            support,
            halving,
            hamcycles,
            up_to_equivalence,
        } => {
            let d = read_drawing(&file)?;
            let all = !(structure || support || halving || hamcycles);
            let checks = Checks {
                structure: structure || up_to_equivalence || all,
                support: support || all,
                halving: halving || all,
                hamcycles: hamcycles || all,
                up_to_equivalence,
            };
            check(&d, checks, format)
        }
        Command::Render { file, mode } => {
            let d = read_drawing(&file)?;
            let mode = match mode {
                Mode::Matrix => RenderMode::Matrix,
                Mode::Strip => RenderMode::Strip,
            };
            Ok(Outcome::ok(render(&d, mode)))
        }
    }
}

fn emit(text: String, output: Option<&Path>) -> Result<Outcome> {
    match output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn profile(d: &Drawing, format: Format) -> Result<Outcome> {
    let p = k_edge_profile(d);
    let mut out = String::new();
    match format {
        Format::Kv => {
            for k in 0..=p.max_k() {
                writeln!(out, "e_{k} {}", p.e[k])?;
                writeln!(out, "e_leq_{k} {}", p.e_leq[k])?;
                writeln!(out, "e_leqleq_{k} {}", p.e_leqleq[k])?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{:>3} {:>8} {:>8} {:>8}",
                "k", "E_k", "E_<=k", "E_<=<=k"
            )?;
            for k in 0..=p.max_k() {
                writeln!(
                    out,
                    "{k:>3} {:>8} {:>8} {:>8}",
                    p.e[k], p.e_leq[k], p.e_leqleq[k]
                )?;
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn verify(d: &Drawing, format: Format) -> Result<Outcome> {
    let n = d.n() as u64;
    let direct = crossings_direct(d) as i64;
    let via_kedges = crossings_via_kedges(d);
    let via_leqleq = crossings_via_leqleq(d);
    let census = k4_census(d);
    let profile = k_edge_profile(d);
    let weighted: u64 = profile
        .e
        .iter()
        .enumerate()
        .map(|(k, &count)| k as u64 * (n - 2 - k as u64) * count)
        .sum();
    let quadruples = binomial(n, 4);
    let from_types = 3 * census.t_a + 2 * census.crossing_quadruples();

    let crossings_ok = direct == via_kedges && direct == via_leqleq;
    let census_ok = census.t_a + census.t_b + census.t_c == quadruples
        && census.crossing_quadruples() as i64 == direct;
    let separations_ok = census.separations == from_types && census.separations == weighted;
    let ok = crossings_ok && census_ok && separations_ok;

    let mut r = Report::new(format);
    r.line(
        "crossings",
        direct,
        format_args!(
            "crossings {direct} = {via_kedges} = {via_leqleq} (direct, k-edges, <=<=k-edges)"
        ),
    );
    if format == Format::Kv {
        r.kv("crossings_via_kedges", via_kedges);
        r.kv("crossings_via_leqleq", via_leqleq);
        r.kv("t_a", census.t_a);
        r.kv("t_b", census.t_b);
        r.kv("t_c", census.t_c);
        r.kv("quadruples", quadruples);
        r.kv("separations", census.separations);
        r.kv("separations_from_types", from_types);
        r.kv("separations_from_kedges", weighted);
    } else {
        r.kv(
            "quadruples",
            format_args!(
                "{quadruples} = {} + {} + {} (t_a + t_b + t_c)",
                census.t_a, census.t_b, census.t_c
            ),
        );
        r.kv(
            "crossing_quadruples",
            format_args!(
                "{} = {direct} (t_b + t_c = crossings)",
                census.crossing_quadruples()
            ),
        );
        r.kv(
            "separations",
            format_args!(
                "{} = {from_types} = {weighted} (census, 3t_a + 2(t_b + t_c), sum k(n-2-k)E_k)",
                census.separations
            ),
        );
    }
    r.line("status", status(ok), status(ok));
    Ok(Outcome { text: r.text, ok })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "mismatch"
    }
}

fn class_report(report: &ClassReport) -> Result<Outcome> {
    Ok(Outcome::ok(report.to_text()))
}

fn emit_representatives(report: &ClassReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let width = report.representatives.len().to_string().len();
    for (index, d) in report.representatives.iter().enumerate() {
        let path = dir.join(format!("class_{:0width$}.2pg", index + 1));
        write_file(&path, &d.serialize())?;
    }
    Ok(())
}

fn search(
    n: usize,
    k: usize,
    options: CoverageOptions,
    output: Option<&Path>,
    format: Format,
) -> Result<Outcome> {
    let bound = 3 * binomial(k as u64 + 2, 2);
    let mut r = Report::new(format);
    r.kv("n", n);
    r.kv("k", k);
    r.kv("bound", bound);
    match search_low_coverage(n, k, options)? {
        CoverageOutcome::Found {
            drawing,
            candidates,
        } => {
            let profile = k_edge_profile(&drawing);
            r.kv("status", "found");
            r.kv("candidates", candidates);
            r.kv("e_leq", profile.leq(k as i64));
            r.kv("e_leqleq", profile.leqleq(k as i64));
            match output {
                Some(path) => write_file(path, &drawing.serialize())?,
                None => r.text.push_str(&drawing.serialize()),
            }
        }
        CoverageOutcome::Nonexistent { candidates } => {
            r.kv("status", "nonexistent");
            r.kv("candidates", candidates);
        }
        CoverageOutcome::BudgetExhausted { candidates } => {
            r.kv("status", "budget-exhausted");
            r.kv("candidates", candidates);
        }
    }
    Ok(Outcome::ok(r.text))
}

#[derive(Clone, Copy)]
struct Checks {
    structure: bool,
    support: bool,
    halving: bool,
    hamcycles: bool,
    up_to_equivalence: bool,
}

fn check(d: &Drawing, checks: Checks, format: Format) -> Result<Outcome> {
    let n = d.n();
    let mut r = Report::new(format);
    let mut ok = true;
    let mut verdict = |r: &mut Report, name: &str, pass: bool| {
        ok &= pass;
        r.line(
            name,
            status_word(pass),
            format_args!("{name} {}", status_word(pass)),
        );
    };

    if checks.structure {
        if checks.up_to_equivalence {
            let found = conforming_equivalent(d)?;
            if let Some((element, _)) = &found {
                r.kv("conforming_element", element);
            }
            verdict(&mut r, "structure", found.is_some());
        } else {
            let violations = check_structure(d)?;
            for v in &violations {
                r.line("violation", v, v);
            }
            verdict(&mut r, "structure", violations.is_empty());
        }
    }
    if checks.support {
        let mut pass = true;
        for k in 0..(n / 2).saturating_sub(1) {
            if !support_check(d, k)? {
                r.kv("support_fails_at_k", k);
                pass = false;
            }
        }
        verdict(&mut r, "support", pass);
    }
    if checks.halving {
        verdict(&mut r, "halving", halving_check(d));
    }
    if checks.hamcycles {
        let cycles = uncrossed_hamiltonian_cycles(d)?;
        for cycle in &cycles {
            let text: Vec<String> = cycle.iter().map(usize::to_string).collect();
            r.kv("cycle", text.join(" "));
        }
        r.kv("cycles", cycles.len());
        verdict(&mut r, "hamcycles", cycles.len() == 1);
    }
    Ok(Outcome { text: r.text, ok })
}

fn status_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn is_io_failure(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| cause.is::<io::Error>())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(outcome.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(3);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_io_failure(&err) { 3 } else { 1 })
        }
    }
}
