//! Subcommand implementations for the `silting` binary. Each `cmd_*` returns
//! the text to print and the exit status; `main` only parses arguments.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use silting::bijections::{verify_all, Classification, ClassificationReport, VerifyOptions};
use silting::repmod::enumerate_indecomposables;
use silting::tautilt::is_tau_rigid;
use silting::torsion::module_label;
use silting::twoterm::{basic_summands, bongartz_complete, join_labels, parse_complex};
use silting::{Algebra, AlgebraFile, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "silting",
    version,
    about = "Two-term silting, support τ-tilting and torsion classes of bound quiver algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List indecomposable modules up to a per-vertex dimension bound.
    Modules {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// List support τ-tilting pairs.
    Sttilt { file: PathBuf },
    /// List basic two-term silting complexes.
    Silting { file: PathBuf },
    /// List functorially finite torsion classes.
    Torsion { file: PathBuf },
    /// Run every classification cross-check.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 2)]
        mu: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Complete a presilting complex, e.g. "P2->0", to a silting object.
    Bongartz { file: PathBuf, expr: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

/// Errors surfaced to the user, with the exit status they map to.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BijectionViolation(_) | Error::DecompositionFailure(_) | Error::WindowViolation => EXIT_CHECK_FAILED,
            _ => EXIT_INPUT,
        };
        Self { message: e.to_string(), code }
    }
}

pub type CliResult = Result<Outcome, CliError>;

pub fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Modules { file, max_dim } => cmd_modules(&file, max_dim),
        Command::Sttilt { file } => cmd_sttilt(&file),
        Command::Silting { file } => cmd_silting(&file),
        Command::Torsion { file } => cmd_torsion(&file),
        Command::Verify { file, format, mu, seed } => cmd_verify(&file, format, VerifyOptions { mu, seed }),
        Command::Bongartz { file, expr } => cmd_bongartz(&file, &expr),
    }
}

pub fn load_algebra(file: &Path) -> Result<Arc<Algebra>, CliError> {
    Ok(Algebra::from_file(&AlgebraFile::load(file)?)?)
}

/// The file stem names the algebra in reports.
pub fn algebra_id(file: &Path) -> String {
    file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "algebra".into())
}

fn dims(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_modules(file: &Path, max_dim: usize) -> CliResult {
    let alg = load_algebra(file)?;
    let e = enumerate_indecomposables(&alg, &vec![max_dim; alg.num_vertices()])?;
    let mut out = format!("{:<12} {:<12} {:<10} {}\n", "label", "dims", "projective", "tau_rigid");
    for (i, m) in e.modules.iter().enumerate() {
        out += &format!(
            "{:<12} {:<12} {:<10} {}\n",
            module_label(&alg, &e.modules, i),
            dims(m.dims()),
            yes_no(m.is_projective()),
            yes_no(is_tau_rigid(m))
        );
    }
    if e.boundary_warning {
        out += &format!("warning: some indecomposable reaches the bound {max_dim}; the list may be incomplete\n");
    }
    Ok(Outcome::ok(out))
}

fn listing(rows: impl IntoIterator<Item = String>) -> String {
    rows.into_iter().map(|r| r + "\n").collect()
}

pub fn cmd_sttilt(file: &Path) -> CliResult {
    let c = Classification::new(&load_algebra(file)?)?;
    Ok(Outcome::ok(listing(c.pairs.iter().map(|(id, _)| c.pair_label(id)))))
}

pub fn cmd_silting(file: &Path) -> CliResult {
    let c = Classification::new(&load_algebra(file)?)?;
    Ok(Outcome::ok(listing(c.silting.iter().map(|s| c.silting_label(s)))))
}

pub fn cmd_torsion(file: &Path) -> CliResult {
    let c = Classification::new(&load_algebra(file)?)?;
    Ok(Outcome::ok(listing(c.torsion.iter().map(|t| c.torsion_label(t)))))
}

pub fn cmd_verify(file: &Path, format: Format, opts: VerifyOptions) -> CliResult {
    let alg = load_algebra(file)?;
    let report = verify_all(&alg, &algebra_id(file), opts)?;
    let stdout = match format {
        Format::Json => render_json(&report),
        Format::Csv => render_csv(&report),
        Format::Text => render_text(&report),
    };
    let code = if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome { stdout, code })
}

pub fn render_json(report: &ClassificationReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

/// One row per count, listed object and check: `kind,name,value,witness`.
pub fn render_csv(report: &ClassificationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut row = |kind: &str, name: &str, value: &str, witness: &str| {
        w.write_record([kind, name, value, witness]).expect("in-memory write");
    };
    row("kind", "name", "value", "witness");
    row("meta", "algebra", &report.algebra, "");
    row("meta", "field", &report.field.to_string(), "");
    let c = &report.counts;
    for (name, v) in [
        ("indecomposables", c.indecomposables),
        ("tau_rigid_indecomposables", c.tau_rigid_indecomposables),
        ("presilting_indecomposables", c.presilting_indecomposables),
        ("support_tau_tilting_pairs", c.support_tau_tilting_pairs),
        ("two_term_silting", c.two_term_silting),
        ("torsion_classes", c.torsion_classes),
    ] {
        row("count", name, &v.to_string(), "");
    }
    let o = &report.objects;
    for (name, list) in [("pairs", &o.pairs), ("silting", &o.silting), ("torsion", &o.torsion)] {
        for x in list {
            row("object", name, x, "");
        }
    }
    for ch in &report.checks {
        row("check", &ch.name, &ch.status, ch.witness.as_deref().unwrap_or(""));
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn render_text(report: &ClassificationReport) -> String {
    let c = &report.counts;
    let mut out = format!("algebra {} over GF({})\n\n", report.algebra, report.field);
    out += &format!("indecomposables              {}\n", c.indecomposables);
    out += &format!("tau-rigid indecomposables    {}\n", c.tau_rigid_indecomposables);
    out += &format!("presilting indecomposables   {}\n", c.presilting_indecomposables);
    out += &format!("support tau-tilting pairs    {}\n", c.support_tau_tilting_pairs);
    out += &format!("two-term silting             {}\n", c.two_term_silting);
    out += &format!("torsion classes              {}\n", c.torsion_classes);
    for (title, list) in
        [("pairs", &report.objects.pairs), ("silting", &report.objects.silting), ("torsion", &report.objects.torsion)]
    {
        out += &format!("\n{title}:\n");
        for x in list {
            out += &format!("  {x}\n");
        }
    }
    out += "\nchecks:\n";
    for ch in &report.checks {
        out += &format!("  {:<36} {}\n", ch.name, ch.status);
        if let Some(w) = &ch.witness {
            out += &format!("    {w}\n");
        }
    }
    out
}

pub fn cmd_bongartz(file: &Path, expr: &str) -> CliResult {
    let alg = load_algebra(file)?;
    let u = parse_complex(&alg, expr)?;
    let done = bongartz_complete(&u)?;
    Ok(Outcome::ok(join_labels(&basic_summands(&[done])?) + "\n"))
}
