//! Command-line entry points.
//!
//! Exit status: 0 success (or conforming instance for `analyze`), 1 input or
//! IO error, 2 non-conforming instance, 3 size bound exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use takeaway_core::classify::{check_lemmas, classify, Subcategory};
use takeaway_core::closed_form::predict;
use takeaway_core::enumerate::{enumerate_instances, verify, EnumerationBounds, VerificationRecord, VerifyError};
use takeaway_core::grundy::{grundy, SearchConfig, TranspositionTable};
use takeaway_core::position::Instance;

use crate::instance::{parse_instance, serialize_instance};
use crate::report::{self, LemmaDocument, PredictionDocument, StructureReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NON_CONFORMING: i32 = 2;
pub const EXIT_SIZE_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "takeaway", version, about = "Take-Away game on hypergraphs: analysis, exact solving and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an instance, check the structural lemmas and print the closed-form prediction.
    Analyze {
        file: PathBuf,
        /// Print a JSON document instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Compute the exact Grundy value and winning moves.
    Solve {
        file: PathBuf,
        /// Memoize on isomorphism classes.
        #[arg(long)]
        iso: bool,
        /// Print transposition table statistics.
        #[arg(long)]
        stats: bool,
    },
    /// Generate every conforming instance up to a half size.
    Enumerate {
        #[arg(long)]
        max_half_size: usize,
        #[arg(long)]
        iso_dedup: bool,
        /// Print counts only.
        #[arg(long)]
        count_only: bool,
    },
    /// Compare oracle values with closed-form predictions over all enumerated instances.
    Verify {
        #[arg(long)]
        max_half_size: usize,
        #[arg(long)]
        out: PathBuf,
        /// Write only records that are not matches.
        #[arg(long)]
        mismatches_only: bool,
        #[arg(long)]
        iso_dedup: bool,
    },
    /// Run the game service.
    Serve {
        #[arg(long)]
        port: u16,
        #[arg(long)]
        no_auto_reply: bool,
    },
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Instance, i32> {
    let text = fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        EXIT_ERROR
    })?;
    parse_instance(&text).map_err(|e| {
        let _ = writeln!(err, "error: {}: {e} [{}]", path.display(), e.clause());
        EXIT_ERROR
    })
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Analyze { file, json } => analyze(&file, json, out, err),
        Command::Solve { file, iso, stats } => solve(&file, iso, stats, out, err),
        Command::Enumerate { max_half_size, iso_dedup, count_only } => {
            enumerate(EnumerationBounds { max_half_size, iso_dedup }, count_only, out)
        }
        Command::Verify { max_half_size, out: dir, mismatches_only, iso_dedup } => {
            verify_cmd(EnumerationBounds { max_half_size, iso_dedup }, &dir, mismatches_only, out, err)
        }
        Command::Serve { port, no_auto_reply } => serve(port, !no_auto_reply, err),
    };
    result.unwrap_or_else(|code| code)
}

fn io_fail(err: &mut dyn Write, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_ERROR
}

fn analyze(file: &Path, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let inst = load(file, err)?;
    let labels = &inst.labels;
    let report = classify(&inst.position);
    let lemmas = check_lemmas(&report).unwrap_or_default();
    let prediction = match predict(&report) {
        Ok(p) => p,
        Err(e) => return Err(io_fail(err, e)),
    };
    let code = if report.is_conforming() { EXIT_OK } else { EXIT_NON_CONFORMING };

    if json {
        let doc = serde_json::json!({
            "structure_report": StructureReportDocument::of(labels, &report),
            "lemmas": lemmas.iter().map(LemmaDocument::from).collect::<Vec<_>>(),
            "prediction": PredictionDocument::from(prediction),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(|e| io_fail(err, e))?;
        return Ok(code);
    }

    let doc = StructureReportDocument::of(labels, &report);
    let list = |xs: Vec<&str>| if xs.is_empty() { "-".to_string() } else { xs.join(",") };
    let mut text = String::new();
    text += &format!("group: {}\n", doc.group);
    text += &format!("vertices: {}, edges: {}\n", doc.vertex_count, doc.edge_count);
    text += &format!("special vertex: {}\n", doc.special_vertex.as_deref().unwrap_or("-"));
    if let Some(x) = &doc.cat_x_edge {
        text += &format!("category X edge: {{{}}}\n", x.join(","));
    }
    let ys: Vec<String> = doc.cat_y_edges.iter().map(|e| format!("{{{}}}", e.join(","))).collect();
    text += &format!("category Y edges ({}): {}\n", ys.len(), if ys.is_empty() { "-".into() } else { ys.join(" ") });
    if report.group.is_mixed() {
        for sub in [Subcategory::A, Subcategory::B, Subcategory::C] {
            let members: Vec<&str> = report.vertices_in(sub).iter().map(|v| labels.name(v)).collect();
            text += &format!("subcategory {sub:?}: {}\n", list(members));
        }
    }
    if doc.violations.is_empty() {
        text += "violations: none\n";
    } else {
        text += "violations:\n";
        for v in &doc.violations {
            text += &format!("  {}: {}\n", v.code, v.message);
        }
    }
    if !lemmas.is_empty() {
        text += "lemmas:\n";
        for c in &lemmas {
            let verdict = match (c.applies, c.holds) {
                (false, _) => "n/a",
                (true, true) => "holds",
                (true, false) => "VIOLATED",
            };
            text += &format!("  lemma {}: {verdict} ({})\n", c.lemma.number(), c.witness);
        }
    }
    match prediction.value {
        Some(v) => text += &format!("predicted g = {v} ({})\n", prediction.source),
        None => text += &format!("predicted g: no prediction ({})\n", prediction.source),
    }
    out.write_all(text.as_bytes()).map_err(|e| io_fail(err, e))?;
    Ok(code)
}

fn solve(file: &Path, iso: bool, stats: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let inst = load(file, err)?;
    let cfg = if iso { SearchConfig::iso() } else { SearchConfig::default() };
    let mut table = TranspositionTable::new();
    let result = grundy(&inst.position, &mut table, &cfg).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_SIZE_BOUND
    })?;
    let labels = &inst.labels;
    let mut text = format!("value: {}\n", result.value);
    text += "options:\n";
    for (m, v) in &result.options {
        text += &format!("  {} -> {v}\n", labels.display_move(m));
    }
    let wins: Vec<String> = result.winning_moves.iter().map(|m| labels.display_move(m)).collect();
    text += &format!("winning moves: {}\n", if wins.is_empty() { "none".into() } else { wins.join("; ") });
    if stats {
        let s = table.stats();
        text += &format!("table: entries {}, hits {}, misses {}\n", s.entries, s.hits, s.misses);
    }
    out.write_all(text.as_bytes()).map_err(|e| io_fail(err, e))?;
    Ok(EXIT_OK)
}

fn enumerate(b: EnumerationBounds, count_only: bool, out: &mut dyn Write) -> Result<i32, i32> {
    let mut per_layer = vec![0usize; b.max_half_size + 1];
    for inst in enumerate_instances(b) {
        let m = (inst.position.vertex_count() - 1) / 2;
        per_layer[m] += 1;
        if !count_only {
            writeln!(out, "{}", serialize_instance(&inst)).map_err(|_| EXIT_ERROR)?;
        }
    }
    if count_only {
        for (m, n) in per_layer.iter().enumerate().skip(1) {
            writeln!(out, "m={m}: {n}").map_err(|_| EXIT_ERROR)?;
        }
        writeln!(out, "total: {}", per_layer.iter().sum::<usize>()).map_err(|_| EXIT_ERROR)?;
    }
    Ok(EXIT_OK)
}

fn verify_cmd(
    b: EnumerationBounds,
    dir: &Path,
    mismatches_only: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, i32> {
    let (records, summary) = verify(b).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        match e {
            VerifyError::SizeBoundExceeded(_) | VerifyError::Search(_) => EXIT_SIZE_BOUND,
            VerifyError::ClosedForm(_) => EXIT_ERROR,
        }
    })?;
    let written = write_verification(&records, dir, mismatches_only).map_err(|e| io_fail(err, e))?;
    writeln!(out, "{} records written to {}", written, dir.display()).map_err(|e| io_fail(err, e))?;
    writeln!(out, "{summary}").map_err(|e| io_fail(err, e))?;
    if summary.totals().mismatched > 0 {
        writeln!(out, "mismatch instances: {}", dir.join("mismatches").display()).map_err(|e| io_fail(err, e))?;
    }
    Ok(EXIT_OK)
}

/// Writes `report.csv`, `report.json` and `mismatches/` under `dir`.
/// Returns the number of records written to the reports.
pub fn write_verification(
    records: &[VerificationRecord],
    dir: &Path,
    mismatches_only: bool,
) -> std::io::Result<usize> {
    fs::create_dir_all(dir)?;
    let filtered;
    let selected = if mismatches_only {
        filtered = report::non_matching(records);
        &filtered[..]
    } else {
        records
    };
    fs::write(dir.join("report.csv"), report::csv_string(selected))?;
    fs::write(dir.join("report.json"), report::json_string(selected))?;
    report::write_mismatch_files(records, &dir.join("mismatches"))?;
    Ok(selected.len())
}

fn serve(port: u16, auto_reply: bool, err: &mut dyn Write) -> Result<i32, i32> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| io_fail(err, e))?;
    runtime.block_on(crate::server::serve(port, auto_reply)).map_err(|e| io_fail(err, e))?;
    Ok(EXIT_OK)
}
