//! Structured and CSV documents for reports, Grundy results and moves.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use takeaway_core::classify::{LemmaCheck, StructureReport, Subcategory};
use takeaway_core::closed_form::Prediction;
use takeaway_core::enumerate::{Outcome, VerificationRecord};
use takeaway_core::grundy::GrundyResult;
use takeaway_core::position::{Hyperedge, Labels, Move, VertexSet};

use crate::instance::{document_of, serialize_instance, InstanceDocument};

/// Wire form of a move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MoveDocument {
    Vertex { name: String },
    Edge { members: Vec<String> },
}

impl MoveDocument {
    pub fn of(labels: &Labels, m: &Move) -> Self {
        match m {
            Move::RemoveVertex(v) => MoveDocument::Vertex { name: labels.name(*v).to_string() },
            Move::RemoveEdge(e) => MoveDocument::Edge { members: edge_names(labels, e) },
        }
    }

    /// Resolves names against `labels`. Returns `None` when a name is unknown
    /// or the member list is not a valid edge; legality is checked elsewhere.
    pub fn resolve(&self, labels: &Labels) -> Option<Move> {
        match self {
            MoveDocument::Vertex { name } => labels.id_of(name).map(Move::RemoveVertex),
            MoveDocument::Edge { members } => {
                let mut set = VertexSet::EMPTY;
                for name in members {
                    if !set.insert(labels.id_of(name)?) {
                        return None;
                    }
                }
                Hyperedge::new(set).ok().map(Move::RemoveEdge)
            }
        }
    }
}

fn edge_names(labels: &Labels, e: &Hyperedge) -> Vec<String> {
    labels.edge_names(e).into_iter().map(str::to_string).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationDocument {
    pub code: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReportDocument {
    pub group: String,
    pub special_vertex: Option<String>,
    pub subcategories: BTreeMap<String, Subcategory>,
    pub cat_x_edge: Option<Vec<String>>,
    pub cat_y_edges: Vec<Vec<String>>,
    pub cat_y_degree: BTreeMap<String, usize>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub violations: Vec<ViolationDocument>,
}

impl StructureReportDocument {
    pub fn of(labels: &Labels, r: &StructureReport) -> Self {
        StructureReportDocument {
            group: r.group.to_string(),
            special_vertex: r.special_vertex.map(|v| labels.name(v).to_string()),
            subcategories: r.subcategory.iter().map(|(v, s)| (labels.name(*v).to_string(), *s)).collect(),
            cat_x_edge: r.cat_x_edge.as_ref().map(|e| edge_names(labels, e)),
            cat_y_edges: r.cat_y_edges.iter().map(|e| edge_names(labels, e)).collect(),
            cat_y_degree: r.cat_y_degree.iter().map(|(v, d)| (labels.name(*v).to_string(), *d)).collect(),
            vertex_count: r.vertex_count,
            edge_count: r.edge_count,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationDocument { code: v.code(), message: describe_violation(labels, v) })
                .collect(),
        }
    }
}

/// Violation message with vertex ids replaced by names.
pub fn describe_violation(labels: &Labels, v: &takeaway_core::classify::Violation) -> String {
    use takeaway_core::classify::Violation;
    match v {
        Violation::UncoveredVertex { vertex } => {
            format!("vertex {} appears in no hyperedge of at least 2 vertices", labels.name(*vertex))
        }
        Violation::CatXDegreeTooHigh { vertex, degree } => format!(
            "category X vertex {} lies in {degree} 3-vertex hyperedges; at most 2 allowed",
            labels.name(*vertex)
        ),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictionDocument {
    pub value: Option<u8>,
    pub source: &'static str,
}

impl From<Prediction> for PredictionDocument {
    fn from(p: Prediction) -> Self {
        PredictionDocument { value: p.value, source: p.source.as_str() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaDocument {
    pub lemma: u8,
    pub applies: bool,
    pub holds: bool,
    pub witness: String,
}

impl From<&LemmaCheck> for LemmaDocument {
    fn from(c: &LemmaCheck) -> Self {
        LemmaDocument { lemma: c.lemma.number(), applies: c.applies, holds: c.holds, witness: c.witness.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionDocument {
    #[serde(rename = "move")]
    pub mv: MoveDocument,
    pub value: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrundyDocument {
    pub value: u8,
    pub options: Vec<OptionDocument>,
    pub winning_moves: Vec<MoveDocument>,
}

impl GrundyDocument {
    pub fn of(labels: &Labels, g: &GrundyResult) -> Self {
        GrundyDocument {
            value: g.value,
            options: g
                .options
                .iter()
                .map(|(m, v)| OptionDocument { mv: MoveDocument::of(labels, m), value: *v })
                .collect(),
            winning_moves: g.winning_moves.iter().map(|m| MoveDocument::of(labels, m)).collect(),
        }
    }
}

pub const CSV_HEADER: [&str; 8] = ["instance_id", "group", "v_catx", "e_caty", "oracle", "predicted", "source", "match"];

fn match_field(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Match => "true",
        Outcome::Mismatch => "false",
        Outcome::NoPrediction => "no prediction",
    }
}

/// CSV report; `predicted` is empty when there is no prediction.
pub fn write_csv<W: Write>(records: &[VerificationRecord], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.instance_id.to_string(),
            r.group.to_string(),
            r.v_catx.to_string(),
            r.e_caty.to_string(),
            r.oracle.to_string(),
            r.prediction.value.map(|v| v.to_string()).unwrap_or_default(),
            r.prediction.source.to_string(),
            match_field(r.outcome).to_string(),
        ])?;
    }
    w.flush()
}

pub fn csv_string(records: &[VerificationRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordDocument {
    pub instance_id: usize,
    pub instance: InstanceDocument,
    pub group: String,
    pub v_catx: usize,
    pub e_caty: usize,
    pub oracle: u8,
    pub predicted: Option<u8>,
    pub source: &'static str,
    #[serde(rename = "match")]
    pub outcome: serde_json::Value,
}

impl RecordDocument {
    pub fn of(r: &VerificationRecord) -> Self {
        RecordDocument {
            instance_id: r.instance_id,
            instance: document_of(&r.instance.labels, &r.instance.position),
            group: r.group.to_string(),
            v_catx: r.v_catx,
            e_caty: r.e_caty,
            oracle: r.oracle,
            predicted: r.prediction.value,
            source: r.prediction.source.as_str(),
            outcome: match r.outcome {
                Outcome::Match => serde_json::Value::Bool(true),
                Outcome::Mismatch => serde_json::Value::Bool(false),
                Outcome::NoPrediction => serde_json::Value::String("no prediction".into()),
            },
        }
    }
}

pub fn json_string(records: &[VerificationRecord]) -> String {
    let docs: Vec<RecordDocument> = records.iter().map(RecordDocument::of).collect();
    serde_json::to_string_pretty(&docs).expect("records serialize")
}

/// Records whose outcome is not a match, in original order.
pub fn non_matching(records: &[VerificationRecord]) -> Vec<VerificationRecord> {
    records.iter().filter(|r| r.outcome != Outcome::Match).cloned().collect()
}

/// Writes one instance file per mismatch under `dir`, creating it only when
/// there is at least one mismatch. Returns the written paths.
pub fn write_mismatch_files(records: &[VerificationRecord], dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for r in records.iter().filter(|r| r.outcome == Outcome::Mismatch) {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("instance-{:06}.json", r.instance_id));
        fs::write(&path, serialize_instance(&r.instance))?;
        written.push(path);
    }
    Ok(written)
}
