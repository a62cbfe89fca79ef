//! Structural classification of initial instances.
//!
//! A conforming instance has exactly one even-size hyperedge (category X),
//! at least one 3-vertex hyperedge (category Y), and a special vertex S that
//! lies in every 3-edge and outside the even edge. Each 3-edge has its other
//! two members in the even edge, and every even-edge vertex lies in at most
//! two 3-edges. The number of 3-edges through an even-edge vertex gives its
//! subcategory (A: 1, B: 2, C: 0) and the set of subcategories present gives
//! the group.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::position::{Hyperedge, Position, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Subcategory {
    A,
    B,
    C,
}

impl Subcategory {
    fn from_degree(d: usize) -> Option<Self> {
        match d {
            0 => Some(Subcategory::C),
            1 => Some(Subcategory::A),
            2 => Some(Subcategory::B),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Group {
    I,
    II,
    III,
    IV,
    V,
    /// Only subcategories B and C present; not one of the five named groups.
    BC,
    PriorEvenOnly,
    PriorOddOnly,
    NonConforming,
}

impl Group {
    /// Groups that carry category X, category Y and a special vertex.
    pub fn is_mixed(self) -> bool {
        matches!(self, Group::I | Group::II | Group::III | Group::IV | Group::V | Group::BC)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Group::I => "I",
            Group::II => "II",
            Group::III => "III",
            Group::IV => "IV",
            Group::V => "V",
            Group::BC => "BC",
            Group::PriorEvenOnly => "PriorEvenOnly",
            Group::PriorOddOnly => "PriorOddOnly",
            Group::NonConforming => "NonConforming",
        }
    }

    fn from_subcategories(has_a: bool, has_b: bool, has_c: bool) -> Option<Group> {
        match (has_a, has_b, has_c) {
            (true, false, false) => Some(Group::I),
            (false, true, false) => Some(Group::II),
            (true, true, false) => Some(Group::III),
            (true, false, true) => Some(Group::IV),
            (true, true, true) => Some(Group::V),
            (false, true, true) => Some(Group::BC),
            _ => None,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Violation {
    /// Vertex belongs to no hyperedge.
    UncoveredVertex { vertex: VertexId },
    /// Hyperedge size is neither even nor 3.
    UnsupportedEdgeSize { size: usize },
    NoHyperedges,
    MultipleEvenEdges { count: usize },
    /// A 3-edge whose number of members inside the even edge is not 2.
    CatYEdgeCatXCount { count: usize },
    /// The members of the 3-edges outside the even edge are not one shared vertex.
    NoSharedSpecialVertex,
    /// An even-edge vertex lies in more than two 3-edges.
    CatXDegreeTooHigh { vertex: VertexId, degree: usize },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::UncoveredVertex { .. } => "uncovered_vertex",
            Violation::UnsupportedEdgeSize { .. } => "unsupported_edge_size",
            Violation::NoHyperedges => "no_hyperedges",
            Violation::MultipleEvenEdges { .. } => "multiple_even_edges",
            Violation::CatYEdgeCatXCount { .. } => "caty_edge_catx_count",
            Violation::NoSharedSpecialVertex => "no_shared_special_vertex",
            Violation::CatXDegreeTooHigh { .. } => "catx_degree_too_high",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UncoveredVertex { vertex } => {
                write!(f, "vertex {vertex} appears in no hyperedge of at least 2 vertices")
            }
            Violation::UnsupportedEdgeSize { size } => {
                write!(f, "hyperedge of size {size} is neither even (category X) nor 3 (category Y)")
            }
            Violation::NoHyperedges => f.write_str("instance has no hyperedges"),
            Violation::MultipleEvenEdges { count } => {
                write!(f, "{count} even-size hyperedges; category X needs exactly one")
            }
            Violation::CatYEdgeCatXCount { count } => {
                write!(f, "a 3-vertex hyperedge has {count} members in the category X edge; exactly 2 are required")
            }
            Violation::NoSharedSpecialVertex => {
                f.write_str("the 3-vertex hyperedges do not share a single special vertex outside category X")
            }
            Violation::CatXDegreeTooHigh { vertex, degree } => {
                write!(f, "category X vertex {vertex} lies in {degree} 3-vertex hyperedges; at most 2 allowed")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub cat_x_edge: Option<Hyperedge>,
    pub cat_x_vertices: VertexSet,
    pub cat_y_edges: Vec<Hyperedge>,
    pub cat_y_vertices: VertexSet,
    pub special_vertex: Option<VertexId>,
    pub subcategory: BTreeMap<VertexId, Subcategory>,
    pub cat_y_degree: BTreeMap<VertexId, usize>,
    pub group: Group,
    pub violations: Vec<Violation>,
}

impl StructureReport {
    pub fn is_conforming(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn cat_y_count(&self) -> usize {
        self.cat_y_edges.len()
    }

    pub fn vertices_in(&self, sub: Subcategory) -> VertexSet {
        self.subcategory.iter().filter(|(_, s)| **s == sub).map(|(v, _)| *v).collect()
    }
}

pub fn classify(p: &Position) -> StructureReport {
    let mut violations = Vec::new();

    let uncovered = p.isolated_vertices();
    for v in uncovered {
        violations.push(Violation::UncoveredVertex { vertex: v });
    }
    if p.edge_count() == 0 {
        violations.push(Violation::NoHyperedges);
    }

    let even: Vec<Hyperedge> = p.edges().iter().copied().filter(|e| e.len() % 2 == 0).collect();
    let triples: Vec<Hyperedge> = p.edges().iter().copied().filter(|e| e.len() == 3).collect();
    for e in p.edges().iter().filter(|e| e.len() % 2 == 1 && e.len() != 3) {
        violations.push(Violation::UnsupportedEdgeSize { size: e.len() });
    }
    let cat_y_vertices = triples.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(e.members()));

    let mut report = StructureReport {
        vertex_count: p.vertex_count(),
        edge_count: p.edge_count(),
        cat_x_edge: None,
        cat_x_vertices: VertexSet::EMPTY,
        cat_y_edges: triples.clone(),
        cat_y_vertices,
        special_vertex: None,
        subcategory: BTreeMap::new(),
        cat_y_degree: BTreeMap::new(),
        group: Group::NonConforming,
        violations: Vec::new(),
    };

    if even.len() > 1 {
        violations.push(Violation::MultipleEvenEdges { count: even.len() });
    }

    match (even.as_slice(), triples.is_empty()) {
        ([x], true) => {
            report.cat_x_edge = Some(*x);
            report.cat_x_vertices = x.members();
            if violations.is_empty() {
                report.group = Group::PriorEvenOnly;
            }
        }
        ([], false) if violations.is_empty() => report.group = Group::PriorOddOnly,
        ([x], false) => {
            report.cat_x_edge = Some(*x);
            report.cat_x_vertices = x.members();
            classify_mixed(&mut report, &mut violations);
        }
        _ => {}
    }

    report.violations = violations;
    if !report.violations.is_empty() {
        report.group = Group::NonConforming;
    }
    report
}

fn classify_mixed(report: &mut StructureReport, violations: &mut Vec<Violation>) {
    let x = report.cat_x_vertices;
    let mut outside = VertexSet::EMPTY;
    let mut shared: Option<VertexSet> = None;
    for e in &report.cat_y_edges {
        let inside = e.members().intersection(x).len();
        if inside != 2 {
            violations.push(Violation::CatYEdgeCatXCount { count: inside });
        }
        let rest = e.members().difference(x);
        outside = outside.union(rest);
        shared = Some(shared.map_or(rest, |s| s.intersection(rest)));
    }
    // S is the sole member outside X, shared by every 3-edge.
    match shared {
        Some(s) if s.len() == 1 && outside == s => {
            report.special_vertex = s.iter().next();
        }
        _ => violations.push(Violation::NoSharedSpecialVertex),
    }

    let (mut has_a, mut has_b, mut has_c) = (false, false, false);
    for v in x {
        let degree = report.cat_y_edges.iter().filter(|e| e.contains(v)).count();
        report.cat_y_degree.insert(v, degree);
        match Subcategory::from_degree(degree) {
            Some(sub) => {
                report.subcategory.insert(v, sub);
                match sub {
                    Subcategory::A => has_a = true,
                    Subcategory::B => has_b = true,
                    Subcategory::C => has_c = true,
                }
            }
            None => violations.push(Violation::CatXDegreeTooHigh { vertex: v, degree }),
        }
    }

    if violations.is_empty() {
        if let Some(g) = Group::from_subcategories(has_a, has_b, has_c) {
            report.group = g;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Lemma {
    /// No instance has every category X vertex in subcategory C.
    NotAllC,
    /// Group II: |E(CatY)| = |V(CatX)|.
    GroupIIEdgeCount,
    /// Group II: |E(CatY)| >= 4.
    GroupIIAtLeastFour,
    /// No instance has only subcategories B and C.
    NotOnlyBC,
    /// Group III: |E(CatY)| >= 3.
    GroupIIIAtLeastThree,
}

impl Lemma {
    pub const ALL: [Lemma; 5] = [
        Lemma::NotAllC,
        Lemma::GroupIIEdgeCount,
        Lemma::GroupIIAtLeastFour,
        Lemma::NotOnlyBC,
        Lemma::GroupIIIAtLeastThree,
    ];

    pub fn number(self) -> u8 {
        match self {
            Lemma::NotAllC => 1,
            Lemma::GroupIIEdgeCount => 2,
            Lemma::GroupIIAtLeastFour => 3,
            Lemma::NotOnlyBC => 4,
            Lemma::GroupIIIAtLeastThree => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LemmaCheck {
    pub lemma: Lemma,
    /// Whether the instance meets the lemma's hypothesis. Lemmas that are
    /// pure non-existence claims always apply.
    pub applies: bool,
    pub holds: bool,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("lemma checks need a group I-V or BC instance, got {0}")]
pub struct NotMixedInstance(pub Group);

/// Evaluates each lemma's conclusion on one classified instance.
pub fn check_lemmas(r: &StructureReport) -> Result<Vec<LemmaCheck>, NotMixedInstance> {
    if !r.group.is_mixed() {
        return Err(NotMixedInstance(r.group));
    }
    let vx = r.cat_x_vertices.len();
    let ey = r.cat_y_count();
    let all_c = r.subcategory.values().all(|s| *s == Subcategory::C);
    let group_ii = r.group == Group::II;
    let group_iii = r.group == Group::III;

    Ok(Lemma::ALL
        .iter()
        .map(|&lemma| {
            let (applies, holds, witness) = match lemma {
                Lemma::NotAllC => (true, !all_c, format!("{} of {vx} category X vertices in subcategory C", r.vertices_in(Subcategory::C).len())),
                Lemma::GroupIIEdgeCount => (group_ii, !group_ii || ey == vx, format!("|E(CatY)| = {ey}, |V(CatX)| = {vx}")),
                Lemma::GroupIIAtLeastFour => (group_ii, !group_ii || ey >= 4, format!("|E(CatY)| = {ey}")),
                Lemma::NotOnlyBC => (true, r.group != Group::BC, format!("group {}", r.group)),
                Lemma::GroupIIIAtLeastThree => (group_iii, !group_iii || ey >= 3, format!("|E(CatY)| = {ey}")),
            };
            LemmaCheck { lemma, applies, holds, witness }
        })
        .collect())
}
