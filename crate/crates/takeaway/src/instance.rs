//! Instance file format.
//!
//! ```json
//! {"vertices":["S","A","B"],"edges":[["A","B"],["S","A","B"]]}
//! ```
//!
//! Vertex ids follow declaration order. Serialization is byte-exact: names in
//! declaration order, each edge's names in declaration order, edges sorted
//! lexicographically by those orders, no whitespace.

use serde::{Deserialize, Serialize};
use takeaway_core::position::{Hyperedge, Instance, LabelError, Labels, Position, PositionError, VertexId, VertexSet};

pub const MAX_NAME_CHARS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("malformed instance document: {0}")]
    Malformed(String),
    #[error("vertex name {0:?} must be 1-16 visible characters")]
    InvalidName(String),
    #[error("vertex name {0:?} declared more than once")]
    DuplicateVertexName(String),
    #[error("{0} vertices declared; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("edge references undeclared vertex {0:?}")]
    UnknownVertexName(String),
    #[error("edge lists vertex {0:?} more than once")]
    DuplicateEdgeMember(String),
    #[error("edge {0:?} has fewer than 2 vertices")]
    EdgeTooSmall(Vec<String>),
    #[error("edge {0:?} listed more than once")]
    DuplicateEdge(Vec<String>),
}

impl InstanceError {
    /// Short name of the violated rule.
    pub fn clause(&self) -> &'static str {
        match self {
            InstanceError::Malformed(_) => "malformed-document",
            InstanceError::InvalidName(_) => "invalid-name",
            InstanceError::DuplicateVertexName(_) => "duplicate-vertex-id",
            InstanceError::TooManyVertices(_) => "too-many-vertices",
            InstanceError::UnknownVertexName(_) => "unknown-vertex-name-in-edge",
            InstanceError::DuplicateEdgeMember(_) => "duplicate-edge-member",
            InstanceError::EdgeTooSmall(_) => "edge-too-small",
            InstanceError::DuplicateEdge(_) => "duplicate-edge",
        }
    }
}

fn valid_name(name: &str) -> bool {
    let count = name.chars().count();
    (1..=MAX_NAME_CHARS).contains(&count) && name.chars().all(|c| !c.is_whitespace() && !c.is_control())
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(|e| InstanceError::Malformed(e.to_string()))?;
    instance_from_document(&doc)
}

pub fn instance_from_document(doc: &InstanceDocument) -> Result<Instance, InstanceError> {
    if let Some(bad) = doc.vertices.iter().find(|n| !valid_name(n)) {
        return Err(InstanceError::InvalidName(bad.clone()));
    }
    let labels = Labels::new(doc.vertices.clone()).map_err(|e| match e {
        LabelError::DuplicateName(n) => InstanceError::DuplicateVertexName(n),
        LabelError::TooManyVertices(n) => InstanceError::TooManyVertices(n),
    })?;

    let mut edges = Vec::with_capacity(doc.edges.len());
    for names in &doc.edges {
        let mut members = VertexSet::EMPTY;
        for name in names {
            let v = labels.id_of(name).ok_or_else(|| InstanceError::UnknownVertexName(name.clone()))?;
            if !members.insert(v) {
                return Err(InstanceError::DuplicateEdgeMember(name.clone()));
            }
        }
        let edge = Hyperedge::new(members).map_err(|_| InstanceError::EdgeTooSmall(names.clone()))?;
        if edges.contains(&edge) {
            return Err(InstanceError::DuplicateEdge(names.clone()));
        }
        edges.push(edge);
    }
    let vertices: VertexSet = (0..labels.len()).map(|i| VertexId(i as u8)).collect();
    let position = Position::from_parts(vertices, edges).map_err(|e| match e {
        // Duplicates and unknown names are rejected above.
        PositionError::DuplicateEdge => InstanceError::Malformed("duplicate edge".into()),
        other => InstanceError::Malformed(other.to_string()),
    })?;
    Ok(Instance { labels, position })
}

/// Document for the current position; vertices no longer present are omitted.
pub fn document_of(labels: &Labels, position: &Position) -> InstanceDocument {
    InstanceDocument {
        vertices: position.vertices().iter().map(|v| labels.name(v).to_string()).collect(),
        edges: position
            .edges()
            .iter()
            .map(|e| labels.edge_names(e).into_iter().map(str::to_string).collect())
            .collect(),
    }
}

pub fn serialize_instance(instance: &Instance) -> String {
    serialize_position(&instance.labels, &instance.position)
}

pub fn serialize_position(labels: &Labels, position: &Position) -> String {
    serde_json::to_string(&document_of(labels, position)).expect("instance documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIRST: &str = r#"{"vertices":["S","A","B"],"edges":[["A","B"],["S","A","B"]]}"#;

    #[test]
    fn parses_smallest_mixed() {
        let inst = parse_instance(FIRST).unwrap();
        assert_eq!(inst.position.vertex_count(), 3);
        assert_eq!(inst.position.edge_count(), 2);
        assert_eq!(inst.labels.id_of("S"), Some(VertexId(0)));
    }

    #[test]
    fn serialization_is_canonical() {
        let shuffled = r#"{ "vertices": ["S","A","B"], "edges": [["B","S","A"], ["B","A"]] }"#;
        let inst = parse_instance(shuffled).unwrap();
        assert_eq!(serialize_instance(&inst), r#"{"vertices":["S","A","B"],"edges":[["S","A","B"],["A","B"]]}"#);
        // Edge order is lexicographic by declaration index: S(0) < A(1).
        assert_eq!(parse_instance(FIRST).unwrap(), inst);
    }

    #[test]
    fn empty_document_is_terminal() {
        let inst = parse_instance(r#"{"vertices":[],"edges":[]}"#).unwrap();
        assert!(inst.position.is_terminal());
        assert_eq!(serialize_instance(&inst), r#"{"vertices":[],"edges":[]}"#);
    }

    #[test]
    fn errors_name_the_rule() {
        let cases = [
            (r#"{"vertices":["A"],"edges":[["A","B"]]}"#, "unknown-vertex-name-in-edge"),
            (r#"{"vertices":["A","A"],"edges":[]}"#, "duplicate-vertex-id"),
            (r#"{"vertices":["A","B"],"edges":[["A","B"],["B","A"]]}"#, "duplicate-edge"),
            (r#"{"vertices":["A","B"],"edges":[["A"]]}"#, "edge-too-small"),
            (r#"{"vertices":["A","B"],"edges":[["A","A","B"]]}"#, "duplicate-edge-member"),
            (r#"{"vertices":["A B"],"edges":[]}"#, "invalid-name"),
            (r#"{"vertices":[""],"edges":[]}"#, "invalid-name"),
            (r#"{"vertices":["ABCDEFGHIJKLMNOPQ"],"edges":[]}"#, "invalid-name"),
            (r#"{"vertices":["A"]}"#, "malformed-document"),
            (r#"not json"#, "malformed-document"),
        ];
        for (text, clause) in cases {
            assert_eq!(parse_instance(text).unwrap_err().clause(), clause, "{text}");
        }
    }
}
