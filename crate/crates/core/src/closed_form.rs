//! Closed-form Grundy predictions for classified initial instances.
//!
//! Nothing here searches the game tree; predictions depend only on the
//! group, the number of 3-edges and, for the prior shapes, the vertex and
//! edge counts.

use core::fmt;

use crate::classify::{Group, StructureReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum PredictionSource {
    /// Groups I, III, IV, V with an odd number of 3-edges: value 1.
    Theorem7,
    /// Groups III, IV, V with an even number of 3-edges: value 4.
    Theorem8,
    /// Group I with an even number of 3-edges: value 0.
    Theorem9,
    /// Group II: value 3.
    Theorem10,
    /// 3-uniform shape, parity table.
    Prior2_4,
    /// Single even edge, parity table.
    Prior2_8,
    OutsideTaxonomy,
    NonConforming,
}

impl PredictionSource {
    pub fn as_str(self) -> &'static str {
        match self {
            PredictionSource::Theorem7 => "Theorem7",
            PredictionSource::Theorem8 => "Theorem8",
            PredictionSource::Theorem9 => "Theorem9",
            PredictionSource::Theorem10 => "Theorem10",
            PredictionSource::Prior2_4 => "Prior2.4",
            PredictionSource::Prior2_8 => "Prior2.8",
            PredictionSource::OutsideTaxonomy => "OutsideTaxonomy",
            PredictionSource::NonConforming => "NonConforming",
        }
    }
}

impl fmt::Display for PredictionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub value: Option<u8>,
    pub source: PredictionSource,
}

impl Prediction {
    fn known(value: u8, source: PredictionSource) -> Self {
        Prediction { value: Some(value), source }
    }

    fn none(source: PredictionSource) -> Self {
        Prediction { value: None, source }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClosedFormError {
    /// Group II forces |E(CatY)| = |V(CatX)|, which is even. A report with an
    /// odd count means the classifier produced an impossible shape.
    #[error("group II report with odd |E(CatY)| = {0}")]
    OddGroupII(usize),
}

/// Value of a position whose edges all have 3 vertices (isolated vertices
/// allowed), by parity of vertex and edge counts:
///
/// | V    | E    | value |
/// |------|------|-------|
/// | even | even | 0     |
/// | even | odd  | 3     |
/// | odd  | odd  | 2     |
/// | odd  | even | 1     |
pub fn three_uniform_value(vertices: usize, edges: usize) -> u8 {
    match (vertices % 2, edges % 2) {
        (0, 0) => 0,
        (0, _) => 3,
        (_, 1) => 2,
        _ => 1,
    }
}

/// Value of a position with exactly one hyperedge, of even size, plus any
/// isolated vertices: 2 when the vertex count is even, 3 when odd.
pub fn single_even_edge_value(vertices: usize) -> u8 {
    if vertices.is_multiple_of(2) {
        2
    } else {
        3
    }
}

pub fn predict(r: &StructureReport) -> Result<Prediction, ClosedFormError> {
    let ey = r.cat_y_count();
    let odd = ey % 2 == 1;
    Ok(match r.group {
        Group::I | Group::III | Group::IV | Group::V if odd => Prediction::known(1, PredictionSource::Theorem7),
        Group::III | Group::IV | Group::V => Prediction::known(4, PredictionSource::Theorem8),
        Group::I => Prediction::known(0, PredictionSource::Theorem9),
        Group::II if odd => return Err(ClosedFormError::OddGroupII(ey)),
        Group::II => Prediction::known(3, PredictionSource::Theorem10),
        Group::BC => Prediction::none(PredictionSource::OutsideTaxonomy),
        Group::PriorOddOnly => {
            Prediction::known(three_uniform_value(r.vertex_count, r.edge_count), PredictionSource::Prior2_4)
        }
        Group::PriorEvenOnly if r.edge_count == 1 => {
            Prediction::known(single_even_edge_value(r.vertex_count), PredictionSource::Prior2_8)
        }
        Group::PriorEvenOnly => Prediction::none(PredictionSource::OutsideTaxonomy),
        Group::NonConforming => Prediction::none(PredictionSource::NonConforming),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::position::{Position, VertexId};
    use alloc::vec::Vec;

    fn report(n: u8, es: &[&[u8]]) -> StructureReport {
        let vs: Vec<VertexId> = (0..n).map(VertexId).collect();
        let es: Vec<Vec<VertexId>> = es.iter().map(|e| e.iter().map(|&x| VertexId(x)).collect()).collect();
        classify(&Position::new(&vs, &es).unwrap())
    }

    #[test]
    fn prediction_dispatch() {
        let first = report(3, &[&[1, 2], &[0, 1, 2]]);
        assert_eq!(predict(&first), Ok(Prediction::known(1, PredictionSource::Theorem7)));

        let group_ii = report(5, &[&[1, 2, 3, 4], &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 1, 4]]);
        assert_eq!(predict(&group_ii), Ok(Prediction::known(3, PredictionSource::Theorem10)));

        let third = report(7, &[&[1, 2, 3, 4, 5, 6], &[0, 1, 2], &[0, 2, 3], &[0, 3, 4]]);
        assert_eq!(predict(&third), Ok(Prediction::known(1, PredictionSource::Theorem7)));

        let group_i_even = report(5, &[&[1, 2, 3, 4], &[0, 1, 2], &[0, 3, 4]]);
        assert_eq!(predict(&group_i_even), Ok(Prediction::known(0, PredictionSource::Theorem9)));

        let group_v_even = report(5, &[&[1, 2, 3, 4], &[0, 1, 2], &[0, 2, 3]]);
        assert_eq!(group_v_even.group, Group::V);
        assert_eq!(predict(&group_v_even), Ok(Prediction::known(4, PredictionSource::Theorem8)));
    }

    #[test]
    fn outside_taxonomy_and_prior_shapes() {
        let bc = report(7, &[&[1, 2, 3, 4, 5, 6], &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 1, 4]]);
        assert_eq!(predict(&bc), Ok(Prediction::none(PredictionSource::OutsideTaxonomy)));

        let pair = report(2, &[&[0, 1]]);
        assert_eq!(predict(&pair), Ok(Prediction::known(2, PredictionSource::Prior2_8)));

        let triple = report(3, &[&[0, 1, 2]]);
        assert_eq!(predict(&triple), Ok(Prediction::known(2, PredictionSource::Prior2_4)));

        let broken = report(3, &[&[0, 1]]);
        assert_eq!(predict(&broken), Ok(Prediction::none(PredictionSource::NonConforming)));
    }

    #[test]
    fn impossible_group_ii_is_an_error() {
        let mut r = report(5, &[&[1, 2, 3, 4], &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 1, 4]]);
        r.cat_y_edges.pop();
        assert_eq!(predict(&r), Err(ClosedFormError::OddGroupII(3)));
    }

    #[test]
    fn parity_tables() {
        assert_eq!(three_uniform_value(4, 2), 0);
        assert_eq!(three_uniform_value(4, 1), 3);
        assert_eq!(three_uniform_value(3, 1), 2);
        assert_eq!(three_uniform_value(5, 2), 1);
        assert_eq!(single_even_edge_value(2), 2);
        assert_eq!(single_even_edge_value(3), 3);
    }
}
