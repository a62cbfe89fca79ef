//! Position model for the Take-Away game.
//!
//! A position is a vertex set plus a set of hyperedges over those vertices.
//! A move removes a single vertex (together with every hyperedge containing
//! it) or a single hyperedge. The player who removes the last vertex wins.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Largest number of distinct vertex ids a position can hold.
pub const MAX_VERTEX_IDS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VertexId(pub u8);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Set of vertex ids backed by a 64-bit mask. Iteration is in ascending id order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: VertexId) -> bool {
        v.index() < MAX_VERTEX_IDS && self.0 & (1 << v.0) != 0
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        let fresh = !self.contains(v);
        self.0 |= 1 << v.0;
        fresh
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        let present = self.contains(v);
        self.0 &= !(1 << v.0);
        present
    }

    pub fn with(self, v: VertexId) -> Self {
        VertexSet(self.0 | 1 << v.0)
    }

    pub fn without(self, v: VertexId) -> Self {
        VertexSet(self.0 & !(1 << v.0))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(VertexId(low as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A hyperedge: a set of at least two distinct vertices.
///
/// Hyperedges order lexicographically by their ascending member lists, so
/// `{0,1} < {0,1,2} < {0,2} < {1,2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    members: VertexSet,
}

impl Hyperedge {
    pub fn new(members: VertexSet) -> Result<Self, PositionError> {
        if members.len() < 2 {
            return Err(PositionError::EdgeTooSmall { size: members.len() });
        }
        Ok(Hyperedge { members })
    }

    pub fn from_ids(ids: &[VertexId]) -> Result<Self, PositionError> {
        let mut members = VertexSet::EMPTY;
        for &v in ids {
            if v.index() >= MAX_VERTEX_IDS {
                return Err(PositionError::VertexIdOutOfRange(v));
            }
            if !members.insert(v) {
                return Err(PositionError::DuplicateEdgeMember(v));
            }
        }
        Hyperedge::new(members)
    }

    pub fn members(&self) -> VertexSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(v)
    }
}

impl Ord for Hyperedge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.iter().cmp(other.members.iter())
    }
}

impl PartialOrd for Hyperedge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    RemoveVertex(VertexId),
    RemoveEdge(Hyperedge),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PositionError {
    #[error("vertex id {0} listed more than once")]
    DuplicateVertexId(VertexId),
    #[error("vertex id {0} exceeds the supported range")]
    VertexIdOutOfRange(VertexId),
    #[error("hyperedge lists vertex {0} more than once")]
    DuplicateEdgeMember(VertexId),
    #[error("hyperedge has {size} member(s); at least 2 are required")]
    EdgeTooSmall { size: usize },
    #[error("hyperedge references vertex {0} which is not in the position")]
    EdgeNotSubsetOfVertices(VertexId),
    #[error("hyperedge listed more than once")]
    DuplicateEdge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IllegalMove {
    #[error("vertex {0} is not in the position")]
    AbsentVertex(VertexId),
    #[error("hyperedge is not in the position")]
    AbsentEdge,
}

/// Immutable game position. Edges are kept sorted and distinct.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    vertices: VertexSet,
    edges: Vec<Hyperedge>,
}

impl Position {
    pub fn empty() -> Self {
        Position::default()
    }

    /// Builds a position, rejecting duplicate vertices, duplicate edges and
    /// edges that reach outside the vertex set.
    pub fn new(vertices: &[VertexId], edges: &[Vec<VertexId>]) -> Result<Self, PositionError> {
        let mut vset = VertexSet::EMPTY;
        for &v in vertices {
            if v.index() >= MAX_VERTEX_IDS {
                return Err(PositionError::VertexIdOutOfRange(v));
            }
            if !vset.insert(v) {
                return Err(PositionError::DuplicateVertexId(v));
            }
        }
        let edges = edges
            .iter()
            .map(|ids| Hyperedge::from_ids(ids))
            .collect::<Result<Vec<_>, _>>()?;
        Position::from_parts(vset, edges)
    }

    pub fn from_parts(vertices: VertexSet, mut edges: Vec<Hyperedge>) -> Result<Self, PositionError> {
        for e in &edges {
            if let Some(v) = e.members().difference(vertices).iter().next() {
                return Err(PositionError::EdgeNotSubsetOfVertices(v));
            }
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(PositionError::DuplicateEdge);
        }
        Ok(Position { vertices, edges })
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_terminal(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_edge(&self, e: &Hyperedge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Vertices that belong to no edge.
    pub fn isolated_vertices(&self) -> VertexSet {
        let covered = self.edges.iter().fold(VertexSet::EMPTY, |acc, e| acc.union(e.members()));
        self.vertices.difference(covered)
    }

    /// All legal moves: vertex removals by ascending id, then edge removals in
    /// lexicographic member order.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::with_capacity(self.vertices.len() + self.edges.len());
        moves.extend(self.vertices.iter().map(Move::RemoveVertex));
        moves.extend(self.edges.iter().copied().map(Move::RemoveEdge));
        moves
    }

    pub fn is_legal(&self, m: &Move) -> bool {
        match m {
            Move::RemoveVertex(v) => self.vertices.contains(*v),
            Move::RemoveEdge(e) => self.contains_edge(e),
        }
    }

    pub fn apply_move(&self, m: &Move) -> Result<Position, IllegalMove> {
        match m {
            Move::RemoveVertex(v) if !self.vertices.contains(*v) => Err(IllegalMove::AbsentVertex(*v)),
            Move::RemoveEdge(e) if !self.contains_edge(e) => Err(IllegalMove::AbsentEdge),
            _ => Ok(self.apply_unchecked(m)),
        }
    }

    /// Applies a move already known to be legal.
    pub(crate) fn apply_unchecked(&self, m: &Move) -> Position {
        match *m {
            Move::RemoveVertex(v) => Position {
                vertices: self.vertices.without(v),
                edges: self.edges.iter().copied().filter(|e| !e.contains(v)).collect(),
            },
            Move::RemoveEdge(e) => Position {
                vertices: self.vertices,
                edges: self.edges.iter().copied().filter(|x| *x != e).collect(),
            },
        }
    }

    /// Children in legal-move order.
    pub fn options(&self) -> impl Iterator<Item = (Move, Position)> + '_ {
        self.legal_moves().into_iter().map(move |m| (m, self.apply_unchecked(&m)))
    }

    /// Applies a vertex relabeling. `map[old]` is the new id of vertex `old`.
    pub fn relabel(&self, map: &[VertexId]) -> Position {
        let move_set = |s: VertexSet| s.iter().map(|v| map[v.index()]).collect::<VertexSet>();
        let mut edges: Vec<Hyperedge> = self
            .edges
            .iter()
            .map(|e| Hyperedge { members: move_set(e.members()) })
            .collect();
        edges.sort_unstable();
        Position { vertices: move_set(self.vertices), edges }
    }
}

/// Display names for vertex ids. Name `i` belongs to `VertexId(i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
}

impl Labels {
    pub fn new(names: Vec<String>) -> Result<Self, LabelError> {
        if names.len() > MAX_VERTEX_IDS {
            return Err(LabelError::TooManyVertices(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(LabelError::DuplicateName(n.clone()));
            }
        }
        Ok(Labels { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.names.get(v.index()).map(String::as_str).unwrap_or("?")
    }

    pub fn id_of(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(|i| VertexId(i as u8))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edge_names(&self, e: &Hyperedge) -> Vec<&str> {
        e.members().iter().map(|v| self.name(v)).collect()
    }

    pub fn display_move(&self, m: &Move) -> String {
        match m {
            Move::RemoveVertex(v) => alloc::format!("remove vertex {}", self.name(*v)),
            Move::RemoveEdge(e) => alloc::format!("remove edge {{{}}}", self.edge_names(e).join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("vertex name {0:?} declared more than once")]
    DuplicateName(String),
    #[error("{0} vertices declared; at most 64 are supported")]
    TooManyVertices(usize),
}

/// A position together with the names of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub labels: Labels,
    pub position: Position,
}
