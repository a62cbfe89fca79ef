//! Exact Grundy values by memoized game-tree search.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonical_key, iso_canonical_key, DEFAULT_ISO_BOUND};
use crate::position::{Move, Position};

/// Default vertex bound for a search root.
pub const DEFAULT_MAX_VERTICES: usize = 16;

/// Minimum non-negative integer not in `values`.
pub fn mex<I: IntoIterator<Item = usize>>(values: I) -> usize {
    let values = values.into_iter();
    let mut seen = vec![false; values.size_hint().0 + 1];
    for v in values {
        if v >= seen.len() {
            seen.resize(v + 1, false);
        }
        seen[v] = true;
    }
    seen.iter().position(|s| !s).unwrap_or(seen.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("position has {vertices} vertices; the search bound is {bound}")]
    SizeBoundExceeded { vertices: usize, bound: usize },
    #[error("Grundy value {0} does not fit in 8 bits")]
    ValueOverflow(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_vertices: usize,
    /// Memoize on isomorphism-class keys instead of labeled keys.
    pub iso_reduce: bool,
    /// Positions larger than this fall back to labeled keys under `iso_reduce`.
    pub iso_bound: usize,
    /// When false, no value is ever read from or written to the table.
    pub memoize: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_vertices: DEFAULT_MAX_VERTICES,
            iso_reduce: false,
            iso_bound: DEFAULT_ISO_BOUND,
            memoize: true,
        }
    }
}

impl SearchConfig {
    pub fn iso() -> Self {
        SearchConfig { iso_reduce: true, ..Self::default() }
    }

    pub fn unmemoized() -> Self {
        SearchConfig { memoize: false, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

/// Memo from position keys to Grundy values. Entries are never overwritten.
#[derive(Clone, Debug, Default)]
pub struct TranspositionTable {
    map: BTreeMap<Vec<u8>, u8>,
    hits: u64,
    misses: u64,
}

impl TranspositionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, key: &[u8]) -> Option<u8> {
        let found = self.map.get(key).copied();
        match found {
            Some(_) => self.hits += 1,
            None => self.misses += 1,
        }
        found
    }

    /// Idempotent insert. Returns the stored value, which is the first one
    /// ever written for `key`.
    pub fn insert(&mut self, key: Vec<u8>, value: u8) -> u8 {
        let stored = *self.map.entry(key).or_insert(value);
        debug_assert_eq!(stored, value, "conflicting Grundy values for one key");
        stored
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn stats(&self) -> TableStats {
        TableStats { hits: self.hits, misses: self.misses, entries: self.map.len() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrundyResult {
    pub value: u8,
    /// Each legal move with the Grundy value of the position it leads to.
    pub options: Vec<(Move, u8)>,
    pub winning_moves: Vec<Move>,
}

fn check_bound(p: &Position, cfg: &SearchConfig) -> Result<(), SearchError> {
    if p.vertex_count() > cfg.max_vertices {
        return Err(SearchError::SizeBoundExceeded { vertices: p.vertex_count(), bound: cfg.max_vertices });
    }
    Ok(())
}

fn memo_key(p: &Position, cfg: &SearchConfig) -> Vec<u8> {
    if cfg.iso_reduce {
        if let Ok(k) = iso_canonical_key(p, cfg.iso_bound) {
            return k;
        }
    }
    canonical_key(p)
}

/// Full Grundy analysis of `p`: its value, every option's value and the
/// moves to zero positions.
pub fn grundy(p: &Position, table: &mut TranspositionTable, cfg: &SearchConfig) -> Result<GrundyResult, SearchError> {
    check_bound(p, cfg)?;
    let mut options = Vec::with_capacity(p.vertex_count() + p.edge_count());
    for (m, child) in p.options() {
        options.push((m, value_of(&child, table, cfg)?));
    }
    let value = mex(options.iter().map(|(_, v)| *v as usize));
    let value = u8::try_from(value).map_err(|_| SearchError::ValueOverflow(value))?;
    if cfg.memoize {
        table.insert(memo_key(p, cfg), value);
    }
    let winning_moves = options.iter().filter(|(_, v)| *v == 0).map(|(m, _)| *m).collect();
    Ok(GrundyResult { value, options, winning_moves })
}

/// Grundy value of `p` alone.
pub fn grundy_value(p: &Position, table: &mut TranspositionTable, cfg: &SearchConfig) -> Result<u8, SearchError> {
    check_bound(p, cfg)?;
    value_of(p, table, cfg)
}

fn value_of(p: &Position, table: &mut TranspositionTable, cfg: &SearchConfig) -> Result<u8, SearchError> {
    if p.is_terminal() {
        return Ok(0);
    }
    let key = if cfg.memoize {
        let key = memo_key(p, cfg);
        if let Some(v) = table.get(&key) {
            return Ok(v);
        }
        Some(key)
    } else {
        None
    };
    // Recursion depth is bounded by |V| + |E|.
    let mut child_values = Vec::with_capacity(p.vertex_count() + p.edge_count());
    for (_, child) in p.options() {
        child_values.push(value_of(&child, table, cfg)? as usize);
    }
    let value = mex(child_values);
    let value = u8::try_from(value).map_err(|_| SearchError::ValueOverflow(value))?;
    if let Some(key) = key {
        table.insert(key, value);
    }
    Ok(value)
}

/// Legal moves that lead to a position of value 0, in legal-move order.
pub fn winning_moves(p: &Position, table: &mut TranspositionTable, cfg: &SearchConfig) -> Result<Vec<Move>, SearchError> {
    Ok(grundy(p, table, cfg)?.winning_moves)
}

/// Engine policy: the first winning move, else the first legal move.
/// `None` only at the terminal position.
pub fn engine_reply(p: &Position, table: &mut TranspositionTable, cfg: &SearchConfig) -> Result<Option<Move>, SearchError> {
    let result = grundy(p, table, cfg)?;
    Ok(result.winning_moves.first().or_else(|| result.options.first().map(|(m, _)| m)).copied())
}

/// Decides only whether `p` has value 0, stopping at the first option of
/// value 0. Keeps its own memo of outcomes.
#[derive(Clone, Debug, Default)]
pub struct ZeroTest {
    memo: BTreeMap<Vec<u8>, bool>,
}

impl ZeroTest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_zero(&mut self, p: &Position, cfg: &SearchConfig) -> Result<bool, SearchError> {
        check_bound(p, cfg)?;
        Ok(self.zero(p))
    }

    fn zero(&mut self, p: &Position) -> bool {
        let key = canonical_key(p);
        if let Some(&z) = self.memo.get(&key) {
            return z;
        }
        let mut zero = true;
        for (_, child) in p.options() {
            if self.zero(&child) {
                zero = false;
                break;
            }
        }
        self.memo.insert(key, zero);
        zero
    }
}

/// Every position reachable from `p` by zero or more moves, including `p`.
pub fn reachable_positions(p: &Position) -> BTreeSet<Position> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![p.clone()];
    while let Some(q) = stack.pop() {
        if seen.contains(&q) {
            continue;
        }
        stack.extend(q.options().map(|(_, c)| c).filter(|c| !seen.contains(c)));
        seen.insert(q);
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::position::VertexId;

    fn pos(vs: &[u8], es: &[&[u8]]) -> Position {
        let vs: Vec<VertexId> = vs.iter().map(|&x| VertexId(x)).collect();
        let es: Vec<Vec<VertexId>> = es.iter().map(|e| e.iter().map(|&x| VertexId(x)).collect()).collect();
        Position::new(&vs, &es).unwrap()
    }

    fn value(p: &Position) -> u8 {
        grundy_value(p, &mut TranspositionTable::new(), &SearchConfig::default()).unwrap()
    }

    #[test]
    fn mex_examples() {
        assert_eq!(mex([2, 0, 2, 3]), 1);
        assert_eq!(mex([2, 3, 0, 1, 1]), 4);
        assert_eq!(mex([]), 0);
        assert_eq!(mex([0, 1, 2]), 3);
        assert_eq!(mex([2, 3, 1, 1]), 0);
        assert_eq!(mex([2, 0, 1, 1]), 3);
    }

    #[test]
    fn smallest_mixed_value_and_options() {
        // S=0, A=1, B=2
        let p = pos(&[0, 1, 2], &[&[1, 2], &[0, 1, 2]]);
        let r = grundy(&p, &mut TranspositionTable::new(), &SearchConfig::default()).unwrap();
        assert_eq!(r.value, 1);
        let values: Vec<u8> = r.options.iter().map(|(_, v)| *v).collect();
        // remove S, A, B, edge {S,A,B}, edge {A,B}
        assert_eq!(values, vec![2, 0, 0, 3, 2]);
        assert_eq!(r.winning_moves, vec![Move::RemoveVertex(VertexId(1)), Move::RemoveVertex(VertexId(2))]);
    }

    #[test]
    fn small_anchors() {
        assert_eq!(value(&Position::empty()), 0);
        assert_eq!(value(&pos(&[0, 1, 2], &[&[0, 1, 2]])), 2);
        assert_eq!(value(&pos(&[0, 1], &[&[0, 1]])), 2);
        for k in 0..=12u8 {
            let vs: Vec<u8> = (0..k).collect();
            assert_eq!(value(&pos(&vs, &[])), k % 2);
        }
        let single = pos(&[0], &[]);
        let moves = winning_moves(&single, &mut TranspositionTable::new(), &SearchConfig::default()).unwrap();
        assert_eq!(moves, vec![Move::RemoveVertex(VertexId(0))]);
        assert!(winning_moves(&Position::empty(), &mut TranspositionTable::new(), &SearchConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn bound_is_enforced() {
        let vs: Vec<u8> = (0..17).collect();
        let p = pos(&vs, &[]);
        assert_eq!(
            grundy(&p, &mut TranspositionTable::new(), &SearchConfig::default()),
            Err(SearchError::SizeBoundExceeded { vertices: 17, bound: 16 })
        );
    }

    #[test]
    fn modes_agree_on_small_positions() {
        let p = pos(&[0, 1, 2, 3, 4], &[&[1, 2, 3, 4], &[0, 1, 2], &[0, 3, 4]]);
        let mut zero = ZeroTest::new();
        for q in reachable_positions(&p) {
            let labeled = value(&q);
            let iso = grundy_value(&q, &mut TranspositionTable::new(), &SearchConfig::iso()).unwrap();
            let plain = grundy_value(&q, &mut TranspositionTable::new(), &SearchConfig::unmemoized()).unwrap();
            assert_eq!(labeled, iso);
            assert_eq!(labeled, plain);
            assert_eq!(zero.is_zero(&q, &SearchConfig::default()).unwrap(), labeled == 0);
        }
    }

    #[test]
    fn table_counts_hits() {
        let mut table = TranspositionTable::new();
        let p = pos(&[0, 1, 2], &[&[1, 2], &[0, 1, 2]]);
        grundy(&p, &mut table, &SearchConfig::default()).unwrap();
        let first = table.stats();
        grundy(&p, &mut table, &SearchConfig::default()).unwrap();
        let second = table.stats();
        assert_eq!(first.entries, second.entries);
        assert!(second.hits > first.hits);
    }
}
