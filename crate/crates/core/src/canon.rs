//! Byte encodings of positions used as memo keys.

use alloc::vec;
use alloc::vec::Vec;

use crate::position::{Position, VertexId};

/// Default vertex bound for [`iso_canonical_key`].
pub const DEFAULT_ISO_BOUND: usize = 10;

// Leading byte of every isomorphism key; labeled keys start with |V| <= 64.
const ISO_TAG: u8 = 0xff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("position has {vertices} vertices; the bound is {bound}")]
pub struct SizeBoundExceeded {
    pub vertices: usize,
    pub bound: usize,
}

/// Labeled encoding: `[|V|, ids.., |E|, (|e|, ids..)..]`.
///
/// Injective on labeled positions. The terminal position encodes as `[0, 0]`.
pub fn canonical_key(p: &Position) -> Vec<u8> {
    let mut key = Vec::with_capacity(2 + p.vertex_count() + 4 * p.edge_count());
    key.push(p.vertex_count() as u8);
    key.extend(p.vertices().iter().map(|v| v.0));
    key.push(p.edge_count() as u8);
    for e in p.edges() {
        key.push(e.len() as u8);
        key.extend(e.members().iter().map(|v| v.0));
    }
    key
}

/// Encoding invariant under vertex relabeling.
///
/// Vertices are first split into classes by iterated color refinement on
/// incidence structure. The key is the smallest edge-mask encoding over all
/// labelings that respect the class order, found by exhaustive search inside
/// each class.
pub fn iso_canonical_key(p: &Position, bound: usize) -> Result<Vec<u8>, SizeBoundExceeded> {
    let n = p.vertex_count();
    if n > bound {
        return Err(SizeBoundExceeded { vertices: n, bound });
    }
    let verts: Vec<VertexId> = p.vertices().iter().collect();
    let colors = refine_colors(p, &verts);

    // Vertex slots ordered by color; slot i receives new label i.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| colors[i]);
    let slot_color: Vec<u32> = order.iter().map(|&i| colors[i]).collect();

    let edges: Vec<Vec<usize>> = p
        .edges()
        .iter()
        .map(|e| e.members().iter().map(|v| verts.iter().position(|&x| x == v).unwrap()).collect())
        .collect();

    let mut search = Search {
        colors: &colors,
        slot_color: &slot_color,
        edges: &edges,
        label: vec![usize::MAX; n],
        used: vec![false; n],
        best: None,
    };
    search.run(0);
    let best = search.best.unwrap_or_default();

    let mut key = Vec::with_capacity(3 + best.len() * 8);
    key.push(ISO_TAG);
    key.push(n as u8);
    key.push(best.len() as u8);
    for mask in best {
        key.extend_from_slice(&mask.to_be_bytes());
    }
    Ok(key)
}

/// Edge size with the sorted colors of the other members.
type EdgeSignature = (usize, Vec<u32>);

fn refine_colors(p: &Position, verts: &[VertexId]) -> Vec<u32> {
    let n = verts.len();
    let mut colors = vec![0u32; n];
    let mut classes = 1usize;
    loop {
        let mut signatures: Vec<(u32, Vec<EdgeSignature>)> = Vec::with_capacity(n);
        for (i, &v) in verts.iter().enumerate() {
            let mut incident: Vec<EdgeSignature> = p
                .edges()
                .iter()
                .filter(|e| e.contains(v))
                .map(|e| {
                    let mut cs: Vec<u32> = e
                        .members()
                        .iter()
                        .filter(|&u| u != v)
                        .map(|u| colors[verts.iter().position(|&x| x == u).unwrap()])
                        .collect();
                    cs.sort_unstable();
                    (e.len(), cs)
                })
                .collect();
            incident.sort_unstable();
            signatures.push((colors[i], incident));
        }
        let mut distinct = signatures.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).unwrap() as u32)
            .collect();
        colors = next;
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

struct Search<'a> {
    colors: &'a [u32],
    slot_color: &'a [u32],
    edges: &'a [Vec<usize>],
    label: Vec<usize>,
    used: Vec<bool>,
    best: Option<Vec<u64>>,
}

impl Search<'_> {
    fn run(&mut self, slot: usize) {
        if slot == self.slot_color.len() {
            let mut masks: Vec<u64> = self
                .edges
                .iter()
                .map(|e| e.iter().fold(0u64, |m, &i| m | 1 << self.label[i]))
                .collect();
            masks.sort_unstable();
            if self.best.as_ref().is_none_or(|b| masks < *b) {
                self.best = Some(masks);
            }
            return;
        }
        for v in 0..self.colors.len() {
            if self.used[v] || self.colors[v] != self.slot_color[slot] {
                continue;
            }
            self.used[v] = true;
            self.label[v] = slot;
            self.run(slot + 1);
            self.used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(vs: &[u8], es: &[&[u8]]) -> Position {
        let vs: Vec<VertexId> = vs.iter().map(|&x| VertexId(x)).collect();
        let es: Vec<Vec<VertexId>> = es.iter().map(|e| e.iter().map(|&x| VertexId(x)).collect()).collect();
        Position::new(&vs, &es).unwrap()
    }

    #[test]
    fn labeled_key_is_set_semantic() {
        let a = pos(&[0, 1, 2], &[&[1, 2], &[0, 1, 2]]);
        let b = pos(&[2, 0, 1], &[&[2, 1, 0], &[2, 1]]);
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_ne!(canonical_key(&pos(&[0], &[])), canonical_key(&pos(&[1], &[])));
        assert_eq!(canonical_key(&Position::empty()), vec![0, 0]);
    }

    #[test]
    fn iso_key_ignores_labels() {
        let a = pos(&[0, 1], &[&[0, 1]]);
        let b = pos(&[7, 9], &[&[7, 9]]);
        assert_eq!(iso_canonical_key(&a, 10), iso_canonical_key(&b, 10));
        assert_ne!(iso_canonical_key(&a, 10), iso_canonical_key(&pos(&[0, 1], &[]), 10));
    }

    #[test]
    fn iso_key_over_all_relabelings_of_smallest_mixed() {
        let p = pos(&[0, 1, 2], &[&[1, 2], &[0, 1, 2]]);
        let perms: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        // Brute-force minimum over all six labelings of the sorted edge masks.
        let mut brute: Option<Vec<u64>> = None;
        for perm in perms {
            let map: Vec<VertexId> = perm.iter().map(|&x| VertexId(x)).collect();
            let q = p.relabel(&map);
            assert_eq!(iso_canonical_key(&q, 10), iso_canonical_key(&p, 10));
            let mut masks: Vec<u64> = q.edges().iter().map(|e| e.members().bits()).collect();
            masks.sort_unstable();
            if brute.as_ref().is_none_or(|b| masks < *b) {
                brute = Some(masks);
            }
        }
        // Both S-first and S-last labelings reach the same minimum: {0,1} and {0,1,2}.
        let brute = brute.unwrap();
        assert_eq!(brute, vec![0b011, 0b111]);
        let mut expected = vec![ISO_TAG, 3, 2];
        for m in brute {
            expected.extend_from_slice(&m.to_be_bytes());
        }
        assert_eq!(iso_canonical_key(&p, 10).unwrap(), expected);
    }

    #[test]
    fn iso_key_respects_bound() {
        let p = pos(&[0, 1, 2], &[&[0, 1, 2]]);
        assert_eq!(iso_canonical_key(&p, 2), Err(SizeBoundExceeded { vertices: 3, bound: 2 }));
    }
}
