//! Naive reference oracle over bitmask hypergraphs, independent of the engine.

#![allow(dead_code)]

use std::collections::HashMap;

use takeaway_core::{Position, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Naive {
    pub vertices: u64,
    pub edges: Vec<u64>,
}

impl Naive {
    pub fn of(p: &Position) -> Self {
        let mut edges: Vec<u64> = p.edges().iter().map(|e| e.members().bits()).collect();
        edges.sort_unstable();
        Naive { vertices: p.vertices().bits(), edges }
    }

    pub fn children(&self) -> Vec<Naive> {
        let mut out = Vec::new();
        for v in 0..64 {
            if self.vertices & (1 << v) != 0 {
                out.push(Naive {
                    vertices: self.vertices & !(1 << v),
                    edges: self.edges.iter().copied().filter(|e| e & (1 << v) == 0).collect(),
                });
            }
        }
        for i in 0..self.edges.len() {
            let mut edges = self.edges.clone();
            edges.remove(i);
            out.push(Naive { vertices: self.vertices, edges });
        }
        out
    }
}

pub fn naive_grundy(n: &Naive, memo: &mut HashMap<Naive, usize>) -> usize {
    if let Some(&g) = memo.get(n) {
        return g;
    }
    let seen: Vec<usize> = n.children().iter().map(|c| naive_grundy(c, memo)).collect();
    let g = (0..).find(|x| !seen.contains(x)).unwrap();
    memo.insert(n.clone(), g);
    g
}

pub fn pos(n: u8, edges: &[&[u8]]) -> Position {
    let vs: Vec<VertexId> = (0..n).map(VertexId).collect();
    let es: Vec<Vec<VertexId>> = edges.iter().map(|e| e.iter().map(|&x| VertexId(x)).collect()).collect();
    Position::new(&vs, &es).unwrap()
}
