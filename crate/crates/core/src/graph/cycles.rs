use std::collections::VecDeque;

use super::MetricGraph;
use crate::scalar::Real;

/// Fundamental cycles of a breadth-first spanning forest.
///
/// The forest is grown from the lowest vertex of each component, scanning
/// incident edges in id order. Every non-tree edge (chord) closes exactly one
/// cycle: the chord's forward bond followed by the tree path back to its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    pub beta: usize,
    /// Chord edge ids, ascending; `chords[i]` closes `cycles[i]`.
    pub chords: Vec<usize>,
    /// Each cycle as a closed sequence of bond ids.
    pub cycles: Vec<Vec<usize>>,
    pub tree_edges: Vec<usize>,
}

impl CycleBasis {
    pub fn new<T: Real>(g: &MetricGraph<T>) -> Self {
        let nv = g.vertex_count();
        let ne = g.edge_count();
        let mut parent_bond = vec![usize::MAX; nv];
        let mut depth = vec![0usize; nv];
        let mut visited = vec![false; nv];
        let mut is_tree = vec![false; ne];
        for root in 0..nv {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &b in g.outgoing(u) {
                    let bond = g.bonds()[b];
                    let w = bond.terminus;
                    if !visited[w] {
                        visited[w] = true;
                        parent_bond[w] = b;
                        depth[w] = depth[u] + 1;
                        is_tree[bond.edge] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let chords: Vec<usize> = (0..ne).filter(|&e| !is_tree[e]).collect();
        let tree_edges: Vec<usize> = (0..ne).filter(|&e| is_tree[e]).collect();
        let cycles = chords
            .iter()
            .map(|&e| {
                let bond = g.bonds()[e];
                let (start, end) = (bond.origin, bond.terminus);
                // Walk from the chord's terminus up to the common ancestor, then down to its origin.
                let mut up = Vec::new();
                let mut down = Vec::new();
                let (mut x, mut y) = (end, start);
                while x != y {
                    if depth[x] >= depth[y] {
                        let pb = parent_bond[x];
                        up.push(g.bonds()[pb].reversal);
                        x = g.bonds()[pb].origin;
                    } else {
                        let pb = parent_bond[y];
                        down.push(pb);
                        y = g.bonds()[pb].origin;
                    }
                }
                down.reverse();
                let mut cycle = vec![e];
                cycle.extend(up);
                cycle.extend(down);
                cycle
            })
            .collect();
        Self { beta: chords.len(), chords, cycles, tree_edges }
    }
}
