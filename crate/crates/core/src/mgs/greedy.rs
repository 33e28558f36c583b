use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::digraph::{DefGraph, Vertex};

struct Remaining<'g> {
    g: &'g DefGraph,
    alive: Vec<bool>,
    indeg: Vec<usize>,
    outdeg: Vec<usize>,
    heap: BinaryHeap<(u64, Reverse<Vertex>)>,
    /// vertices that may have lost all predecessors or successors
    stale: Vec<Vertex>,
}

impl Remaining<'_> {
    fn score(&self, v: Vertex) -> u64 {
        self.indeg[v] as u64 * self.outdeg[v] as u64
    }

    fn remove(&mut self, v: Vertex) {
        self.alive[v] = false;
        for &u in self.g.in_neighbors(v) {
            if self.alive[u] {
                self.outdeg[u] -= 1;
                self.touch(u);
            }
        }
        for &w in self.g.out_neighbors(v) {
            if self.alive[w] {
                self.indeg[w] -= 1;
                self.touch(w);
            }
        }
    }

    fn touch(&mut self, v: Vertex) {
        if self.indeg[v] == 0 || self.outdeg[v] == 0 {
            self.stale.push(v);
        } else {
            self.heap.push((self.score(v), Reverse(v)));
        }
    }

    /// Removes vertices that can no longer lie on a cycle.
    fn trim(&mut self) {
        while let Some(v) = self.stale.pop() {
            if self.alive[v] {
                self.remove(v);
            }
        }
    }
}

/// Greedy feedback vertex set: take every looped vertex, then repeatedly
/// take the vertex with the largest in-degree × out-degree (smallest id on
/// ties), discarding vertices left without predecessors or successors after
/// each step. Runs in `O((|V| + |E|) log |V|)`.
pub(crate) fn greedy_fvs(g: &DefGraph) -> Vec<Vertex> {
    let mut rest = Remaining {
        g,
        alive: vec![true; g.vertex_count()],
        indeg: g.vertices().map(|v| g.in_degree(v)).collect(),
        outdeg: g.vertices().map(|v| g.out_degree(v)).collect(),
        heap: BinaryHeap::new(),
        stale: Vec::new(),
    };
    let mut chosen = Vec::new();
    for v in g.vertices().filter(|&v| g.has_self_loop(v)) {
        chosen.push(v);
        rest.remove(v);
    }
    for v in g.vertices() {
        if rest.alive[v] {
            rest.touch(v);
        }
    }
    loop {
        rest.trim();
        let Some((score, Reverse(v))) = rest.heap.pop() else {
            break;
        };
        if !rest.alive[v] || score != rest.score(v) {
            continue;
        }
        chosen.push(v);
        rest.remove(v);
    }
    chosen.sort_unstable();
    chosen
}

/// Size of a set of vertex-disjoint cycles found by one depth-first pass.
/// A lower bound on every feedback vertex set, in `O(|V| + |E|)`.
pub(crate) fn disjoint_cycle_bound(g: &DefGraph) -> usize {
    const WHITE: u8 = 0;
    const ON_STACK: u8 = 1;
    const DONE: u8 = 2;
    const USED: u8 = 3;
    let n = g.vertex_count();
    let mut state = vec![WHITE; n];
    let mut depth = vec![0usize; n];
    let mut call: Vec<(Vertex, usize)> = Vec::new();
    let mut count = 0;
    for root in g.vertices() {
        if state[root] != WHITE {
            continue;
        }
        state[root] = ON_STACK;
        depth[root] = 0;
        call.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let Some(&w) = g.out_neighbors(v).get(*pos) else {
                state[v] = DONE;
                call.pop();
                continue;
            };
            *pos += 1;
            match state[w] {
                WHITE => {
                    state[w] = ON_STACK;
                    depth[w] = call.len();
                    call.push((w, 0));
                }
                ON_STACK => {
                    // the stack from w upwards is a cycle
                    count += 1;
                    for &(x, _) in &call[depth[w]..] {
                        state[x] = USED;
                    }
                    call.truncate(depth[w]);
                }
                _ => {}
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle_picks_smallest() {
        let g = DefGraph::from_index_arcs(2, &[(0, 1), (1, 0)]);
        assert_eq!(greedy_fvs(&g), [0]);
        assert_eq!(disjoint_cycle_bound(&g), 1);
    }

    #[test]
    fn loops_are_taken() {
        let g = DefGraph::from_index_arcs(3, &[(0, 0), (1, 1), (1, 2)]);
        assert_eq!(greedy_fvs(&g), [0, 1]);
        assert_eq!(disjoint_cycle_bound(&g), 2);
    }

    #[test]
    fn hub_is_preferred() {
        // three triangles sharing vertex 0
        let arcs = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 0)];
        let g = DefGraph::from_index_arcs(7, &arcs);
        assert_eq!(greedy_fvs(&g), [0]);
        assert_eq!(disjoint_cycle_bound(&g), 1);
    }
}
