//! Branch and bound for minimum feedback vertex sets of small graphs,
//! with vertex sets packed into a `u64`.
//!
//! Each node of the search first applies the safe reductions (a looped
//! vertex must be taken, a vertex without predecessors or successors lies
//! on no cycle), then branches on the vertices of a shortest remaining
//! cycle. Branch `i` takes the `i`-th cycle vertex and forbids the earlier
//! ones, so the branches partition the solution space. The bound is a
//! greedy packing of vertex-disjoint shortest cycles.

use std::collections::VecDeque;

use crate::digraph::{DefGraph, Vertex};

pub(crate) const MAX_VERTICES: usize = 64;

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn members(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            return None;
        }
        let v = set.trailing_zeros() as usize;
        set &= set - 1;
        Some(v)
    })
}

pub(crate) struct MaskGraph {
    n: usize,
    succ: Vec<u64>,
    pred: Vec<u64>,
}

struct Search {
    /// only solutions strictly smaller than this are of interest
    limit: u32,
    best: Option<u64>,
    first_only: bool,
    done: bool,
}

impl MaskGraph {
    pub(crate) fn new(g: &DefGraph) -> Self {
        let n = g.vertex_count();
        assert!(n <= MAX_VERTICES, "mask graphs hold at most {MAX_VERTICES} vertices");
        let mut succ = vec![0u64; n];
        let mut pred = vec![0u64; n];
        for (u, v) in g.arcs() {
            succ[u] |= bit(v);
            pred[v] |= bit(u);
        }
        MaskGraph { n, succ, pred }
    }

    fn all(&self) -> u64 {
        if self.n == MAX_VERTICES {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    /// Applies the reductions to a fixpoint. `None` if a forbidden vertex
    /// carries a loop.
    fn reduce(&self, mut alive: u64, mut chosen: u64, forbidden: u64) -> Option<(u64, u64)> {
        loop {
            let mut changed = false;
            for v in members(alive) {
                if self.succ[v] & bit(v) != 0 {
                    if forbidden & bit(v) != 0 {
                        return None;
                    }
                    alive &= !bit(v);
                    chosen |= bit(v);
                    changed = true;
                } else if self.succ[v] & alive == 0 || self.pred[v] & alive == 0 {
                    alive &= !bit(v);
                    changed = true;
                }
            }
            if !changed {
                return Some((alive, chosen));
            }
        }
    }

    /// Drops vertices without predecessors or successors.
    fn trim(&self, mut alive: u64) -> u64 {
        loop {
            let before = alive;
            for v in members(alive) {
                if self.succ[v] & alive == 0 || self.pred[v] & alive == 0 {
                    alive &= !bit(v);
                }
            }
            if alive == before {
                return alive;
            }
        }
    }

    /// A shortest cycle inside `alive`, by breadth-first search from every
    /// vertex.
    fn shortest_cycle(&self, alive: u64) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        let mut parent = [usize::MAX; MAX_VERTICES];
        let mut queue = VecDeque::with_capacity(self.n);
        for s in members(alive) {
            if self.succ[s] & bit(s) != 0 {
                return Some(vec![s]);
            }
            let mut visited = bit(s);
            queue.clear();
            queue.push_back((s, 1usize));
            while let Some((x, len)) = queue.pop_front() {
                if best.as_ref().is_some_and(|b| len >= b.len()) {
                    break;
                }
                let next = self.succ[x] & alive;
                if x != s && next & bit(s) != 0 {
                    let mut cycle = vec![x];
                    let mut y = x;
                    while parent[y] != s {
                        y = parent[y];
                        cycle.push(y);
                    }
                    cycle.push(s);
                    cycle.reverse();
                    best = Some(cycle);
                    break;
                }
                for y in members(next & !visited) {
                    visited |= bit(y);
                    parent[y] = x;
                    queue.push_back((y, len + 1));
                }
            }
            if best.as_ref().is_some_and(|b| b.len() == 2) {
                break;
            }
        }
        best
    }

    /// Number of vertex-disjoint cycles found by repeatedly removing a
    /// shortest one. Any feedback vertex set needs one vertex per cycle.
    fn packing_bound(&self, alive: u64) -> u32 {
        let mut rest = self.trim(alive);
        let mut count = 0;
        while let Some(cycle) = self.shortest_cycle(rest) {
            count += 1;
            for v in cycle {
                rest &= !bit(v);
            }
            rest = self.trim(rest);
        }
        count
    }

    fn search(&self, st: &mut Search, alive: u64, chosen: u64, forbidden: u64) {
        if st.done {
            return;
        }
        let Some((alive, chosen)) = self.reduce(alive, chosen, forbidden) else {
            return;
        };
        let count = chosen.count_ones();
        if count >= st.limit {
            return;
        }
        if alive == 0 {
            st.best = Some(chosen);
            st.limit = count;
            st.done = st.first_only;
            return;
        }
        if count + self.packing_bound(alive) >= st.limit {
            return;
        }
        let cycle = self
            .shortest_cycle(alive)
            .expect("a reduced nonempty graph contains a cycle");
        let score = |v: usize| {
            (self.pred[v] & alive).count_ones() * (self.succ[v] & alive).count_ones()
        };
        let mut candidates: Vec<usize> = cycle.into_iter().filter(|&v| forbidden & bit(v) == 0).collect();
        candidates.sort_by_key(|&v| (std::cmp::Reverse(score(v)), v));
        let mut forbidden = forbidden;
        for v in candidates {
            self.search(st, alive & !bit(v), chosen | bit(v), forbidden);
            forbidden |= bit(v);
        }
    }

    /// A minimum feedback vertex set; `known` must be a feedback vertex set
    /// and seeds the upper bound.
    pub(crate) fn minimum(&self, known: u64) -> u64 {
        let mut st = Search {
            limit: known.count_ones(),
            best: None,
            first_only: false,
            done: false,
        };
        self.search(&mut st, self.all(), 0, 0);
        st.best.unwrap_or(known)
    }

    /// Whether some feedback vertex set of size at most `size` contains
    /// `include` and avoids `exclude`.
    fn feasible(&self, include: u64, exclude: u64, size: u32) -> bool {
        let mut st = Search {
            limit: size + 1,
            best: None,
            first_only: true,
            done: false,
        };
        self.search(&mut st, self.all() & !include, include, exclude);
        st.best.is_some()
    }

    /// Among all minimum feedback vertex sets, the one whose sorted member
    /// list is lexicographically smallest.
    pub(crate) fn lexicographic_minimum(&self, known: u64) -> u64 {
        let size = self.minimum(known).count_ones();
        // For sets of equal size, the smallest sorted list is the one that
        // takes each vertex, in order, whenever a completion still exists.
        let mut include = 0u64;
        let mut exclude = 0u64;
        for v in 0..self.n {
            if include.count_ones() == size {
                break;
            }
            if self.feasible(include | bit(v), exclude, size) {
                include |= bit(v);
            } else {
                exclude |= bit(v);
            }
        }
        include
    }

    pub(crate) fn to_mask(vertices: &[Vertex]) -> u64 {
        vertices.iter().fold(0, |m, &v| m | bit(v))
    }

    pub(crate) fn to_vertices(mask: u64) -> Vec<Vertex> {
        members(mask).collect()
    }
}
