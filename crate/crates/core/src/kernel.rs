//! Grounding kernel and word levels.
//!
//! The kernel is what survives when words used in no remaining definition
//! are peeled off round after round. A word's level is the step at which it
//! is learned starting from the kernel.

use crate::digraph::{DefGraph, Vertex};
use crate::reachability::reachable_set;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelResult {
    /// Sorted kernel vertices.
    pub kernel: Vec<Vertex>,
    /// Vertices removed in each peeling round, each sorted.
    pub removal_rounds: Vec<Vec<Vertex>>,
    /// Level of every vertex; 0 exactly on the kernel.
    pub level_of: Vec<u32>,
}

impl KernelResult {
    pub fn max_level(&self) -> u32 {
        self.level_of.iter().copied().max().unwrap_or(0)
    }

    /// Vertices grouped by level, starting at level 0.
    pub fn levels(&self) -> Vec<Vec<Vertex>> {
        let mut grouped = vec![Vec::new(); self.max_level() as usize + 1];
        for (v, &level) in self.level_of.iter().enumerate() {
            grouped[level as usize].push(v);
        }
        grouped
    }

    pub fn in_kernel(&self, v: Vertex) -> bool {
        self.kernel.binary_search(&v).is_ok()
    }
}

pub fn grounding_kernel(g: &DefGraph) -> KernelResult {
    let n = g.vertex_count();
    let mut out_left: Vec<usize> = g.vertices().map(|v| g.out_degree(v)).collect();
    let mut removed = vec![false; n];
    let mut rounds = Vec::new();
    let mut round: Vec<Vertex> = g.vertices().filter(|&v| out_left[v] == 0).collect();
    while !round.is_empty() {
        for &v in &round {
            removed[v] = true;
        }
        let mut next = Vec::new();
        for &v in &round {
            for &u in g.in_neighbors(v) {
                // u == v is impossible: a looped vertex never reaches 0
                out_left[u] -= 1;
                if out_left[u] == 0 && !removed[u] {
                    next.push(u);
                }
            }
        }
        next.sort_unstable();
        rounds.push(round);
        round = next;
    }
    let kernel: Vec<Vertex> = g.vertices().filter(|&v| !removed[v]).collect();
    let reach = reachable_set(g, &kernel).expect("kernel vertices belong to the graph");
    let level_of = reach
        .steps()
        .iter()
        .map(|s| s.expect("the kernel is a grounding set"))
        .collect();
    KernelResult {
        kernel,
        removal_rounds: rounds,
        level_of,
    }
}

pub fn word_levels(g: &DefGraph) -> Vec<u32> {
    grounding_kernel(g).level_of
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reachability::is_grounding_set;
    use crate::testutil::{chain, toy};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn table_kernel() {
        let g = toy();
        let k = grounding_kernel(&g);
        assert_eq!(
            g.names(&k.kernel),
            ["bad", "dark", "good", "light", "not", "or", "thing"]
        );
        let rounds: Vec<Vec<&str>> = k.removal_rounds.iter().map(|r| g.names(r)).collect();
        assert_eq!(
            rounds,
            [
                vec!["apple", "banana", "tomato"],
                vec!["fruit", "red", "yellow"],
                vec!["color", "eatable"]
            ]
        );
        let levels: Vec<Vec<&str>> = k.levels().iter().map(|l| g.names(l)).collect();
        assert_eq!(
            levels,
            [
                vec!["bad", "dark", "good", "light", "not", "or", "thing"],
                vec!["color", "eatable"],
                vec!["fruit", "red", "yellow"],
                vec!["apple", "banana", "tomato"],
            ]
        );
        assert_eq!(k.level_of[g.vertex("tomato").unwrap()], 3);
    }

    #[test]
    fn acyclic_kernel_is_empty() {
        let g = chain(3);
        let k = grounding_kernel(&g);
        assert!(k.kernel.is_empty());
        assert_eq!(k.removal_rounds, [vec![2], vec![1], vec![0]]);
        assert_eq!(word_levels(&g), [1, 2, 3]);
    }

    /// Peels one sink at a time, in random order.
    fn sequential_kernel(g: &DefGraph, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
        let mut alive = vec![true; g.vertex_count()];
        loop {
            let mut sinks: Vec<Vertex> = g
                .vertices()
                .filter(|&v| alive[v] && g.out_neighbors(v).iter().all(|&w| !alive[w]))
                .collect();
            if sinks.is_empty() {
                return g.vertices().filter(|&v| alive[v]).collect();
            }
            sinks.shuffle(rng);
            alive[sinks[0]] = false;
        }
    }

    /// V minus the loop-free singleton components whose every descendant is
    /// also a loop-free singleton component.
    fn definitional_kernel(g: &DefGraph) -> Vec<Vertex> {
        let scc = g.scc();
        let trivial: Vec<bool> = g
            .vertices()
            .map(|v| !scc.is_cyclic(g, scc.component_of[v]))
            .collect();
        g.vertices()
            .filter(|&u| {
                if !trivial[u] {
                    return true;
                }
                let mut seen = vec![false; g.vertex_count()];
                let mut stack = vec![u];
                seen[u] = true;
                while let Some(x) = stack.pop() {
                    if !trivial[x] {
                        return true;
                    }
                    for &y in g.out_neighbors(x) {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                false
            })
            .collect()
    }

    fn arb_graph() -> impl Strategy<Value = DefGraph> {
        (1usize..=10).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..n * 3)
                .prop_map(move |arcs| DefGraph::from_index_arcs(n, &arcs))
        })
    }

    proptest! {
        #[test]
        fn kernel_grounds_graph(g in arb_graph()) {
            let k = grounding_kernel(&g);
            prop_assert!(is_grounding_set(&g, &k.kernel).unwrap());
            for (v, &level) in k.level_of.iter().enumerate() {
                prop_assert_eq!(level == 0, k.in_kernel(v));
            }
            let mut all: Vec<Vertex> = k.removal_rounds.iter().flatten().copied().collect();
            all.extend(&k.kernel);
            all.sort_unstable();
            prop_assert_eq!(all, g.vertices().collect::<Vec<_>>());
        }

        #[test]
        fn rounds_remove_current_sinks(g in arb_graph()) {
            let k = grounding_kernel(&g);
            let mut alive = vec![true; g.vertex_count()];
            for round in &k.removal_rounds {
                prop_assert!(!round.is_empty());
                for &v in round {
                    prop_assert!(g.out_neighbors(v).iter().all(|&w| !alive[w]));
                }
                // nothing else was a sink at this point
                for v in g.vertices().filter(|&v| alive[v] && !round.contains(&v)) {
                    prop_assert!(g.out_neighbors(v).iter().any(|&w| alive[w]));
                }
                for &v in round {
                    alive[v] = false;
                }
            }
        }

        #[test]
        fn peeling_is_confluent(g in arb_graph(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(sequential_kernel(&g, &mut rng), grounding_kernel(&g).kernel);
        }

        #[test]
        fn matches_definition(g in arb_graph()) {
            prop_assert_eq!(definitional_kernel(&g), grounding_kernel(&g).kernel);
        }
    }
}
