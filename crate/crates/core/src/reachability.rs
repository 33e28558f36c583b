//! The learning operator `R(U) = U ∪ {v : N^-(v) ⊆ U}`, its fixpoint
//! `R*(U)`, and the relaxed rule where a word is learnable once a given
//! percentage of its definition is known.

use num_rational::Ratio;
use serde::Serialize;

use crate::digraph::{DefGraph, Vertex};
use crate::error::{Error, Result};

/// An integer percentage in `0..=100`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Percent(u8);

impl Percent {
    /// The strict rule: the whole definition has to be known.
    pub const FULL: Percent = Percent(100);

    pub fn new(value: u32) -> Result<Self> {
        if value > 100 {
            return Err(Error::InvalidPercent(value));
        }
        Ok(Percent(value as u8))
    }

    pub fn get(self) -> u32 {
        self.0 as u32
    }

    /// `known` out of `total` definers meet the threshold. Exact integer
    /// comparison `100·known ≥ r·total`.
    fn admits(self, known: usize, total: usize) -> bool {
        100 * known as u64 >= self.0 as u64 * total as u64
    }
}

impl TryFrom<u32> for Percent {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        Percent::new(value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityResult {
    step_of: Vec<Option<u32>>,
    reached: Vec<Vertex>,
    fixpoint_step: u32,
}

impl ReachabilityResult {
    /// `R*(U)`, sorted.
    pub fn reached(&self) -> &[Vertex] {
        &self.reached
    }

    /// Smallest `k` with `v ∈ R^k(U)`, or `None` if `v` is unreachable.
    pub fn step(&self, v: Vertex) -> Option<u32> {
        self.step_of.get(v).copied().flatten()
    }

    pub fn steps(&self) -> &[Option<u32>] {
        &self.step_of
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.step(v).is_some()
    }

    /// Smallest `k` with `R^k(U) = R*(U)`.
    pub fn fixpoint_step(&self) -> u32 {
        self.fixpoint_step
    }

    pub fn is_total(&self) -> bool {
        self.reached.len() == self.step_of.len()
    }
}

/// One application of `R`.
pub fn reach_step(g: &DefGraph, seeds: &[Vertex]) -> Result<Vec<Vertex>> {
    relaxed_reach_step(g, seeds, Percent::FULL)
}

/// One application of the relaxed operator: adds every `v` with
/// `100·|N^-(v) ∩ U| ≥ r·|N^-(v)|`.
pub fn relaxed_reach_step(g: &DefGraph, seeds: &[Vertex], r: Percent) -> Result<Vec<Vertex>> {
    let known = g.membership(seeds)?;
    Ok(g.vertices()
        .filter(|&v| {
            known[v] || {
                let defs = g.in_neighbors(v);
                r.admits(defs.iter().filter(|&&u| known[u]).count(), defs.len())
            }
        })
        .collect())
}

/// `R*(U)` with the step at which every word is learned.
pub fn reachable_set(g: &DefGraph, seeds: &[Vertex]) -> Result<ReachabilityResult> {
    relaxed_reachable_set(g, seeds, Percent::FULL)
}

/// Fixpoint of the relaxed operator.
///
/// Runs in `O(|V| + |E|)`: every word keeps a count of known definers, and
/// the words learned in round `k` are exactly those whose count crossed the
/// threshold while the words of round `k - 1` were being propagated.
pub fn relaxed_reachable_set(g: &DefGraph, seeds: &[Vertex], r: Percent) -> Result<ReachabilityResult> {
    let n = g.vertex_count();
    let mut step_of: Vec<Option<u32>> = vec![None; n];
    let mut known_defs = vec![0usize; n];
    let mut frontier = Vec::new();
    for &s in seeds {
        let slot = step_of.get_mut(s).ok_or(Error::UnknownVertex(s))?;
        if slot.is_none() {
            *slot = Some(0);
            frontier.push(s);
        }
    }
    for &s in &frontier {
        for &v in g.out_neighbors(s) {
            known_defs[v] += 1;
        }
    }

    // round 1 is every unknown word whose threshold already holds, which
    // includes words with no definers
    let mut next: Vec<Vertex> = g
        .vertices()
        .filter(|&v| step_of[v].is_none() && r.admits(known_defs[v], g.in_degree(v)))
        .collect();
    let mut step = 0;
    let mut reached = frontier;
    while !next.is_empty() {
        step += 1;
        for &v in &next {
            step_of[v] = Some(step);
        }
        let mut following = Vec::new();
        for &u in &next {
            for &v in g.out_neighbors(u) {
                known_defs[v] += 1;
                if step_of[v].is_none() && r.admits(known_defs[v], g.in_degree(v)) {
                    // mark as pending so it is queued once
                    step_of[v] = Some(u32::MAX);
                    following.push(v);
                }
            }
        }
        reached.extend_from_slice(&next);
        next = following;
    }
    reached.sort_unstable();
    Ok(ReachabilityResult {
        step_of,
        reached,
        fixpoint_step: step,
    })
}

/// Whether `R*(U) = V`.
pub fn is_grounding_set(g: &DefGraph, seeds: &[Vertex]) -> Result<bool> {
    Ok(reachable_set(g, seeds)?.is_total())
}

/// `|R*(U)| / |V|` under the relaxed rule, as an exact fraction. An empty
/// graph counts as fully covered.
pub fn coverage_fraction(g: &DefGraph, seeds: &[Vertex], r: Percent) -> Result<Ratio<usize>> {
    let reached = relaxed_reachable_set(g, seeds, r)?.reached.len();
    if g.vertex_count() == 0 {
        return Ok(Ratio::from_integer(1));
    }
    Ok(Ratio::new(reached, g.vertex_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{chain, toy};
    use proptest::prelude::*;

    const SEED: [&str; 4] = ["bad", "light", "not", "thing"];

    #[test]
    fn one_step_from_example_seed() {
        let g = toy();
        let u = g.vertex_set(&SEED).unwrap();
        let r1 = reach_step(&g, &u).unwrap();
        assert_eq!(g.names(&r1), ["bad", "dark", "good", "light", "not", "thing"]);
        assert!(reach_step(&g, &[]).unwrap().is_empty());
        let all: Vec<_> = g.vertices().collect();
        assert_eq!(reach_step(&g, &all).unwrap(), all);
        assert!(matches!(reach_step(&g, &[15]), Err(Error::UnknownVertex(15))));
    }

    #[test]
    fn closure_from_example_seed() {
        let g = toy();
        let u = g.vertex_set(&SEED).unwrap();
        let res = reachable_set(&g, &u).unwrap();
        assert_eq!(
            g.names(res.reached()),
            ["bad", "dark", "eatable", "fruit", "good", "light", "not", "thing"]
        );
        let step = |w| res.step(g.vertex(w).unwrap());
        assert_eq!(step("bad"), Some(0));
        assert_eq!(step("dark"), Some(1));
        assert_eq!(step("good"), Some(1));
        assert_eq!(step("eatable"), Some(2));
        assert_eq!(step("fruit"), Some(3));
        assert_eq!(step("color"), None);
        assert_eq!(res.fixpoint_step(), 3);
    }

    #[test]
    fn grounding_sets_of_example() {
        let g = toy();
        let u = g.vertex_set(&SEED).unwrap();
        assert!(!is_grounding_set(&g, &u).unwrap());
        let mut u2 = u.clone();
        u2.push(g.vertex("or").unwrap());
        assert!(is_grounding_set(&g, &u2).unwrap());
        let all: Vec<_> = g.vertices().collect();
        assert!(is_grounding_set(&g, &all).unwrap());
    }

    #[test]
    fn chain_steps() {
        let g = chain(3);
        let res = reachable_set(&g, &[0]).unwrap();
        assert_eq!(res.reached(), [0, 1, 2]);
        assert_eq!(res.steps(), [Some(0), Some(1), Some(2)]);
        assert_eq!(res.fixpoint_step(), 2);

        // v0 has no definers, so it is learned from nothing at step 1
        let res = reachable_set(&g, &[]).unwrap();
        assert_eq!(res.steps(), [Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn relaxed_rule() {
        let g = toy();
        let all: Vec<_> = g.vertices().collect();
        let zero = Percent::new(0).unwrap();
        assert_eq!(relaxed_reach_step(&g, &[], zero).unwrap(), all);

        let half = Percent::new(50).unwrap();
        let red = g.vertex_set(&["red"]).unwrap();
        let step = relaxed_reach_step(&g, &red, half).unwrap();
        assert_eq!(g.names(&step), ["apple", "red", "tomato"]);

        let u = g.vertex_set(&["bad", "light", "not", "or", "thing"]).unwrap();
        let res = relaxed_reachable_set(&g, &u, Percent::FULL).unwrap();
        assert_eq!(res.reached(), all);

        assert!(matches!(Percent::new(101), Err(Error::InvalidPercent(101))));
    }

    #[test]
    fn coverage() {
        let g = toy();
        let u = g.vertex_set(&SEED).unwrap();
        assert_eq!(coverage_fraction(&g, &u, Percent::FULL).unwrap(), Ratio::new(8, 15));
        let all: Vec<_> = g.vertices().collect();
        assert_eq!(coverage_fraction(&g, &all, Percent::FULL).unwrap(), Ratio::from_integer(1));
        assert_eq!(coverage_fraction(&g, &[], Percent::FULL).unwrap(), Ratio::from_integer(0));
    }

    /// Repeats the single-step operator until nothing changes.
    fn naive_closure(g: &DefGraph, seeds: &[Vertex], r: Percent) -> Vec<Option<u32>> {
        let mut steps = vec![None; g.vertex_count()];
        let mut current: Vec<Vertex> = seeds.to_vec();
        current.sort_unstable();
        current.dedup();
        for &v in &current {
            steps[v] = Some(0);
        }
        let mut k = 0;
        loop {
            let next = relaxed_reach_step(g, &current, r).unwrap();
            if next == current {
                return steps;
            }
            k += 1;
            for &v in &next {
                steps[v].get_or_insert(k);
            }
            current = next;
        }
    }

    fn arb_instance() -> impl Strategy<Value = (DefGraph, Vec<Vertex>)> {
        (1usize..=10).prop_flat_map(|n| {
            (
                proptest::collection::vec((0..n, 0..n), 0..n * 3),
                proptest::collection::vec(0..n, 0..n),
            )
                .prop_map(move |(arcs, seeds)| (DefGraph::from_index_arcs(n, &arcs), seeds))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn layered_equals_naive((g, u) in arb_instance(), r in 0u32..=100) {
            let r = Percent::new(r).unwrap();
            let fast = relaxed_reachable_set(&g, &u, r).unwrap();
            prop_assert_eq!(fast.steps().to_vec(), naive_closure(&g, &u, r));
            prop_assert!(fast.fixpoint_step() as usize <= g.vertex_count());
            let strict = reachable_set(&g, &u).unwrap();
            prop_assert_eq!(strict.steps().to_vec(), naive_closure(&g, &u, Percent::FULL));
        }

        #[test]
        fn step_witnesses((g, u) in arb_instance()) {
            let res = reachable_set(&g, &u).unwrap();
            for v in g.vertices() {
                let Some(k) = res.step(v) else { continue };
                if k == 0 {
                    prop_assert!(u.contains(&v));
                    continue;
                }
                prop_assert!(!u.contains(&v));
                let defs = g.in_neighbors(v);
                prop_assert!(defs.iter().all(|&d| res.step(d).is_some_and(|s| s < k)));
                if !defs.is_empty() {
                    prop_assert!(defs.iter().any(|&d| res.step(d) == Some(k - 1)));
                }
            }
        }

        #[test]
        fn monotone_and_inflationary((g, u) in arb_instance(), extra in proptest::collection::vec(0usize..10, 0..4), r in 0u32..=100) {
            let r = Percent::new(r).unwrap();
            let mut w = u.clone();
            w.extend(extra.into_iter().filter(|&x| x < g.vertex_count()));
            let ru = relaxed_reach_step(&g, &u, r).unwrap();
            let rw = relaxed_reach_step(&g, &w, r).unwrap();
            prop_assert!(ru.iter().all(|v| rw.contains(v)));
            prop_assert!(u.iter().all(|v| ru.contains(v)));
        }

        #[test]
        fn self_loops_only_from_seeds((g, u) in arb_instance()) {
            let res = reachable_set(&g, &u).unwrap();
            for v in g.vertices().filter(|&v| g.has_self_loop(v)) {
                prop_assert_eq!(res.contains(v), u.contains(&v));
            }
        }

        #[test]
        fn anti_monotone_in_percent((g, u) in arb_instance(), a in 0u32..=100, b in 0u32..=100) {
            let (lo, hi) = (a.min(b), a.max(b));
            let wide = relaxed_reachable_set(&g, &u, Percent::new(lo).unwrap()).unwrap();
            let narrow = relaxed_reachable_set(&g, &u, Percent::new(hi).unwrap()).unwrap();
            prop_assert!(narrow.reached().iter().all(|&v| wide.contains(v)));
        }
    }
}
