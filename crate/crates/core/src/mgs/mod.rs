//! Minimum grounding sets.
//!
//! A set of words grounds the dictionary exactly when removing it leaves no
//! definitional cycle, so a minimum grounding set is a minimum feedback
//! vertex set of the definition graph. Cycles never cross strongly
//! connected components, which lets the problem split per component. Small
//! components are solved exactly; larger ones fall back to a greedy
//! heuristic and the result is flagged as inexact.

mod exact;
mod greedy;

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{acyclic_within, DefGraph, Vertex};
use crate::error::{Error, Result};
use crate::kernel::grounding_kernel;
use crate::reachability::is_grounding_set;

use exact::MaskGraph;

/// Largest graph [`brute_force_min_fvs`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 15;

/// Largest component the exact search can represent.
pub const EXACT_LIMIT_MAX: usize = exact::MAX_VERTICES;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Heuristic {
    /// Repeatedly remove the vertex with the largest in-degree × out-degree.
    #[default]
    GreedyDegreeProduct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MgsConfig {
    /// Components up to this size are solved exactly.
    pub exact_limit: usize,
    pub heuristic: Heuristic,
}

impl Default for MgsConfig {
    fn default() -> Self {
        MgsConfig {
            exact_limit: 25,
            heuristic: Heuristic::GreedyDegreeProduct,
        }
    }
}

impl MgsConfig {
    pub fn with_exact_limit(exact_limit: usize) -> Result<Self> {
        let cfg = MgsConfig {
            exact_limit,
            ..Self::default()
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        if !(1..=EXACT_LIMIT_MAX).contains(&self.exact_limit) {
            return Err(Error::InvalidConfig(format!(
                "exact_limit must be in 1..={EXACT_LIMIT_MAX}, got {}",
                self.exact_limit
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentChoice {
    /// Vertices of the component, sorted.
    pub vertices: Vec<Vertex>,
    pub chosen: Vec<Vertex>,
    pub exact: bool,
    /// Proven lower bound for this component; equals `chosen.len()` when
    /// exact.
    pub lower_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgsResult {
    /// Sorted grounding set.
    pub chosen: Vec<Vertex>,
    /// Whether `chosen` is known to be minimum.
    pub exact: bool,
    /// Cyclic components in topological order.
    pub per_component: Vec<ComponentChoice>,
    pub grounding_number_lower_bound: usize,
    pub grounding_number_upper_bound: usize,
}

/// Whether every cycle of `g` meets `set`.
pub fn is_feedback_vertex_set(g: &DefGraph, set: &[Vertex]) -> Result<bool> {
    let removed = g.membership(set)?;
    let keep: Vec<bool> = removed.iter().map(|r| !r).collect();
    Ok(acyclic_within(g, &keep))
}

/// Every minimum feedback vertex set, by exhaustive enumeration in order of
/// size. Exponential; meant as a reference for small graphs.
pub fn brute_force_min_fvs(g: &DefGraph) -> Result<Vec<Vec<Vertex>>> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for masks in by_size {
        let found: Vec<Vec<Vertex>> = masks
            .into_iter()
            .filter(|&mask| {
                let keep: Vec<bool> = (0..n).map(|v| mask & (1 << v) == 0).collect();
                acyclic_within(g, &keep)
            })
            .map(|mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
            .collect();
        if !found.is_empty() {
            let mut found = found;
            found.sort();
            return Ok(found);
        }
    }
    unreachable!("the full vertex set is always a feedback vertex set")
}

/// A minimum feedback vertex set of a small graph, normally one strongly
/// connected component. Among minimum sets, returns the one whose sorted
/// word list is lexicographically smallest.
pub fn exact_min_fvs_scc(component: &DefGraph, exact_limit: usize) -> Result<Vec<Vertex>> {
    let limit = exact_limit.min(EXACT_LIMIT_MAX);
    let n = component.vertex_count();
    if n > limit {
        return Err(Error::TooLarge { size: n, limit });
    }
    if component.is_acyclic() {
        return Ok(Vec::new());
    }
    let masks = MaskGraph::new(component);
    let start = MaskGraph::to_mask(&greedy::greedy_fvs(component));
    Ok(MaskGraph::to_vertices(masks.lexicographic_minimum(start)))
}

/// A feedback vertex set found by the greedy degree-product rule. Always
/// valid, not necessarily minimum.
pub fn greedy_fvs_scc(component: &DefGraph) -> Vec<Vertex> {
    greedy::greedy_fvs(component)
}

/// A smallest grounding set, exact when every cyclic component fits within
/// `cfg.exact_limit`.
pub fn minimum_grounding_set(g: &DefGraph, cfg: &MgsConfig) -> Result<MgsResult> {
    cfg.check()?;
    // every minimum grounding set lies inside the kernel
    let kernel = grounding_kernel(g).kernel;
    let core = g.induced_subgraph(&kernel)?;
    let scc = core.scc();
    let cyclic: Vec<&Vec<Vertex>> = scc
        .topo_order
        .iter()
        .filter(|&&c| scc.is_cyclic(&core, c))
        .map(|&c| &scc.components[c])
        .collect();

    let per_component = cyclic
        .par_iter()
        .map(|members| -> Result<ComponentChoice> {
            let sub = core.induced_subgraph(members)?;
            let (local, exact, lower_bound) = if members.len() <= cfg.exact_limit {
                let local = exact_min_fvs_scc(&sub, cfg.exact_limit)?;
                let size = local.len();
                (local, true, size)
            } else {
                let local = match cfg.heuristic {
                    Heuristic::GreedyDegreeProduct => greedy::greedy_fvs(&sub),
                };
                (local, false, greedy::disjoint_cycle_bound(&sub).max(1))
            };
            // sub vertex i is members[i]; core vertex j is kernel[j]
            let to_graph = |vs: &[Vertex]| -> Vec<Vertex> { vs.iter().map(|&v| kernel[v]).collect() };
            let chosen: Vec<Vertex> = local.iter().map(|&i| members[i]).collect();
            Ok(ComponentChoice {
                vertices: to_graph(members),
                chosen: to_graph(&chosen),
                exact,
                lower_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut chosen: Vec<Vertex> = per_component.iter().flat_map(|c| c.chosen.iter().copied()).collect();
    chosen.sort_unstable();
    let exact = per_component.iter().all(|c| c.exact);
    let lower: usize = per_component.iter().map(|c| c.lower_bound).sum();

    assert!(
        chosen.iter().all(|v| kernel.binary_search(v).is_ok()),
        "grounding set escapes the kernel"
    );
    assert!(is_grounding_set(g, &chosen)?, "chosen set does not ground the graph");

    Ok(MgsResult {
        grounding_number_upper_bound: chosen.len(),
        grounding_number_lower_bound: lower,
        chosen,
        exact,
        per_component,
    })
}

/// Size of a minimum grounding set and whether it is exact.
pub fn grounding_number(g: &DefGraph, cfg: &MgsConfig) -> Result<(usize, bool)> {
    let res = minimum_grounding_set(g, cfg)?;
    Ok((res.chosen.len(), res.exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{chain, toy};
    use proptest::prelude::*;

    #[test]
    fn table_feedback_sets() {
        let g = toy();
        let five = g.vertex_set(&["not", "or", "thing", "light", "bad"]).unwrap();
        assert!(is_feedback_vertex_set(&g, &five).unwrap());
        let three = g.vertex_set(&["not", "or", "thing"]).unwrap();
        assert!(!is_feedback_vertex_set(&g, &three).unwrap());
        assert!(is_feedback_vertex_set(&chain(4), &[]).unwrap());
        assert!(matches!(is_feedback_vertex_set(&g, &[40]), Err(Error::UnknownVertex(40))));
    }

    #[test]
    fn brute_force_small_cases() {
        let g = toy();
        let all = brute_force_min_fvs(&g).unwrap();
        // two independent 2-cycles: 2 × 2 choices
        assert_eq!(all.len(), 4);
        let forced = g.vertex_set(&["not", "or", "thing"]).unwrap();
        for set in &all {
            assert_eq!(set.len(), 5);
            assert!(forced.iter().all(|v| set.contains(v)));
        }

        let two = DefGraph::from_index_arcs(2, &[(0, 1), (1, 0)]);
        assert_eq!(brute_force_min_fvs(&two).unwrap(), [vec![0], vec![1]]);
        assert_eq!(brute_force_min_fvs(&chain(3)).unwrap(), [Vec::<Vertex>::new()]);
        assert!(matches!(brute_force_min_fvs(&chain(16)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn exact_on_components() {
        let g = toy();
        let pair = g.induced_subgraph_words(&["good", "bad"]).unwrap();
        assert_eq!(pair.names(&exact_min_fvs_scc(&pair, 25).unwrap()), ["bad"]);
        let not = g.induced_subgraph_words(&["not"]).unwrap();
        assert_eq!(not.names(&exact_min_fvs_scc(&not, 25).unwrap()), ["not"]);
        let apple = g.induced_subgraph_words(&["apple"]).unwrap();
        assert!(exact_min_fvs_scc(&apple, 25).unwrap().is_empty());
        assert!(matches!(exact_min_fvs_scc(&chain(3), 2), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn table_grounding_number() {
        let g = toy();
        let res = minimum_grounding_set(&g, &MgsConfig::default()).unwrap();
        assert!(res.exact);
        assert_eq!(g.names(&res.chosen), ["bad", "dark", "not", "or", "thing"]);
        assert_eq!(res.grounding_number_lower_bound, 5);
        assert_eq!(res.per_component.len(), 5);
        assert_eq!(grounding_number(&g, &MgsConfig::default()).unwrap(), (5, true));

        let narrow = MgsConfig::with_exact_limit(1).unwrap();
        let res = minimum_grounding_set(&g, &narrow).unwrap();
        assert!(!res.exact);
        assert_eq!(res.chosen.len(), 5);
        assert_eq!(res.grounding_number_lower_bound, 5);
        for c in &res.per_component {
            assert_eq!(c.exact, c.vertices.len() == 1);
        }
    }

    #[test]
    fn degenerate_graphs() {
        let res = minimum_grounding_set(&chain(5), &MgsConfig::default()).unwrap();
        assert!(res.chosen.is_empty() && res.exact);

        let two = DefGraph::from_index_arcs(2, &[(0, 1), (1, 0)]);
        assert_eq!(grounding_number(&two, &MgsConfig::default()).unwrap(), (1, true));

        let loops: Vec<_> = (0..7).map(|i| (i, i)).collect();
        let g = DefGraph::from_index_arcs(7, &loops);
        assert_eq!(grounding_number(&g, &MgsConfig::default()).unwrap(), (7, true));

        assert!(matches!(MgsConfig::with_exact_limit(0), Err(Error::InvalidConfig(_))));
        assert!(matches!(MgsConfig::with_exact_limit(65), Err(Error::InvalidConfig(_))));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = DefGraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..n * 3)
                .prop_map(move |arcs| DefGraph::from_index_arcs(n, &arcs))
        })
    }

    proptest! {
        #[test]
        fn grounding_iff_feedback(g in arb_graph(8)) {
            let n = g.vertex_count();
            for mask in 0u32..(1 << n) {
                let set: Vec<Vertex> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                prop_assert_eq!(is_grounding_set(&g, &set).unwrap(), is_feedback_vertex_set(&g, &set).unwrap());
            }
        }

        #[test]
        fn exact_matches_brute_force(g in arb_graph(11)) {
            let minima = brute_force_min_fvs(&g).unwrap();
            let res = minimum_grounding_set(&g, &MgsConfig::default()).unwrap();
            prop_assert!(res.exact);
            prop_assert_eq!(res.chosen.len(), minima[0].len());
            prop_assert_eq!(res.grounding_number_lower_bound, res.chosen.len());
            let loops: Vec<Vertex> = g.vertices().filter(|&v| g.has_self_loop(v)).collect();
            prop_assert!(loops.iter().all(|v| res.chosen.contains(v)));
        }

        #[test]
        fn exact_picks_smallest_minimum(g in arb_graph(10)) {
            let minima = brute_force_min_fvs(&g).unwrap();
            prop_assert_eq!(&exact_min_fvs_scc(&g, 25).unwrap(), &minima[0]);
        }

        #[test]
        fn greedy_is_feasible(g in arb_graph(12)) {
            let greedy = greedy_fvs_scc(&g);
            prop_assert!(is_feedback_vertex_set(&g, &greedy).unwrap());
            let best = brute_force_min_fvs(&g).unwrap()[0].len();
            prop_assert!(greedy.len() >= best);
            prop_assert!(greedy::disjoint_cycle_bound(&g) <= best);
        }
    }
}
