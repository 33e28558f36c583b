use crate::digraph::DefGraph;
use crate::lexicon::parse_text;

pub const TOY: &str = include_str!("../tests/data/toy.txt");

pub fn toy() -> DefGraph {
    DefGraph::from_dictionary(&parse_text(TOY.as_bytes()).unwrap())
}

/// v0 -> v1 -> ... -> v(n-1)
pub fn chain(n: usize) -> DefGraph {
    let arcs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    DefGraph::from_index_arcs(n, &arcs)
}
