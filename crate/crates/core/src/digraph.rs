//! The associated graph of a dictionary: one vertex per word and an arc
//! `(u, v)` whenever `u` occurs in the definition of `v`.
//!
//! Vertices are numbered by the lexicographic rank of their word, so every
//! sorted list of vertex ids is also sorted by word.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::lexicon::{Dictionary, Word};

/// Index of a vertex in a [`DefGraph`].
pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefGraph {
    words: Vec<Word>,
    index: HashMap<Word, Vertex>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    arc_count: usize,
}

impl DefGraph {
    /// Builds the associated graph. Undefined words of an open dictionary
    /// become vertices without in-arcs.
    pub fn from_dictionary(dict: &Dictionary) -> Self {
        let words: BTreeSet<&Word> = dict.iter().map(|(w, _)| w).chain(dict.undefined()).collect();
        let words: Vec<Word> = words.into_iter().cloned().collect();
        let index: HashMap<Word, Vertex> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut arcs = Vec::new();
        for (word, definition) in dict.iter() {
            let v = index[word];
            arcs.extend(definition.iter().map(|d| (index[d], v)));
        }
        Self::assemble(words, index, arcs)
    }

    /// Builds a graph from explicit words and arcs. Words are sorted and
    /// deduplicated; arcs refer to words by name.
    pub fn from_arcs<S: AsRef<str>>(words: &[S], arcs: &[(S, S)]) -> Result<Self> {
        let words: BTreeSet<Word> = words.iter().map(|w| Word::new(w.as_ref())).collect::<Result<_>>()?;
        let words: Vec<Word> = words.into_iter().collect();
        let index: HashMap<Word, Vertex> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let lookup = |s: &S| {
            let w = Word::new(s.as_ref())?;
            index.get(&w).copied().ok_or_else(|| Error::UnknownWord(w.into_string()))
        };
        let arcs = arcs
            .iter()
            .map(|(u, v)| Ok((lookup(u)?, lookup(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(words, index, arcs))
    }

    /// Builds a graph on `n` vertices named `v00`, `v01`, ... from index
    /// pairs. Names are zero padded so that numeric and lexicographic
    /// order agree.
    pub fn from_index_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Self {
        let width = n.saturating_sub(1).to_string().len().max(2);
        let words: Vec<Word> = (0..n)
            .map(|i| Word::new(&format!("v{i:0width$}")).expect("generated names are valid"))
            .collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Self::assemble(words, index, arcs.to_vec())
    }

    fn assemble(words: Vec<Word>, index: HashMap<Word, Vertex>, mut arcs: Vec<(Vertex, Vertex)>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        let n = words.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        // out lists are sorted by construction; in lists too, since arcs are
        // sorted by source
        DefGraph {
            words,
            index,
            out_adj,
            in_adj,
            arc_count: arcs.len(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.words.len()
    }

    pub fn word(&self, v: Vertex) -> &Word {
        &self.words[v]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Looks a word up after normalizing it.
    pub fn vertex(&self, word: &str) -> Result<Vertex> {
        let w = Word::new(word)?;
        self.index.get(&w).copied().ok_or_else(|| Error::UnknownWord(w.into_string()))
    }

    /// Looks up several words; the result is sorted and deduplicated.
    pub fn vertex_set<S: AsRef<str>>(&self, words: &[S]) -> Result<Vec<Vertex>> {
        let mut ids = words.iter().map(|w| self.vertex(w.as_ref())).collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        ids.dedup();
        Ok(ids)
    }

    pub fn names(&self, vertices: &[Vertex]) -> Vec<&str> {
        vertices.iter().map(|&v| self.words[v].as_str()).collect()
    }

    /// N^-(v): the words used in the definition of `v`.
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    /// N^+(v): the words whose definition uses `v`.
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn has_self_loop(&self, v: Vertex) -> bool {
        self.has_arc(v, v)
    }

    /// Arcs in lexicographic order of (source, target).
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// Checks that every id is a vertex and returns a membership mask.
    pub fn membership(&self, set: &[Vertex]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.vertex_count()];
        for &v in set {
            *mask.get_mut(v).ok_or(Error::UnknownVertex(v))? = true;
        }
        Ok(mask)
    }

    /// The subgraph induced by `keep`, with vertices renumbered in order:
    /// vertex `i` of the result is the `i`-th smallest id in `keep`. Costs
    /// time proportional to the kept vertices and their arcs.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<DefGraph> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(Error::UnknownVertex(bad));
        }
        let words: Vec<Word> = keep.iter().map(|&v| self.words[v].clone()).collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut arcs = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for v in &self.out_adj[u] {
                if let Ok(j) = keep.binary_search(v) {
                    arcs.push((i, j));
                }
            }
        }
        Ok(Self::assemble(words, index, arcs))
    }

    pub fn induced_subgraph_words<S: AsRef<str>>(&self, keep: &[S]) -> Result<DefGraph> {
        self.induced_subgraph(&self.vertex_set(keep)?)
    }

    /// Strongly connected components by Tarjan's algorithm, without recursion.
    pub fn scc(&self) -> SccDecomposition {
        const UNVISITED: usize = usize::MAX;
        let n = self.vertex_count();
        let mut index = vec![UNVISITED; n];
        let mut lowlink = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        // (vertex, position in its out list)
        let mut call: Vec<(Vertex, usize)> = Vec::new();
        let mut next_index = 0;
        let mut found: Vec<Vec<Vertex>> = Vec::new();

        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            lowlink[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if let Some(&w) = self.out_adj[v].get(*pos) {
                    *pos += 1;
                    if index[w] == UNVISITED {
                        index[w] = next_index;
                        lowlink[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        lowlink[v] = lowlink[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("v is on the stack");
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    component.sort_unstable();
                    found.push(component);
                }
            }
        }

        // Tarjan emits sinks first
        found.reverse();
        let mut component_of = vec![0; n];
        for (c, members) in found.iter().enumerate() {
            for &v in members {
                component_of[v] = c;
            }
        }
        let topo_order = (0..found.len()).collect();
        SccDecomposition {
            component_of,
            components: found,
            topo_order,
        }
    }

    /// True iff the graph has no cycle; a self-loop is a cycle.
    pub fn is_acyclic(&self) -> bool {
        let all = vec![true; self.vertex_count()];
        acyclic_within(self, &all)
    }
}

/// Kahn's algorithm on the subgraph induced by `alive`.
pub(crate) fn acyclic_within(g: &DefGraph, alive: &[bool]) -> bool {
    let mut indeg = vec![0usize; g.vertex_count()];
    let mut remaining = 0;
    for v in g.vertices().filter(|&v| alive[v]) {
        remaining += 1;
        indeg[v] = g.in_neighbors(v).iter().filter(|&&u| alive[u]).count();
    }
    let mut queue: Vec<Vertex> = g.vertices().filter(|&v| alive[v] && indeg[v] == 0).collect();
    while let Some(u) = queue.pop() {
        remaining -= 1;
        for &v in g.out_neighbors(u) {
            if alive[v] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
    }
    remaining == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    pub component_of: Vec<usize>,
    /// Sorted vertex lists.
    pub components: Vec<Vec<Vertex>>,
    /// Component ids such that every inter-component arc goes forward.
    pub topo_order: Vec<usize>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Whether component `c` contains a cycle, i.e. has more than one vertex
    /// or a self-loop.
    pub fn is_cyclic(&self, g: &DefGraph, c: usize) -> bool {
        match self.components[c].as_slice() {
            [v] => g.has_self_loop(*v),
            _ => true,
        }
    }
}
