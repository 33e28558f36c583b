use std::fmt::Write;

use groundkernel::DefGraph;

fn quoted(word: &str) -> String {
    let mut out = String::with_capacity(word.len() + 2);
    out.push('"');
    for c in word.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// One node line per word and one edge line per arc, both in lexicographic
/// order. Highlighted words are drawn as boxes.
pub fn render(g: &DefGraph, highlighted: &[usize]) -> String {
    let mut marked = vec![false; g.vertex_count()];
    for &v in highlighted {
        marked[v] = true;
    }
    let mut out = String::from("digraph dictionary {\n");
    for v in g.vertices() {
        let name = quoted(g.word(v).as_str());
        if marked[v] {
            writeln!(out, "    {name} [shape=box];").unwrap();
        } else {
            writeln!(out, "    {name};").unwrap();
        }
    }
    for (u, v) in g.arcs() {
        writeln!(out, "    {} -> {};", quoted(g.word(u).as_str()), quoted(g.word(v).as_str())).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_nodes_and_arcs() {
        let g = DefGraph::from_arcs(&["a", "b"], &[("a", "b"), ("b", "b")]).unwrap();
        let text = render(&g, &[1]);
        assert_eq!(
            text,
            "digraph dictionary {\n    \"a\";\n    \"b\" [shape=box];\n    \"a\" -> \"b\";\n    \"b\" -> \"b\";\n}\n"
        );
    }

    #[test]
    fn escapes_quotes() {
        assert_eq!(quoted(r#"say"hi"#), r#""say\"hi""#);
    }
}
