//! Graphviz export through petgraph's DOT writer.

use petgraph::dot::Dot;
use petgraph::graph::DiGraph;

use crate::quiver::Quiver;

/// The quiver as a petgraph multigraph: vertex ids on nodes, labels on edges.
pub fn to_graph(q: &Quiver) -> DiGraph<String, String> {
    let mut g = DiGraph::with_capacity(q.vertex_count(), q.arrow_count());
    let nodes: Vec<_> = q.vertices().iter().map(|v| g.add_node(v.clone())).collect();
    for a in q.arrows() {
        g.add_edge(nodes[a.source], nodes[a.target], a.label.clone());
    }
    g
}

/// DOT text; one edge statement per arrow, so parallel arrows stay visible.
pub fn to_dot(q: &Quiver) -> String {
    format!("{}", Dot::new(&to_graph(q)))
}

/// DOT text with nodes relabelled, e.g. by generator vectors.
pub fn to_dot_labelled(q: &Quiver, labels: &[String]) -> String {
    let mut g = to_graph(q);
    for (w, l) in g.node_weights_mut().zip(labels) {
        *w = l.clone();
    }
    format!("{}", Dot::new(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_statements() {
        let mut q = Quiver::with_vertices(["x", "y"]);
        q.add_arrow("a", 0, 1).unwrap();
        q.add_arrow("b", 0, 1).unwrap();
        q.add_arrow("l", 1, 1).unwrap();
        let d = to_dot(&q);
        assert!(d.starts_with("digraph {"));
        assert_eq!(d.matches("->").count(), 3);
        assert!(d.contains("label = \"x\""));
    }
}
