//! Plain simple graphs, used for the edge intersection graph.

use super::search::{solve, Problem};
use super::{ChromaticResult, Target};
use crate::hypergraph::OrientedHypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    /// Sorted neighbour lists.
    pub adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }
}

/// Graph on the edge indices of `h`; two edges are adjacent when they share a vertex.
pub fn intersection_graph(h: &OrientedHypergraph) -> SimpleGraph {
    let mut adjacency = vec![Vec::new(); h.edge_count()];
    for v in 0..h.vertex_count() {
        let inc = h.incident_edges(v);
        for &e in inc {
            adjacency[e].extend(inc.iter().copied().filter(|&f| f != e));
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    SimpleGraph { adjacency }
}

/// Proper vertex coloring number of `g`.
pub fn graph_chromatic(g: &SimpleGraph, budget: u64) -> ChromaticResult {
    solve(&Problem::proper(g.adjacency.clone(), Target::Vertex), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::RawHypergraph;

    #[test]
    fn petals_through_a_center_form_a_clique() {
        let h = RawHypergraph::from_named(
            &["z", "a", "b", "c", "d"],
            &[vec![("z", -1), ("a", -1)], vec![("z", -1), ("b", -1)], vec![("z", -1), ("c", -1), ("d", -1)]],
        )
        .build()
        .unwrap();
        let g = intersection_graph(&h);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(graph_chromatic(&g, 1000).number(), Some(3));
    }

    #[test]
    fn disjoint_edges_are_independent() {
        let h =
            RawHypergraph::from_named(&["a", "b", "c", "d"], &[vec![("a", -1), ("b", -1)], vec![("c", -1), ("d", -1)]])
                .build()
                .unwrap();
        let g = intersection_graph(&h);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(graph_chromatic(&g, 1000).number(), Some(1));
    }
}
