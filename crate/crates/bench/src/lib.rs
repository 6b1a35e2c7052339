//! Fixtures shared by the benchmarks.

use hyperchrom::families::{self, Orientation};
use hyperchrom::OrientedHypergraph;

/// Hyperflowers and multipartite hypergraphs of growing size.
pub fn family_ladder() -> Vec<(String, OrientedHypergraph)> {
    let mut out = Vec::new();
    for p in [2, 4, 8] {
        out.push((format!("hyperflower c=5 p={p} k=2"), families::hyperflower(5, p, 2)));
    }
    for k in [4, 6, 8] {
        out.push((format!("multipartite c=3 s=2 k={k}"), families::complete_multipartite(3, &vec![2; k])));
    }
    out
}

/// Random 3-uniform instances with `n` vertices and `2n` edges.
pub fn random_ladder(sizes: &[usize]) -> Vec<(String, OrientedHypergraph)> {
    sizes
        .iter()
        .map(|&n| {
            let h = families::random_uniform(3, n, 2 * n, 1, Orientation::Signs).expect("valid shape");
            (format!("random c=3 n={n}"), h)
        })
        .collect()
}
