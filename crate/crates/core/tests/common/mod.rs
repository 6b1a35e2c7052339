//! Instance corpora shared by the integration tests.
#![allow(dead_code)]

use hyperchrom::families::{self, Orientation};
use hyperchrom::{OrientedHypergraph, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Named = (String, OrientedHypergraph);

/// Named families with small parameters.
pub fn family_corpus() -> Vec<Named> {
    let mut out = Vec::new();
    for c in 2..=5 {
        for k in 1..c {
            for p in 1..=4 {
                out.push((format!("hyperflower:c={c},p={p},k={k}"), families::hyperflower(c, p, k)));
            }
        }
    }
    for k in 2..=5 {
        for c in 2..=k {
            for s in 1..=2 {
                if k * s <= 10 {
                    out.push((
                        format!("multipartite:c={c},s={s},k={k}"),
                        families::complete_multipartite(c, &vec![s; k]),
                    ));
                }
            }
        }
    }
    out.push(("multipartite:c=2,sizes=1/2/3".into(), families::complete_multipartite(2, &[1, 2, 3])));
    out.push(("examplea0".into(), families::example_a0()));
    for n in 3..=7 {
        out.push((format!("complete:n={n}"), families::complete_graph(n)));
    }
    for c in 2..=4 {
        for m in 1..=3 {
            out.push((format!("disjoint:c={c},m={m}"), families::disjoint_edges(c, m)));
        }
    }
    out
}

/// Seeded `(c, n, m)` triples with `n <= 8` that the generator accepts.
fn uniform_shape(rng: &mut ChaCha8Rng, c: usize) -> (usize, usize) {
    let n = rng.random_range(c.max(4)..=8);
    let lo = n.div_ceil(c);
    let hi = (lo + 6).min(binomial(n, c));
    (n, rng.random_range(lo..=hi))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Random `c`-uniform instances with `N <= 8`.
pub fn random_uniform_corpus(count: usize, c: usize, orient: Orientation, seed: u64) -> Vec<Named> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (n, m) = uniform_shape(&mut rng, c);
            let s = seed.wrapping_mul(1000) + i as u64;
            let h = families::random_uniform(c, n, m, s, orient).expect("shape is admissible");
            (format!("random:c={c},n={n},m={m},seed={s},orient={orient}"), h)
        })
        .collect()
}

/// Random instances with mixed edge sizes and signs, `N <= 8` and at most `max_m` edges.
pub fn random_mixed_corpus(count: usize, max_m: usize, seed: u64) -> Vec<Named> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n: usize = rng.random_range(3..=8);
            let cmax = rng.random_range(2..=n.min(5));
            let available: usize = (2..=cmax).map(|c| binomial(n, c)).sum();
            let lo = n.div_ceil(cmax);
            let m = rng.random_range(lo..=max_m.min(available).max(lo));
            let s = seed.wrapping_mul(1000) + i as u64;
            let h = families::random_mixed(n, m, cmax, s).expect("shape is admissible");
            (format!("random-mixed:n={n},m={m},cmax={cmax},seed={s}"), h)
        })
        .collect()
}

/// Random graphs with one input and one output per edge.
pub fn random_graph_corpus(count: usize, seed: u64) -> Vec<Named> {
    random_uniform_corpus(count, 2, Orientation::Graph, seed)
}

/// Uniform all-inputs instances reoriented so that one side of a random
/// split flips its signs: every edge then has the same sign pattern relative
/// to the split, which makes the instance bipartite. Some edges are then
/// flipped whole, which keeps it bipartite.
pub fn bipartite_corpus(count: usize, seed: u64) -> Vec<Named> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (i, c) in (0..count).map(|i| (i, 2 + i % 3)) {
        let (name, h) = random_uniform_corpus(1, c, Orientation::Inputs, seed + i as u64).remove(0);
        let side: Vec<bool> = (0..h.vertex_count()).map(|_| rng.random_bool(0.5)).collect();
        let flip: Vec<bool> = (0..h.edge_count()).map(|_| rng.random_bool(0.3)).collect();
        let b = h.reoriented(|v, e| if side[v] != flip[e] { Sign::Output } else { Sign::Input });
        out.push((format!("{name}+split"), b));
    }
    out
}

/// Everything above, deterministic.
pub fn full_corpus() -> Vec<Named> {
    let mut out = family_corpus();
    for c in 2..=4 {
        out.extend(random_uniform_corpus(15, c, Orientation::Inputs, 100 + c as u64));
        out.extend(random_uniform_corpus(10, c, Orientation::Signs, 200 + c as u64));
    }
    out.extend(random_graph_corpus(15, 300));
    out.extend(random_mixed_corpus(30, 8, 400));
    out.extend(bipartite_corpus(15, 500));
    out
}
