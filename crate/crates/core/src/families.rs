//! Named hypergraph families, seeded random instances, and closed-form spectra.
//!
//! Unoriented families put `-1` (input) on every incidence.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{OrientedHypergraph, RawHypergraph, Sign};

/// Whole-edge-set resampling attempts before the random generator gives up.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Every incidence is an input.
    Inputs,
    /// Each incidence is an input or an output with probability 1/2.
    Signs,
    /// `c = 2`; the lower-indexed member is the input, the other the output.
    Graph,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Inputs => "inputs",
            Orientation::Signs => "signs",
            Orientation::Graph => "graph",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// `p` edges of size `c` sharing exactly `k` central vertices.
    Hyperflower {
        c: usize,
        p: usize,
        k: usize,
    },
    /// All `c`-sets meeting each part at most once.
    CompleteMultipartite {
        c: usize,
        sizes: Vec<usize>,
    },
    /// [`FamilySpec::CompleteMultipartite`] with `k` parts of size `s`.
    UniformMultipartite {
        c: usize,
        s: usize,
        k: usize,
    },
    DisjointEdges {
        c: usize,
        m: usize,
    },
    /// Four vertices, edges `V \ {v_i}`, with zero adjacency matrix.
    ExampleA0,
    /// `K_n` with one input and one output per edge.
    CompleteGraph {
        n: usize,
    },
    /// `m` distinct `c`-subsets of `n` vertices, every vertex covered.
    RandomUniform {
        c: usize,
        n: usize,
        m: usize,
        seed: u64,
        orient: Orientation,
    },
    /// `m` distinct edges with sizes in `2..=cmax`, random signs, every vertex covered.
    RandomMixed {
        n: usize,
        m: usize,
        cmax: usize,
        seed: u64,
    },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Hyperflower { c, p, k } => write!(f, "hyperflower:c={c},p={p},k={k}"),
            FamilySpec::CompleteMultipartite { c, sizes } => {
                let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
                write!(f, "multipartite:c={c},sizes={}", sizes.join("/"))
            }
            FamilySpec::UniformMultipartite { c, s, k } => write!(f, "multipartite:c={c},s={s},k={k}"),
            FamilySpec::DisjointEdges { c, m } => write!(f, "disjoint:c={c},m={m}"),
            FamilySpec::ExampleA0 => write!(f, "examplea0"),
            FamilySpec::CompleteGraph { n } => write!(f, "complete:n={n}"),
            FamilySpec::RandomUniform { c, n, m, seed, orient } => {
                write!(f, "random:c={c},n={n},m={m},seed={seed},orient={orient}")
            }
            FamilySpec::RandomMixed { n, m, cmax, seed } => {
                write!(f, "random-mixed:n={n},m={m},cmax={cmax},seed={seed}")
            }
        }
    }
}

struct Params<'a> {
    spec: &'a str,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn error(&self, reason: impl Into<String>) -> Error {
        Error::FamilySpec { spec: self.spec.to_string(), reason: reason.into() }
    }

    fn raw(&self, key: &str) -> Result<&'a str> {
        self.pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).ok_or_else(|| self.error(format!("missing {key}")))
    }

    fn has(&self, key: &str) -> bool {
        self.pairs.iter().any(|(k, _)| *k == key)
    }

    fn int<T: FromStr>(&self, key: &str) -> Result<T> {
        self.raw(key)?.parse().map_err(|_| self.error(format!("{key} is not a nonnegative integer")))
    }

    fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.pairs.iter().find(|(k, _)| !allowed.contains(k)) {
            Some((k, _)) => Err(self.error(format!("unknown parameter {k}"))),
            None => Ok(()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut pairs = Vec::new();
        for item in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::FamilySpec {
                spec: spec.into(),
                reason: format!("expected key=value, got {item:?}"),
            })?;
            pairs.push((k.trim(), v.trim()));
        }
        let p = Params { spec, pairs };
        let family = match name.trim() {
            "hyperflower" => {
                p.only(&["c", "p", "k"])?;
                FamilySpec::Hyperflower { c: p.int("c")?, p: p.int("p")?, k: p.int("k")? }
            }
            "multipartite" if p.has("sizes") => {
                p.only(&["c", "sizes"])?;
                let sizes = p
                    .raw("sizes")?
                    .split('/')
                    .map(|s| s.parse().map_err(|_| p.error("sizes must look like 2/2/3")))
                    .collect::<Result<_>>()?;
                FamilySpec::CompleteMultipartite { c: p.int("c")?, sizes }
            }
            "multipartite" => {
                p.only(&["c", "s", "k"])?;
                FamilySpec::UniformMultipartite { c: p.int("c")?, s: p.int("s")?, k: p.int("k")? }
            }
            "disjoint" => {
                p.only(&["c", "m"])?;
                FamilySpec::DisjointEdges { c: p.int("c")?, m: p.int("m")? }
            }
            "examplea0" => {
                p.only(&[])?;
                FamilySpec::ExampleA0
            }
            "complete" => {
                p.only(&["n"])?;
                FamilySpec::CompleteGraph { n: p.int("n")? }
            }
            "random" => {
                p.only(&["c", "n", "m", "seed", "orient"])?;
                let orient = match if p.has("orient") { p.raw("orient")? } else { "inputs" } {
                    "inputs" => Orientation::Inputs,
                    "signs" => Orientation::Signs,
                    "graph" => Orientation::Graph,
                    other => return Err(p.error(format!("unknown orientation {other:?}"))),
                };
                let seed = if p.has("seed") { p.int("seed")? } else { 0 };
                FamilySpec::RandomUniform { c: p.int("c")?, n: p.int("n")?, m: p.int("m")?, seed, orient }
            }
            "random-mixed" => {
                p.only(&["n", "m", "cmax", "seed"])?;
                let seed = if p.has("seed") { p.int("seed")? } else { 0 };
                FamilySpec::RandomMixed { n: p.int("n")?, m: p.int("m")?, cmax: p.int("cmax")?, seed }
            }
            other => return Err(p.error(format!("unknown family {other:?}"))),
        };
        family.check().map_err(|reason| p.error(reason))?;
        Ok(family)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl FamilySpec {
    /// Parameter preconditions, as a human-readable reason.
    fn check(&self) -> std::result::Result<(), String> {
        match *self {
            FamilySpec::Hyperflower { c, p, k } => {
                if !(1 <= k && k < c) {
                    return Err(format!("hyperflower needs 1 <= k < c, got c={c}, k={k}"));
                }
                if p == 0 {
                    return Err("hyperflower needs p >= 1".into());
                }
            }
            FamilySpec::CompleteMultipartite { c, ref sizes } => {
                if c == 0 || sizes.len() < c {
                    return Err(format!("multipartite needs 1 <= c <= k, got c={c}, k={}", sizes.len()));
                }
                if sizes.contains(&0) {
                    return Err("part sizes must be positive".into());
                }
            }
            FamilySpec::UniformMultipartite { c, s, k } => {
                if c == 0 || k < c || s == 0 {
                    return Err(format!("multipartite needs 1 <= c <= k and s >= 1, got c={c}, s={s}, k={k}"));
                }
            }
            FamilySpec::DisjointEdges { c, m } => {
                if c == 0 {
                    return Err("edge size must be positive".into());
                }
                let _ = m;
            }
            FamilySpec::ExampleA0 => {}
            FamilySpec::CompleteGraph { n } => {
                if n < 2 {
                    return Err("complete graph needs n >= 2".into());
                }
            }
            FamilySpec::RandomUniform { c, n, m, orient, .. } => {
                if c == 0 || c > n {
                    return Err(format!("need 1 <= c <= n, got c={c}, n={n}"));
                }
                if m * c < n {
                    return Err(format!("m*c = {} cannot cover n = {n} vertices", m * c));
                }
                if m as u128 > binomial(n, c) {
                    return Err(format!("m = {m} exceeds the {} distinct {c}-subsets", binomial(n, c)));
                }
                if orient == Orientation::Graph && c != 2 {
                    return Err("orient=graph needs c=2".into());
                }
            }
            FamilySpec::RandomMixed { n, m, cmax, .. } => {
                if cmax < 2 || cmax > n {
                    return Err(format!("need 2 <= cmax <= n, got cmax={cmax}, n={n}"));
                }
                if m * cmax < n {
                    return Err(format!("m*cmax = {} cannot cover n = {n} vertices", m * cmax));
                }
                let available: u128 = (2..=cmax).map(|c| binomial(n, c)).sum();
                if m as u128 > available {
                    return Err(format!("m = {m} exceeds the {available} distinct edges"));
                }
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<OrientedHypergraph> {
        self.check().map_err(|reason| Error::FamilySpec { spec: self.to_string(), reason })?;
        match *self {
            FamilySpec::Hyperflower { c, p, k } => Ok(hyperflower(c, p, k)),
            FamilySpec::CompleteMultipartite { c, ref sizes } => Ok(complete_multipartite(c, sizes)),
            FamilySpec::UniformMultipartite { c, s, k } => Ok(complete_multipartite(c, &vec![s; k])),
            FamilySpec::DisjointEdges { c, m } => Ok(disjoint_edges(c, m)),
            FamilySpec::ExampleA0 => Ok(example_a0()),
            FamilySpec::CompleteGraph { n } => Ok(complete_graph(n)),
            FamilySpec::RandomUniform { c, n, m, seed, orient } => random_uniform(c, n, m, seed, orient),
            FamilySpec::RandomMixed { n, m, cmax, seed } => random_mixed(n, m, cmax, seed),
        }
    }
}

fn all_inputs<S: AsRef<str>>(vertices: &[S], edges: Vec<Vec<usize>>) -> OrientedHypergraph {
    let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
    let edges = edges.into_iter().map(|e| e.into_iter().map(|v| (v, Sign::Input)).collect()).collect();
    RawHypergraph::new(names, edges).build().expect("family generators produce valid hypergraphs")
}

/// Central vertices `z1..zk`; petal `j` adds `pj_1..pj_{c-k}`.
///
/// Panics unless `1 <= k < c` and `p >= 1`.
pub fn hyperflower(c: usize, p: usize, k: usize) -> OrientedHypergraph {
    assert!(1 <= k && k < c && p >= 1, "hyperflower needs 1 <= k < c and p >= 1");
    let mut names: Vec<String> = (1..=k).map(|i| format!("z{i}")).collect();
    let mut edges = Vec::with_capacity(p);
    for j in 1..=p {
        let mut e: Vec<usize> = (0..k).collect();
        for t in 1..=c - k {
            e.push(names.len());
            names.push(format!("p{j}_{t}"));
        }
        edges.push(e);
    }
    all_inputs(&names, edges)
}

/// Parts `V1_*, V2_*, ...`; edges are all `c`-sets with at most one vertex per part.
///
/// Panics unless `1 <= c <= sizes.len()` and all sizes are positive.
pub fn complete_multipartite(c: usize, sizes: &[usize]) -> OrientedHypergraph {
    assert!(c >= 1 && sizes.len() >= c && !sizes.contains(&0), "multipartite needs 1 <= c <= k, positive sizes");
    let mut names = Vec::new();
    let mut parts = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        parts.push((names.len()..names.len() + s).collect::<Vec<_>>());
        names.extend((1..=s).map(|t| format!("V{}_{t}", i + 1)));
    }
    let mut edges = Vec::new();
    for chosen in combinations(sizes.len(), c) {
        let mut partial = vec![Vec::new()];
        for &part in &chosen {
            partial = partial
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    parts[part].iter().map(move |&v| {
                        let mut e = prefix.clone();
                        e.push(v);
                        e
                    })
                })
                .collect();
        }
        edges.extend(partial);
    }
    all_inputs(&names, edges)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Edge `j` holds `x{j}_1..x{j}_c`.
pub fn disjoint_edges(c: usize, m: usize) -> OrientedHypergraph {
    let names: Vec<String> = (1..=m).flat_map(|j| (1..=c).map(move |t| format!("x{j}_{t}"))).collect();
    let edges = (0..m).map(|j| (j * c..(j + 1) * c).collect()).collect();
    all_inputs(&names, edges)
}

/// `v1..v4` with `e_i = V \ {v_i}` and the signs below (rows `v_i`, columns `e_j`):
///
/// ```text
///  0  1 -1 -1
///  1  0 -1  1
///  1 -1  0 -1
///  1  1  1  0
/// ```
pub fn example_a0() -> OrientedHypergraph {
    const SIGNS: [[i64; 4]; 4] = [[0, 1, -1, -1], [1, 0, -1, 1], [1, -1, 0, -1], [1, 1, 1, 0]];
    let names = ["v1", "v2", "v3", "v4"];
    let edges: Vec<Vec<(&str, i64)>> =
        (0..4).map(|j| (0..4).filter(|&i| SIGNS[i][j] != 0).map(|i| (names[i], SIGNS[i][j])).collect()).collect();
    RawHypergraph::from_named(&names, &edges).build().expect("example is valid")
}

/// `K_n` on `v1..vn`; in each edge the lower-indexed vertex is the input.
pub fn complete_graph(n: usize) -> OrientedHypergraph {
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges = combinations(n, 2).into_iter().map(|e| vec![(e[0], Sign::Input), (e[1], Sign::Output)]).collect();
    RawHypergraph::new(names, edges).build().expect("complete graph is valid")
}

fn random_names(n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("v{i:0width$}")).collect()
}

/// Draws `m` distinct edges from `draw` until every vertex is covered,
/// resampling the whole edge set from the same stream otherwise.
fn sample_cover(
    n: usize,
    m: usize,
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Vec<usize>,
) -> Result<Vec<Vec<usize>>> {
    for _ in 0..MAX_ATTEMPTS {
        let mut edges = BTreeSet::new();
        let mut draws = 0;
        while edges.len() < m {
            let mut e = draw(rng);
            e.sort_unstable();
            edges.insert(e);
            draws += 1;
            if draws > 1000 * (m + 1) {
                return Err(Error::Generator(format!("could not draw {m} distinct edges")));
            }
        }
        let mut covered = vec![false; n];
        edges.iter().flatten().for_each(|&v| covered[v] = true);
        if covered.iter().all(|&c| c) {
            return Ok(edges.into_iter().collect());
        }
    }
    Err(Error::Generator(format!("no covering edge set after {MAX_ATTEMPTS} attempts")))
}

/// Seeded with `ChaCha8Rng::seed_from_u64(seed)`. Vertices `v1..vn` (zero padded).
pub fn random_uniform(c: usize, n: usize, m: usize, seed: u64, orient: Orientation) -> Result<OrientedHypergraph> {
    let spec = FamilySpec::RandomUniform { c, n, m, seed, orient };
    spec.check().map_err(|reason| Error::FamilySpec { spec: spec.to_string(), reason })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = sample_cover(n, m, &mut rng, |rng| sample(rng, n, c).into_vec())?;
    let edges = sets
        .into_iter()
        .map(|e| {
            e.into_iter()
                .enumerate()
                .map(|(pos, v)| {
                    let sign = match orient {
                        Orientation::Inputs => Sign::Input,
                        Orientation::Signs => random_sign(&mut rng),
                        Orientation::Graph if pos == 0 => Sign::Input,
                        Orientation::Graph => Sign::Output,
                    };
                    (v, sign)
                })
                .collect()
        })
        .collect();
    RawHypergraph::new(random_names(n), edges).build()
}

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Output
    } else {
        Sign::Input
    }
}

/// Edge sizes uniform in `2..=cmax`, signs uniform.
pub fn random_mixed(n: usize, m: usize, cmax: usize, seed: u64) -> Result<OrientedHypergraph> {
    let spec = FamilySpec::RandomMixed { n, m, cmax, seed };
    spec.check().map_err(|reason| Error::FamilySpec { spec: spec.to_string(), reason })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = sample_cover(n, m, &mut rng, |rng| {
        let size = rng.random_range(2..=cmax);
        sample(rng, n, size).into_vec()
    })?;
    let edges = sets.into_iter().map(|e| e.into_iter().map(|v| (v, random_sign(&mut rng))).collect()).collect();
    RawHypergraph::new(random_names(n), edges).build()
}

/// `{c^(1), (c-k)^(p-1), 0^(N-p)}`, ascending, with `N = k + p(c-k)`.
pub fn hyperflower_spectrum(c: usize, p: usize, k: usize) -> Vec<f64> {
    let n = k + p * (c - k);
    let mut s = vec![0.0; n - p];
    s.extend(std::iter::repeat_n((c - k) as f64, p - 1));
    s.push(c as f64);
    s.sort_by(f64::total_cmp);
    s
}

/// Edge-Laplacian spectrum `{c^(1), (c-k)^(p-1)}`, ascending.
pub fn hyperflower_edge_spectrum(c: usize, p: usize, k: usize) -> Vec<f64> {
    let mut s = vec![(c - k) as f64; p - 1];
    s.push(c as f64);
    s.sort_by(f64::total_cmp);
    s
}

/// `{c^(1), 1^(k(s-1)), ((k-c)/(k-1))^(k-1)}`, ascending.
pub fn uniform_multipartite_spectrum(c: usize, s: usize, k: usize) -> Vec<f64> {
    let mut out = vec![c as f64];
    out.extend(std::iter::repeat_n(1.0, k * (s - 1)));
    if k > 1 {
        out.extend(std::iter::repeat_n((k - c) as f64 / (k - 1) as f64, k - 1));
    }
    out.sort_by(f64::total_cmp);
    out
}
