//! Colorings of vertices and edges, their validity checks, and exact solvers.

mod brute;
mod graph;
mod search;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;

pub use brute::{brute_force_chromatic, BRUTE_FORCE_CAP};
pub use graph::{graph_chromatic, intersection_graph, SimpleGraph};
pub use search::{chromatic, chromatic_with_budget, ChromaticResult, ChromaticStatus, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Vertex,
    Edge,
}

/// Which coloring number is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringMode {
    /// Members of every edge get pairwise distinct colors.
    Strong,
    /// Every edge has at most `d` members of each color.
    DProper(usize),
    /// Same-class adjacency weight of `v` is at most `q · deg v`.
    /// Only for uniform hypergraphs whose incidences are all inputs.
    QTailored(Ratio<u64>),
    /// Each vertex has at most `d` neighbours of its own color. Graphs only.
    DImproper(usize),
    /// Intersecting edges get different colors.
    EdgeStrong,
}

impl ColoringMode {
    pub fn target(self) -> Target {
        match self {
            ColoringMode::EdgeStrong => Target::Edge,
            _ => Target::Vertex,
        }
    }

    /// Rejects hypergraph shapes outside the mode's scope.
    pub fn check_applicable(self, h: &OrientedHypergraph) -> Result<()> {
        match self {
            ColoringMode::DProper(0) => Err(Error::ModeMismatch("d-proper needs d >= 1".into())),
            ColoringMode::QTailored(q) => {
                let c = h
                    .uniformity()
                    .ok_or_else(|| Error::ModeMismatch("q-tailored needs a uniform hypergraph".into()))?;
                if !h.is_all_inputs() {
                    return Err(Error::ModeMismatch("q-tailored needs every incidence to be an input".into()));
                }
                if q > Ratio::from_integer(c as u64 - 1) {
                    return Err(Error::ModeMismatch(format!("q = {q} exceeds c - 1 = {}", c - 1)));
                }
                Ok(())
            }
            ColoringMode::DImproper(_) if !h.is_graph() => {
                Err(Error::ModeMismatch("d-improper needs a graph (every edge one input and one output)".into()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ColoringMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringMode::Strong => write!(f, "strong"),
            ColoringMode::DProper(d) => write!(f, "d-proper:{d}"),
            ColoringMode::QTailored(q) => write!(f, "q-tailored:{q}"),
            ColoringMode::DImproper(d) => write!(f, "d-improper:{d}"),
            ColoringMode::EdgeStrong => write!(f, "edge-strong"),
        }
    }
}

impl FromStr for ColoringMode {
    type Err = Error;

    /// `strong`, `d-proper:D`, `q-tailored:A/B`, `d-improper:D`, `edge-strong`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ModeMismatch(format!("{s:?}: {reason}"));
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let int_arg = || -> Result<usize> {
            arg.ok_or_else(|| bad("missing parameter"))?.parse().map_err(|_| bad("parameter is not an integer"))
        };
        match name {
            "strong" if arg.is_none() => Ok(ColoringMode::Strong),
            "edge-strong" | "edge" if arg.is_none() => Ok(ColoringMode::EdgeStrong),
            "d-proper" => Ok(ColoringMode::DProper(int_arg()?)),
            "d-improper" => Ok(ColoringMode::DImproper(int_arg()?)),
            "q-tailored" => {
                let q = arg.ok_or_else(|| bad("missing parameter"))?;
                Ok(ColoringMode::QTailored(parse_rational(q).ok_or_else(|| bad("q is not a rational a/b"))?))
            }
            _ => Err(bad("unknown mode")),
        }
    }
}

/// `"a/b"` or `"a"` with nonnegative integers and `b > 0`.
pub fn parse_rational(s: &str) -> Option<Ratio<u64>> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.trim().parse().ok()?, 1),
    };
    (den != 0).then(|| Ratio::new(num, den))
}

/// An assignment of colors `1..=k` to vertices or edges, every color used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    target: Target,
    assignment: Vec<usize>,
    k: usize,
}

impl Coloring {
    pub fn new(target: Target, assignment: Vec<usize>) -> Result<Self> {
        let k = assignment.iter().copied().max().unwrap_or(0);
        if assignment.contains(&0) {
            return Err(Error::InvalidColoring("colors start at 1".into()));
        }
        let mut used = vec![false; k];
        for &c in &assignment {
            used[c - 1] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::InvalidColoring(format!("color {} unused", missing + 1)));
        }
        Ok(Coloring { target, assignment, k })
    }

    /// Classes `V_1, ..., V_k` as lists of item indices.
    pub fn from_classes(target: Target, items: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut assignment = vec![0; items];
        for (i, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= items {
                    return Err(Error::InvalidColoring(format!("item {x} out of range")));
                }
                if assignment[x] != 0 {
                    return Err(Error::InvalidColoring(format!("item {x} in two classes")));
                }
                assignment[x] = i + 1;
            }
        }
        if let Some(x) = assignment.iter().position(|&c| c == 0) {
            return Err(Error::InvalidColoring(format!("item {x} uncolored")));
        }
        Coloring::new(target, assignment)
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Color of item `x`, in `1..=k`.
    pub fn color(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `classes()[i]` holds the items of color `i + 1`, ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.k];
        for (x, &c) in self.assignment.iter().enumerate() {
            classes[c - 1].push(x);
        }
        classes
    }

    /// Items of color `i`.
    pub fn class(&self, i: usize) -> Result<Vec<usize>> {
        if i == 0 || i > self.k {
            return Err(Error::ClassOutOfRange { index: i, k: self.k });
        }
        Ok((0..self.len()).filter(|&x| self.assignment[x] == i).collect())
    }
}

fn check_dimension(h: &OrientedHypergraph, coloring: &Coloring, mode: ColoringMode) -> Result<()> {
    if coloring.target != mode.target() {
        return Err(Error::ModeMismatch(format!("{mode} colors {:?}s", mode.target()).to_lowercase()));
    }
    let expected = match mode.target() {
        Target::Vertex => h.vertex_count(),
        Target::Edge => h.edge_count(),
    };
    if coloring.len() != expected {
        return Err(Error::DimensionMismatch { expected, actual: coloring.len() });
    }
    Ok(())
}

/// Exact validity check of `coloring` for `mode` on `h`.
pub fn is_valid(h: &OrientedHypergraph, coloring: &Coloring, mode: ColoringMode) -> Result<bool> {
    mode.check_applicable(h)?;
    check_dimension(h, coloring, mode)?;
    let color = |v: usize| coloring.color(v);
    let ok = match mode {
        ColoringMode::Strong => h.edges().iter().all(|e| {
            let mut seen: Vec<usize> = e.vertices().map(color).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        }),
        ColoringMode::DProper(d) => h.edges().iter().all(|e| {
            let mut counts = vec![0; coloring.k() + 1];
            e.vertices().all(|v| {
                counts[color(v)] += 1;
                counts[color(v)] <= d
            })
        }),
        ColoringMode::QTailored(q) => {
            let a = h.adjacency();
            (0..h.vertex_count()).all(|v| {
                let same: u64 = (0..h.vertex_count())
                    .filter(|&w| w != v && color(w) == color(v))
                    .map(|w| a.get(v, w).unsigned_abs())
                    .sum();
                same * q.denom() <= q.numer() * h.degree(v) as u64
            })
        }
        ColoringMode::DImproper(d) => (0..h.vertex_count()).all(|v| {
            let same = h
                .incident_edges(v)
                .iter()
                .filter(|&&e| h.edge(e).vertices().any(|w| w != v && color(w) == color(v)))
                .count();
            same <= d
        }),
        ColoringMode::EdgeStrong => {
            let m = h.edge_count();
            (0..m).all(|e| (e + 1..m).all(|f| color(e) != color(f) || !h.edge(e).intersects(h.edge(f))))
        }
    };
    Ok(ok)
}

/// Witness document `{"mode", "k", "classes"}`. Vertex classes list vertex
/// names; edge classes list edge indices in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub mode: String,
    pub k: usize,
    pub classes: Vec<Vec<serde_json::Value>>,
}

impl Witness {
    pub fn new(h: &OrientedHypergraph, coloring: &Coloring, mode: ColoringMode) -> Self {
        let classes = coloring
            .classes()
            .into_iter()
            .map(|class| {
                class
                    .into_iter()
                    .map(|x| match coloring.target() {
                        Target::Vertex => serde_json::Value::from(h.vertex_name(x)),
                        Target::Edge => serde_json::Value::from(x),
                    })
                    .collect()
            })
            .collect();
        Witness { mode: mode.to_string(), k: coloring.k(), classes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::RawHypergraph;

    fn triangle_edge() -> OrientedHypergraph {
        RawHypergraph::from_named(&["a", "b", "c"], &[vec![("a", -1), ("b", -1), ("c", -1)]]).build().unwrap()
    }

    #[test]
    fn mode_round_trip() {
        for s in ["strong", "d-proper:3", "q-tailored:1/2", "q-tailored:2", "d-improper:0", "edge-strong"] {
            assert_eq!(s.parse::<ColoringMode>().unwrap().to_string(), s);
        }
        assert!("d-proper".parse::<ColoringMode>().is_err());
        assert!("q-tailored:1/0".parse::<ColoringMode>().is_err());
        assert!("bogus".parse::<ColoringMode>().is_err());
    }

    #[test]
    fn coloring_requires_contiguous_colors() {
        assert!(Coloring::new(Target::Vertex, vec![1, 3]).is_err());
        assert!(Coloring::new(Target::Vertex, vec![0, 1]).is_err());
        let c = Coloring::new(Target::Vertex, vec![2, 1, 2]).unwrap();
        assert_eq!(c.k(), 2);
        assert_eq!(c.classes(), vec![vec![1], vec![0, 2]]);
        assert_eq!(Coloring::from_classes(Target::Vertex, 3, &c.classes()).unwrap(), c);
        assert!(matches!(c.class(3), Err(Error::ClassOutOfRange { .. })));
    }

    #[test]
    fn strong_and_d_proper_checks() {
        let h = triangle_edge();
        let rainbow = Coloring::new(Target::Vertex, vec![1, 2, 3]).unwrap();
        let pair = Coloring::new(Target::Vertex, vec![1, 1, 2]).unwrap();
        assert!(is_valid(&h, &rainbow, ColoringMode::Strong).unwrap());
        assert!(!is_valid(&h, &pair, ColoringMode::Strong).unwrap());
        assert!(is_valid(&h, &pair, ColoringMode::DProper(2)).unwrap());
        assert!(!is_valid(&h, &pair, ColoringMode::DProper(1)).unwrap());
    }

    #[test]
    fn q_tailored_is_exact() {
        // one edge {a,b,c}: with a,b together each carries weight 1 against degree 1
        let h = triangle_edge();
        let pair = Coloring::new(Target::Vertex, vec![1, 1, 2]).unwrap();
        let q = |s: &str| ColoringMode::QTailored(parse_rational(s).unwrap());
        assert!(is_valid(&h, &pair, q("1")).unwrap());
        assert!(!is_valid(&h, &pair, q("99/100")).unwrap());
        assert!(matches!(is_valid(&h, &pair, q("5/2")), Err(Error::ModeMismatch(_))));
    }

    #[test]
    fn scope_rules() {
        let h = triangle_edge();
        let c = Coloring::new(Target::Vertex, vec![1, 2, 3]).unwrap();
        assert!(matches!(is_valid(&h, &c, ColoringMode::DImproper(0)), Err(Error::ModeMismatch(_))));
        assert!(matches!(is_valid(&h, &c, ColoringMode::EdgeStrong), Err(Error::ModeMismatch(_))));
        let short = Coloring::new(Target::Vertex, vec![1, 2]).unwrap();
        assert!(matches!(is_valid(&h, &short, ColoringMode::Strong), Err(Error::DimensionMismatch { .. })));
        let signed = h.with_edge_flipped(0);
        assert!(ColoringMode::QTailored(Ratio::from_integer(1)).check_applicable(&signed).is_err());
    }

    #[test]
    fn d_improper_counts_neighbours() {
        let path = RawHypergraph::from_named(&["a", "b", "c"], &[vec![("a", -1), ("b", 1)], vec![("b", -1), ("c", 1)]])
            .build()
            .unwrap();
        let one = Coloring::new(Target::Vertex, vec![1, 1, 1]).unwrap();
        assert!(!is_valid(&path, &one, ColoringMode::DImproper(1)).unwrap());
        assert!(is_valid(&path, &one, ColoringMode::DImproper(2)).unwrap());
    }

    #[test]
    fn witness_uses_names() {
        let h = triangle_edge();
        let c = Coloring::new(Target::Vertex, vec![1, 2, 1]).unwrap();
        let w = serde_json::to_string(&Witness::new(&h, &c, ColoringMode::DProper(2))).unwrap();
        assert_eq!(w, r#"{"mode":"d-proper:2","k":2,"classes":[["a","c"],["b"]]}"#);
    }
}
