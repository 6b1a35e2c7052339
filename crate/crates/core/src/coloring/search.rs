//! Exact branch-and-bound search for the minimum number of colors.
//!
//! The number of colors `k` rises from a lower bound. For each `k` a
//! depth-first search colors items one at a time, always picking the item
//! with the fewest feasible colors (ties: higher degree, then lower index).
//! A new color is only opened as `max used + 1`. A greedy pass supplies an
//! upper bound and a fallback witness.

use serde::Serialize;

use super::{Coloring, ColoringMode, Target};
use crate::error::Result;
use crate::hypergraph::OrientedHypergraph;

/// Default cap on search nodes (color assignments) per solve.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChromaticStatus {
    Exact,
    /// The node budget ran out. `lower` is proven, `upper` is witnessed.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChromaticResult {
    pub status: ChromaticStatus,
    /// No coloring with fewer colors exists.
    pub lower: usize,
    /// Colors used by `witness`.
    pub upper: usize,
    pub witness: Coloring,
    pub nodes: u64,
}

impl ChromaticResult {
    /// The chromatic number, when proven.
    pub fn number(&self) -> Option<usize> {
        (self.status == ChromaticStatus::Exact).then_some(self.upper)
    }
}

/// Constraint system shared by all modes.
#[derive(Debug, Clone)]
pub(crate) enum Model {
    /// `Σ_{j same color} w(i,j) ≤ cap(i)` for every item `i`.
    Pairwise { adj: Vec<Vec<(usize, u64)>>, cap: Vec<u64> },
    /// Every group (edge) holds at most `d` items of each color.
    GroupCapacity { groups_of: Vec<Vec<usize>>, group_count: usize, d: usize },
}

#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub model: Model,
    pub target: Target,
    /// Items known to need pairwise distinct colors; colored `1..` up front.
    pub clique: Vec<usize>,
    pub lower_bound: usize,
    /// Tie-break weight for item choice.
    pub degree: Vec<usize>,
}

impl Problem {
    fn items(&self) -> usize {
        self.degree.len()
    }

    /// Proper coloring of a graph given by adjacency lists.
    pub(crate) fn proper(adj: Vec<Vec<usize>>, target: Target) -> Self {
        let clique = greedy_clique(&adj);
        let degree = adj.iter().map(Vec::len).collect();
        let n = adj.len();
        Problem {
            lower_bound: clique.len().max(usize::from(n > 0)),
            clique,
            degree,
            target,
            model: Model::Pairwise {
                adj: adj.into_iter().map(|l| l.into_iter().map(|j| (j, 1)).collect()).collect(),
                cap: vec![0; n],
            },
        }
    }

    pub(crate) fn for_mode(h: &OrientedHypergraph, mode: ColoringMode) -> Self {
        let n = h.vertex_count();
        match mode {
            ColoringMode::Strong => Problem::proper(two_section(h), Target::Vertex),
            ColoringMode::EdgeStrong => Problem::proper(super::intersection_graph(h).adjacency, Target::Edge),
            ColoringMode::DProper(d) => {
                let groups_of: Vec<Vec<usize>> = (0..n).map(|v| h.incident_edges(v).to_vec()).collect();
                let degree = (0..n).map(|v| h.incident_edges(v).iter().map(|&e| h.edge(e).len() - 1).sum()).collect();
                Problem {
                    model: Model::GroupCapacity { groups_of, group_count: h.edge_count(), d },
                    target: Target::Vertex,
                    clique: Vec::new(),
                    lower_bound: h.max_edge_size().div_ceil(d).max(usize::from(n > 0)),
                    degree,
                }
            }
            ColoringMode::DImproper(d) => {
                let adj = two_section(h);
                Problem {
                    degree: adj.iter().map(Vec::len).collect(),
                    model: Model::Pairwise {
                        adj: adj.into_iter().map(|l| l.into_iter().map(|j| (j, 1)).collect()).collect(),
                        cap: vec![d as u64; n],
                    },
                    target: Target::Vertex,
                    clique: Vec::new(),
                    lower_bound: usize::from(n > 0),
                }
            }
            ColoringMode::QTailored(q) => {
                let a = h.adjacency();
                let adj: Vec<Vec<(usize, u64)>> = (0..n)
                    .map(|v| {
                        (0..n)
                            .filter(|&w| w != v && a.get(v, w) != 0)
                            .map(|w| (w, a.get(v, w).unsigned_abs() * q.denom()))
                            .collect()
                    })
                    .collect();
                Problem {
                    degree: adj.iter().map(Vec::len).collect(),
                    model: Model::Pairwise { adj, cap: (0..n).map(|v| q.numer() * h.degree(v) as u64).collect() },
                    target: Target::Vertex,
                    clique: Vec::new(),
                    lower_bound: usize::from(n > 0),
                }
            }
        }
    }
}

/// Vertices sharing an edge are adjacent.
fn two_section(h: &OrientedHypergraph) -> Vec<Vec<usize>> {
    let n = h.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (v, list) in adj.iter_mut().enumerate() {
        for &e in h.incident_edges(v) {
            list.extend(h.edge(e).vertices().filter(|&w| w != v));
        }
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Greedy clique grown from the highest-degree vertex.
fn greedy_clique(adj: &[Vec<usize>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by(|&a, &b| adj[b].len().cmp(&adj[a].len()).then(a.cmp(&b)));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[v].binary_search(&u).is_ok()) {
            clique.push(v);
        }
    }
    clique
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    p: &'a Problem,
    k: usize,
    color: Vec<usize>,
    /// `load[i][c]`: pairwise weight from items of color `c`, or per-group
    /// color counts for the group model.
    load: Vec<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(p: &'a Problem, k: usize, budget: u64, nodes: u64) -> Self {
        let rows = match &p.model {
            Model::Pairwise { .. } => p.items(),
            Model::GroupCapacity { group_count, .. } => *group_count,
        };
        Search { p, k, color: vec![0; p.items()], load: vec![vec![0; k + 1]; rows], nodes, budget }
    }

    fn feasible(&self, i: usize, c: usize) -> bool {
        match &self.p.model {
            Model::Pairwise { adj, cap } => {
                self.load[i][c] <= cap[i]
                    && adj[i].iter().all(|&(j, w)| self.color[j] != c || self.load[j][c] + w <= cap[j])
            }
            Model::GroupCapacity { groups_of, d, .. } => groups_of[i].iter().all(|&g| self.load[g][c] < *d as u64),
        }
    }

    fn assign(&mut self, i: usize, c: usize) {
        self.color[i] = c;
        self.shift(i, c, true);
    }

    fn unassign(&mut self, i: usize) {
        let c = self.color[i];
        self.shift(i, c, false);
        self.color[i] = 0;
    }

    fn shift(&mut self, i: usize, c: usize, add: bool) {
        let p = self.p;
        let mut apply = |row: usize, w: u64| {
            if add {
                self.load[row][c] += w;
            } else {
                self.load[row][c] -= w;
            }
        };
        match &p.model {
            Model::Pairwise { adj, .. } => adj[i].iter().for_each(|&(j, w)| apply(j, w)),
            Model::GroupCapacity { groups_of, .. } => groups_of[i].iter().for_each(|&g| apply(g, 1)),
        }
    }

    /// Uncolored item with the fewest feasible colors, or `None` when done.
    /// `Some((i, 0))` signals a dead end.
    fn pick(&self, limit: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in (0..self.p.items()).filter(|&i| self.color[i] == 0) {
            let options = (1..=limit).filter(|&c| self.feasible(i, c)).count();
            let better = match best {
                None => true,
                Some((b, bo)) => options < bo || (options == bo && self.p.degree[i] > self.p.degree[b]),
            };
            if better {
                best = Some((i, options));
                if options == 0 {
                    break;
                }
            }
        }
        best
    }

    fn dfs(&mut self, max_used: usize) -> Outcome {
        let limit = self.k.min(max_used + 1);
        let Some((i, options)) = self.pick(limit) else {
            return Outcome::Found(self.color.clone());
        };
        if options == 0 {
            return Outcome::Exhausted;
        }
        for c in 1..=limit {
            if !self.feasible(i, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::OutOfBudget;
            }
            self.assign(i, c);
            match self.dfs(max_used.max(c)) {
                Outcome::Exhausted => self.unassign(i),
                other => return other,
            }
        }
        Outcome::Exhausted
    }

    fn run(&mut self) -> Outcome {
        let clique = &self.p.clique;
        if clique.len() > self.k {
            return Outcome::Exhausted;
        }
        for (c, &i) in clique.iter().enumerate() {
            self.assign(i, c + 1);
        }
        self.dfs(clique.len())
    }
}

/// Smallest-feasible-color greedy in first-fail order. Always succeeds since
/// a fresh color is feasible in every mode.
fn greedy(p: &Problem) -> Vec<usize> {
    let n = p.items();
    let mut s = Search::new(p, n.max(1), u64::MAX, 0);
    let mut max_used = 0;
    while let Some((i, _)) = s.pick(max_used + 1) {
        let c = (1..=max_used + 1).find(|&c| s.feasible(i, c)).expect("fresh color is feasible");
        s.assign(i, c);
        max_used = max_used.max(c);
    }
    s.color
}

pub(crate) fn solve(p: &Problem, budget: u64) -> ChromaticResult {
    let upper_assignment = greedy(p);
    let mut witness = Coloring::new(p.target, upper_assignment).expect("greedy colors are contiguous");
    let upper = witness.k();
    let mut nodes = 0;
    let mut k = p.lower_bound;
    while k < upper {
        let mut s = Search::new(p, k, budget, nodes);
        let outcome = s.run();
        nodes = s.nodes;
        match outcome {
            Outcome::Found(assignment) => {
                witness = Coloring::new(p.target, assignment).expect("search colors are contiguous");
                break;
            }
            Outcome::Exhausted => k += 1,
            Outcome::OutOfBudget => {
                return ChromaticResult { status: ChromaticStatus::Inconclusive, lower: k, upper, witness, nodes };
            }
        }
    }
    let k = witness.k();
    ChromaticResult { status: ChromaticStatus::Exact, lower: k, upper: k, witness, nodes }
}

/// Minimum colors for `mode` on `h`, with the default node budget.
pub fn chromatic(h: &OrientedHypergraph, mode: ColoringMode) -> Result<ChromaticResult> {
    chromatic_with_budget(h, mode, DEFAULT_BUDGET)
}

pub fn chromatic_with_budget(h: &OrientedHypergraph, mode: ColoringMode, budget: u64) -> Result<ChromaticResult> {
    mode.check_applicable(h)?;
    Ok(solve(&Problem::for_mode(h, mode), budget))
}
