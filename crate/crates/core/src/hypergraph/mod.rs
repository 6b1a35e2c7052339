//! Oriented hypergraphs: representation, validation and the integer matrices
//! (incidence, adjacency, degrees) they induce.
//!
//! Every incidence carries a [`Sign`]: `-1` marks an input, `+1` an output.
//! An [`OrientedHypergraph`] can only be obtained through [`RawHypergraph::build`]
//! (or the generators and the parser that use it), so every value of the type
//! satisfies the well-formedness rules checked by [`RawHypergraph::validate`].
//! Building also puts the hypergraph in canonical order: vertices sorted by
//! name, members of each edge sorted by vertex index, edges sorted by their
//! member lists. Matrix rows and columns follow that order.

pub mod io;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

pub use io::{parse, serialize};

/// Orientation of a vertex inside an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Input,
    Output,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Input => -1,
            Sign::Output => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Input),
            1 => Some(Sign::Output),
            _ => None,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Input => Sign::Output,
            Sign::Output => Sign::Input,
        }
    }
}

/// An edge: its members (vertex index, sign), sorted by vertex index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    members: Vec<(usize, Sign)>,
}

impl Edge {
    pub fn members(&self) -> &[(usize, Sign)] {
        &self.members
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&(v, _)| v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.sign_of(v).is_some()
    }

    pub fn sign_of(&self, v: usize) -> Option<Sign> {
        self.members.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| self.members[i].1)
    }

    pub fn intersects(&self, other: &Edge) -> bool {
        self.vertices().any(|v| other.contains(v))
    }
}

/// A single well-formedness violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    DuplicateVertexName { name: String },
    VertexOutOfRange { edge: usize, index: usize },
    RepeatedMember { edge: usize, vertex: usize },
    EmptyEdge { edge: usize },
    DuplicateEdge { first: usize, second: usize },
    ZeroDegree { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertexName { name } => write!(f, "duplicate vertex name {name:?}"),
            Violation::VertexOutOfRange { edge, index } => {
                write!(f, "edge {edge} references vertex index {index} out of range")
            }
            Violation::RepeatedMember { edge, vertex } => {
                write!(f, "edge {edge} lists vertex {vertex} more than once")
            }
            Violation::EmptyEdge { edge } => write!(f, "empty edge {edge}"),
            Violation::DuplicateEdge { first, second } => {
                write!(f, "duplicate edge: edges {first} and {second} have the same vertex set")
            }
            Violation::ZeroDegree { vertex } => write!(f, "zero degree: vertex {vertex} lies in no edge"),
        }
    }
}

/// Every violated invariant of a candidate hypergraph. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Unchecked hypergraph data, as read from a document or assembled by a generator.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawHypergraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<(usize, Sign)>>,
}

impl RawHypergraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Vec<(usize, Sign)>>) -> Self {
        RawHypergraph { vertices, edges }
    }

    /// Convenience constructor from vertex names; panics on unknown names.
    pub fn from_named<S: AsRef<str>>(vertices: &[S], edges: &[Vec<(S, i64)>]) -> Self {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_ref(), i)).collect();
        let edges = edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|(name, s)| {
                        let v =
                            *index.get(name.as_ref()).unwrap_or_else(|| panic!("unknown vertex {:?}", name.as_ref()));
                        (v, Sign::from_value(*s).expect("sign must be -1 or +1"))
                    })
                    .collect()
            })
            .collect();
        RawHypergraph { vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(), edges }
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.vertices.len();
        let mut violations = Vec::new();

        let mut seen_names = BTreeSet::new();
        for name in &self.vertices {
            if !seen_names.insert(name.as_str()) {
                violations.push(Violation::DuplicateVertexName { name: name.clone() });
            }
        }

        let mut degree = vec![0usize; n];
        let mut by_set: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (j, edge) in self.edges.iter().enumerate() {
            if edge.is_empty() {
                violations.push(Violation::EmptyEdge { edge: j });
                continue;
            }
            let mut set = BTreeSet::new();
            for &(v, _) in edge {
                if v >= n {
                    violations.push(Violation::VertexOutOfRange { edge: j, index: v });
                } else if !set.insert(v) {
                    violations.push(Violation::RepeatedMember { edge: j, vertex: v });
                } else {
                    degree[v] += 1;
                }
            }
            let key: Vec<usize> = set.into_iter().collect();
            if let Some(&first) = by_set.get(&key) {
                violations.push(Violation::DuplicateEdge { first, second: j });
            } else {
                by_set.insert(key, j);
            }
        }
        for (v, &d) in degree.iter().enumerate() {
            if d == 0 {
                violations.push(Violation::ZeroDegree { vertex: v });
            }
        }
        ValidationReport { violations }
    }

    /// Validates and canonicalizes.
    pub fn build(self) -> Result<OrientedHypergraph> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let vertices: Vec<String> = order.iter().map(|&old| self.vertices[old].clone()).collect();
        let mut edges: Vec<Edge> = self
            .edges
            .into_iter()
            .map(|e| {
                let mut members: Vec<(usize, Sign)> = e.into_iter().map(|(v, s)| (new_index[v], s)).collect();
                members.sort_unstable_by_key(|&(v, _)| v);
                Edge { members }
            })
            .collect();
        edges.sort_by(|a, b| a.vertices().cmp(b.vertices()));
        Ok(OrientedHypergraph::assemble(vertices, edges))
    }
}

/// A validated oriented hypergraph in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedHypergraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

impl OrientedHypergraph {
    fn assemble(vertices: Vec<String>, edges: Vec<Edge>) -> Self {
        let mut incident = vec![Vec::new(); vertices.len()];
        for (j, e) in edges.iter().enumerate() {
            for v in e.vertices() {
                incident[v].push(j);
            }
        }
        OrientedHypergraph { vertices, edges, incident }
    }

    /// Same vertices and edges with new signs. Canonical order is unaffected.
    pub fn reoriented(&self, mut sign: impl FnMut(usize, usize) -> Sign) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(j, e)| Edge { members: e.vertices().map(|v| (v, sign(v, j))).collect() })
            .collect();
        Self::assemble(self.vertices.clone(), edges)
    }

    pub fn to_raw(&self) -> RawHypergraph {
        RawHypergraph { vertices: self.vertices.clone(), edges: self.edges.iter().map(|e| e.members.clone()).collect() }
    }

    pub fn validate(&self) -> ValidationReport {
        self.to_raw().validate()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, j: usize) -> &Edge {
        &self.edges[j]
    }

    /// Index of the edge with exactly this vertex set.
    pub fn find_edge(&self, vertex_set: &[usize]) -> Option<usize> {
        let mut key = vertex_set.to_vec();
        key.sort_unstable();
        self.edges.binary_search_by(|e| e.vertices().cmp(key.iter().copied())).ok()
    }

    /// Edges containing `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn sign(&self, v: usize, e: usize) -> Option<Sign> {
        self.edges[e].sign_of(v)
    }

    pub fn degrees(&self) -> DegreeVector {
        DegreeVector { degrees: self.incident.iter().map(Vec::len).collect() }
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Edge::len).max().unwrap_or(0)
    }

    /// `Some(c)` when every edge has exactly `c` members.
    pub fn uniformity(&self) -> Option<usize> {
        let c = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == c).then_some(c)
    }

    pub fn is_all_inputs(&self) -> bool {
        self.edges.iter().all(|e| e.members.iter().all(|&(_, s)| s == Sign::Input))
    }

    /// Graph convention: every edge has one input and one output.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2 && e.members[0].1 != e.members[1].1)
    }

    /// `N x M` signed incidence matrix.
    pub fn incidence(&self) -> IncidenceMatrix {
        let mut m = DenseMatrix::zeros(self.vertex_count(), self.edge_count());
        for (j, e) in self.edges.iter().enumerate() {
            for &(v, s) in &e.members {
                m[(v, j)] = s.value();
            }
        }
        IncidenceMatrix(m)
    }

    /// Anti-oriented shared edges minus co-oriented shared edges, zero diagonal.
    pub fn adjacency(&self) -> AdjacencyMatrix {
        let n = self.vertex_count();
        let mut a = DenseMatrix::zeros(n, n);
        for e in &self.edges {
            for (x, &(v, sv)) in e.members.iter().enumerate() {
                for &(w, sw) in &e.members[x + 1..] {
                    let delta = if sv == sw { -1 } else { 1 };
                    a[(v, w)] += delta;
                    a[(w, v)] += delta;
                }
            }
        }
        AdjacencyMatrix(a)
    }

    /// All orientations set to `+1`.
    pub fn underlying(&self) -> Self {
        self.reoriented(|_, _| Sign::Output)
    }

    /// Every sign of edge `e` flipped.
    pub fn with_edge_flipped(&self, e: usize) -> Self {
        self.reoriented(|v, j| {
            let s = self.edges[j].sign_of(v).expect("incidence");
            if j == e {
                s.flipped()
            } else {
                s
            }
        })
    }

    /// A partition `(V1, V2)` such that every edge has all inputs in one part
    /// and all outputs in the other, or `None`.
    ///
    /// Co-oriented members must share a side and anti-oriented members must
    /// not; sides are propagated from the first vertex of each component. A
    /// component root goes to `V2` when it is an output in its first edge, so
    /// an all-outputs hypergraph yields `(∅, V)`.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            let first_edge = self.incident[root][0];
            side[root] = Some(self.edges[first_edge].sign_of(root) == Some(Sign::Output));
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let sv = side[v].expect("assigned");
                for &j in &self.incident[v] {
                    let ev = self.edges[j].sign_of(v).expect("incidence");
                    for &(w, ew) in &self.edges[j].members {
                        let want = if ew == ev { sv } else { !sv };
                        match side[w] {
                            None => {
                                side[w] = Some(want);
                                stack.push(w);
                            }
                            Some(s) if s != want => return None,
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        let (mut v1, mut v2) = (Vec::new(), Vec::new());
        for (v, s) in side.into_iter().enumerate() {
            if s == Some(true) {
                v2.push(v);
            } else {
                v1.push(v);
            }
        }
        Some((v1, v2))
    }

    /// Checks the bipartite condition for `in_second[v]` marking membership of `V2`.
    pub fn is_bipartition(&self, in_second: &[bool]) -> bool {
        assert_eq!(in_second.len(), self.vertex_count());
        self.edges.iter().all(|e| {
            let inputs_side: BTreeSet<bool> =
                e.members.iter().filter(|m| m.1 == Sign::Input).map(|m| in_second[m.0]).collect();
            let outputs_side: BTreeSet<bool> =
                e.members.iter().filter(|m| m.1 == Sign::Output).map(|m| in_second[m.0]).collect();
            inputs_side.len() <= 1 && outputs_side.len() <= 1 && inputs_side.is_disjoint(&outputs_side)
        })
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let mut it = e.vertices();
            if let Some(first) = it.next() {
                for v in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// Sub-hypergraph on `vertices` keeping only edges inside that set.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let local: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.vertices().all(|v| keep.contains(&v)))
            .map(|e| e.members.iter().map(|&(v, s)| (local[&v], s)).collect())
            .collect();
        RawHypergraph { vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(), edges }.build()
    }

    /// Disjoint union; vertex names of `other` get `suffix` appended.
    pub fn disjoint_union(&self, other: &Self, suffix: &str) -> Result<Self> {
        let offset = self.vertex_count();
        let mut raw = self.to_raw();
        raw.vertices.extend(other.vertices.iter().map(|v| format!("{v}{suffix}")));
        raw.edges.extend(other.edges.iter().map(|e| e.members.iter().map(|&(v, s)| (v + offset, s)).collect()));
        raw.build()
    }
}

/// Signed `N x M` incidence matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceMatrix(pub DenseMatrix<i64>);

impl IncidenceMatrix {
    pub fn matrix(&self) -> &DenseMatrix<i64> {
        &self.0
    }
}

/// Integer adjacency matrix of an oriented hypergraph.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix(pub DenseMatrix<i64>);

impl AdjacencyMatrix {
    pub fn matrix(&self) -> &DenseMatrix<i64> {
        &self.0
    }

    pub fn get(&self, v: usize, w: usize) -> i64 {
        self.0[(v, w)]
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector {
    pub degrees: Vec<usize>,
}

impl DegreeVector {
    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Average degree as the exact ratio `(sum of degrees, N)`.
    pub fn average_ratio(&self) -> (usize, usize) {
        (self.total(), self.degrees.len())
    }

    pub fn average(&self) -> f64 {
        self.total() as f64 / self.degrees.len() as f64
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }
}
