//! Laplacians of an oriented hypergraph and their spectra.
//!
//! The vertex Laplacian `L = D⁻¹K` with `K = 𝓘𝓘ᵀ` is not symmetric, so its
//! spectrum is computed from the similar matrix `D^{-1/2} K D^{-1/2}` and
//! eigenvectors are mapped back through `u ↦ D^{-1/2}u`. The resulting
//! eigenfunctions satisfy `Lf = λf` and are orthonormal for the
//! degree-weighted product `⟨f,g⟩ = Σ deg(v) f(v) g(v)`.
//!
//! The edge Laplacian `L¹ = 𝓘ᵀD⁻¹𝓘` is symmetric and shares its nonzero
//! spectrum with `L`.

mod jacobi;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::matrix::DenseMatrix;

pub use jacobi::{eigen_symmetric, MAX_SWEEPS, OFF_DIAGONAL_RTOL};

/// Relative tolerance for grouping eigenvalues: `|λ - λ'| ≤ tol · max(1, |λ|)`.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;
/// Eigenvalues at most this far from zero count as zero.
pub const ZERO_TOL: f64 = 1e-9;

/// A real function on the vertices, indexed like the hypergraph's vertices.
pub type VertexFunction = Vec<f64>;
/// A real function on the edges, indexed like the hypergraph's edges.
pub type EdgeFunction = Vec<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cluster {
    /// Mean of the clustered eigenvalues (exactly `0.0` for a zero cluster).
    pub value: f64,
    pub multiplicity: usize,
    /// Index of the first member in the ascending eigenvalue list.
    pub start: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` belongs to `eigenvalues[i]`.
    pub eigenvectors: Vec<Vec<f64>>,
    pub clusters: Vec<Cluster>,
    pub cluster_tol: f64,
}

fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() + 1e-12 {
            best = i;
        }
    }
    if v.get(best).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn cluster_values(sorted: &[f64], tol: f64) -> Vec<Cluster> {
    let mut clusters = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let anchor = sorted[start];
        let mut end = start + 1;
        while end < sorted.len() && (sorted[end] - anchor).abs() <= tol * anchor.abs().max(1.0) {
            end += 1;
        }
        let members = &sorted[start..end];
        let mut value = members.iter().sum::<f64>() / members.len() as f64;
        if value.abs() <= ZERO_TOL {
            value = 0.0;
        }
        clusters.push(Cluster { value, multiplicity: end - start, start });
        start = end;
    }
    clusters
}

impl SpectralResult {
    /// Sorts the pairs ascending, fixes eigenvector signs and clusters.
    pub(crate) fn from_pairs(values: Vec<f64>, vectors: Vec<Vec<f64>>, cluster_tol: f64) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        let eigenvectors = order
            .iter()
            .map(|&i| {
                let mut v = vectors[i].clone();
                fix_sign(&mut v);
                v
            })
            .collect();
        let clusters = cluster_values(&eigenvalues, cluster_tol);
        SpectralResult { eigenvalues, eigenvectors, clusters, cluster_tol }
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// The cluster containing a value within `tol · max(1, |λ|)` of `lambda`.
    pub fn cluster_near(&self, lambda: f64, tol: f64) -> Option<&Cluster> {
        let window = tol * lambda.abs().max(1.0);
        self.clusters
            .iter()
            .find(|c| self.eigenvalues[c.start..c.start + c.multiplicity].iter().any(|x| (x - lambda).abs() <= window))
    }

    /// Eigenvectors spanning the given cluster's eigenspace.
    pub fn cluster_vectors(&self, cluster: &Cluster) -> &[Vec<f64>] {
        &self.eigenvectors[cluster.start..cluster.start + cluster.multiplicity]
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.eigenvalues.iter().filter(|x| x.abs() <= ZERO_TOL).count()
    }

    pub fn nonzero_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().copied().filter(|x| x.abs() > ZERO_TOL).collect()
    }
}

/// Size of the eigenvalue cluster containing `lambda`, or 0.
pub fn multiplicity(spectrum: &SpectralResult, lambda: f64, tol: f64) -> usize {
    spectrum.cluster_near(lambda, tol).map_or(0, |c| c.multiplicity)
}

/// `K = 𝓘𝓘ᵀ` in exact integers.
pub fn kirchhoff(h: &OrientedHypergraph) -> DenseMatrix<i64> {
    let inc = h.incidence();
    inc.matrix().matmul(&inc.matrix().transpose())
}

/// `L = D⁻¹K`.
pub fn normalized_laplacian(h: &OrientedHypergraph) -> DenseMatrix<f64> {
    let k = kirchhoff(h);
    let deg = h.degrees().degrees;
    DenseMatrix::from_fn(k.rows(), k.cols(), |i, j| k[(i, j)] as f64 / deg[i] as f64)
}

/// `D^{-1/2} K D^{-1/2}`, similar to `L`.
pub fn symmetric_laplacian(h: &OrientedHypergraph) -> DenseMatrix<f64> {
    let k = kirchhoff(h);
    let deg = h.degrees().degrees;
    DenseMatrix::from_fn(k.rows(), k.cols(), |i, j| k[(i, j)] as f64 / ((deg[i] * deg[j]) as f64).sqrt())
}

/// `L¹ = 𝓘ᵀD⁻¹𝓘`: entry `(e, e')` is `Σ_{v ∈ e∩e'} φ(v,e)φ(v,e') / deg v`.
pub fn edge_laplacian(h: &OrientedHypergraph) -> DenseMatrix<f64> {
    let m = h.edge_count();
    let mut l1 = DenseMatrix::zeros(m, m);
    for v in 0..h.vertex_count() {
        let inc = h.incident_edges(v);
        let w = 1.0 / inc.len() as f64;
        for &e in inc {
            for &f in inc {
                let s = h.sign(v, e).expect("incidence").value() * h.sign(v, f).expect("incidence").value();
                l1[(e, f)] += s as f64 * w;
            }
        }
    }
    l1
}

pub fn vertex_spectrum(h: &OrientedHypergraph, cluster_tol: f64) -> Result<SpectralResult> {
    let (values, vectors) = jacobi::jacobi(&symmetric_laplacian(h))?;
    let scale: Vec<f64> = h.degrees().degrees.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let vectors = vectors.into_iter().map(|u| u.iter().zip(&scale).map(|(x, s)| x * s).collect()).collect();
    Ok(SpectralResult::from_pairs(values, vectors, cluster_tol))
}

pub fn edge_spectrum(h: &OrientedHypergraph, cluster_tol: f64) -> Result<SpectralResult> {
    eigen_symmetric(&edge_laplacian(h), cluster_tol)
}

fn check_dim(f: &[f64], n: usize) -> Result<()> {
    if f.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: f.len() });
    }
    Ok(())
}

/// `Lf(v) = f(v) - (1/deg v) Σ_{w≠v} A_{v,w} f(w)`.
pub fn apply_laplacian(h: &OrientedHypergraph, f: &[f64]) -> Result<Vec<f64>> {
    check_dim(f, h.vertex_count())?;
    let a = h.adjacency();
    Ok((0..h.vertex_count())
        .map(|v| {
            let s: f64 = (0..h.vertex_count()).filter(|&w| w != v).map(|w| a.get(v, w) as f64 * f[w]).sum();
            f[v] - s / h.degree(v) as f64
        })
        .collect())
}

/// `L¹γ(e) = Σ_{v∈e} φ(v,e)/deg v · Σ_{e'∋v} φ(v,e')γ(e')`.
pub fn apply_edge_laplacian(h: &OrientedHypergraph, gamma: &[f64]) -> Result<Vec<f64>> {
    check_dim(gamma, h.edge_count())?;
    let flow: Vec<f64> = (0..h.vertex_count())
        .map(|v| {
            h.incident_edges(v).iter().map(|&e| h.sign(v, e).expect("incidence").value() as f64 * gamma[e]).sum::<f64>()
                / h.degree(v) as f64
        })
        .collect();
    Ok(h.edges().iter().map(|e| e.members().iter().map(|&(v, s)| s.value() as f64 * flow[v]).sum()).collect())
}

/// Rayleigh quotient of `L` from the edge-sum formula
/// `Σ_e (Σ_{inputs} f - Σ_{outputs} f)² / Σ_v deg v · f(v)²`.
pub fn rayleigh_quotient(h: &OrientedHypergraph, f: &[f64]) -> Result<f64> {
    check_dim(f, h.vertex_count())?;
    let denom: f64 = (0..h.vertex_count()).map(|v| h.degree(v) as f64 * f[v] * f[v]).sum();
    if denom == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let num: f64 = h
        .edges()
        .iter()
        .map(|e| {
            let balance: f64 = e.members().iter().map(|&(v, s)| -(s.value() as f64) * f[v]).sum();
            balance * balance
        })
        .sum();
    Ok(num / denom)
}

/// `⟨Lf, f⟩ / ⟨f, f⟩` evaluated with the matrix `L`.
pub fn rayleigh_quotient_matrix_form(h: &OrientedHypergraph, f: &[f64]) -> Result<f64> {
    check_dim(f, h.vertex_count())?;
    let lf = normalized_laplacian(h).mul_vec(f);
    let weighted = |x: &[f64], y: &[f64]| -> f64 { (0..x.len()).map(|v| h.degree(v) as f64 * x[v] * y[v]).sum() };
    let denom = weighted(f, f);
    if denom == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(weighted(&lf, f) / denom)
}

/// Rayleigh quotient of `L¹`:
/// `Σ_v (1/deg v)(Σ_{e∋v input} γ(e) - Σ_{e∋v output} γ(e))² / Σ_e γ(e)²`.
pub fn edge_rayleigh_quotient(h: &OrientedHypergraph, gamma: &[f64]) -> Result<f64> {
    check_dim(gamma, h.edge_count())?;
    let denom: f64 = gamma.iter().map(|g| g * g).sum();
    if denom == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let num: f64 = (0..h.vertex_count())
        .map(|v| {
            let balance: f64 = h
                .incident_edges(v)
                .iter()
                .map(|&e| -(h.sign(v, e).expect("incidence").value() as f64) * gamma[e])
                .sum();
            balance * balance / h.degree(v) as f64
        })
        .sum();
    Ok(num / denom)
}

fn sup_norm(f: &[f64]) -> f64 {
    f.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn residual_within(image: &[f64], f: &[f64], lambda: f64, tol: f64) -> bool {
    let norm = sup_norm(f);
    if norm == 0.0 {
        return false;
    }
    let residual = image.iter().zip(f).map(|(lf, x)| (lf - lambda * x).abs()).fold(0.0, f64::max);
    residual <= tol * norm.max(1.0)
}

/// `‖Lf - λf‖_∞`.
pub fn eigen_residual(h: &OrientedHypergraph, f: &[f64], lambda: f64) -> Result<f64> {
    let lf = apply_laplacian(h, f)?;
    Ok(lf.iter().zip(f).map(|(a, x)| (a - lambda * x).abs()).fold(0.0, f64::max))
}

/// `‖L¹γ - μγ‖_∞`.
pub fn edge_eigen_residual(h: &OrientedHypergraph, gamma: &[f64], mu: f64) -> Result<f64> {
    let lg = apply_edge_laplacian(h, gamma)?;
    Ok(lg.iter().zip(gamma).map(|(a, x)| (a - mu * x).abs()).fold(0.0, f64::max))
}

/// `‖Lf - λf‖_∞ ≤ tol · max(1, ‖f‖_∞)`. The zero function is never an eigenfunction.
pub fn is_eigenfunction(h: &OrientedHypergraph, f: &[f64], lambda: f64, tol: f64) -> bool {
    match apply_laplacian(h, f) {
        Ok(lf) => residual_within(&lf, f, lambda, tol),
        Err(_) => false,
    }
}

pub fn is_edge_eigenfunction(h: &OrientedHypergraph, gamma: &[f64], mu: f64, tol: f64) -> bool {
    match apply_edge_laplacian(h, gamma) {
        Ok(lg) => residual_within(&lg, gamma, mu, tol),
        Err(_) => false,
    }
}

/// Agreement between the vertex and edge spectra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub vertex_zero_multiplicity: usize,
    pub edge_zero_multiplicity: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `m_V - m_E = N - M`.
    pub zero_multiplicity_identity: bool,
    pub nonzero_spectra_agree: bool,
    pub max_nonzero_deviation: f64,
    pub pass: bool,
}

pub fn spectra_consistency(h: &OrientedHypergraph, cluster_tol: f64) -> Result<ConsistencyReport> {
    let vs = vertex_spectrum(h, cluster_tol)?;
    let es = edge_spectrum(h, cluster_tol)?;
    Ok(consistency_of(h, &vs, &es))
}

pub fn consistency_of(h: &OrientedHypergraph, vs: &SpectralResult, es: &SpectralResult) -> ConsistencyReport {
    let (mv, me) = (vs.zero_multiplicity(), es.zero_multiplicity());
    let (n, m) = (h.vertex_count(), h.edge_count());
    let identity = mv as i64 - me as i64 == n as i64 - m as i64;
    let (a, b) = (vs.nonzero_eigenvalues(), es.nonzero_eigenvalues());
    let mut agree = a.len() == b.len();
    let mut max_dev: f64 = 0.0;
    if agree {
        for (x, y) in a.iter().zip(&b) {
            let dev = (x - y).abs();
            max_dev = max_dev.max(dev);
            if dev > vs.cluster_tol * x.abs().max(1.0) {
                agree = false;
            }
        }
    }
    ConsistencyReport {
        vertex_zero_multiplicity: mv,
        edge_zero_multiplicity: me,
        vertex_count: n,
        edge_count: m,
        zero_multiplicity_identity: identity,
        nonzero_spectra_agree: agree,
        max_nonzero_deviation: max_dev,
        pass: identity && agree,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumTarget {
    Vertex,
    Edge,
}

/// Machine-readable spectrum summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub target: SpectrumTarget,
    pub eigenvalues: Vec<f64>,
    /// `[value, multiplicity]` pairs.
    pub clusters: Vec<(f64, usize)>,
    /// Eigenvalues sum to `N` within `1e-8 · N`.
    pub trace_check: bool,
    pub consistency: ConsistencyReport,
}

/// Rounds to 12 decimals for stable report output.
fn tidy(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn spectrum_report(h: &OrientedHypergraph, target: SpectrumTarget, cluster_tol: f64) -> Result<SpectrumReport> {
    let vs = vertex_spectrum(h, cluster_tol)?;
    let es = edge_spectrum(h, cluster_tol)?;
    let consistency = consistency_of(h, &vs, &es);
    let spectrum = match target {
        SpectrumTarget::Vertex => &vs,
        SpectrumTarget::Edge => &es,
    };
    let n = h.vertex_count() as f64;
    Ok(SpectrumReport {
        target,
        eigenvalues: spectrum.eigenvalues.iter().map(|&x| tidy(x)).collect(),
        clusters: spectrum.clusters.iter().map(|c| (tidy(c.value), c.multiplicity)).collect(),
        trace_check: (spectrum.trace() - n).abs() <= 1e-8 * n,
        consistency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::RawHypergraph;

    fn graph_edge() -> OrientedHypergraph {
        RawHypergraph::from_named(&["a", "b"], &[vec![("a", -1), ("b", 1)]]).build().unwrap()
    }

    fn triangle_edge() -> OrientedHypergraph {
        RawHypergraph::from_named(&["a", "b", "c"], &[vec![("a", -1), ("b", -1), ("c", -1)]]).build().unwrap()
    }

    #[test]
    fn graph_edge_matrices() {
        let h = graph_edge();
        assert_eq!(kirchhoff(&h).to_rows(), vec![vec![1, -1], vec![-1, 1]]);
        assert_eq!(normalized_laplacian(&h).to_rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        assert_eq!(edge_laplacian(&h).to_rows(), vec![vec![2.0]]);
    }

    #[test]
    fn single_all_input_edge_has_all_ones_laplacian() {
        let l = normalized_laplacian(&triangle_edge());
        assert_eq!(l.to_rows(), vec![vec![1.0; 3]; 3]);
    }

    #[test]
    fn ones_rayleigh_quotient_is_c() {
        let h = triangle_edge();
        assert!((rayleigh_quotient(&h, &[1.0; 3]).unwrap() - 3.0).abs() < 1e-12);
        assert!((edge_rayleigh_quotient(&h, &[1.0]).unwrap() - 3.0).abs() < 1e-12);
        assert!(matches!(rayleigh_quotient(&h, &[0.0; 3]), Err(Error::ZeroFunction)));
        assert!(matches!(edge_rayleigh_quotient(&h, &[0.0]), Err(Error::ZeroFunction)));
        assert!(matches!(rayleigh_quotient(&h, &[1.0; 2]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn eigenfunction_checks() {
        let h = triangle_edge();
        assert!(is_eigenfunction(&h, &[1.0; 3], 3.0, 1e-9));
        assert!(!is_eigenfunction(&h, &[1.0; 3], 2.0, 1e-9));
        assert!(is_eigenfunction(&h, &[1.0, -1.0, 0.0], 0.0, 1e-9));
        assert!(!is_eigenfunction(&h, &[0.0; 3], 0.0, 1e-9));
    }

    #[test]
    fn multiplicity_lookup() {
        let s = vertex_spectrum(&triangle_edge(), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(multiplicity(&s, 0.0, DEFAULT_CLUSTER_TOL), 2);
        assert_eq!(multiplicity(&s, 3.0, DEFAULT_CLUSTER_TOL), 1);
        assert_eq!(multiplicity(&s, 1e6, DEFAULT_CLUSTER_TOL), 0);
    }

    #[test]
    fn clustering_snaps_zero_and_groups_close_values() {
        let c = cluster_values(&[-1e-14, 2e-13, 1.0, 1.0 + 5e-8, 2.0], 1e-7);
        assert_eq!(c.len(), 3);
        assert_eq!((c[0].value, c[0].multiplicity), (0.0, 2));
        assert_eq!(c[1].multiplicity, 2);
    }

    #[test]
    fn vertex_eigenvectors_are_laplacian_eigenfunctions() {
        let h = RawHypergraph::from_named(
            &["a", "b", "c", "d"],
            &[vec![("a", -1), ("b", 1), ("c", -1)], vec![("c", 1), ("d", 1)], vec![("a", -1), ("d", -1)]],
        )
        .build()
        .unwrap();
        let s = vertex_spectrum(&h, DEFAULT_CLUSTER_TOL).unwrap();
        for (lambda, f) in s.eigenvalues.iter().zip(&s.eigenvectors) {
            assert!(eigen_residual(&h, f, *lambda).unwrap() <= 1e-8);
            assert!((rayleigh_quotient(&h, f).unwrap() - lambda).abs() < 1e-9);
        }
        assert!((s.trace() - 4.0).abs() < 1e-10);
    }
}
