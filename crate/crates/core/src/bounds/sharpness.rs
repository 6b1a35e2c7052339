//! Necessary conditions satisfied by colorings that attain a bound.
//!
//! Each battery checks one equality case and reports every condition with
//! numeric evidence. Passing does not prove sharpness; failing disproves it.

use num_rational::Ratio;
use serde::Serialize;

use super::SHARP_TOL;
use crate::coloring::{is_valid, Coloring, ColoringMode, Target};
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::spectral::{
    edge_eigen_residual, edge_spectrum, eigen_residual, multiplicity, vertex_spectrum, SpectralResult, ZERO_TOL,
};

/// Allowed `‖Lf - λf‖_∞` for a predicted eigenfunction.
pub const RESIDUAL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SharpnessKind {
    /// Strong coloring attaining `(λN - λ1)/(1 - λ1)`.
    StrongLambda1,
    /// Strong coloring attaining `(λN - λ1)/(λN - 1)`.
    StrongLambdaN,
    DProper(usize),
    QTailored(Ratio<u64>),
    DImproper(usize),
    EdgeStrong,
}

impl SharpnessKind {
    pub fn mode(self) -> ColoringMode {
        match self {
            SharpnessKind::StrongLambda1 | SharpnessKind::StrongLambdaN => ColoringMode::Strong,
            SharpnessKind::DProper(d) => ColoringMode::DProper(d),
            SharpnessKind::QTailored(q) => ColoringMode::QTailored(q),
            SharpnessKind::DImproper(d) => ColoringMode::DImproper(d),
            SharpnessKind::EdgeStrong => ColoringMode::EdgeStrong,
        }
    }

    /// Batteries matching a sharp bound for `mode`. For strong colorings the
    /// branch(es) of the minimum that attain `chi` are chosen.
    pub fn for_mode(mode: ColoringMode, lambda1: f64, lambda_n: f64, chi: usize) -> Vec<SharpnessKind> {
        match mode {
            ColoringMode::Strong => {
                let mut kinds = Vec::new();
                let chi = chi as f64;
                if lambda1 < 1.0 && ((lambda_n - lambda1) / (1.0 - lambda1) - chi).abs() <= SHARP_TOL {
                    kinds.push(SharpnessKind::StrongLambda1);
                }
                if lambda_n > 1.0 && ((lambda_n - lambda1) / (lambda_n - 1.0) - chi).abs() <= SHARP_TOL {
                    kinds.push(SharpnessKind::StrongLambdaN);
                }
                kinds
            }
            ColoringMode::DProper(d) => vec![SharpnessKind::DProper(d)],
            ColoringMode::QTailored(q) => vec![SharpnessKind::QTailored(q)],
            ColoringMode::DImproper(d) => vec![SharpnessKind::DImproper(d)],
            ColoringMode::EdgeStrong => vec![SharpnessKind::EdgeStrong],
        }
    }

    fn label(self) -> String {
        match self {
            SharpnessKind::StrongLambda1 => "strong-lambda1".into(),
            SharpnessKind::StrongLambdaN => "strong-lambdaN".into(),
            other => other.mode().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub pass: bool,
    /// Worst observed value (residual, count, deviation) for this condition.
    pub value: f64,
    pub detail: String,
}

impl Condition {
    fn new(name: &str, pass: bool, value: f64, detail: impl Into<String>) -> Self {
        Condition { name: name.into(), pass, value, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub kind: String,
    pub chi: usize,
    pub conditions: Vec<Condition>,
    pub pass: bool,
}

impl SharpnessReport {
    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn check_pair(coloring: &Coloring, i: usize, j: usize) -> Result<()> {
    for x in [i, j] {
        if x == 0 || x > coloring.k() {
            return Err(Error::ClassOutOfRange { index: x, k: coloring.k() });
        }
    }
    if i == j {
        return Err(Error::EqualClasses(i));
    }
    Ok(())
}

/// `f` on class `i`, `-f` on class `j`, 0 elsewhere (classes are 1-based).
pub fn signed_restriction(f: &[f64], coloring: &Coloring, i: usize, j: usize) -> Result<Vec<f64>> {
    check_pair(coloring, i, j)?;
    if f.len() != coloring.len() {
        return Err(Error::DimensionMismatch { expected: coloring.len(), actual: f.len() });
    }
    Ok((0..f.len())
        .map(|x| match coloring.color(x) {
            c if c == i => f[x],
            c if c == j => -f[x],
            _ => 0.0,
        })
        .collect())
}

/// `+1` on class `i`, `-1` on class `j`, 0 elsewhere.
pub fn indicator(coloring: &Coloring, i: usize, j: usize) -> Result<Vec<f64>> {
    signed_restriction(&vec![1.0; coloring.len()], coloring, i, j)
}

/// `Σ_{v∈V_i, w∈V_j} A_{v,w} f(v) f(w)`.
pub fn s_quantity(h: &OrientedHypergraph, f: &[f64], coloring: &Coloring, i: usize, j: usize) -> Result<f64> {
    check_pair(coloring, i, j)?;
    if coloring.target() != Target::Vertex || coloring.len() != h.vertex_count() || f.len() != h.vertex_count() {
        return Err(Error::DimensionMismatch { expected: h.vertex_count(), actual: f.len().min(coloring.len()) });
    }
    let a = h.adjacency();
    let (vi, vj) = (coloring.class(i)?, coloring.class(j)?);
    Ok(vi.iter().flat_map(|&v| vj.iter().map(move |&w| (v, w))).map(|(v, w)| a.get(v, w) as f64 * f[v] * f[w]).sum())
}

/// Number of edges containing `v` that meet `class`.
pub fn class_edge_count(h: &OrientedHypergraph, v: usize, class: &[usize]) -> usize {
    h.incident_edges(v).iter().filter(|&&e| class.iter().any(|&w| h.edge(e).contains(w))).count()
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=k).flat_map(move |i| (i + 1..=k).map(move |j| (i, j)))
}

fn support_condition(name: &str, vectors: &[Vec<f64>], coloring: &Coloring) -> Condition {
    let mut misses = 0;
    for f in vectors {
        let scale = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for i in 1..=coloring.k() {
            if !(0..f.len()).any(|x| coloring.color(x) == i && f[x].abs() > 1e-9 * scale) {
                misses += 1;
            }
        }
    }
    Condition::new(
        name,
        misses == 0,
        misses as f64,
        format!("{misses} (eigenvector, class) pairs with no support over {} eigenvectors", vectors.len()),
    )
}

fn s_sign_condition(
    name: &str,
    h: &OrientedHypergraph,
    vectors: &[Vec<f64>],
    coloring: &Coloring,
    negative: bool,
) -> Result<Condition> {
    let mut worst = if negative { f64::NEG_INFINITY } else { f64::INFINITY };
    for f in vectors {
        for (i, j) in pairs(coloring.k()) {
            let s = s_quantity(h, f, coloring, i, j)?;
            worst = if negative { worst.max(s) } else { worst.min(s) };
        }
    }
    let (pass, detail) = if negative {
        (worst < -1e-12, format!("largest S_ij = {worst:.3e} (needs < 0)"))
    } else {
        (worst >= -1e-9, format!("smallest S_ij = {worst:.3e} (needs >= 0)"))
    };
    Ok(Condition::new(name, pass, worst, detail))
}

fn vertex_pair_condition(
    name: &str,
    h: &OrientedHypergraph,
    bases: &[Vec<f64>],
    coloring: &Coloring,
    lambda: f64,
) -> Result<Condition> {
    let mut worst: f64 = 0.0;
    for f in bases {
        for (i, j) in pairs(coloring.k()) {
            worst = worst.max(eigen_residual(h, &signed_restriction(f, coloring, i, j)?, lambda)?);
        }
    }
    Ok(Condition::new(name, worst <= RESIDUAL_TOL, worst, format!("max ‖Lf - {lambda:.9}f‖∞ = {worst:.3e}")))
}

fn matches_condition(name: &str, predicted: f64, actual: f64, what: &str) -> Condition {
    let dev = (predicted - actual).abs();
    Condition::new(name, dev <= SHARP_TOL, dev, format!("predicted {predicted:.9}, {what} = {actual:.9}"))
}

fn multiplicity_condition(name: &str, spectrum: &SpectralResult, lambda: f64, need: usize) -> Condition {
    let m = multiplicity(spectrum, lambda, spectrum.cluster_tol);
    Condition::new(name, m >= need, m as f64, format!("multiplicity of {lambda:.9} is {m}, needs >= {need}"))
}

fn uniform_inputs(h: &OrientedHypergraph, kind: SharpnessKind) -> Result<usize> {
    match h.uniformity() {
        Some(c) if h.is_all_inputs() => Ok(c),
        _ => Err(Error::ModeMismatch(format!(
            "{} battery needs a uniform hypergraph with all incidences inputs",
            kind.label()
        ))),
    }
}

/// `e ∩ V_i` has size 0 or `m` for every edge and class.
fn per_edge_condition(h: &OrientedHypergraph, coloring: &Coloring, m: usize) -> Condition {
    let mut bad = 0;
    for e in h.edges() {
        let mut counts = vec![0; coloring.k() + 1];
        e.vertices().for_each(|v| counts[coloring.color(v)] += 1);
        bad += counts[1..].iter().filter(|&&n| n != 0 && n != m).count();
    }
    Condition::new(
        "edge-class-sizes",
        bad == 0,
        bad as f64,
        format!("{bad} (edge, class) pairs with |e ∩ V_i| outside {{0, {m}}}"),
    )
}

/// Edges at `v` meeting `V_i`: `deg v` on-class, `(c/m - 1) deg v / (k - 1)` off-class.
/// Compared exactly as `count · m · (k-1) = deg v · (c - m)`.
fn distribution_condition(h: &OrientedHypergraph, coloring: &Coloring, c: usize, m: usize) -> Condition {
    let k = coloring.k();
    let classes = coloring.classes();
    let mut bad = 0;
    let mut worst: f64 = 0.0;
    for v in 0..h.vertex_count() {
        let deg = h.degree(v);
        for (i, class) in classes.iter().enumerate() {
            let count = class_edge_count(h, v, class);
            let ok = if coloring.color(v) == i + 1 { count == deg } else { count * m * (k - 1) == deg * (c - m) };
            if !ok {
                bad += 1;
                let want = if coloring.color(v) == i + 1 {
                    deg as f64
                } else {
                    deg as f64 * (c as f64 / m as f64 - 1.0) / (k - 1) as f64
                };
                worst = worst.max((count as f64 - want).abs());
            }
        }
    }
    Condition::new(
        "class-edge-counts",
        bad == 0,
        worst,
        format!("{bad} (vertex, class) pairs off the even distribution"),
    )
}

fn strong_lambda1(h: &OrientedHypergraph, coloring: &Coloring, vs: &SpectralResult) -> Result<Vec<Condition>> {
    let chi = coloring.k() as f64;
    let (l1, ln) = (vs.smallest(), vs.largest());
    let top = vs.cluster_near(ln, vs.cluster_tol).expect("largest eigenvalue has a cluster");
    let gs = vs.cluster_vectors(top).to_vec();
    let predicted = (chi - ln) / (chi - 1.0);
    let mut out = vec![
        Condition::new("adjacency-nonzero", !h.adjacency().is_zero(), 0.0, "A ≠ 0"),
        support_condition("support-meets-every-class", &gs, coloring),
        s_sign_condition("s-negative", h, &gs, coloring, true)?,
        vertex_pair_condition("g-ij-eigenfunctions", h, &gs, coloring, predicted)?,
        matches_condition("predicted-eigenvalue", predicted, l1, "λ1"),
        multiplicity_condition("multiplicity", vs, l1, coloring.k() - 1),
    ];
    if let (Some(c), true) = (h.uniformity(), h.is_all_inputs()) {
        out.push(distribution_condition(h, coloring, c, 1));
    }
    Ok(out)
}

fn strong_lambda_n(h: &OrientedHypergraph, coloring: &Coloring, vs: &SpectralResult) -> Result<Vec<Condition>> {
    let chi = coloring.k() as f64;
    let (l1, ln) = (vs.smallest(), vs.largest());
    let bottom = vs.cluster_near(l1, vs.cluster_tol).expect("smallest eigenvalue has a cluster");
    let hs = vs.cluster_vectors(bottom).to_vec();
    let predicted = (chi - l1) / (chi - 1.0);
    Ok(vec![
        Condition::new("adjacency-nonzero", !h.adjacency().is_zero(), 0.0, "A ≠ 0"),
        support_condition("support-meets-every-class", &hs, coloring),
        s_sign_condition("s-nonnegative", h, &hs, coloring, false)?,
        vertex_pair_condition("h-ij-eigenfunctions", h, &hs, coloring, predicted)?,
        matches_condition("predicted-eigenvalue", predicted, ln, "λN"),
        multiplicity_condition("multiplicity", vs, ln, coloring.k() - 1),
    ])
}

fn d_proper(h: &OrientedHypergraph, coloring: &Coloring, vs: &SpectralResult, d: usize) -> Result<Vec<Condition>> {
    let c = uniform_inputs(h, SharpnessKind::DProper(d))?;
    let chi = coloring.k() as f64;
    let predicted = (d as f64 * chi - c as f64) / (chi - 1.0);
    Ok(vec![
        per_edge_condition(h, coloring, d),
        vertex_pair_condition("g-ij-eigenfunctions", h, &[vec![1.0; h.vertex_count()]], coloring, predicted)?,
        matches_condition("predicted-eigenvalue", predicted, vs.smallest(), "λ1"),
        distribution_condition(h, coloring, c, d),
        multiplicity_condition("multiplicity", vs, vs.smallest(), coloring.k() - 1),
    ])
}

fn q_tailored(
    h: &OrientedHypergraph,
    coloring: &Coloring,
    vs: &SpectralResult,
    q: Ratio<u64>,
) -> Result<Vec<Condition>> {
    let c = uniform_inputs(h, SharpnessKind::QTailored(q))?;
    let a = h.adjacency();
    let mut bad = 0;
    let mut worst: f64 = 0.0;
    for v in 0..h.vertex_count() {
        let same: u64 = (0..h.vertex_count())
            .filter(|&w| w != v && coloring.color(w) == coloring.color(v))
            .map(|w| a.get(v, w).unsigned_abs())
            .sum();
        if same * q.denom() != q.numer() * h.degree(v) as u64 {
            bad += 1;
            let q_f = *q.numer() as f64 / *q.denom() as f64;
            worst = worst.max((same as f64 - q_f * h.degree(v) as f64).abs());
        }
    }
    let chi = coloring.k() as f64;
    let q_f = *q.numer() as f64 / *q.denom() as f64;
    let predicted = ((q_f + 1.0) * chi - c as f64) / (chi - 1.0);
    Ok(vec![
        Condition::new("tailored-equality", bad == 0, worst, format!("{bad} vertices with Σ|A| ≠ q·deg v")),
        vertex_pair_condition("g-ij-eigenfunctions", h, &[vec![1.0; h.vertex_count()]], coloring, predicted)?,
        matches_condition("predicted-eigenvalue", predicted, vs.smallest(), "λ1"),
    ])
}

fn d_improper(h: &OrientedHypergraph, coloring: &Coloring, vs: &SpectralResult, d: usize) -> Result<Vec<Condition>> {
    let degrees = h.degrees();
    let k = coloring.k();
    let neighbours =
        |v: usize| h.incident_edges(v).iter().flat_map(move |&e| h.edge(e).vertices().filter(move |&w| w != v));
    let mut same_bad = 0;
    let mut split_bad = 0;
    for v in 0..h.vertex_count() {
        let mut per_class = vec![0; k + 1];
        neighbours(v).for_each(|w| per_class[coloring.color(w)] += 1);
        let own = coloring.color(v);
        if per_class[own] != d {
            same_bad += 1;
        }
        let deg = h.degree(v);
        split_bad += (1..=k).filter(|&j| j != own && per_class[j] * (k - 1) != deg.saturating_sub(d)).count();
    }
    let chi = k as f64;
    let predicted = (1.0 - d as f64 / degrees.average()) * chi / (chi - 1.0);
    Ok(vec![
        Condition::new(
            "regular",
            degrees.is_regular(),
            (degrees.max() as f64 - degrees.average()).abs(),
            format!("max degree {}, average {:.6}", degrees.max(), degrees.average()),
        ),
        Condition::new(
            "same-class-neighbours",
            same_bad == 0,
            same_bad as f64,
            format!("{same_bad} vertices without exactly {d} same-class neighbours"),
        ),
        vertex_pair_condition("g-ij-eigenfunctions", h, &[vec![1.0; h.vertex_count()]], coloring, vs.largest())?,
        matches_condition("predicted-eigenvalue", predicted, vs.largest(), "λN"),
        Condition::new(
            "neighbour-split",
            split_bad == 0,
            split_bad as f64,
            format!("{split_bad} (vertex, class) pairs with e(v, V_j) ≠ (deg v - d)/(χ - 1)"),
        ),
    ])
}

fn edge_strong(h: &OrientedHypergraph, coloring: &Coloring, vs: &SpectralResult, tol: f64) -> Result<Vec<Condition>> {
    uniform_inputs(h, SharpnessKind::EdgeStrong)?;
    let es = edge_spectrum(h, tol)?;
    let mu1 = es.smallest();
    let k = coloring.k();
    let gammas: Vec<Vec<f64>> = pairs(k).map(|(i, j)| indicator(coloring, i, j)).collect::<Result<_>>()?;
    let worst_edge = gammas.iter().map(|g| edge_eigen_residual(h, g, mu1)).collect::<Result<Vec<_>>>()?;
    let worst_edge = worst_edge.into_iter().fold(0.0, f64::max);
    let edge_eigen = Condition::new(
        "gamma-ij-eigenfunctions",
        worst_edge <= RESIDUAL_TOL,
        worst_edge,
        format!("max ‖L¹γ - μ1γ‖∞ = {worst_edge:.3e}"),
    );
    if mu1.abs() <= ZERO_TOL {
        let degrees = h.degrees();
        let reg = degrees.max();
        return Ok(vec![
            Condition::new(
                "regular",
                degrees.is_regular(),
                reg as f64 - degrees.average(),
                format!("max degree {reg}, average {:.6}", degrees.average()),
            ),
            Condition::new("chi-equals-degree", k == reg, k as f64, format!("χ' = {k}, degree {reg}")),
            edge_eigen,
            multiplicity_condition("edge-multiplicity", &es, 0.0, reg.saturating_sub(1)),
        ]);
    }
    let mut worst_vertex: f64 = 0.0;
    for g in &gammas {
        let f: Vec<f64> = (0..h.vertex_count())
            .map(|v| {
                h.incident_edges(v).iter().map(|&e| h.sign(v, e).expect("incidence").value() as f64 * g[e]).sum::<f64>()
                    / h.degree(v) as f64
            })
            .collect();
        worst_vertex = worst_vertex.max(eigen_residual(h, &f, mu1)?);
    }
    Ok(vec![
        edge_eigen,
        multiplicity_condition("edge-multiplicity", &es, mu1, k - 1),
        multiplicity_condition("vertex-multiplicity", vs, mu1, k - 1),
        Condition::new(
            "lifted-eigenfunctions",
            worst_vertex <= RESIDUAL_TOL,
            worst_vertex,
            format!("max ‖L(D⁻¹𝓘γ) - μ1(D⁻¹𝓘γ)‖∞ = {worst_vertex:.3e}"),
        ),
    ])
}

/// Runs the battery for `kind` on a valid coloring with `χ = coloring.k()` classes.
pub fn check_sharpness(
    h: &OrientedHypergraph,
    coloring: &Coloring,
    kind: SharpnessKind,
    cluster_tol: f64,
) -> Result<SharpnessReport> {
    if !is_valid(h, coloring, kind.mode())? {
        return Err(Error::InvalidColoring(format!("not a valid {} coloring", kind.mode())));
    }
    if coloring.k() < 2 {
        return Err(Error::BoundDomain("sharpness battery needs at least two classes".into()));
    }
    let vs = vertex_spectrum(h, cluster_tol)?;
    let conditions = match kind {
        SharpnessKind::StrongLambda1 => strong_lambda1(h, coloring, &vs)?,
        SharpnessKind::StrongLambdaN => strong_lambda_n(h, coloring, &vs)?,
        SharpnessKind::DProper(d) => d_proper(h, coloring, &vs, d)?,
        SharpnessKind::QTailored(q) => q_tailored(h, coloring, &vs, q)?,
        SharpnessKind::DImproper(d) => d_improper(h, coloring, &vs, d)?,
        SharpnessKind::EdgeStrong => edge_strong(h, coloring, &vs, cluster_tol)?,
    };
    let pass = conditions.iter().all(|c| c.pass);
    Ok(SharpnessReport { kind: kind.label(), chi: coloring.k(), conditions, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::RawHypergraph;

    fn triangle_edge() -> OrientedHypergraph {
        RawHypergraph::from_named(&["a", "b", "c"], &[vec![("a", -1), ("b", -1), ("c", -1)]]).build().unwrap()
    }

    #[test]
    fn indicator_and_restriction() {
        let col = Coloring::new(Target::Vertex, vec![1, 2, 3]).unwrap();
        assert_eq!(indicator(&col, 1, 2).unwrap(), vec![1.0, -1.0, 0.0]);
        assert_eq!(signed_restriction(&[2.0, 3.0, 4.0], &col, 3, 2).unwrap(), vec![0.0, -3.0, 4.0]);
        assert!(matches!(indicator(&col, 2, 2), Err(Error::EqualClasses(2))));
        assert!(matches!(indicator(&col, 1, 4), Err(Error::ClassOutOfRange { .. })));
    }

    #[test]
    fn s_quantity_on_single_edge() {
        let h = triangle_edge();
        let col = Coloring::new(Target::Vertex, vec![1, 2, 3]).unwrap();
        assert_eq!(s_quantity(&h, &[1.0; 3], &col, 1, 2).unwrap(), -1.0);
        assert_eq!(s_quantity(&h, &[0.0; 3], &col, 1, 2).unwrap(), 0.0);
    }

    #[test]
    fn class_edge_counts_on_single_edge() {
        let h = triangle_edge();
        assert_eq!(class_edge_count(&h, 0, &[0]), 1);
        assert_eq!(class_edge_count(&h, 0, &[1]), 1);
        assert_eq!(class_edge_count(&h, 0, &[]), 0);
    }

    #[test]
    fn single_edge_passes_strong_battery() {
        let h = triangle_edge();
        let col = Coloring::new(Target::Vertex, vec![1, 2, 3]).unwrap();
        let r = check_sharpness(&h, &col, SharpnessKind::StrongLambda1, 1e-7).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn invalid_coloring_rejected() {
        let h = triangle_edge();
        let col = Coloring::new(Target::Vertex, vec![1, 1, 2]).unwrap();
        assert!(matches!(
            check_sharpness(&h, &col, SharpnessKind::StrongLambda1, 1e-7),
            Err(Error::InvalidColoring(_))
        ));
    }
}
