//! Spectral lower bounds on coloring numbers and their equality cases.

mod sharpness;

use serde::Serialize;

use crate::coloring::{chromatic_with_budget, ChromaticResult, ChromaticStatus, ColoringMode, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::hypergraph::OrientedHypergraph;
use crate::spectral::{edge_spectrum, vertex_spectrum, SpectralResult, DEFAULT_CLUSTER_TOL};

pub use sharpness::{
    check_sharpness, class_edge_count, indicator, s_quantity, signed_restriction, Condition, SharpnessKind,
    SharpnessReport,
};

/// Absolute tolerance on `|χ - bound|` for calling a bound sharp.
pub const SHARP_TOL: f64 = 1e-6;
/// Two eigenvalues closer than this trigger the degenerate-case conventions.
pub const CONVENTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: f64,
    /// The degenerate case was resolved by convention (value 1).
    pub convention: bool,
}

impl BoundValue {
    fn plain(value: f64) -> Self {
        BoundValue { value, convention: false }
    }

    fn by_convention() -> Self {
        BoundValue { value: 1.0, convention: true }
    }
}

/// `(λN - λ1) / min{λN - 1, 1 - λ1}`, or 1 when `λ1 = λN = 1`.
pub fn bound_general(lambda1: f64, lambda_n: f64) -> Result<BoundValue> {
    if lambda1 > lambda_n + CONVENTION_TOL {
        return Err(Error::BoundDomain(format!("λ1 = {lambda1} exceeds λN = {lambda_n}")));
    }
    if (lambda1 - 1.0).abs() <= CONVENTION_TOL && (lambda_n - 1.0).abs() <= CONVENTION_TOL {
        return Ok(BoundValue::by_convention());
    }
    let denom = (lambda_n - 1.0).min(1.0 - lambda1);
    if denom <= 0.0 {
        return Err(Error::BoundDomain(format!("min{{λN - 1, 1 - λ1}} = {denom} is not positive")));
    }
    Ok(BoundValue::plain((lambda_n - lambda1) / denom))
}

/// `(c - λ1) / (1 - λ1)` for uniform hypergraphs with all incidences inputs.
pub fn bound_uniform_strong(c: usize, lambda1: f64) -> Result<f64> {
    if lambda1 >= 1.0 {
        return Err(Error::BoundDomain(format!("λ1 = {lambda1} must be below 1")));
    }
    Ok((c as f64 - lambda1) / (1.0 - lambda1))
}

/// `(c - λ1) / (d - λ1)`.
pub fn bound_d_proper(c: usize, lambda1: f64, d: usize) -> Result<f64> {
    if lambda1 >= d as f64 {
        return Err(Error::BoundDomain(format!("λ1 = {lambda1} must be below d = {d}")));
    }
    Ok((c as f64 - lambda1) / (d as f64 - lambda1))
}

/// `(c - λ1) / (q + 1 - λ1)`.
pub fn bound_q_tailored(c: usize, lambda1: f64, q: f64) -> Result<f64> {
    if q < 0.0 || lambda1 >= q + 1.0 {
        return Err(Error::BoundDomain(format!("need q >= 0 and λ1 < q + 1, got q = {q}, λ1 = {lambda1}")));
    }
    Ok((c as f64 - lambda1) / (q + 1.0 - lambda1))
}

/// `λN / (λN - 1 + d / avg_deg)` for graphs.
pub fn bound_d_improper(lambda_n: f64, d: usize, avg_deg: f64) -> Result<f64> {
    let denom = lambda_n - 1.0 + d as f64 / avg_deg;
    if avg_deg <= 0.0 || denom <= 0.0 {
        return Err(Error::BoundDomain(format!("λN - 1 + d/avg = {denom} is not positive")));
    }
    Ok(lambda_n / denom)
}

/// `(c - μ1) / (c/avg_deg - μ1)`, or 1 when `μ1 = c/avg_deg`.
pub fn bound_edge(c: usize, mu1: f64, avg_deg: f64) -> Result<BoundValue> {
    if avg_deg <= 0.0 {
        return Err(Error::BoundDomain("average degree must be positive".into()));
    }
    let ratio = c as f64 / avg_deg;
    if (mu1 - ratio).abs() <= CONVENTION_TOL {
        return Ok(BoundValue::by_convention());
    }
    if mu1 > ratio {
        return Err(Error::BoundDomain(format!("μ1 = {mu1} exceeds c/avg = {ratio}")));
    }
    Ok(BoundValue::plain((c as f64 - mu1) / (ratio - mu1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    General,
    DProper,
    QTailored,
    DImproper,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub cluster_tol: f64,
    pub budget: u64,
    pub sharp_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { cluster_tol: DEFAULT_CLUSTER_TOL, budget: DEFAULT_BUDGET, sharp_tol: SHARP_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub mode: String,
    pub lambda1: f64,
    pub lambda_n: f64,
    pub mu1: Option<f64>,
    pub c: Option<usize>,
    pub d: Option<usize>,
    pub q: Option<String>,
    pub average_degree: f64,
    pub bound: f64,
    pub convention: bool,
    pub status: ChromaticStatus,
    /// Exact coloring number, absent when the solver ran out of budget.
    pub chromatic: Option<usize>,
    pub chromatic_lower: usize,
    pub chromatic_upper: usize,
    pub gap: Option<f64>,
    pub sharp: Option<bool>,
    /// `bound > χ + tol`: the bound is wrong on this instance.
    pub violation: bool,
    #[serde(skip)]
    pub solve: Option<ChromaticResult>,
}

impl BoundReport {
    /// `λN`, or `μ1` for the edge bound.
    pub fn spectral_input(&self) -> f64 {
        self.mu1.unwrap_or(self.lambda_n)
    }
}

fn uniform_inputs(h: &OrientedHypergraph, mode: ColoringMode) -> Result<usize> {
    match h.uniformity() {
        Some(c) if h.is_all_inputs() => Ok(c),
        _ => Err(Error::ModeMismatch(format!("{mode} bound needs a uniform hypergraph with all incidences inputs"))),
    }
}

/// Value of the spectral bound for `mode`, with the vertex spectrum.
pub fn bound_for_mode(
    h: &OrientedHypergraph,
    mode: ColoringMode,
    spectrum: &SpectralResult,
    cluster_tol: f64,
) -> Result<(BoundKind, BoundValue, Option<f64>)> {
    mode.check_applicable(h)?;
    if h.vertex_count() == 0 {
        return Err(Error::BoundDomain("empty hypergraph has no spectrum".into()));
    }
    let (l1, ln) = (spectrum.smallest(), spectrum.largest());
    Ok(match mode {
        ColoringMode::Strong => (BoundKind::General, bound_general(l1, ln)?, None),
        ColoringMode::DProper(d) => {
            let c = uniform_inputs(h, mode)?;
            if d >= c {
                return Err(Error::BoundDomain(format!("d-proper bound needs 1 <= d <= c - 1, got d = {d}, c = {c}")));
            }
            (BoundKind::DProper, BoundValue::plain(bound_d_proper(c, l1, d)?), None)
        }
        ColoringMode::QTailored(q) => {
            let c = uniform_inputs(h, mode)?;
            let q = *q.numer() as f64 / *q.denom() as f64;
            (BoundKind::QTailored, BoundValue::plain(bound_q_tailored(c, l1, q)?), None)
        }
        ColoringMode::DImproper(d) => {
            (BoundKind::DImproper, BoundValue::plain(bound_d_improper(ln, d, h.degrees().average())?), None)
        }
        ColoringMode::EdgeStrong => {
            let c = uniform_inputs(h, mode)?;
            let mu1 = edge_spectrum(h, cluster_tol)?.smallest();
            (BoundKind::Edge, bound_edge(c, mu1, h.degrees().average())?, Some(mu1))
        }
    })
}

/// Spectral bound, exact coloring number, gap and sharpness for `mode` on `h`.
pub fn evaluate(h: &OrientedHypergraph, mode: ColoringMode, opts: &EvalOptions) -> Result<BoundReport> {
    mode.check_applicable(h)?;
    let spectrum = vertex_spectrum(h, opts.cluster_tol)?;
    let (kind, bound, mu1) = bound_for_mode(h, mode, &spectrum, opts.cluster_tol)?;
    let solve = chromatic_with_budget(h, mode, opts.budget)?;
    let chromatic = solve.number();
    let gap = chromatic.map(|x| x as f64 - bound.value);
    let (d, q) = match mode {
        ColoringMode::DProper(d) | ColoringMode::DImproper(d) => (Some(d), None),
        ColoringMode::QTailored(q) => (None, Some(q.to_string())),
        _ => (None, None),
    };
    Ok(BoundReport {
        kind,
        mode: mode.to_string(),
        lambda1: spectrum.smallest(),
        lambda_n: spectrum.largest(),
        mu1,
        c: h.uniformity(),
        d,
        q,
        average_degree: h.degrees().average(),
        bound: bound.value,
        convention: bound.convention,
        status: solve.status,
        chromatic,
        chromatic_lower: solve.lower,
        chromatic_upper: solve.upper,
        gap,
        sharp: gap.map(|g| g.abs() <= opts.sharp_tol),
        violation: gap.is_some_and(|g| g < -opts.sharp_tol) || (solve.upper as f64) < bound.value - opts.sharp_tol,
        solve: Some(solve),
    })
}

/// Fixed CSV schema for batch summaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub instance: String,
    pub mode: String,
    pub lambda1: Option<f64>,
    pub lambda_n_or_mu1: Option<f64>,
    pub bound: Option<f64>,
    pub chi: Option<usize>,
    pub gap: Option<f64>,
    pub sharp: Option<bool>,
    /// `exact`, `inconclusive`, `violation`, `mode-mismatch` or `out-of-domain`.
    pub status: String,
}

impl CsvRow {
    pub fn from_report(instance: &str, r: &BoundReport) -> Self {
        let status = if r.violation {
            "violation".to_string()
        } else {
            match r.status {
                ChromaticStatus::Exact => "exact".into(),
                ChromaticStatus::Inconclusive => "inconclusive".into(),
            }
        };
        CsvRow {
            instance: instance.into(),
            mode: r.mode.clone(),
            lambda1: Some(r.lambda1),
            lambda_n_or_mu1: Some(r.spectral_input()),
            bound: Some(r.bound),
            chi: r.chromatic,
            gap: r.gap,
            sharp: r.sharp,
            status,
        }
    }

    pub fn without_report(instance: &str, mode: ColoringMode, status: &str) -> Self {
        CsvRow {
            instance: instance.into(),
            mode: mode.to_string(),
            lambda1: None,
            lambda_n_or_mu1: None,
            bound: None,
            chi: None,
            gap: None,
            sharp: None,
            status: status.into(),
        }
    }
}
