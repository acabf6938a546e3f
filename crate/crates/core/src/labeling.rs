//! α-normal labelings: the corner labels B(v,e), edge weights w(e) and the
//! target α that certify a value of λ^(p)(G).
//!
//! For p > r a labeling is α-normal when
//!
//! 1. Σ_e w(e) = 1,
//! 2. Σ_{e∋v} B(v,e) = 1 at every vertex,
//! 3. w(e)^{p−r} · Π_{v∈e} B(v,e) = α on every edge,
//!
//! and consistent when w(e)/B(v,e) does not depend on e at each vertex. A
//! consistent α-normal labeling pins λ^(p)(G) = r^{1−r/p} α^{−1/p}; the
//! subnormal (≤, ≤, ≥) and supernormal (≥, ≥, ≤) relaxations give upper and
//! lower bounds respectively.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float::{compensated_sum, lp_norm, powf};
use crate::hypergraph::UniformHypergraph;

/// Default absolute tolerance for the defining conditions.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Slack multiple (of the tolerance) above which a sub/supernormal labeling
/// is reported as strict.
pub const STRICT_BAND: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Labeling {
    r: usize,
    p: f64,
    alpha: f64,
    weights: Vec<f64>,
    /// `corners[e * r + slot]` is B(edge(e)[slot], e).
    corners: Vec<f64>,
}

impl Labeling {
    /// `corners` is flat, `r` entries per edge in the order of the sorted
    /// edge tuple.
    pub fn new(
        g: &UniformHypergraph,
        p: f64,
        alpha: f64,
        weights: Vec<f64>,
        corners: Vec<f64>,
    ) -> Result<Self> {
        check_exponent(p)?;
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidValue { what: "alpha", requirement: "positive", value: alpha });
        }
        if weights.len() != g.m() {
            return Err(Error::SupportMismatch(format!(
                "{} weights for {} edges",
                weights.len(),
                g.m()
            )));
        }
        if let Some((e, &w)) = weights.iter().enumerate().find(|(_, w)| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::SupportMismatch(format!("weight of edge {e} is {w}, must be positive")));
        }
        check_corners(g, &corners)?;
        Ok(Labeling { r: g.r(), p, alpha, weights, corners })
    }

    /// Same as [`Labeling::new`] with B given as one row per edge.
    pub fn from_rows(
        g: &UniformHypergraph,
        p: f64,
        alpha: f64,
        weights: Vec<f64>,
        rows: &[Vec<f64>],
    ) -> Result<Self> {
        if rows.len() != g.m() {
            return Err(Error::SupportMismatch(format!("{} rows of B for {} edges", rows.len(), g.m())));
        }
        if let Some((e, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != g.r()) {
            return Err(Error::SupportMismatch(format!(
                "row {e} of B has {} entries, edges have {}",
                row.len(),
                g.r()
            )));
        }
        let corners = rows.iter().flatten().copied().collect();
        Self::new(g, p, alpha, weights, corners)
    }

    /// The labeling B(v,e) = w(e) / Σ_{f∋v} w(f), which is consistent by
    /// construction. This is how a weight-only certificate is expanded.
    pub fn from_weights(g: &UniformHypergraph, p: f64, alpha: f64, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != g.m() {
            return Err(Error::SupportMismatch(format!("{} weights for {} edges", weights.len(), g.m())));
        }
        let loads = vertex_loads(g, &weights);
        let mut corners = Vec::with_capacity(g.m() * g.r());
        for (e, edge) in g.edges().enumerate() {
            corners.extend(edge.iter().map(|&v| weights[e] / loads[v]));
        }
        Self::new(g, p, alpha, weights, corners)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn corners(&self) -> &[f64] {
        &self.corners
    }

    pub fn corners_of(&self, e: usize) -> &[f64] {
        &self.corners[e * self.r..(e + 1) * self.r]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.corners.chunks_exact(self.r).map(<[f64]>::to_vec).collect()
    }

    /// The λ this labeling certifies if it is consistently α-normal.
    pub fn certified_lambda(&self) -> f64 {
        lambda_alpha_relation(self.alpha, self.r, self.p)
    }

    /// Returns a copy with a different α (used to build sub/supernormal
    /// variants of a normal labeling).
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidValue { what: "alpha", requirement: "positive", value: alpha });
        }
        Ok(Labeling { alpha, ..self.clone() })
    }

    /// Returns a copy with every weight multiplied by `factor`.
    pub fn scale_weights(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidValue { what: "weight scale", requirement: "positive", value: factor });
        }
        let weights = self.weights.iter().map(|w| w * factor).collect();
        Ok(Labeling { weights, ..self.clone() })
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidValue { what: "p", requirement: "a finite real ≥ 1", value: p })
    }
}

fn check_corners(g: &UniformHypergraph, corners: &[f64]) -> Result<()> {
    if corners.len() != g.m() * g.r() {
        return Err(Error::SupportMismatch(format!(
            "{} corner labels for {} incidences",
            corners.len(),
            g.m() * g.r()
        )));
    }
    if let Some((i, &b)) = corners.iter().enumerate().find(|(_, b)| !(**b > 0.0 && b.is_finite())) {
        return Err(Error::SupportMismatch(format!(
            "B({}, edge {}) is {b}, must be positive on incident pairs",
            g.edge(i / g.r())[i % g.r()],
            i / g.r()
        )));
    }
    Ok(())
}

/// Σ_{f∋v} w(f) for every vertex.
fn vertex_loads(g: &UniformHypergraph, weights: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|v| compensated_sum(g.incidences(v).iter().map(|inc| weights[inc.edge])))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelClass {
    Normal,
    Subnormal,
    StrictlySubnormal,
    Supernormal,
    StrictlySupernormal,
    None,
}

impl LabelClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LabelClass::Normal => "normal",
            LabelClass::Subnormal => "subnormal",
            LabelClass::StrictlySubnormal => "strictly-subnormal",
            LabelClass::Supernormal => "supernormal",
            LabelClass::StrictlySupernormal => "strictly-supernormal",
            LabelClass::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            LabelClass::Normal,
            LabelClass::Subnormal,
            LabelClass::StrictlySubnormal,
            LabelClass::Supernormal,
            LabelClass::StrictlySupernormal,
            LabelClass::None,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }

    pub fn is_subnormal(self) -> bool {
        matches!(self, LabelClass::Subnormal | LabelClass::StrictlySubnormal)
    }

    pub fn is_supernormal(self) -> bool {
        matches!(self, LabelClass::Supernormal | LabelClass::StrictlySupernormal)
    }
}

impl core::fmt::Display for LabelClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Signed residuals of the defining conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct Residuals {
    /// Σ_e w(e) − 1; `None` for the p < r conditions, which have no weights.
    pub weight_sum: Option<f64>,
    /// Σ_{e∋v} B(v,e) − 1 per vertex.
    pub vertex_sums: Vec<f64>,
    /// Relative edge residual (X_e − α)/α per edge, where X_e is
    /// w(e)^{p−r}·Π B(v,e) (p ≥ r) or m^{r−p}·Π B(v,e) (p < r).
    pub edge_products: Vec<f64>,
    /// Per-vertex relative spread (max − min)/max of w(e)/B(v,e); 0 at
    /// isolated vertices, empty when there are no weights.
    pub consistency: Vec<f64>,
}

impl Residuals {
    pub fn max_vertex_sum(&self) -> f64 {
        crate::linalg::max_abs(&self.vertex_sums)
    }

    pub fn max_edge_product(&self) -> f64 {
        crate::linalg::max_abs(&self.edge_products)
    }

    pub fn max_consistency(&self) -> f64 {
        crate::linalg::max_abs(&self.consistency)
    }

    /// Largest absolute violation over the three defining conditions.
    pub fn max_condition(&self) -> f64 {
        self.weight_sum
            .map_or(0.0, f64::abs)
            .max(self.max_vertex_sum())
            .max(self.max_edge_product())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelingVerdict {
    pub class: LabelClass,
    pub consistent: bool,
    pub residuals: Residuals,
    pub tol: f64,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidValue { what: "tolerance", requirement: "finite and non-negative", value: tol })
    }
}

fn ensure_same_shape(g: &UniformHypergraph, l: &Labeling) -> Result<()> {
    if l.r != g.r() || l.weights.len() != g.m() || l.corners.len() != g.m() * g.r() {
        return Err(Error::SupportMismatch(format!(
            "labeling has {} weights, {} corners (r = {}); hypergraph has m = {}, r = {}",
            l.weights.len(),
            l.corners.len(),
            l.r,
            g.m(),
            g.r()
        )));
    }
    Ok(())
}

fn evaluate(g: &UniformHypergraph, l: &Labeling, tol: f64) -> LabelingVerdict {
    let r = g.r();
    let p = l.p;
    let weight_sum = compensated_sum(l.weights.iter().copied()) - 1.0;

    let vertex_sums: Vec<f64> = (0..g.n())
        .map(|v| {
            compensated_sum(g.incidences(v).iter().map(|inc| l.corners[inc.edge * r + inc.slot])) - 1.0
        })
        .collect();

    let edge_products: Vec<f64> = (0..g.m())
        .map(|e| {
            let prod: f64 = l.corners_of(e).iter().product();
            (powf(l.weights[e], p - r as f64) * prod - l.alpha) / l.alpha
        })
        .collect();

    let consistency: Vec<f64> = (0..g.n())
        .map(|v| {
            let (lo, hi) = g.incidences(v).iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), inc| {
                let ratio = l.weights[inc.edge] / l.corners[inc.edge * r + inc.slot];
                (lo.min(ratio), hi.max(ratio))
            });
            if hi > 0.0 { (hi - lo) / hi } else { 0.0 }
        })
        .collect();

    let consistent = consistency.iter().all(|&s| s <= tol);
    let class = classify_signed(Some(weight_sum), &vertex_sums, &edge_products, tol);
    LabelingVerdict {
        class,
        consistent,
        residuals: Residuals { weight_sum: Some(weight_sum), vertex_sums, edge_products, consistency },
        tol,
    }
}

/// Applies the three definitions to signed residuals. The "upper-bound"
/// direction is (weight ≤, vertex ≤, edge ≥).
fn classify_signed(weight_sum: Option<f64>, vertex: &[f64], edge: &[f64], tol: f64) -> LabelClass {
    let ws = weight_sum.unwrap_or(0.0);
    let normal = ws.abs() <= tol
        && vertex.iter().all(|d| d.abs() <= tol)
        && edge.iter().all(|d| d.abs() <= tol);
    if normal {
        return LabelClass::Normal;
    }
    let sub = ws <= tol && vertex.iter().all(|&d| d <= tol) && edge.iter().all(|&d| d >= -tol);
    if sub {
        let slack = vertex
            .iter()
            .map(|d| -d)
            .chain(edge.iter().copied())
            .fold(-ws, f64::max);
        return if slack > STRICT_BAND * tol {
            LabelClass::StrictlySubnormal
        } else {
            LabelClass::Subnormal
        };
    }
    let sup = ws >= -tol && vertex.iter().all(|&d| d >= -tol) && edge.iter().all(|&d| d <= tol);
    if sup {
        let slack = vertex
            .iter()
            .copied()
            .chain(edge.iter().map(|d| -d))
            .fold(ws, f64::max);
        return if slack > STRICT_BAND * tol {
            LabelClass::StrictlySupernormal
        } else {
            LabelClass::Supernormal
        };
    }
    LabelClass::None
}

/// Classifies a labeling against the normal, subnormal and supernormal
/// definitions and checks consistency.
///
/// Requires p ≥ r; p = r is the classical spectral-radius case, where the
/// weights drop out of condition 3 and α = ρ(G)^{−r}.
pub fn classify_labeling(g: &UniformHypergraph, l: &Labeling, tol: f64) -> Result<LabelingVerdict> {
    check_tol(tol)?;
    ensure_same_shape(g, l)?;
    if l.p < g.r() as f64 {
        return Err(Error::precondition("classify_labeling", "p ≥ r (use classify_labeling_sub_r for p < r)"));
    }
    Ok(evaluate(g, l, tol))
}

/// Checks only whether `l` is a consistent α-normal labeling, which is
/// meaningful for every p ≥ 1. Anything short of normal is reported as
/// [`LabelClass::None`].
pub fn verify_normal_certificate(g: &UniformHypergraph, l: &Labeling, tol: f64) -> Result<LabelingVerdict> {
    check_tol(tol)?;
    ensure_same_shape(g, l)?;
    let mut verdict = evaluate(g, l, tol);
    if verdict.class != LabelClass::Normal {
        verdict.class = LabelClass::None;
    }
    Ok(verdict)
}

/// The p < r subnormal conditions: Σ_{e∋v} B(v,e) ≤ 1 and
/// m^{r−p}·Π_{v∈e} B(v,e) ≥ α. A pass certifies
/// λ^(p)(G) ≤ (r/m)^{1−r/p}·α^{−1/p} (see [`sub_r_upper_bound`]).
///
/// The verdict is either `Subnormal` or `None`; `consistent` is always
/// false since no weights are involved.
pub fn classify_labeling_sub_r(
    g: &UniformHypergraph,
    corners: &[f64],
    p: f64,
    alpha: f64,
    tol: f64,
) -> Result<LabelingVerdict> {
    check_tol(tol)?;
    check_exponent(p)?;
    if p >= g.r() as f64 {
        return Err(Error::precondition("classify_labeling_sub_r", "1 ≤ p < r"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidValue { what: "alpha", requirement: "positive", value: alpha });
    }
    check_corners(g, corners)?;
    let r = g.r();
    let scale = powf(g.m() as f64, r as f64 - p);
    let vertex_sums: Vec<f64> = (0..g.n())
        .map(|v| compensated_sum(g.incidences(v).iter().map(|inc| corners[inc.edge * r + inc.slot])) - 1.0)
        .collect();
    let edge_products: Vec<f64> = corners
        .chunks_exact(r)
        .map(|row| (scale * row.iter().product::<f64>() - alpha) / alpha)
        .collect();
    let pass = vertex_sums.iter().all(|&d| d <= tol) && edge_products.iter().all(|&d| d >= -tol);
    Ok(LabelingVerdict {
        class: if pass { LabelClass::Subnormal } else { LabelClass::None },
        consistent: false,
        residuals: Residuals { weight_sum: None, vertex_sums, edge_products, consistency: Vec::new() },
        tol,
    })
}

/// (r/m)^{1−r/p} · α^{−1/p}, the upper bound from a p < r subnormal labeling.
pub fn sub_r_upper_bound(alpha: f64, r: usize, m: usize, p: f64) -> f64 {
    let r = r as f64;
    powf(r / m as f64, 1.0 - r / p) * powf(alpha, -1.0 / p)
}

/// r^{1−r/p} α^{−1/p}, valid for every p ≥ 1.
pub(crate) fn lambda_alpha_relation(alpha: f64, r: usize, p: f64) -> f64 {
    let r = r as f64;
    powf(r, 1.0 - r / p) * powf(alpha, -1.0 / p)
}

/// λ = r^{1−r/p} · α^{−1/p}, the λ certified by a consistent α-normal
/// labeling. Defined here for p ≥ r.
pub fn lambda_from_alpha(alpha: f64, r: usize, p: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidValue { what: "alpha", requirement: "positive", value: alpha });
    }
    if !(p >= r as f64) || !p.is_finite() {
        return Err(Error::precondition("lambda_from_alpha", "p ≥ r"));
    }
    Ok(lambda_alpha_relation(alpha, r, p))
}

/// α = r^{p−r} / λ^p, the inverse of [`lambda_from_alpha`].
pub fn alpha_from_lambda(lambda: f64, r: usize, p: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidValue { what: "lambda", requirement: "positive", value: lambda });
    }
    if !(p >= r as f64) || !p.is_finite() {
        return Err(Error::precondition("alpha_from_lambda", "p ≥ r"));
    }
    Ok(powf(r as f64, p - r as f64) / powf(lambda, p))
}

/// A nonnegative vector together with its exponent p.
#[derive(Debug, Clone, PartialEq)]
pub struct PVector {
    values: Vec<f64>,
    p: f64,
}

impl PVector {
    /// Normalizes `values` onto the unit l^p sphere.
    pub fn new(values: Vec<f64>, p: f64) -> Result<Self> {
        check_exponent(p)?;
        if let Some(&v) = values.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidValue { what: "vector entry", requirement: "finite and ≥ 0", value: v });
        }
        let norm = lp_norm(&values, p);
        if norm == 0.0 {
            return Err(Error::InvalidValue { what: "vector norm", requirement: "nonzero", value: 0.0 });
        }
        let values = values.into_iter().map(|v| v / norm).collect();
        Ok(PVector { values, p })
    }

    /// n^{−1/p} in every coordinate.
    pub fn uniform(n: usize, p: f64) -> Result<Self> {
        Self::new(vec![1.0; n], p)
    }

    /// Wraps values that are already (approximately) on the sphere.
    pub(crate) fn from_raw(values: Vec<f64>, p: f64) -> Self {
        PVector { values, p }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm(&self) -> f64 {
        lp_norm(&self.values, self.p)
    }
}

/// Builds B(v,e) = Π_{u∈e} x_u / (λ x_v^p), w(e) = r Π_{u∈e} x_u / λ and
/// α = r^{p−r}/λ^p from an eigenpair. When (λ, x) solves the eigenequation
/// the result is consistently α-normal.
///
/// Works for any p ≥ 1; for p < r it is applied to the induced
/// sub-hypergraph on the support of a critical point.
pub fn labeling_from_eigenvector(g: &UniformHypergraph, x: &PVector, lambda: f64) -> Result<Labeling> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidValue { what: "lambda", requirement: "positive", value: lambda });
    }
    if x.len() != g.n() {
        return Err(Error::SupportMismatch(format!("vector of length {} for n = {}", x.len(), g.n())));
    }
    let xs = x.values();
    let p = x.p();
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 0 && !(xs[v] > 0.0)) {
        return Err(Error::ZeroEntry { vertex: v });
    }
    let r = g.r();
    let mut weights = Vec::with_capacity(g.m());
    let mut corners = Vec::with_capacity(g.m() * r);
    for edge in g.edges() {
        let prod: f64 = edge.iter().map(|&u| xs[u]).product();
        weights.push(r as f64 * prod / lambda);
        corners.extend(edge.iter().map(|&v| prod / (lambda * powf(xs[v], p))));
    }
    let alpha = powf(r as f64, p - r as f64) / powf(lambda, p);
    Labeling::new(g, p, alpha, weights, corners)
}

/// x_v = (w(e) / (r B(v,e)))^{1/p} for any edge e ∋ v.
///
/// The result is not renormalized: for a normal labeling its p-norm is
/// (Σ_e w(e))^{1/p}, so it lies on the unit sphere up to the weight-sum
/// residual.
pub fn eigenvector_from_labeling(g: &UniformHypergraph, l: &Labeling, tol: f64) -> Result<PVector> {
    check_tol(tol)?;
    ensure_same_shape(g, l)?;
    let r = g.r();
    let mut values = vec![0.0; g.n()];
    for (v, slot) in values.iter_mut().enumerate() {
        let incs = g.incidences(v);
        let Some(first) = incs.first() else {
            return Err(Error::IsolatedVertex { vertex: v });
        };
        let ratio = |inc: &crate::hypergraph::Incidence| {
            l.weights[inc.edge] / (r as f64 * l.corners[inc.edge * r + inc.slot])
        };
        let (lo, hi) = incs
            .iter()
            .map(ratio)
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), q| (lo.min(q), hi.max(q)));
        let spread = (hi - lo) / hi;
        if spread > tol {
            return Err(Error::Inconsistent { vertex: v, spread });
        }
        *slot = powf(ratio(first), 1.0 / l.p);
    }
    Ok(PVector::from_raw(values, l.p))
}

/// Residuals of the weight-only system: per edge
/// w(e)^p / Π_{v∈e} Σ_{f∋v} w(f) − α, plus |Σ_e w(e) − 1|.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightResidual {
    pub edges: Vec<f64>,
    pub sum: f64,
}

impl WeightResidual {
    pub fn max_abs(&self) -> f64 {
        crate::linalg::max_abs(&self.edges).max(self.sum)
    }

    /// Edge residuals divided by α, combined with the sum residual.
    pub fn max_relative(&self, alpha: f64) -> f64 {
        (crate::linalg::max_abs(&self.edges) / alpha).max(self.sum)
    }
}

pub fn weight_only_residual(g: &UniformHypergraph, weights: &[f64], alpha: f64, p: f64) -> Result<WeightResidual> {
    if weights.len() != g.m() {
        return Err(Error::SupportMismatch(format!("{} weights for {} edges", weights.len(), g.m())));
    }
    let loads = vertex_loads(g, weights);
    let edges = g
        .edges()
        .enumerate()
        .map(|(e, edge)| {
            let denom: f64 = edge.iter().map(|&v| loads[v]).product();
            powf(weights[e], p) / denom - alpha
        })
        .collect();
    let sum = (compensated_sum(weights.iter().copied()) - 1.0).abs();
    Ok(WeightResidual { edges, sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn single_edge(r: usize) -> UniformHypergraph {
        UniformHypergraph::new(r, r, [(0..r).collect::<Vec<_>>()]).unwrap()
    }

    fn graph(r: usize, n: usize, edges: &[&[usize]]) -> UniformHypergraph {
        UniformHypergraph::new(r, n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn unit_labeling_of_single_edge_is_normal_for_all_p() {
        let g = single_edge(3);
        for p in [3.5, 5.0, 9.0] {
            let l = Labeling::new(&g, p, 1.0, vec![1.0], vec![1.0; 3]).unwrap();
            let v = classify_labeling(&g, &l, DEFAULT_TOL).unwrap();
            assert_eq!(v.class, LabelClass::Normal);
            assert!(v.consistent);
        }
    }

    #[test]
    fn support_mismatch_is_rejected() {
        let g = single_edge(3);
        assert!(matches!(
            Labeling::new(&g, 4.0, 1.0, vec![1.0], vec![1.0, 0.0, 1.0]),
            Err(Error::SupportMismatch(_))
        ));
        assert!(Labeling::new(&g, 4.0, 1.0, vec![1.0, 1.0], vec![1.0; 3]).is_err());
        assert!(Labeling::from_rows(&g, 4.0, 1.0, vec![1.0], &[vec![1.0, 1.0]]).is_err());
        let other = single_edge(2);
        let l = Labeling::new(&g, 4.0, 1.0, vec![1.0], vec![1.0; 3]).unwrap();
        assert!(classify_labeling(&other, &l, 1e-8).is_err());
    }

    #[test]
    fn classify_rejects_p_below_r() {
        let g = single_edge(3);
        let l = Labeling::new(&g, 2.0, 1.0, vec![1.0], vec![1.0; 3]).unwrap();
        assert!(matches!(classify_labeling(&g, &l, 1e-8), Err(Error::Precondition { .. })));
        assert_eq!(verify_normal_certificate(&g, &l, 1e-8).unwrap().class, LabelClass::Normal);
    }

    #[test]
    fn sub_and_super_classes() {
        let g = single_edge(2);
        let base = Labeling::new(&g, 4.0, 1.0, vec![1.0], vec![1.0; 2]).unwrap();
        // Lower α keeps conditions 1 and 2 tight, condition 3 slack upwards.
        let sub = classify_labeling(&g, &base.with_alpha(0.5).unwrap(), 1e-8).unwrap();
        assert_eq!(sub.class, LabelClass::StrictlySubnormal);
        let sup = classify_labeling(&g, &base.with_alpha(2.0).unwrap(), 1e-8).unwrap();
        assert_eq!(sup.class, LabelClass::StrictlySupernormal);
        // Slack between tol and 10·tol: weak class only.
        let weak = classify_labeling(&g, &base.with_alpha(1.0 - 5e-8).unwrap(), 1e-8).unwrap();
        assert_eq!(weak.class, LabelClass::Subnormal);
        // Mixed directions.
        let mixed = Labeling::new(&g, 4.0, 1.0, vec![1.0], vec![0.5, 2.5]).unwrap();
        assert_eq!(classify_labeling(&g, &mixed, 1e-8).unwrap().class, LabelClass::None);
    }

    #[test]
    fn sub_r_single_graph_edge() {
        let g = single_edge(2);
        let v = classify_labeling_sub_r(&g, &[0.5, 0.5], 1.0, 0.25, 1e-12).unwrap();
        assert_eq!(v.class, LabelClass::Subnormal);
        let v = classify_labeling_sub_r(&g, &[0.5, 0.5], 1.0, 0.3, 1e-12).unwrap();
        assert_eq!(v.class, LabelClass::None);
        assert!(classify_labeling_sub_r(&g, &[0.5, 0.5], 2.0, 0.25, 1e-12).is_err());
    }

    #[test]
    fn lambda_alpha_round_trip_examples() {
        assert_relative_eq!(lambda_from_alpha(1.0, 3, 6.0).unwrap(), 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(alpha_from_lambda(3.0, 4, 4.0).unwrap(), 1.0 / 81.0, epsilon = 1e-15);
        assert_relative_eq!(alpha_from_lambda(2.0, 2, 4.0).unwrap(), 0.25, epsilon = 1e-15);
        let lam = powf(3.0, 1.0 - 3.0 / 6.0);
        assert_relative_eq!(alpha_from_lambda(lam, 3, 6.0).unwrap(), 1.0, epsilon = 1e-14);
        for (alpha, r, p) in [(0.3, 3, 5.0), (1e-4, 4, 6.0), (2.5, 2, 2.5)] {
            let back = alpha_from_lambda(lambda_from_alpha(alpha, r, p).unwrap(), r, p).unwrap();
            assert_relative_eq!(back, alpha, max_relative = 1e-14);
        }
        assert!(lambda_from_alpha(1.0, 3, 2.0).is_err());
        assert!(alpha_from_lambda(-1.0, 3, 4.0).is_err());
    }

    #[test]
    fn single_edge_eigenvector_gives_unit_labeling() {
        let g = single_edge(3);
        let p = 5.0;
        let x = PVector::uniform(3, p).unwrap();
        let lam = powf(3.0, 1.0 - 3.0 / p);
        let l = labeling_from_eigenvector(&g, &x, lam).unwrap();
        assert_relative_eq!(l.weights()[0], 1.0, epsilon = 1e-14);
        for &b in l.corners() {
            assert_relative_eq!(b, 1.0, epsilon = 1e-14);
        }
        let back = eigenvector_from_labeling(&g, &l, 1e-12).unwrap();
        for (a, b) in back.values().iter().zip(x.values()) {
            assert_relative_eq!(a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn eigenvector_conversion_errors() {
        let g = graph(2, 3, &[&[0, 1]]);
        let x = PVector::new(vec![1.0, 0.0, 1.0], 3.0).unwrap();
        assert!(matches!(labeling_from_eigenvector(&g, &x, 1.0), Err(Error::ZeroEntry { vertex: 1 })));
        let x = PVector::new(vec![1.0, 1.0, 0.0], 3.0).unwrap();
        assert!(labeling_from_eigenvector(&g, &x, 0.0).is_err());
        let l = labeling_from_eigenvector(&g, &x, 1.0).unwrap();
        assert!(matches!(eigenvector_from_labeling(&g, &l, 1e-8), Err(Error::IsolatedVertex { vertex: 2 })));

        let path = graph(2, 3, &[&[0, 1], &[1, 2]]);
        let skew = Labeling::new(&path, 3.0, 1.0, vec![0.5, 0.5], vec![1.0, 0.2, 0.8, 1.0]).unwrap();
        assert!(matches!(eigenvector_from_labeling(&path, &skew, 1e-8), Err(Error::Inconsistent { vertex: 1, .. })));
    }

    #[test]
    fn non_eigen_vector_is_not_certified() {
        let path = graph(2, 3, &[&[0, 1], &[1, 2]]);
        let x = PVector::new(vec![1.0, 2.0, 3.0], 3.0).unwrap();
        let lam = {
            let v = x.values();
            2.0 * (v[0] * v[1] + v[1] * v[2])
        };
        let l = labeling_from_eigenvector(&path, &x, lam).unwrap();
        let verdict = classify_labeling(&path, &l, 1e-8).unwrap();
        // Consistency holds by construction; the row sums do not.
        assert!(verdict.consistent);
        assert_ne!(verdict.class, LabelClass::Normal);
        assert!(verdict.residuals.max_vertex_sum() > 1e-3);
    }

    #[test]
    fn from_weights_is_consistent() {
        let path = graph(2, 3, &[&[0, 1], &[1, 2]]);
        let l = Labeling::from_weights(&path, 3.0, 1.0, vec![0.25, 0.75]).unwrap();
        let v = classify_labeling(&path, &l, 1e-12).unwrap();
        assert!(v.consistent);
        assert_relative_eq!(v.residuals.max_vertex_sum(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn weight_residual_single_edge() {
        let g = single_edge(4);
        let res = weight_only_residual(&g, &[1.0], 1.0, 6.0).unwrap();
        assert_eq!(res.max_abs(), 0.0);
    }

    #[test]
    fn pvector_normalizes() {
        let x = PVector::new(vec![3.0, 4.0], 2.0).unwrap();
        assert_relative_eq!(x.values()[0], 0.6, epsilon = 1e-15);
        assert_relative_eq!(x.norm(), 1.0, epsilon = 1e-15);
        assert!(PVector::new(vec![0.0, 0.0], 2.0).is_err());
        assert!(PVector::new(vec![-1.0, 1.0], 2.0).is_err());
        assert!(PVector::new(vec![1.0], 0.5).is_err());
    }

    #[test]
    fn class_names_round_trip() {
        for c in [LabelClass::Normal, LabelClass::StrictlySupernormal, LabelClass::None] {
            assert_eq!(LabelClass::parse(c.as_str()), Some(c));
        }
    }
}
