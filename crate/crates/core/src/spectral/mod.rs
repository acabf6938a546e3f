//! Numerical computation of λ^(p)(G) = max { P_G(x) : x ≥ 0, ‖x‖_p = 1 }.
//!
//! * p ≥ r: normalized fixed-point iteration on the eigenequation
//!   s_i(x) = λ x_i^{p−1}, where s_i(x) = Σ_{e∋i} Π_{j∈e∖i} x_j.
//! * 1 ≤ p < r: multi-start monotone ascent on the sphere followed, for small
//!   n, by an exhaustive search over induced sub-hypergraphs that turns the
//!   best critical point into a checkable certificate.
//!
//! [`solve_weight_system`] solves the orbit-reduced weight system directly.

mod ascent;
mod fixed_point;
mod newton;
mod options;
mod rng;
mod subgraph;
mod weights;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float::{compensated_sum, powf, CompensatedSum};
use crate::hypergraph::UniformHypergraph;
use crate::labeling::PVector;

pub use options::SolverOptions;
pub use subgraph::{certificate_search_sub_r, SubRankCertificate};
pub use weights::{solve_weight_system, WeightSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    FixedPoint,
    Ascent,
    CertificateSearch,
    /// Closed form: no edges, or r = 1.
    Trivial,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::FixedPoint => "fixed-point",
            Method::Ascent => "ascent",
            Method::CertificateSearch => "certificate-search",
            Method::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub lambda: f64,
    /// Eigenvector estimate on the unit l^p sphere (all zero when m = 0).
    pub x: Vec<f64>,
    pub p: f64,
    /// max over the support of |s_i(x) − λ x_i^{p−1}|.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Vertices with x_i > 0.
    pub support: Vec<usize>,
    pub method: Method,
}

impl SpectralResult {
    pub fn vector(&self) -> PVector {
        PVector::from_raw(self.x.clone(), self.p)
    }

    fn build(g: &UniformHypergraph, p: f64, x: Vec<f64>, iterations: usize, converged: bool, method: Method) -> Self {
        let lambda = polynomial_form(g, &x);
        let residual = eigen_residual(g, &x, lambda, p);
        let support = support_of(&x);
        SpectralResult { lambda, x, p, residual, iterations, converged, support, method }
    }
}

/// P_G(x) = r · Σ_e Π_{v∈e} x_v, summed in edge order with compensation.
///
/// # Panics
///
/// If `x.len() != g.n()`.
pub fn polynomial_form(g: &UniformHypergraph, x: &[f64]) -> f64 {
    assert_eq!(x.len(), g.n(), "vector length must equal the vertex count");
    let sum = compensated_sum(g.edges().map(|e| e.iter().map(|&v| x[v]).product::<f64>()));
    g.r() as f64 * sum
}

/// s_i(x) = Σ_{e∋i} Π_{j∈e∖i} x_j for every vertex, so that
/// ∂P_G/∂x_i = r·s_i and Σ_i x_i s_i = P_G(x).
pub fn eigen_sums(g: &UniformHypergraph, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; g.n()];
    eigen_sums_into(g, x, &mut out);
    out
}

pub(crate) fn eigen_sums_into(g: &UniformHypergraph, x: &[f64], out: &mut [f64]) {
    let r = g.r();
    let mut acc = vec![CompensatedSum::default(); g.n()];
    let mut prefix = vec![1.0; r + 1];
    for edge in g.edges() {
        for (k, &v) in edge.iter().enumerate() {
            prefix[k + 1] = prefix[k] * x[v];
        }
        let mut suffix = 1.0;
        for k in (0..r).rev() {
            acc[edge[k]].add(prefix[k] * suffix);
            suffix *= x[edge[k]];
        }
    }
    for (o, a) in out.iter_mut().zip(&acc) {
        *o = a.value();
    }
}

/// max over {i : x_i > 0} of |s_i(x) − λ x_i^{p−1}|.
pub fn eigen_residual(g: &UniformHypergraph, x: &[f64], lambda: f64, p: f64) -> f64 {
    let s = eigen_sums(g, x);
    residual_from_sums(&s, x, lambda, p)
}

pub(crate) fn residual_from_sums(s: &[f64], x: &[f64], lambda: f64, p: f64) -> f64 {
    s.iter()
        .zip(x)
        .filter(|(_, &xi)| xi > 0.0)
        .map(|(&si, &xi)| (si - lambda * powf(xi, p - 1.0)).abs())
        .fold(0.0, f64::max)
}

pub(crate) fn support_of(x: &[f64]) -> Vec<usize> {
    x.iter().enumerate().filter(|(_, &v)| v > 0.0).map(|(i, _)| i).collect()
}

pub(crate) fn normalize(x: &mut [f64], p: f64) {
    let norm = crate::float::lp_norm(x, p);
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

fn check_p(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidValue { what: "p", requirement: "a finite real ≥ 1", value: p })
    }
}

/// Computes λ^(p)(G) and a maximizing vector.
///
/// For p > r the hypergraph must have no isolated vertices. A run that hits
/// `max_iter` returns its best iterate with `converged = false`. For p < r the
/// result is only marked converged when the exhaustive sub-hypergraph search
/// (n ≤ `subgraph_limit`) confirms it.
pub fn solve_p_spectral(g: &UniformHypergraph, p: f64, opts: &SolverOptions) -> Result<SpectralResult> {
    check_p(p)?;
    opts.validate()?;
    let n = g.n();
    let r = g.r();
    if g.m() == 0 {
        return Ok(SpectralResult {
            lambda: 0.0,
            x: vec![0.0; n],
            p,
            residual: 0.0,
            iterations: 0,
            converged: true,
            support: Vec::new(),
            method: Method::Trivial,
        });
    }
    if p > r as f64 {
        if let Some(&v) = g.isolated_vertices().first() {
            return Err(Error::IsolatedVertex { vertex: v });
        }
    }
    if r == 1 {
        // P(x) = Σ_{v∈E} x_v, maximized by the uniform vector on E.
        let mut x = vec![0.0; n];
        for e in g.edges() {
            x[e[0]] = 1.0;
        }
        normalize(&mut x, p);
        return Ok(SpectralResult::build(g, p, x, 0, true, Method::Trivial));
    }
    if p >= r as f64 {
        Ok(fixed_point::solve(g, p, opts))
    } else {
        ascent::solve(g, p, opts)
    }
}

/// (Σ_i λ_i^{p/(p−r)})^{(p−r)/p}: λ^(p) of a disjoint union from the λ^(p)
/// of its components, for p > r.
pub fn compose_components(lambdas: &[f64], p: f64, r: usize) -> Result<f64> {
    if !(p > r as f64) || !p.is_finite() {
        return Err(Error::precondition("compose_components", "p > r (use compose_components_max for p ≤ r)"));
    }
    check_positive(lambdas)?;
    let q = p / (p - r as f64);
    Ok(powf(compensated_sum(lambdas.iter().map(|&l| powf(l, q))), 1.0 / q))
}

/// max_i λ_i, the composition rule for 1 ≤ p ≤ r.
pub fn compose_components_max(lambdas: &[f64]) -> Result<f64> {
    check_positive(lambdas)?;
    Ok(lambdas.iter().copied().fold(0.0, f64::max))
}

fn check_positive(lambdas: &[f64]) -> Result<()> {
    if lambdas.is_empty() {
        return Err(Error::precondition("component composition", "at least one component"));
    }
    match lambdas.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        Some(&l) => Err(Error::InvalidValue { what: "component lambda", requirement: "positive", value: l }),
        None => Ok(()),
    }
}
