//! 1 ≤ p < r: monotone ascent of P_G on the nonnegative l^p sphere.
//!
//! With y = x^p on the simplex, the target t_i = x_i s_i(x)/λ is again on
//! the simplex and y ↦ t is an ascent direction (Cauchy–Schwarz gives
//! Σ x_i^{2−p} s_i² ≥ λ²). Steps y ← (1−a) y + a t are halved until P_G
//! does not decrease; at p = 1 the full step always works.

use alloc::vec;
use alloc::vec::Vec;

use super::rng::Starts;
use super::subgraph::{self, SearchHints};
use super::{eigen_sums_into, newton, normalize, polynomial_form, residual_from_sums, Method, SolverOptions, SpectralResult};
use crate::error::{Error, Result};
use crate::float::powf;
use crate::hypergraph::UniformHypergraph;

/// Iterations between stagnation checks.
const CHECK_EVERY: usize = 50;
const STAGNATION: f64 = 1e-15;
const MIN_STEP: f64 = 1.0 / 4096.0;

pub(crate) struct AscentOutcome {
    pub x: Vec<f64>,
    pub lambda: f64,
    pub iterations: usize,
}

/// Runs the ascent from `x` (on the unit sphere) until the residual is below
/// `tol`, progress stalls, or `max_iter` steps have been taken.
pub(crate) fn ascend(g: &UniformHypergraph, p: f64, mut x: Vec<f64>, tol: f64, max_iter: usize) -> AscentOutcome {
    let n = g.n();
    let mut s = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut t = vec![0.0; n];
    let mut cand = vec![0.0; n];
    let mut lambda = polynomial_form(g, &x);
    let mut checkpoint = lambda;
    let mut iterations = 0;
    loop {
        eigen_sums_into(g, &x, &mut s);
        let residual = residual_from_sums(&s, &x, lambda, p);
        if lambda <= 0.0 || residual <= tol || iterations >= max_iter {
            break;
        }
        for i in 0..n {
            y[i] = powf(x[i], p);
            t[i] = x[i] * s[i] / lambda;
        }
        let mut a = 1.0;
        let mut moved = false;
        while a >= MIN_STEP {
            for i in 0..n {
                cand[i] = powf((1.0 - a) * y[i] + a * t[i], 1.0 / p);
            }
            normalize(&mut cand, p);
            let next = polynomial_form(g, &cand);
            if next >= lambda {
                core::mem::swap(&mut x, &mut cand);
                lambda = next;
                moved = true;
                break;
            }
            a *= 0.5;
        }
        iterations += 1;
        if !moved {
            break;
        }
        if iterations % CHECK_EVERY == 0 {
            if lambda - checkpoint <= STAGNATION * lambda {
                break;
            }
            checkpoint = lambda;
        }
    }
    AscentOutcome { x, lambda, iterations }
}

/// Entries below this fraction of the largest one are treated as zero when
/// reading off a support.
pub(crate) const SUPPORT_CUTOFF: f64 = 1e-6;

/// Zeroes entries below the support cutoff and renormalizes.
pub(crate) fn trim(x: &[f64], p: f64) -> Vec<f64> {
    let max = x.iter().copied().fold(0.0, f64::max);
    let mut out: Vec<f64> = x.iter().map(|&v| if v > SUPPORT_CUTOFF * max { v } else { 0.0 }).collect();
    normalize(&mut out, p);
    out
}

/// Starting points in restart order: uniform, `restarts` random interior
/// points, then the uniform point on each single edge.
pub(crate) fn starts(g: &UniformHypergraph, p: f64, restarts: usize, seed: u64, stream: u64) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut out = Vec::with_capacity(1 + restarts + g.m());
    let mut uniform = vec![1.0; n];
    normalize(&mut uniform, p);
    out.push(uniform);
    let mut rng = Starts::new(seed, stream);
    for _ in 0..restarts {
        let mut x = rng.dirichlet(n, p);
        normalize(&mut x, p);
        out.push(x);
    }
    for edge in g.edges() {
        let mut x = vec![0.0; n];
        for &v in edge {
            x[v] = 1.0;
        }
        normalize(&mut x, p);
        out.push(x);
    }
    out
}

pub(super) fn solve(g: &UniformHypergraph, p: f64, opts: &SolverOptions) -> Result<SpectralResult> {
    let mut best: Option<AscentOutcome> = None;
    let mut iterations = 0;
    let mut finals = Vec::new();
    for x0 in starts(g, p, opts.restarts, opts.seed, 0) {
        let out = ascend(g, p, x0, opts.tol, opts.max_iter);
        iterations += out.iterations;
        finals.push(out.x.clone());
        // Strictly better replaces, so ties keep the lowest restart index.
        if best.as_ref().is_none_or(|b| out.lambda > b.lambda) {
            best = Some(out);
        }
    }
    let best = best.expect("at least the uniform start");
    let mut x = best.x;
    let mut lambda = best.lambda;

    // Read the support off the ascent and polish there.
    let trimmed = trim(&x, p);
    if let Some(polished) = newton::polish(g, p, &trimmed) {
        let value = polynomial_form(g, &polished);
        if value >= lambda * (1.0 - 1e-12) {
            x = polished;
            lambda = value;
        }
    }

    let hints = SearchHints { floor: lambda, finals };
    let tie = subgraph::tie_tolerance(opts.tol, lambda);
    match subgraph::search(g, p, opts, &hints) {
        Ok(cert) if cert.lambda >= lambda - tie => {
            let mut result = SpectralResult::build(g, p, cert.x, iterations, false, Method::CertificateSearch);
            result.converged = cert.exhaustive && result.residual <= opts.tol;
            Ok(result)
        }
        Ok(_) | Err(Error::NoCertificate(_)) => Ok(SpectralResult::build(g, p, x, iterations, false, Method::Ascent)),
        Err(e) => Err(e),
    }
}
