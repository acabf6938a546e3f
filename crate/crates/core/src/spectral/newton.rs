//! Newton refinement of a near-critical point on its support.
//!
//! Unknowns are x restricted to the support and λ; the equations are
//! s_i(x) − λ x_i^{p−1} = 0 on the support and Σ x_i^p = 1.

use alloc::vec;
use alloc::vec::Vec;

use super::{normalize, polynomial_form, support_of};
use crate::float::powf;
use crate::hypergraph::UniformHypergraph;
use crate::linalg::{max_abs, solve_in_place};

const MAX_STEPS: usize = 60;
/// Dense solves beyond this many unknowns are not worth it.
const MAX_UNKNOWNS: usize = 400;

struct System<'a> {
    g: &'a UniformHypergraph,
    p: f64,
    support: Vec<usize>,
    /// local index of each vertex in the support, `usize::MAX` outside.
    local: Vec<usize>,
    /// Edges with every vertex in the support.
    edges: Vec<usize>,
}

impl System<'_> {
    fn residual(&self, x: &[f64], lambda: f64) -> Vec<f64> {
        let q = self.support.len();
        let mut f = vec![0.0; q + 1];
        for &e in &self.edges {
            let edge = self.g.edge(e);
            for (a, &va) in edge.iter().enumerate() {
                let prod: f64 = edge.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &vb)| x[vb]).product();
                f[self.local[va]] += prod;
            }
        }
        for (k, &v) in self.support.iter().enumerate() {
            f[k] -= lambda * powf(x[v], self.p - 1.0);
        }
        f[q] = self.support.iter().map(|&v| powf(x[v], self.p)).sum::<f64>() - 1.0;
        f
    }

    fn jacobian(&self, x: &[f64], lambda: f64) -> Vec<f64> {
        let q = self.support.len();
        let dim = q + 1;
        let mut jac = vec![0.0; dim * dim];
        for &e in &self.edges {
            let edge = self.g.edge(e);
            for (a, &va) in edge.iter().enumerate() {
                for (b, &vb) in edge.iter().enumerate() {
                    if a == b {
                        continue;
                    }
                    let prod: f64 = edge
                        .iter()
                        .enumerate()
                        .filter(|&(c, _)| c != a && c != b)
                        .map(|(_, &vc)| x[vc])
                        .product();
                    jac[self.local[va] * dim + self.local[vb]] += prod;
                }
            }
        }
        let p = self.p;
        for (k, &v) in self.support.iter().enumerate() {
            if p != 1.0 {
                jac[k * dim + k] -= lambda * (p - 1.0) * powf(x[v], p - 2.0);
            }
            jac[k * dim + q] = -powf(x[v], p - 1.0);
            jac[q * dim + k] = p * powf(x[v], p - 1.0);
        }
        jac
    }
}

/// Refines `x` (which must be on the unit sphere) towards a critical point
/// with the same support. Returns `None` if the system is singular, the
/// iterate leaves the positive orthant or nothing improves.
pub(super) fn polish(g: &UniformHypergraph, p: f64, x: &[f64]) -> Option<Vec<f64>> {
    let support = support_of(x);
    let q = support.len();
    if q == 0 || q + 1 > MAX_UNKNOWNS {
        return None;
    }
    let mut local = vec![usize::MAX; g.n()];
    for (k, &v) in support.iter().enumerate() {
        local[v] = k;
    }
    let edges = (0..g.m()).filter(|&e| g.edge(e).iter().all(|&v| local[v] != usize::MAX)).collect();
    let sys = System { g, p, support, local, edges };

    let mut x = x.to_vec();
    let mut lambda = polynomial_form(g, &x);
    let mut f = sys.residual(&x, lambda);
    let start = max_abs(&f);
    let mut norm = start;
    for _ in 0..MAX_STEPS {
        if norm <= 1e-15 * (1.0 + lambda) {
            break;
        }
        let mut jac = sys.jacobian(&x, lambda);
        let mut delta: Vec<f64> = f.iter().map(|v| -v).collect();
        solve_in_place(&mut jac, &mut delta, q + 1)?;
        let mut t = 1.0;
        let mut accepted = false;
        while t >= 1.0 / 1024.0 {
            let mut cand = x.clone();
            let mut positive = true;
            for (k, &v) in sys.support.iter().enumerate() {
                cand[v] = x[v] + t * delta[k];
                positive &= cand[v] > 0.0;
            }
            if positive {
                let cand_lambda = lambda + t * delta[q];
                let cand_f = sys.residual(&cand, cand_lambda);
                let cand_norm = max_abs(&cand_f);
                if cand_norm < norm {
                    x = cand;
                    lambda = cand_lambda;
                    f = cand_f;
                    norm = cand_norm;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if norm >= start {
        return None;
    }
    normalize(&mut x, p);
    Some(x)
}
