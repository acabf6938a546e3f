//! p ≥ r: x ← ((1−θ) x^{p−1} + θ s(x)/λ̂)^{1/(p−1)}, renormalized, with
//! λ̂ = P_G(x). At a fixed point s_i = λ̂ x_i^{p−1}, which is the eigenequation.

use alloc::vec;

use super::rng::Starts;
use super::{eigen_sums_into, newton, normalize, polynomial_form, residual_from_sums, Method, SolverOptions, SpectralResult};
use crate::float::powf;
use crate::hypergraph::UniformHypergraph;

/// Consecutive non-improving iterations that trigger the θ = 0.5 fallback.
const OSCILLATION_WINDOW: usize = 10;

pub(super) fn solve(g: &UniformHypergraph, p: f64, opts: &SolverOptions) -> SpectralResult {
    let n = g.n();
    let mut x = if opts.random_init {
        Starts::new(opts.seed, 0).dirichlet(n, p)
    } else {
        vec![1.0; n]
    };
    normalize(&mut x, p);

    let mut s = vec![0.0; n];
    let mut theta = opts.damping;
    let mut best = x.clone();
    let mut best_residual = f64::INFINITY;
    let mut previous = f64::INFINITY;
    let mut stalled = 0;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iter {
        eigen_sums_into(g, &x, &mut s);
        let lambda = polynomial_form(g, &x);
        let residual = residual_from_sums(&s, &x, lambda, p);
        if residual < best_residual {
            best_residual = residual;
            best.copy_from_slice(&x);
        }
        if residual <= opts.tol {
            converged = true;
            break;
        }
        if residual >= previous {
            stalled += 1;
            if stalled >= OSCILLATION_WINDOW && theta > 0.5 {
                theta = 0.5;
                stalled = 0;
            }
        } else {
            stalled = 0;
        }
        previous = residual;

        for (xi, &si) in x.iter_mut().zip(&s) {
            let mixed = (1.0 - theta) * powf(*xi, p - 1.0) + theta * si / lambda;
            *xi = powf(mixed, 1.0 / (p - 1.0));
        }
        normalize(&mut x, p);
        iterations += 1;
    }

    if !converged {
        if let Some(polished) = newton::polish(g, p, &best) {
            let lambda = polynomial_form(g, &polished);
            if super::eigen_residual(g, &polished, lambda, p) < best_residual {
                best = polished;
            }
        }
    }
    let mut result = SpectralResult::build(g, p, best, iterations, false, Method::FixedPoint);
    result.converged = result.residual <= opts.tol;
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bipartite_graph_at_p_equal_r_needs_damping() {
        // A star K_{1,3} at p = r = 2: undamped power iteration oscillates
        // between the two sides; the fallback has to kick in.
        let g = UniformHypergraph::new(2, 4, [[0, 1], [0, 2], [0, 3]]).unwrap();
        let opts = SolverOptions::default();
        let res = solve(&g, 2.0, &opts);
        assert!(res.converged);
        assert_relative_eq!(res.lambda, 3f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn random_start_matches_uniform_start() {
        let g = UniformHypergraph::new(3, 5, [[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4]]).unwrap();
        let base = solve(&g, 4.5, &SolverOptions::default());
        for seed in 1..4 {
            let opts = SolverOptions { random_init: true, seed, ..SolverOptions::default() };
            let other = solve(&g, 4.5, &opts);
            assert!(other.converged);
            assert_relative_eq!(other.lambda, base.lambda, epsilon = 1e-10);
        }
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let g = UniformHypergraph::new(2, 4, [[0, 1], [1, 2], [2, 3]]).unwrap();
        let opts = SolverOptions { max_iter: 1, tol: 1e-300, ..SolverOptions::default() };
        let res = solve(&g, 3.0, &opts);
        assert!(!res.converged);
        assert!(res.lambda > 0.0);
    }
}
