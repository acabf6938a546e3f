//! The weight-only system for p > r:
//!
//!   w(e)^p / Π_{v∈e} D_v = α for every edge,  Σ_e w(e) = 1,
//!
//! with D_v = Σ_{f∋v} w(f). Weights are taken constant on the given edge
//! orbits and Newton's method runs in u_k = ln w_k, a = ln α, where each
//! orbit equation reads p·u_k − Σ_{v∈e_k} ln D_v − a = 0.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::SolverOptions;
use crate::error::{Error, Result};
use crate::float::{exp, ln};
use crate::hypergraph::UniformHypergraph;
use crate::labeling::weight_only_residual;
use crate::linalg::{max_abs, solve_in_place};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSolution {
    /// One weight per edge.
    pub weights: Vec<f64>,
    pub alpha: f64,
    /// max of |edge residual|/α and |Σw − 1| over all edges.
    pub residual: f64,
    pub iterations: usize,
}

const MAX_NEWTON: usize = 200;

/// Solves the orbit-reduced weight system. `orbits` must partition the edge
/// indices; the solution is validated on every edge afterwards, so a wrong
/// orbit guess is reported rather than returned.
pub fn solve_weight_system(
    g: &UniformHypergraph,
    orbits: &[Vec<usize>],
    p: f64,
    opts: &SolverOptions,
) -> Result<WeightSolution> {
    opts.validate()?;
    let r = g.r();
    if !(p > r as f64) || !p.is_finite() {
        return Err(Error::precondition("solve_weight_system", "p > r"));
    }
    let m = g.m();
    if m == 0 {
        return Err(Error::precondition("solve_weight_system", "at least one edge"));
    }
    let mut orbit_of = vec![usize::MAX; m];
    for (k, orbit) in orbits.iter().enumerate() {
        if orbit.is_empty() {
            return Err(Error::SupportMismatch(format!("orbit {k} is empty")));
        }
        for &e in orbit {
            if e >= m {
                return Err(Error::SupportMismatch(format!("orbit {k} names edge {e}, but m = {m}")));
            }
            if orbit_of[e] != usize::MAX {
                return Err(Error::SupportMismatch(format!("edge {e} appears in more than one orbit")));
            }
            orbit_of[e] = k;
        }
    }
    if let Some(e) = orbit_of.iter().position(|&k| k == usize::MAX) {
        return Err(Error::SupportMismatch(format!("edge {e} is in no orbit")));
    }

    let kk = orbits.len();
    let dim = kk + 1;
    let size: Vec<f64> = orbits.iter().map(|o| o.len() as f64).collect();
    // count[v][k]: edges of orbit k at v.
    let mut count = vec![0.0; g.n() * kk];
    for (e, edge) in g.edges().enumerate() {
        for &v in edge {
            count[v * kk + orbit_of[e]] += 1.0;
        }
    }
    let reps: Vec<&[usize]> = orbits.iter().map(|o| g.edge(o[0])).collect();

    let eval = |u: &[f64], a: f64| -> Vec<f64> {
        let w: Vec<f64> = u.iter().map(|&x| exp(x)).collect();
        let mut f = vec![0.0; dim];
        for (k, rep) in reps.iter().enumerate() {
            let logs: f64 = rep
                .iter()
                .map(|&v| ln((0..kk).map(|j| count[v * kk + j] * w[j]).sum::<f64>()))
                .sum();
            f[k] = p * u[k] - logs - a;
        }
        f[kk] = (0..kk).map(|k| size[k] * w[k]).sum::<f64>() - 1.0;
        f
    };

    let mut u = vec![ln(1.0 / m as f64); kk];
    let mut a = {
        let f = eval(&u, 0.0);
        f[..kk].iter().sum::<f64>() / kk as f64
    };
    let mut f = eval(&u, a);
    let mut norm = max_abs(&f);
    let mut iterations = 0;
    while iterations < MAX_NEWTON && norm > 1e-14 {
        let w: Vec<f64> = u.iter().map(|&x| exp(x)).collect();
        let mut jac = vec![0.0; dim * dim];
        for (k, rep) in reps.iter().enumerate() {
            jac[k * dim + k] += p;
            for &v in rep.iter() {
                let load: f64 = (0..kk).map(|j| count[v * kk + j] * w[j]).sum();
                for j in 0..kk {
                    jac[k * dim + j] -= count[v * kk + j] * w[j] / load;
                }
            }
            jac[k * dim + kk] = -1.0;
        }
        for k in 0..kk {
            jac[kk * dim + k] = size[k] * w[k];
        }
        let mut delta: Vec<f64> = f.iter().map(|v| -v).collect();
        if solve_in_place(&mut jac, &mut delta, dim).is_none() {
            return Err(Error::NoConvergence { op: "solve_weight_system", message: "singular Jacobian".into() });
        }
        let mut t = 1.0;
        loop {
            let cand_u: Vec<f64> = (0..kk).map(|k| u[k] + t * delta[k]).collect();
            let cand_a = a + t * delta[kk];
            let cand_f = eval(&cand_u, cand_a);
            let cand_norm = max_abs(&cand_f);
            if cand_norm.is_finite() && cand_norm < norm {
                u = cand_u;
                a = cand_a;
                f = cand_f;
                norm = cand_norm;
                break;
            }
            t *= 0.5;
            if t < 1e-10 {
                return Err(Error::NoConvergence {
                    op: "solve_weight_system",
                    message: format!("line search failed at residual {norm:e}"),
                });
            }
        }
        iterations += 1;
    }
    if norm > 1e-10 {
        return Err(Error::NoConvergence {
            op: "solve_weight_system",
            message: format!("Newton stopped at residual {norm:e} after {iterations} steps"),
        });
    }

    let weights: Vec<f64> = (0..m).map(|e| exp(u[orbit_of[e]])).collect();
    let alpha = exp(a);
    let check = weight_only_residual(g, &weights, alpha, p)?;
    let residual = check.max_relative(alpha);
    let bound = opts.tol.max(1e-12);
    if residual > bound {
        return Err(Error::NoConvergence {
            op: "solve_weight_system",
            message: format!(
                "orbit-constant solution fails on the full edge set (relative residual {residual:e}); \
                 the orbit partition is probably not automorphism-invariant"
            ),
        });
    }
    Ok(WeightSolution { weights, alpha, residual, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn single_edge_has_unit_weight() {
        let g = UniformHypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        let sol = solve_weight_system(&g, &[vec![0]], 5.0, &SolverOptions::default()).unwrap();
        assert_relative_eq!(sol.weights[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(sol.alpha, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn orbit_partition_is_validated() {
        let g = UniformHypergraph::new(2, 3, [[0, 1], [1, 2]]).unwrap();
        let opts = SolverOptions::default();
        assert!(solve_weight_system(&g, &[vec![0]], 3.0, &opts).is_err());
        assert!(solve_weight_system(&g, &[vec![0, 1], vec![1]], 3.0, &opts).is_err());
        assert!(solve_weight_system(&g, &[vec![0, 5]], 3.0, &opts).is_err());
        assert!(solve_weight_system(&g, &[vec![0, 1]], 2.0, &opts).is_err());
        let sol = solve_weight_system(&g, &[vec![0, 1]], 3.0, &opts).unwrap();
        assert_relative_eq!(sol.weights[0], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn wrong_orbits_are_caught() {
        // Path with 3 edges: the end edges and the middle edge differ, so a
        // single orbit cannot satisfy every edge equation.
        let g = UniformHypergraph::new(2, 4, [[0, 1], [1, 2], [2, 3]]).unwrap();
        let opts = SolverOptions::default();
        assert!(matches!(
            solve_weight_system(&g, &[vec![0, 1, 2]], 3.0, &opts),
            Err(Error::NoConvergence { .. })
        ));
        let sol = solve_weight_system(&g, &[vec![0, 2], vec![1]], 3.0, &opts).unwrap();
        assert!(sol.residual < 1e-12);
    }
}
