//! Degree and weight bounds, p-sweeps, and numerical checks of the
//! monotonicity and convexity properties of λ^(p) as a function of p.

use alloc::vec::Vec;

use crate::constructions::{extension_upper, extensions_enumerate, power_lambda};
use crate::error::{Error, Result};
use crate::float::{ln, powf};
use crate::hypergraph::UniformHypergraph;
use crate::spectral::{solve_p_spectral, SolverOptions};

/// Slack of the monotonicity and convexity checks. The checks compare
/// logarithms, so this is a relative tolerance on the underlying values.
pub const CHECK_SLACK: f64 = 1e-7;

fn above_rank(op: &'static str, g: &UniformHypergraph, p: f64) -> Result<()> {
    if !(p > g.r() as f64) || !p.is_finite() {
        return Err(Error::precondition(op, "p > r"));
    }
    if g.m() == 0 {
        return Err(Error::precondition(op, "at least one edge"));
    }
    Ok(())
}

/// (r Σ_e Π_{v∈e} d_v^{1/(p−r)})^{(p−r)/p} ≥ λ^(p)(G), for p > r.
pub fn degree_bound(g: &UniformHypergraph, p: f64) -> Result<f64> {
    above_rank("degree_bound", g, p)?;
    let r = g.r() as f64;
    let degrees = g.degrees().degrees;
    let exponent = 1.0 / (p - r);
    let sum = crate::float::compensated_sum(
        g.edges().map(|e| e.iter().map(|&v| powf(degrees[v] as f64, exponent)).product::<f64>()),
    );
    Ok(powf(r * sum, (p - r) / p))
}

/// (rm)^{1−r/p} · max_e Π_{v∈e} d_v^{1/p} ≥ λ^(p)(G), for p > r.
pub fn simple_degree_bound(g: &UniformHypergraph, p: f64) -> Result<f64> {
    above_rank("simple_degree_bound", g, p)?;
    let r = g.r() as f64;
    let degrees = g.degrees().degrees;
    let best = g
        .edges()
        .map(|e| e.iter().map(|&v| powf(degrees[v] as f64, 1.0 / p)).product::<f64>())
        .fold(0.0, f64::max);
    Ok(powf(r * g.m() as f64, 1.0 - r / p) * best)
}

/// [(αδ^r)^{1/(p−r)}, (αΔ^r)^{1/(p−r)}], which contains every weight of a
/// consistent α-normal labeling when p > r and δ ≥ 1.
pub fn weight_bounds(alpha: f64, min_degree: usize, max_degree: usize, r: usize, p: f64) -> Result<(f64, f64)> {
    if !(p > r as f64) {
        return Err(Error::precondition("weight_bounds", "p > r"));
    }
    if min_degree == 0 {
        return Err(Error::precondition("weight_bounds", "minimum degree ≥ 1 (no isolated vertices)"));
    }
    if min_degree > max_degree {
        return Err(Error::precondition("weight_bounds", "δ ≤ Δ"));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidValue { what: "alpha", requirement: "positive", value: alpha });
    }
    let e = 1.0 / (p - r as f64);
    let end = |d: usize| powf(alpha * powf(d as f64, r as f64), e);
    Ok((end(min_degree), end(max_degree)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Every grid point is > r.
    AboveRank,
    /// Every grid point is in [1, r).
    BelowRank,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub p: f64,
    pub lambda: f64,
    pub residual: f64,
    pub converged: bool,
    /// The value comes from a non-exhaustive search (p < r, n above the
    /// exhaustive limit).
    pub heuristic: bool,
    /// (λ/Δ)^{p/(p−r)}; only for p > r.
    pub f: Option<f64>,
    /// (λ/δ)^{p/(p−r)}; only for p > r and δ ≥ 1.
    pub g: Option<f64>,
    /// p · log λ.
    pub h: f64,
    /// (λ/(rm))^p.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve {
    pub r: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub mode: SweepMode,
    pub points: Vec<SweepPoint>,
}

impl SweepCurve {
    pub fn all_converged(&self) -> bool {
        self.points.iter().all(|pt| pt.converged)
    }
}

/// Seed of sweep point `index`, derived from the base seed.
pub fn point_seed(base: u64, index: usize) -> u64 {
    base ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Solves at every grid point. Non-convergence is recorded per point rather
/// than raised.
pub fn sweep(g: &UniformHypergraph, grid: &[f64], opts: &SolverOptions) -> Result<SweepCurve> {
    if grid.is_empty() {
        return Err(Error::precondition("sweep", "a non-empty grid"));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::precondition("sweep", "a strictly increasing grid"));
    }
    if g.m() == 0 {
        return Err(Error::precondition("sweep", "at least one edge"));
    }
    let r = g.r() as f64;
    let mode = if grid.iter().all(|&p| p > r && p.is_finite()) {
        SweepMode::AboveRank
    } else if grid.iter().all(|&p| (1.0..r).contains(&p)) {
        SweepMode::BelowRank
    } else {
        return Err(Error::precondition("sweep", "grid points all > r, or all in [1, r)"));
    };
    let profile = g.degrees();
    let heuristic = mode == SweepMode::BelowRank && g.n() > opts.subgraph_limit;
    let rm = r * g.m() as f64;
    let mut points = Vec::with_capacity(grid.len());
    for (k, &p) in grid.iter().enumerate() {
        let local = SolverOptions { seed: point_seed(opts.seed, k), ..opts.clone() };
        let res = solve_p_spectral(g, p, &local)?;
        let lambda = res.lambda;
        let (f, gg) = match mode {
            SweepMode::AboveRank => {
                let e = p / (p - r);
                let f = powf(lambda / profile.max as f64, e);
                let gg = (profile.min > 0).then(|| powf(lambda / profile.min as f64, e));
                (Some(f), gg)
            }
            SweepMode::BelowRank => (None, None),
        };
        points.push(SweepPoint {
            p,
            lambda,
            residual: res.residual,
            converged: res.converged,
            heuristic,
            f,
            g: gg,
            h: p * ln(lambda),
            ratio: powf(lambda / rm, p),
        });
    }
    Ok(SweepCurve { r: g.r(), m: g.m(), min_degree: profile.min, max_degree: profile.max, mode, points })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    /// Largest violation found (≤ 0 means every comparison held outright).
    pub worst_violation: f64,
    /// Grid point where the worst violation occurs.
    pub at: Option<f64>,
    pub comparisons: usize,
    /// Reason the check did not run, if it did not.
    pub skipped: Option<&'static str>,
}

impl CheckReport {
    fn skipped(name: &'static str, reason: &'static str) -> Self {
        CheckReport { name, passed: true, worst_violation: 0.0, at: None, comparisons: 0, skipped: Some(reason) }
    }

    fn from_violations(name: &'static str, items: impl Iterator<Item = (f64, f64)>) -> Self {
        let mut worst = f64::NEG_INFINITY;
        let mut at = None;
        let mut comparisons = 0;
        for (violation, p) in items {
            comparisons += 1;
            if violation > worst {
                worst = violation;
                at = Some(p);
            }
        }
        if comparisons == 0 {
            return Self::skipped(name, "fewer grid points than the check needs");
        }
        CheckReport { name, passed: worst <= CHECK_SLACK, worst_violation: worst, at, comparisons, skipped: None }
    }
}

fn needs_above_rank(curve: &SweepCurve) -> Option<&'static str> {
    (curve.mode != SweepMode::AboveRank).then_some("requires a sweep with every p > r")
}

/// f non-decreasing and g non-increasing between consecutive points,
/// compared as logarithms.
pub fn check_monotone_f_g(curve: &SweepCurve) -> [CheckReport; 2] {
    if let Some(reason) = needs_above_rank(curve) {
        return [CheckReport::skipped("f non-decreasing", reason), CheckReport::skipped("g non-increasing", reason)];
    }
    let pts = &curve.points;
    let f = CheckReport::from_violations(
        "f non-decreasing",
        pts.windows(2).filter_map(|w| Some((ln(w[0].f?) - ln(w[1].f?), w[1].p))),
    );
    let g = if curve.min_degree == 0 {
        CheckReport::skipped("g non-increasing", "isolated vertices (δ = 0)")
    } else {
        CheckReport::from_violations(
            "g non-increasing",
            pts.windows(2).filter_map(|w| Some((ln(w[1].g?) - ln(w[0].g?), w[1].p))),
        )
    };
    [f, g]
}

/// (λ/(rm))^p non-increasing between consecutive points.
pub fn check_ratio_monotone(curve: &SweepCurve) -> CheckReport {
    if let Some(reason) = needs_above_rank(curve) {
        return CheckReport::skipped("ratio non-increasing", reason);
    }
    CheckReport::from_violations(
        "ratio non-increasing",
        curve.points.windows(2).map(|w| (ln(w[1].ratio) - ln(w[0].ratio), w[1].p)),
    )
}

/// Chord tests on consecutive triples: h(p) = p log λ convex in p, and
/// log λ convex in 1/p. The violation is value minus chord.
pub fn check_concavity(curve: &SweepCurve) -> [CheckReport; 2] {
    if let Some(reason) = needs_above_rank(curve) {
        return [CheckReport::skipped("h convex in p", reason), CheckReport::skipped("log λ convex in 1/p", reason)];
    }
    fn chord_gap(x: [f64; 3], y: [f64; 3]) -> f64 {
        let mu = (x[2] - x[1]) / (x[2] - x[0]);
        y[1] - (mu * y[0] + (1.0 - mu) * y[2])
    }
    let pts = &curve.points;
    let h = CheckReport::from_violations(
        "h convex in p",
        pts.windows(3).map(|w| (chord_gap([w[0].p, w[1].p, w[2].p], [w[0].h, w[1].h, w[2].h]), w[1].p)),
    );
    let inv = CheckReport::from_violations(
        "log λ convex in 1/p",
        pts.windows(3).map(|w| {
            let x = [1.0 / w[2].p, 1.0 / w[1].p, 1.0 / w[0].p];
            let y = [ln(w[2].lambda), ln(w[1].lambda), ln(w[0].lambda)];
            (chord_gap(x, y), w[1].p)
        }),
    );
    [h, inv]
}

/// Absolute slack of the sandwich inequalities.
pub const SANDWICH_SLACK: f64 = 1e-8;
/// Tolerance for the two equality endpoints.
pub const SANDWICH_EQUALITY: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichEntry {
    pub partition: Vec<Vec<usize>>,
    /// λ^{(p+1)}(H).
    pub lambda: f64,
    pub converged: bool,
    pub is_power: bool,
    pub is_join: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub p: f64,
    /// power_lambda(λ^(p)(G)): the value the generalized power attains.
    pub lower: f64,
    /// The join-based value attained by G*K_1.
    pub upper: f64,
    pub entries: Vec<SandwichEntry>,
    /// Every lower ≤ λ_H ≤ upper held within [`SANDWICH_SLACK`].
    pub ordering_holds: bool,
    /// The power meets `lower` and the one-class extension meets `upper`
    /// within [`SANDWICH_EQUALITY`].
    pub endpoints_hold: bool,
    /// Partitions other than all-singletons that also meet `lower`.
    pub other_lower_equalities: usize,
    pub passed: bool,
}

/// For every extension H of G, checks
/// power_lambda(λ^(p)(G)) ≤ λ^{(p+1)}(H) ≤ extension_upper(λ^{(p+1)}(G)).
pub fn extension_sandwich_check(g: &UniformHypergraph, p: f64, opts: &SolverOptions) -> Result<SandwichReport> {
    above_rank("extension_sandwich_check", g, p)?;
    let r = g.r();
    let base = solve_p_spectral(g, p, opts)?;
    let base1 = solve_p_spectral(g, p + 1.0, opts)?;
    let lower = power_lambda(base.lambda, r, p)?;
    let upper = extension_upper(base1.lambda, r, p)?;
    let mut entries = Vec::new();
    for ext in extensions_enumerate(g)? {
        let res = solve_p_spectral(&ext.graph, p + 1.0, opts)?;
        entries.push(SandwichEntry {
            is_power: ext.is_power(),
            is_join: ext.is_join_with_k1(),
            partition: ext.partition,
            lambda: res.lambda,
            converged: res.converged,
        });
    }
    let ordering_holds = entries
        .iter()
        .all(|e| e.lambda >= lower - SANDWICH_SLACK && e.lambda <= upper + SANDWICH_SLACK);
    let endpoints_hold = entries.iter().all(|e| {
        (!e.is_power || (e.lambda - lower).abs() <= SANDWICH_EQUALITY)
            && (!e.is_join || (e.lambda - upper).abs() <= SANDWICH_EQUALITY)
    });
    let other_lower_equalities = entries
        .iter()
        .filter(|e| !e.is_power && (e.lambda - lower).abs() <= SANDWICH_EQUALITY)
        .count();
    let converged = base.converged && base1.converged && entries.iter().all(|e| e.converged);
    Ok(SandwichReport {
        p,
        lower,
        upper,
        passed: ordering_holds && endpoints_hold && converged,
        entries,
        ordering_holds,
        endpoints_hold,
        other_lower_equalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grid_g1, grid_lambda, k_r_r, star_g2};
    use approx::assert_relative_eq;

    #[test]
    fn single_edge_bounds_are_tight() {
        for r in 2..=4 {
            let g = k_r_r(r).unwrap();
            let p = r as f64 + 1.5;
            let exact = powf(r as f64, 1.0 - r as f64 / p);
            assert_relative_eq!(degree_bound(&g, p).unwrap(), exact, max_relative = 1e-14);
            assert_relative_eq!(simple_degree_bound(&g, p).unwrap(), exact, max_relative = 1e-14);
            let (lo, hi) = weight_bounds(1.0, 1, 1, r, p).unwrap();
            assert_eq!((lo, hi), (1.0, 1.0));
        }
    }

    #[test]
    fn star_bounds_by_hand() {
        let g = star_g2();
        // Degrees: center 4, vertex 2 twice, the rest once.
        let p = 5.0;
        let e = 1.0 / (p - 3.0);
        let sum = 2.0 * powf(4.0, e) * powf(2.0, e) + 2.0 * powf(4.0, e);
        assert_relative_eq!(degree_bound(&g, p).unwrap(), powf(3.0 * sum, 2.0 / 5.0), max_relative = 1e-14);
        let simple = powf(12.0, 2.0 / 5.0) * powf(8.0, 1.0 / 5.0);
        assert_relative_eq!(simple_degree_bound(&g, p).unwrap(), simple, max_relative = 1e-14);
    }

    #[test]
    fn two_disjoint_triples_simple_bound() {
        let g = UniformHypergraph::new(3, 6, [[0, 1, 2], [3, 4, 5]]).unwrap();
        assert_relative_eq!(simple_degree_bound(&g, 6.0).unwrap(), 6f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn bound_preconditions() {
        let g = k_r_r(3).unwrap();
        assert!(degree_bound(&g, 3.0).is_err());
        assert!(weight_bounds(1.0, 0, 1, 3, 4.0).is_err());
        assert!(weight_bounds(1.0, 2, 1, 3, 4.0).is_err());
    }

    #[test]
    fn sweep_on_single_edge() {
        let g = k_r_r(3).unwrap();
        let grid = [3.5, 4.0, 5.0, 6.0, 8.0];
        let curve = sweep(&g, &grid, &SolverOptions::default()).unwrap();
        for pt in &curve.points {
            assert_relative_eq!(pt.lambda, powf(3.0, 1.0 - 3.0 / pt.p), max_relative = 1e-10);
            assert_relative_eq!(pt.f.unwrap(), 3.0, max_relative = 1e-9);
            assert_relative_eq!(pt.ratio, powf(3.0, -3.0), max_relative = 1e-9);
        }
        assert!(check_monotone_f_g(&curve).iter().all(|c| c.passed));
        assert!(check_ratio_monotone(&curve).passed);
        let conv = check_concavity(&curve);
        assert!(conv.iter().all(|c| c.passed && c.comparisons == 3));
        assert!(conv[0].worst_violation.abs() < 1e-9);
    }

    #[test]
    fn sweep_grid_validation() {
        let g = k_r_r(3).unwrap();
        let opts = SolverOptions::default();
        assert!(sweep(&g, &[], &opts).is_err());
        assert!(sweep(&g, &[5.0, 4.0], &opts).is_err());
        assert!(sweep(&g, &[2.0, 4.0], &opts).is_err());
        assert!(sweep(&g, &[3.0], &opts).is_err());
        let below = sweep(&g, &[1.0, 2.0], &opts).unwrap();
        assert_eq!(below.mode, SweepMode::BelowRank);
        assert!(below.points.iter().all(|pt| pt.f.is_none()));
        assert!(check_ratio_monotone(&below).skipped.is_some());
    }

    #[test]
    fn grid_sweep_matches_closed_form() {
        let curve = sweep(&grid_g1(), &[4.5, 5.0, 6.0, 8.0], &SolverOptions::default()).unwrap();
        for pt in &curve.points {
            assert_relative_eq!(pt.lambda, grid_lambda(pt.p), epsilon = 1e-8);
        }
    }

    #[test]
    fn detects_a_planted_violation() {
        let g = k_r_r(2).unwrap();
        let mut curve = sweep(&g, &[2.5, 3.0, 4.0], &SolverOptions::default()).unwrap();
        curve.points[1].ratio *= 2.0;
        assert!(!check_ratio_monotone(&curve).passed);
        curve.points[1].h += 1.0;
        let conv = check_concavity(&curve);
        assert!(!conv[0].passed);
        assert_eq!(conv[0].at, Some(3.0));
    }

    #[test]
    fn sandwich_on_path() {
        let g = UniformHypergraph::new(2, 3, [[0, 1], [1, 2]]).unwrap();
        let rep = extension_sandwich_check(&g, 4.0, &SolverOptions::default()).unwrap();
        assert_eq!(rep.entries.len(), 2);
        assert!(rep.passed, "{rep:?}");
        assert!(rep.lower < rep.upper);
    }

    #[test]
    fn sandwich_single_edge_collapses() {
        let rep = extension_sandwich_check(&k_r_r(3).unwrap(), 4.5, &SolverOptions::default()).unwrap();
        assert_eq!(rep.entries.len(), 1);
        assert!(rep.passed);
        assert_relative_eq!(rep.lower, rep.upper, max_relative = 1e-10);
    }
}
