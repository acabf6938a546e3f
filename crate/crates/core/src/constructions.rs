//! Composite hypergraphs with closed-form p-spectral radii, and the worked
//! example fixtures.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float::powf;
use crate::hypergraph::UniformHypergraph;
use crate::labeling::Labeling;

/// G₁*G₂: edges e ∪ f for e ∈ E(G₁), f ∈ E(G₂), with G₂'s vertices shifted
/// by n₁.
pub fn join(g1: &UniformHypergraph, g2: &UniformHypergraph) -> Result<UniformHypergraph> {
    let shift = g1.n();
    let mut edges = Vec::with_capacity(g1.m() * g2.m());
    for e in g1.edges() {
        for f in g2.edges() {
            let mut edge = e.to_vec();
            edge.extend(f.iter().map(|&v| v + shift));
            edges.push(edge);
        }
    }
    UniformHypergraph::new(g1.r() + g2.r(), g1.n() + g2.n(), edges)
}

/// G₁×G₂ on V₁×V₂ with (i, j) ↦ i·n₂ + j. Each pair of edges contributes its
/// r! matchings.
pub fn direct_product(g1: &UniformHypergraph, g2: &UniformHypergraph) -> Result<UniformHypergraph> {
    if g1.r() != g2.r() {
        return Err(Error::precondition("direct_product", "operands of equal uniformity"));
    }
    let r = g1.r();
    let n2 = g2.n();
    let perms = permutations(r);
    let mut edges = Vec::with_capacity(perms.len() * g1.m() * g2.m());
    for e in g1.edges() {
        for f in g2.edges() {
            for perm in &perms {
                edges.push(e.iter().zip(perm).map(|(&i, &k)| i * n2 + f[k]).collect::<Vec<_>>());
            }
        }
    }
    UniformHypergraph::new(r, g1.n() * n2, edges)
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..r).collect();
    // Heap's algorithm.
    let mut c = vec![0usize; r];
    out.push(current.clone());
    let mut i = 0;
    while i < r {
        if c[i] < i {
            if i % 2 == 0 {
                current.swap(0, i);
            } else {
                current.swap(c[i], i);
            }
            out.push(current.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// G^{r+1}: a new vertex n + e is added to edge e.
pub fn generalized_power(g: &UniformHypergraph) -> Result<UniformHypergraph> {
    let n = g.n();
    let edges = g.edges().enumerate().map(|(e, edge)| {
        let mut out = edge.to_vec();
        out.push(n + e);
        out
    });
    UniformHypergraph::new(g.r() + 1, n + g.m(), edges)
}

/// An extension of G together with the edge partition that produced it:
/// class k contributes the new vertex n + k to each of its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub graph: UniformHypergraph,
    pub partition: Vec<Vec<usize>>,
}

impl Extension {
    pub fn is_power(&self) -> bool {
        self.partition.iter().all(|class| class.len() == 1)
    }

    pub fn is_join_with_k1(&self) -> bool {
        self.partition.len() == 1
    }
}

/// Largest edge count accepted by [`extensions_enumerate`] (Bell(8) = 4140).
pub const EXTENSION_LIMIT: usize = 8;

/// All extensions of G, one per set partition of the edge set, in
/// restricted-growth-string order (so the one-class partition comes first
/// and the all-singletons partition last).
pub fn extensions_enumerate(g: &UniformHypergraph) -> Result<Vec<Extension>> {
    let m = g.m();
    if m > EXTENSION_LIMIT {
        return Err(Error::TooLarge { what: "edge count for extension enumeration", value: m, limit: EXTENSION_LIMIT });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; m];
    loop {
        let classes = labels.iter().copied().max().unwrap_or(0) + 1;
        let mut partition = vec![Vec::new(); classes];
        for (e, &k) in labels.iter().enumerate() {
            partition[k].push(e);
        }
        let n = g.n();
        let edges = g.edges().enumerate().map(|(e, edge)| {
            let mut out = edge.to_vec();
            out.push(n + labels[e]);
            out
        });
        let graph = UniformHypergraph::new(g.r() + 1, n + classes, edges)?;
        out.push(Extension { graph, partition });
        if !next_rgs(&mut labels) {
            break;
        }
    }
    Ok(out)
}

/// Advances a restricted growth string (a_0 = 0, a_i ≤ 1 + max(a_0..a_{i−1})).
fn next_rgs(a: &mut [usize]) -> bool {
    for i in (1..a.len()).rev() {
        let prefix_max = a[..i].iter().copied().max().unwrap_or(0);
        if a[i] <= prefix_max {
            a[i] += 1;
            for x in &mut a[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

fn positive(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidValue { what, requirement: "positive", value })
    }
}

/// λ^(p)(G₁*G₂) = (r₁+r₂)^{1−(r₁+r₂)/p} / (r₁^{1−r₁/p} r₂^{1−r₂/p}) · λ₁ λ₂,
/// for p > r₁ + r₂.
pub fn join_lambda(lambda1: f64, lambda2: f64, r1: usize, r2: usize, p: f64) -> Result<f64> {
    if !(p > (r1 + r2) as f64) {
        return Err(Error::precondition("join_lambda", "p > r1 + r2"));
    }
    positive("lambda1", lambda1)?;
    positive("lambda2", lambda2)?;
    let single = |r: usize| powf(r as f64, 1.0 - r as f64 / p);
    Ok(single(r1 + r2) / (single(r1) * single(r2)) * lambda1 * lambda2)
}

/// λ^(p)(G₁×G₂) = (r−1)! λ₁ λ₂ for p > r.
pub fn product_lambda(lambda1: f64, lambda2: f64, r: usize, p: f64) -> Result<f64> {
    if !(p > r as f64) {
        return Err(Error::precondition("product_lambda", "p > r"));
    }
    if !(lambda1 >= 0.0 && lambda2 >= 0.0) {
        return Err(Error::InvalidValue { what: "lambda", requirement: "non-negative", value: lambda1.min(lambda2) });
    }
    let factorial: f64 = (1..r).map(|k| k as f64).product();
    Ok(factorial * lambda1 * lambda2)
}

/// λ^{(p+1)}(G^{r+1}) = ((r+1)/r)^{(p−r)/(p+1)} · λ^{p/(p+1)}, given
/// λ = λ^(p)(G) and p > r.
pub fn power_lambda(lambda: f64, r: usize, p: f64) -> Result<f64> {
    if !(p > r as f64) {
        return Err(Error::precondition("power_lambda", "p > r"));
    }
    positive("lambda", lambda)?;
    let rf = r as f64;
    Ok(powf((rf + 1.0) / rf, (p - rf) / (p + 1.0)) * powf(lambda, p / (p + 1.0)))
}

/// ((r+1)^{p−r} / r^{p+1−r})^{1/(p+1)} · λ^{(p+1)}(G): the upper end of the
/// extension sandwich, attained by G*K_1. Takes λ^{(p+1)}(G), not λ^(p).
pub fn extension_upper(lambda_p1: f64, r: usize, p: f64) -> Result<f64> {
    if !(p > r as f64) {
        return Err(Error::precondition("extension_upper", "p > r"));
    }
    positive("lambda", lambda_p1)?;
    let rf = r as f64;
    Ok(powf(powf(rf + 1.0, p - rf) / powf(rf, p + 1.0 - rf), 1.0 / (p + 1.0)) * lambda_p1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Join,
    Product,
    Power,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionReport {
    pub result: UniformHypergraph,
    /// Closed-form λ of the result at `p` (or p + 1 for the power), present
    /// only when the closed form's precondition holds.
    pub predicted_lambda: Option<f64>,
    /// Which closed form produced `predicted_lambda`.
    pub provenance: Option<&'static str>,
    /// Short descriptions of the operands.
    pub inputs: Vec<String>,
}

/// Builds `op` from the operands and, when `lambdas` (the operands' λ at
/// `p`) are supplied and the precondition holds, the predicted λ.
pub fn construct(
    op: Operation,
    operands: &[&UniformHypergraph],
    lambdas: Option<&[f64]>,
    p: f64,
) -> Result<ConstructionReport> {
    let describe = |g: &UniformHypergraph| format!("r={} n={} m={}", g.r(), g.n(), g.m());
    let inputs = operands.iter().map(|g| describe(g)).collect();
    let need = |k: usize| {
        if operands.len() == k {
            Ok(())
        } else {
            Err(Error::precondition("construct", if k == 1 { "exactly one operand" } else { "exactly two operands" }))
        }
    };
    let (result, predicted, provenance) = match op {
        Operation::Join => {
            need(2)?;
            let (a, b) = (operands[0], operands[1]);
            let pred = lambdas.and_then(|l| join_lambda(l[0], l[1], a.r(), b.r(), p).ok());
            (join(a, b)?, pred, "join")
        }
        Operation::Product => {
            need(2)?;
            let (a, b) = (operands[0], operands[1]);
            let pred = lambdas.and_then(|l| product_lambda(l[0], l[1], a.r(), p).ok());
            (direct_product(a, b)?, pred, "direct product")
        }
        Operation::Power => {
            need(1)?;
            let a = operands[0];
            let pred = lambdas.and_then(|l| power_lambda(l[0], a.r(), p).ok());
            (generalized_power(a)?, pred, "generalized power (exponent p + 1)")
        }
    };
    Ok(ConstructionReport {
        result,
        provenance: predicted.map(|_| provenance),
        predicted_lambda: predicted,
        inputs,
    })
}

/// The 4-uniform grid: the 5×5 vertex lattice (vertex 5y + x) with one edge
/// per unit square. Edge 4a + b is the square with lower-left corner (a, b).
pub fn grid_g1() -> UniformHypergraph {
    let mut edges = Vec::with_capacity(16);
    for a in 0..4 {
        for b in 0..4 {
            let v = 5 * a + b;
            edges.push([v, v + 1, v + 5, v + 6]);
        }
    }
    UniformHypergraph::new(4, 25, edges).expect("grid is well formed")
}

/// Square type of grid edge `e`: 0 corner, 1 side, 2 center.
pub fn grid_square_type(e: usize) -> usize {
    let (a, b) = (e / 4, e % 4);
    let border = |k: usize| usize::from(k == 0 || k == 3);
    2 - (border(a) + border(b))
}

/// The grid's edge orbits: corner, side and center squares.
pub fn grid_orbits() -> Vec<Vec<usize>> {
    let mut orbits = vec![Vec::new(); 3];
    for e in 0..16 {
        orbits[grid_square_type(e)].push(e);
    }
    orbits
}

/// Closed-form weights (corner, side, center) with t = 4^{1/(p−2)}:
/// w = (1, t, t²) / (4(1+t)²).
pub fn grid_weights(p: f64) -> [f64; 3] {
    let t = powf(4.0, 1.0 / (p - 2.0));
    let d = 4.0 * (1.0 + t) * (1.0 + t);
    [1.0 / d, t / d, t * t / d]
}

/// α = 1 / (4^{p−4} (1+t)^{2(p−2)}).
pub fn grid_alpha(p: f64) -> f64 {
    let t = powf(4.0, 1.0 / (p - 2.0));
    1.0 / (powf(4.0, p - 4.0) * powf(1.0 + t, 2.0 * (p - 2.0)))
}

/// λ^(p) = 16^{1−4/p} (1+t)^{2(p−2)/p}.
pub fn grid_lambda(p: f64) -> f64 {
    let t = powf(4.0, 1.0 / (p - 2.0));
    powf(16.0, 1.0 - 4.0 / p) * powf(1.0 + t, 2.0 * (p - 2.0) / p)
}

/// The consistent α-normal labeling of the grid at p > 4.
pub fn grid_certificate(p: f64) -> Result<Labeling> {
    if !(p > 4.0) {
        return Err(Error::precondition("grid_certificate", "p > 4"));
    }
    let g = grid_g1();
    let w = grid_weights(p);
    let weights = (0..16).map(|e| w[grid_square_type(e)]).collect();
    Labeling::from_weights(&g, p, grid_alpha(p), weights)
}

/// The 3-uniform star: center 0 in all four edges; vertex 2 is shared by
/// the first two.
pub fn star_g2() -> UniformHypergraph {
    UniformHypergraph::new(3, 8, [[0, 1, 2], [0, 2, 3], [0, 4, 5], [0, 6, 7]]).expect("star is well formed")
}

/// The star's edge orbits in canonical edge order: {012, 023}, {045, 067}.
pub fn star_orbits() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![2, 3]]
}

/// (w₁, w₂) with s = 2^{1/(p−2)}: w₁ = s/(2(1+s)), w₂ = 1/(2(1+s)).
pub fn star_weights(p: f64) -> [f64; 2] {
    let s = powf(2.0, 1.0 / (p - 2.0));
    [s / (2.0 * (1.0 + s)), 1.0 / (2.0 * (1.0 + s))]
}

/// α = 2^{2−p} (1+s)^{2−p}.
pub fn star_alpha(p: f64) -> f64 {
    let s = powf(2.0, 1.0 / (p - 2.0));
    powf(2.0 * (1.0 + s), 2.0 - p)
}

/// λ^(p) = 3^{1−3/p} 2^{1−2/p} (1+s)^{1−2/p}.
pub fn star_lambda(p: f64) -> f64 {
    let s = powf(2.0, 1.0 / (p - 2.0));
    powf(3.0, 1.0 - 3.0 / p) * powf(2.0, 1.0 - 2.0 / p) * powf(1.0 + s, 1.0 - 2.0 / p)
}

/// The consistent α-normal labeling of the star at p > 3.
pub fn star_certificate(p: f64) -> Result<Labeling> {
    if !(p > 3.0) {
        return Err(Error::precondition("star_certificate", "p > 3"));
    }
    let g = star_g2();
    let [w1, w2] = star_weights(p);
    Labeling::from_weights(&g, p, star_alpha(p), vec![w1, w1, w2, w2])
}

/// Two triangles {0,1,2} and {3,4,5} joined by the edge {2,3}.
pub fn two_triangles_path() -> UniformHypergraph {
    UniformHypergraph::new(2, 6, [[0, 1], [1, 2], [0, 2], [2, 3], [3, 4], [4, 5], [3, 5]])
        .expect("two triangles are well formed")
}

/// K_r^r: a single edge on r vertices.
pub fn k_r_r(r: usize) -> Result<UniformHypergraph> {
    UniformHypergraph::new(r, r, [(0..r).collect::<Vec<_>>()])
}

/// K_1: one vertex, one 1-uniform edge. λ^(p) = 1 for every p; only
/// meaningful as a join operand.
pub fn k1() -> UniformHypergraph {
    UniformHypergraph::new(1, 1, [[0]]).expect("K_1 is well formed")
}

/// Names accepted by [`fixture`], excluding the `k<r>` family.
pub const FIXTURE_NAMES: [&str; 4] = ["grid_g1", "star_g2", "two_triangles_path", "k1"];

/// Looks up a fixture by name: `grid_g1`, `star_g2`, `two_triangles_path`,
/// `k1`, or `k<r>` / `k_r_r<r>` for the single edge K_r^r.
pub fn fixture(name: &str) -> Option<UniformHypergraph> {
    match name {
        "grid_g1" => Some(grid_g1()),
        "star_g2" => Some(star_g2()),
        "two_triangles_path" => Some(two_triangles_path()),
        "k1" => Some(k1()),
        _ => {
            let digits = name.strip_prefix("k_r_r").or_else(|| name.strip_prefix('k'))?;
            let r: usize = digits.parse().ok()?;
            (2..=64).contains(&r).then(|| k_r_r(r).ok()).flatten()
        }
    }
}
