//! Certificates for 1 ≤ p < r.
//!
//! A maximizer x* of P_G restricted to its support S is a strictly positive
//! critical point of G[S], so G[S] carries a consistent α-normal labeling
//! and λ^(p)(G) = r^{1−r/p} · max_S α_S^{−1/p} over all S that admit one.
//! Enumerating S is exponential; it is done exhaustively up to
//! `subgraph_limit` vertices and otherwise only over supports the ascent
//! found.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::ascent::{ascend, starts, trim, SUPPORT_CUTOFF};
use super::rng::Starts;
use super::{eigen_residual, newton, normalize, polynomial_form, support_of, SolverOptions};
use crate::error::{Error, Result};
use crate::float::powf;
use crate::hypergraph::{SubHypergraph, UniformHypergraph};
use crate::labeling::{labeling_from_eigenvector, verify_normal_certificate, LabelClass, Labeling, PVector};

/// Bitmask enumeration is capped here whatever `subgraph_limit` says.
pub const EXHAUSTIVE_CAP: usize = 30;

/// Tolerance used to re-verify each candidate labeling.
const CERT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SubRankCertificate {
    /// S, sorted.
    pub support: Vec<usize>,
    pub subgraph: SubHypergraph,
    /// Consistent α-normal labeling of G[S].
    pub labeling: Labeling,
    pub alpha: f64,
    /// r^{1−r/p} α^{−1/p}.
    pub lambda: f64,
    /// The critical point of G[S], extended by zeros to all of G.
    pub x: Vec<f64>,
    /// Whether every vertex subset was considered.
    pub exhaustive: bool,
    /// Number of subsets that produced a certificate.
    pub candidates: usize,
}

pub(crate) struct SearchHints {
    /// A value λ^(p)(G) is known to reach; subsets whose upper bound falls
    /// below it are skipped.
    pub floor: f64,
    /// Final iterates of the ascent, used as extra starts and, in heuristic
    /// mode, as the only source of supports.
    pub finals: Vec<Vec<f64>>,
}

pub(crate) fn tie_tolerance(tol: f64, lambda: f64) -> f64 {
    tol.max(1e-12) * lambda.max(1.0)
}

/// Searches induced sub-hypergraphs for the consistent α-normal labeling
/// with the largest α^{−1/p}; ties go to the lexicographically smallest S.
///
/// Exhaustive when n ≤ `subgraph_limit` (and n ≤ [`EXHAUSTIVE_CAP`]);
/// otherwise only supports found by the multi-start ascent are tried and
/// the result is flagged non-exhaustive.
pub fn certificate_search_sub_r(g: &UniformHypergraph, p: f64, opts: &SolverOptions) -> Result<SubRankCertificate> {
    opts.validate()?;
    if !(p >= 1.0 && p < g.r() as f64) {
        return Err(Error::precondition("certificate_search_sub_r", "1 ≤ p < r"));
    }
    if g.m() == 0 {
        return Err(Error::precondition("certificate_search_sub_r", "at least one edge"));
    }
    let mut floor = 0.0f64;
    let mut finals = Vec::new();
    for x0 in starts(g, p, opts.restarts, opts.seed, 0) {
        let out = ascend(g, p, x0, opts.tol, opts.max_iter);
        floor = floor.max(out.lambda);
        finals.push(out.x);
    }
    search(g, p, opts, &SearchHints { floor, finals })
}

struct Best {
    support: Vec<usize>,
    sub: SubHypergraph,
    x: Vec<f64>,
    lambda: f64,
    labeling: Labeling,
}

pub(crate) fn search(g: &UniformHypergraph, p: f64, opts: &SolverOptions, hints: &SearchHints) -> Result<SubRankCertificate> {
    let n = g.n();
    let exhaustive = n <= opts.subgraph_limit.min(EXHAUSTIVE_CAP);
    let mut best: Option<Best> = None;
    let mut candidates = 0;

    let hint_supports: Vec<(Vec<usize>, Vec<f64>)> = hints
        .finals
        .iter()
        .map(|x| {
            let t = trim(x, p);
            (support_of(&t), t)
        })
        .collect();

    let mut consider = |verts: Vec<usize>, best: &mut Option<Best>, stream: u64| {
        let sub = g.induced(&verts);
        let extra: Vec<Vec<f64>> = hint_supports
            .iter()
            .filter(|(s, _)| *s == verts)
            .map(|(_, x)| verts.iter().map(|&v| x[v]).collect())
            .collect();
        let Some((x, lambda, labeling)) = evaluate(&sub, p, opts, &extra, stream) else {
            return;
        };
        candidates += 1;
        let tie = tie_tolerance(opts.tol, lambda);
        let better = match best {
            None => true,
            Some(b) => lambda > b.lambda + tie || (lambda >= b.lambda - tie && verts < b.support),
        };
        if better {
            *best = Some(Best { support: verts, sub, x, lambda, labeling });
        }
    };

    if exhaustive {
        let masks: Vec<u64> = g
            .edges()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect();
        let master = powf(g.r() as f64, 1.0 - g.r() as f64 / p);
        let mut inside = Vec::with_capacity(masks.len());
        let mut degree = vec![0usize; n];
        for set in 1u64..(1u64 << n) {
            inside.clear();
            let mut covered = 0u64;
            for &em in &masks {
                if em & !set == 0 {
                    inside.push(em);
                    covered |= em;
                }
            }
            if covered != set || !connected(set, &inside) {
                continue;
            }
            degree.iter_mut().for_each(|d| *d = 0);
            for &em in &inside {
                let mut bits = em;
                while bits != 0 {
                    degree[bits.trailing_zeros() as usize] += 1;
                    bits &= bits - 1;
                }
            }
            let max_degree = degree.iter().copied().max().unwrap_or(0);
            let current = best.as_ref().map_or(0.0, |b| b.lambda).max(hints.floor);
            // λ^(p)(H) ≤ r^{1−r/p} Δ(H) for p ≤ r.
            if master * (max_degree as f64) < current - tie_tolerance(opts.tol, current) {
                continue;
            }
            let verts: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
            consider(verts, &mut best, set);
        }
    } else {
        let mut seen = BTreeSet::new();
        for (support, _) in &hint_supports {
            let sub = g.induced(support);
            for part in sub.graph.connected_components().parts {
                let verts: Vec<usize> = part.vertices.iter().map(|&v| sub.vertices[v]).collect();
                if seen.insert(verts.clone()) {
                    let stream = seen.len() as u64;
                    consider(verts, &mut best, stream);
                }
            }
        }
    }

    let Some(best) = best else {
        return Err(Error::NoCertificate(format!(
            "no induced sub-hypergraph produced a positive critical point ({} mode)",
            if exhaustive { "exhaustive" } else { "heuristic" }
        )));
    };
    let mut x = vec![0.0; n];
    for (k, &v) in best.support.iter().enumerate() {
        x[v] = best.x[k];
    }
    Ok(SubRankCertificate {
        alpha: best.labeling.alpha(),
        lambda: best.lambda,
        support: best.support,
        subgraph: best.sub,
        labeling: best.labeling,
        x,
        exhaustive,
        candidates,
    })
}

fn connected(set: u64, inside: &[u64]) -> bool {
    let mut reach = 1u64 << set.trailing_zeros();
    loop {
        let before = reach;
        for &em in inside {
            if em & reach != 0 {
                reach |= em;
            }
        }
        if reach == before {
            return reach == set;
        }
    }
}

/// Looks for a strictly positive critical point of `sub` and turns the best
/// one into a verified consistent normal labeling.
fn evaluate(
    sub: &SubHypergraph,
    p: f64,
    opts: &SolverOptions,
    extra: &[Vec<f64>],
    stream: u64,
) -> Option<(Vec<f64>, f64, Labeling)> {
    let h = &sub.graph;
    let k = h.n();
    let mut inits = Vec::with_capacity(1 + opts.subset_starts + extra.len());
    let mut uniform = vec![1.0; k];
    normalize(&mut uniform, p);
    inits.push(uniform);
    inits.extend(extra.iter().cloned());
    let mut rng = Starts::new(opts.seed, stream.wrapping_add(1));
    for _ in 0..opts.subset_starts {
        inits.push(rng.dirichlet(k, p));
    }

    let accept = (1e3 * opts.tol).max(1e-9);
    let mut found: Option<(Vec<f64>, f64)> = None;
    for x0 in inits {
        let out = ascend(h, p, x0, opts.tol, opts.max_iter);
        let x = match newton::polish(h, p, &out.x) {
            Some(y) => y,
            None => out.x,
        };
        let max = x.iter().copied().fold(0.0, f64::max);
        if x.iter().any(|&v| !(v > SUPPORT_CUTOFF * max)) {
            continue;
        }
        let lambda = polynomial_form(h, &x);
        if eigen_residual(h, &x, lambda, p) > accept * lambda.max(1.0) {
            continue;
        }
        if found.as_ref().is_none_or(|(_, l)| lambda > *l) {
            found = Some((x, lambda));
        }
    }
    let (x, lambda) = found?;
    let labeling = labeling_from_eigenvector(h, &PVector::from_raw(x.clone(), p), lambda).ok()?;
    let verdict = verify_normal_certificate(h, &labeling, CERT_TOL).ok()?;
    (verdict.class == LabelClass::Normal && verdict.consistent).then_some((x, lambda, labeling))
}
