//! Shared helpers for the integration tests: random connected hypergraphs,
//! exhaustive small-hypergraph enumeration and a brute-force maximizer of
//! the polynomial form that shares no code with the solver.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uhs_core::hypergraph::UniformHypergraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A connected r-uniform hypergraph on n vertices with no isolated vertex:
/// a spanning chain of edges, each sharing at least one vertex with the
/// part already built, plus up to `extra` further random edges.
pub fn random_connected(rng: &mut ChaCha8Rng, r: usize, n: usize, extra: usize) -> UniformHypergraph {
    assert!(r >= 2 && n >= r);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut first = order[..r].to_vec();
    first.sort_unstable();
    edges.insert(first);
    let mut covered = r;
    while covered < n {
        let fresh = rng.random_range(1..=(r - 1).min(n - covered));
        let mut edge: Vec<usize> = order[covered..covered + fresh].to_vec();
        let mut old = order[..covered].to_vec();
        old.shuffle(rng);
        edge.extend_from_slice(&old[..r - fresh]);
        edge.sort_unstable();
        edges.insert(edge);
        covered += fresh;
    }
    for _ in 0..extra {
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(rng);
        let mut edge = all[..r].to_vec();
        edge.sort_unstable();
        edges.insert(edge);
    }
    UniformHypergraph::new(r, n, edges).unwrap()
}

/// Random connected instance with r and n drawn from the given ranges.
pub fn random_instance(rng: &mut ChaCha8Rng, rs: &[usize], max_n: usize) -> UniformHypergraph {
    let r = rs[rng.random_range(0..rs.len())];
    let n = rng.random_range(r..=max_n.max(r));
    let extra = rng.random_range(0..=n);
    random_connected(rng, r, n, extra)
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, &mut out);
    out
}

fn canonical(edges: &[Vec<usize>], perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    perms
        .iter()
        .map(|perm| {
            let mut mapped: Vec<Vec<usize>> = edges
                .iter()
                .map(|e| {
                    let mut f: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                    f.sort_unstable();
                    f
                })
                .collect();
            mapped.sort();
            mapped
        })
        .min()
        .unwrap()
}

fn is_connected_spanning(n: usize, edges: &[Vec<usize>]) -> bool {
    let mut reach = vec![false; n];
    reach[0] = true;
    loop {
        let mut changed = false;
        for e in edges {
            if e.iter().any(|&v| reach[v]) {
                for &v in e {
                    if !reach[v] {
                        reach[v] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return reach.iter().all(|&b| b);
        }
    }
}

/// Every connected r-uniform hypergraph on exactly n vertices (no isolated
/// vertices), one per isomorphism class.
pub fn all_connected(r: usize, n: usize) -> Vec<UniformHypergraph> {
    let candidates = combinations(n, r);
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << candidates.len()) {
        let edges: Vec<Vec<usize>> =
            (0..candidates.len()).filter(|&k| mask >> k & 1 == 1).map(|k| candidates[k].clone()).collect();
        if !is_connected_spanning(n, &edges) {
            continue;
        }
        let key = canonical(&edges, &perms);
        if seen.insert(key.clone()) {
            out.push(UniformHypergraph::new(r, n, key).unwrap());
        }
    }
    out
}

/// r Σ_e Π x_v with x_v = y_v^{1/p}, evaluated directly from the edge list.
fn form_on_simplex(edges: &[Vec<usize>], r: usize, y: &[f64], p: f64) -> f64 {
    let x: Vec<f64> = y.iter().map(|&t| t.max(0.0).powf(1.0 / p)).collect();
    r as f64 * edges.iter().map(|e| e.iter().map(|&v| x[v]).product::<f64>()).sum::<f64>()
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// max of P_G on the nonnegative unit l^p sphere by brute force: every point
/// of a simplex grid (in y = x^p coordinates) with `resolution` steps, then
/// a pattern search moving mass between pairs of coordinates from the best
/// few grid points until the step falls below `min_step`.
pub fn brute_force_lambda(g: &UniformHypergraph, p: f64, resolution: usize, min_step: f64) -> f64 {
    let n = g.n();
    let r = g.r();
    let edges: Vec<Vec<usize>> = g.edges().map(|e| e.to_vec()).collect();
    let mut scored: Vec<(f64, Vec<f64>)> = compositions(resolution, n)
        .into_iter()
        .map(|c| {
            let y: Vec<f64> = c.iter().map(|&k| k as f64 / resolution as f64).collect();
            (form_on_simplex(&edges, r, &y, p), y)
        })
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = 0.0f64;
    for (mut value, mut y) in scored.into_iter().take(8) {
        let mut step = 1.0 / resolution as f64;
        while step >= min_step {
            let mut improved = false;
            for i in 0..n {
                for j in 0..n {
                    if i == j || y[j] <= 0.0 {
                        continue;
                    }
                    let delta = step.min(y[j]);
                    let mut trial = y.clone();
                    trial[i] += delta;
                    trial[j] -= delta;
                    let v = form_on_simplex(&edges, r, &trial, p);
                    if v > value {
                        value = v;
                        y = trial;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        best = best.max(value);
    }
    best
}

/// Pass/fail line printed by the acceptance runner.
pub fn report(id: usize, title: &str, passed: bool, detail: &str) -> bool {
    println!("[{}] criterion {id}: {title}: {detail}", if passed { "PASS" } else { "FAIL" });
    passed
}
