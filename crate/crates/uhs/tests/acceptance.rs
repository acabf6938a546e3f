//! Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Built with `harness = false` so the lines always show.

mod support;

use std::time::Instant;

use rand::Rng;
use support::{all_connected, brute_force_lambda, random_connected, random_instance, report, rng};
use uhs_core::analysis::{
    check_concavity, check_monotone_f_g, check_ratio_monotone, degree_bound, extension_sandwich_check,
    simple_degree_bound, sweep, weight_bounds,
};
use uhs_core::constructions::{
    direct_product, generalized_power, grid_certificate, grid_g1, join, k_r_r, star_g2, star_orbits,
    two_triangles_path,
};
use uhs_core::hypergraph::UniformHypergraph;
use uhs_core::labeling::{classify_labeling, labeling_from_eigenvector, lambda_from_alpha, LabelClass};
use uhs_core::spectral::{
    certificate_search_sub_r, compose_components, compose_components_max, solve_p_spectral, solve_weight_system,
    SolverOptions,
};

fn opts() -> SolverOptions {
    SolverOptions::default()
}

fn lambda(g: &UniformHypergraph, p: f64) -> f64 {
    let res = solve_p_spectral(g, p, &opts()).expect("solver accepts the instance");
    assert!(res.converged, "solver did not converge at p = {p}");
    res.lambda
}

/// Runs `uhs solve` in-process and reads λ from its JSON output.
fn cli_lambda(path: &std::path::Path, p: f64) -> (f64, i32) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["uhs", "solve", "--p", &p.to_string(), path.to_str().unwrap()];
    let code = uhs::cli::run(args, &mut out, &mut err);
    let json: serde_json::Value = serde_json::from_slice(&out).expect("solve prints JSON");
    (json["lambda"].as_f64().unwrap(), code)
}

fn grid_formula(p: f64) -> f64 {
    16f64.powf(1.0 - 4.0 / p) * (1.0 + 4f64.powf(1.0 / (p - 2.0))).powf(2.0 * (p - 2.0) / p)
}

fn star_formula(p: f64) -> f64 {
    let s = 2f64.powf(1.0 / (p - 2.0));
    3f64.powf(1.0 - 3.0 / p) * 2f64.powf(1.0 - 2.0 / p) * (1.0 + s).powf(1.0 - 2.0 / p)
}

fn criterion_1() -> bool {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid_g1.uhg");
    std::fs::write(&path, grid_g1().to_text()).unwrap();
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut ok = true;
    for p in [4.5, 5.0, 6.0, 8.0] {
        let (l, code) = cli_lambda(&path, p);
        ok &= code == 0;
        worst = worst.max((l - grid_formula(p)).abs());
    }
    let (near, code) = cli_lambda(&path, 4.0 + 1e-3);
    ok &= code == 0;
    let elapsed = start.elapsed().as_secs_f64();
    let passed = ok && worst <= 1e-8 && (near - 3.0).abs() <= 5e-3 && elapsed < 5.0;
    report(
        1,
        "grid closed form",
        passed,
        &format!("max |err| {worst:.2e} (≤ 1e-8); λ(4.001) = {near:.6} (3 ± 5e-3); {elapsed:.2} s (< 5 s)"),
    )
}

fn criterion_2() -> bool {
    let g = star_g2();
    let mut worst = 0.0f64;
    for p in [3.5, 4.0, 5.0, 7.0] {
        worst = worst.max((lambda(&g, p) - star_formula(p)).abs());
    }
    let mut worst_w = 0.0f64;
    for p in [3.5, 4.0, 5.0, 7.0] {
        let sol = solve_weight_system(&g, &star_orbits(), p, &opts()).unwrap();
        let s = 2f64.powf(1.0 / (p - 2.0));
        let w1 = s / (2.0 * (1.0 + s));
        let w2 = 1.0 / (2.0 * (1.0 + s));
        let alpha = 2f64.powf(2.0 - p) * (1.0 + s).powf(2.0 - p);
        let expect = [w1, w1, w2, w2];
        for (a, b) in sol.weights.iter().zip(expect) {
            worst_w = worst_w.max((a - b).abs());
        }
        worst_w = worst_w.max((sol.alpha - alpha).abs());
    }
    let near = lambda(&g, 3.0 + 1e-3);
    let target = 6f64.cbrt();
    let passed = worst <= 1e-8 && worst_w <= 1e-10 && (near - target).abs() <= 5e-3;
    report(
        2,
        "star closed form and weight system",
        passed,
        &format!("max |λ err| {worst:.2e}; max |w, α err| {worst_w:.2e}; λ(3.001) = {near:.6} vs {target:.6}"),
    )
}

fn criterion_3() -> bool {
    let g = two_triangles_path();
    let cert = certificate_search_sub_r(&g, 1.0, &opts()).unwrap();
    let triangle = cert.support == [0, 1, 2] || cert.support == [3, 4, 5];
    let passed =
        cert.exhaustive && triangle && (cert.lambda - 2.0 / 3.0).abs() <= 1e-10 && (cert.alpha - 0.75).abs() <= 1e-10;
    report(
        3,
        "p = 1 certificate search",
        passed,
        &format!("S = {:?}, α = {:.12}, λ = {:.12}", cert.support, cert.alpha, cert.lambda),
    )
}

fn criterion_4() -> bool {
    let mut rng = rng(4);
    let mut failures = 0;
    let mut worst = 0.0f64;
    for k in 0..100 {
        let g = random_instance(&mut rng, &[2, 3, 4], 10);
        let r = g.r() as f64;
        let p = if k % 2 == 0 { r + 0.5 } else { r + 2.0 };
        let res = solve_p_spectral(&g, p, &opts()).unwrap();
        let l = labeling_from_eigenvector(&g, &res.vector(), res.lambda).unwrap();
        let verdict = classify_labeling(&g, &l, 1e-6).unwrap();
        let back = lambda_from_alpha(l.alpha(), g.r(), p).unwrap();
        worst = worst.max((back - res.lambda).abs());
        if !(res.converged && verdict.class == LabelClass::Normal && verdict.consistent && (back - res.lambda).abs() <= 1e-6) {
            failures += 1;
        }
    }
    report(4, "certificate round trip", failures == 0, &format!("{failures}/100 failures; max |λ(α) − λ| {worst:.2e}"))
}

fn criterion_5() -> bool {
    let mut rng = rng(5);
    let mut worst = [0.0f64; 4];
    let mut bump = |slot: usize, a: f64, b: f64| worst[slot] = worst[slot].max((a - b).abs());
    for k in 0..20 {
        // Join.
        let r1 = 2 + k % 2;
        let r2 = 2;
        let g1 = random_instance(&mut rng, &[r1], 4);
        let g2 = random_instance(&mut rng, &[r2], 4);
        let p = (r1 + r2) as f64 + 1.0 + 0.5 * (k % 3) as f64;
        let single = |r: usize| (r as f64).powf(1.0 - r as f64 / p);
        let predicted = single(r1 + r2) / (single(r1) * single(r2)) * lambda(&g1, p) * lambda(&g2, p);
        bump(0, lambda(&join(&g1, &g2).unwrap(), p), predicted);

        // Direct product, with K_3^3 × K_3^3 at p = 6 first.
        let r = 2 + k % 2;
        let (h1, h2, p) = if k == 0 {
            (k_r_r(3).unwrap(), k_r_r(3).unwrap(), 6.0)
        } else {
            (random_instance(&mut rng, &[r], 4), random_instance(&mut rng, &[r], 4), r as f64 + 1.0 + (k % 3) as f64)
        };
        let fact: f64 = (1..h1.r()).map(|i| i as f64).product();
        let predicted = fact * lambda(&h1, p) * lambda(&h2, p);
        let got = lambda(&direct_product(&h1, &h2).unwrap(), p);
        if k == 0 {
            bump(1, got, 6.0);
        }
        bump(1, got, predicted);

        // Generalized power, compared at p + 1.
        let g = random_instance(&mut rng, &[2, 3], 6);
        let rf = g.r() as f64;
        let p = rf + 0.5 + (k % 4) as f64 * 0.5;
        let predicted = ((rf + 1.0) / rf).powf((p - rf) / (p + 1.0)) * lambda(&g, p).powf(p / (p + 1.0));
        bump(2, lambda(&generalized_power(&g).unwrap(), p + 1.0), predicted);

        // Disjoint union: the l^{p/(p−r)} rule above r, the maximum below.
        let r = 2 + k % 2;
        let a = random_instance(&mut rng, &[r], 5);
        let b = random_instance(&mut rng, &[r], 5);
        let u = a.disjoint_union(&b).unwrap();
        let p = if k % 4 == 3 { 1.0 + 0.25 * (r - 1) as f64 } else { r as f64 + 0.5 + (k % 3) as f64 };
        let parts = [lambda(&a, p), lambda(&b, p)];
        let predicted = if p > r as f64 { compose_components(&parts, p, r).unwrap() } else { compose_components_max(&parts).unwrap() };
        bump(3, lambda(&u, p), predicted);
    }
    let passed = worst.iter().all(|&w| w <= 1e-7);
    report(
        5,
        "composition closed forms",
        passed,
        &format!(
            "20 pairs each; max |err| join {:.1e}, product {:.1e}, power {:.1e}, union {:.1e} (≤ 1e-7)",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

fn criterion_6() -> bool {
    let mut rng = rng(6);
    let mut worst_slack = f64::INFINITY;
    let mut weight_failures = 0;
    for _ in 0..200 {
        let g = random_instance(&mut rng, &[2, 3, 4], 8);
        let r = g.r() as f64;
        let p = r + rng.random_range(0.25..4.0);
        let res = solve_p_spectral(&g, p, &opts()).unwrap();
        worst_slack = worst_slack
            .min(degree_bound(&g, p).unwrap() - res.lambda)
            .min(simple_degree_bound(&g, p).unwrap() - res.lambda);
        let l = labeling_from_eigenvector(&g, &res.vector(), res.lambda).unwrap();
        let d = g.degrees();
        let (lo, hi) = weight_bounds(l.alpha(), d.min, d.max, g.r(), p).unwrap();
        if l.weights().iter().any(|&w| w < lo * (1.0 - 1e-6) || w > hi * (1.0 + 1e-6)) {
            weight_failures += 1;
        }
    }
    for p in [4.5, 6.0] {
        let l = grid_certificate(p).unwrap();
        let d = grid_g1().degrees();
        let (lo, hi) = weight_bounds(l.alpha(), d.min, d.max, 4, p).unwrap();
        if l.weights().iter().any(|&w| w < lo * (1.0 - 1e-12) || w > hi * (1.0 + 1e-12)) {
            weight_failures += 1;
        }
    }

    let mut sandwich_instances = vec![star_g2(), k_r_r(2).unwrap(), k_r_r(3).unwrap()];
    while sandwich_instances.len() < 15 {
        let r = rng.random_range(2..=3);
        let n = rng.random_range(r..=6);
        let g = random_connected(&mut rng, r, n, 2);
        if g.m() <= 5 {
            sandwich_instances.push(g);
        }
    }
    let mut sandwich_failures = 0;
    let mut extensions = 0;
    for (k, g) in sandwich_instances.iter().enumerate() {
        let p = g.r() as f64 + if k % 2 == 0 { 0.5 } else { 1.5 };
        let rep = extension_sandwich_check(g, p, &opts()).unwrap();
        extensions += rep.entries.len();
        if !rep.passed {
            sandwich_failures += 1;
        }
    }
    let passed = worst_slack >= -1e-8 && weight_failures == 0 && sandwich_failures == 0;
    report(
        6,
        "inequality suite",
        passed,
        &format!(
            "min bound slack {worst_slack:.2e} over 200; weight-bound failures {weight_failures}; sandwich failures \
             {sandwich_failures}/{} ({extensions} extensions)",
            sandwich_instances.len()
        ),
    )
}

fn criterion_7() -> bool {
    let mut rng = rng(7);
    let mut instances = vec![grid_g1(), star_g2(), two_triangles_path()];
    for _ in 0..50 {
        instances.push(random_instance(&mut rng, &[2, 3], 7));
    }
    let mut failures = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for (k, g) in instances.iter().enumerate() {
        let r = g.r() as f64;
        let grid: Vec<f64> = [0.5, 1.0, 1.5, 2.5, 4.0, 6.0].iter().map(|d| r + d).collect();
        let curve = sweep(g, &grid, &opts()).unwrap();
        let mut checks = Vec::new();
        checks.extend(check_monotone_f_g(&curve));
        checks.push(check_ratio_monotone(&curve));
        checks.extend(check_concavity(&curve));
        for c in &checks {
            worst = worst.max(c.worst_violation);
            if !c.passed || c.skipped.is_some() || !curve.all_converged() {
                failures.push(format!("instance {k}: {}", c.name));
            }
        }
    }
    report(
        7,
        "monotonicity and convexity checks",
        failures.is_empty(),
        &format!("{} instances × 5 checks; worst violation {worst:.2e} (≤ 1e-7); failures {:?}", instances.len(), failures),
    )
}

fn criterion_8() -> bool {
    let mut count = 0;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for r in [2usize, 3] {
        for n in r..=5 {
            for g in all_connected(r, n) {
                for p in [1.0, 2.5, r as f64 + 1.0] {
                    let solved = lambda(&g, p);
                    let brute = brute_force_lambda(&g, p, 24, 1e-7);
                    let err = (solved - brute).abs();
                    worst = worst.max(err);
                    count += 1;
                    if err > 1e-3 {
                        failures.push(format!("{} p={p}: {solved} vs {brute}", g.to_text().replace('\n', ";")));
                    }
                }
            }
        }
    }
    report(
        8,
        "brute-force equivalence (n ≤ 5)",
        failures.is_empty(),
        &format!("{count} (graph, p) pairs; max |err| {worst:.2e} (≤ 1e-3); failures {failures:?}"),
    )
}

fn main() {
    let criteria: [fn() -> bool; 8] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8];
    let mut all = true;
    for c in criteria {
        all &= c();
    }
    if !all {
        std::process::exit(1);
    }
}
