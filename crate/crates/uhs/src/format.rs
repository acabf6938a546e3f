//! File formats: `.uhg` hypergraphs, certificate JSON, result and report
//! JSON, sweep CSV. All writes go through a temporary file and a rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use uhs_core::analysis::{CheckReport, SandwichReport, SweepCurve};
use uhs_core::hypergraph::UniformHypergraph;
use uhs_core::labeling::{Labeling, LabelingVerdict};
use uhs_core::spectral::SpectralResult;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {source}")]
    Hypergraph { path: PathBuf, source: uhs_core::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> FormatError + '_ {
    move |source| FormatError::Io { path: path.to_path_buf(), source }
}

pub fn read_hypergraph(path: &Path) -> Result<UniformHypergraph, FormatError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    UniformHypergraph::parse(&text).map_err(|source| FormatError::Hypergraph { path: path.to_path_buf(), source })
}

/// Writes `bytes` to `path` atomically: a temporary file in the same
/// directory is renamed over the target.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.as_file().sync_all().map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| FormatError::Io { path: path.to_path_buf(), source: e.error })?;
    Ok(())
}

pub fn write_hypergraph(path: &Path, g: &UniformHypergraph) -> Result<(), FormatError> {
    write_atomic(path, g.to_text().as_bytes())
}

/// `{"p", "alpha", "w", "B"}` with one row of B per edge in canonical edge
/// order. `support` is present when the labeling lives on an induced
/// sub-hypergraph G[S] (the p < r certificates).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub p: f64,
    pub alpha: f64,
    pub w: Vec<f64>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<usize>>,
}

impl CertificateFile {
    pub fn from_labeling(l: &Labeling, support: Option<Vec<usize>>) -> Self {
        CertificateFile { p: l.p(), alpha: l.alpha(), w: l.weights().to_vec(), b: l.rows(), support }
    }

    pub fn to_labeling(&self, g: &UniformHypergraph) -> uhs_core::Result<Labeling> {
        Labeling::from_rows(g, self.p, self.alpha, self.w.clone(), &self.b)
    }
}

pub fn read_certificate(path: &Path) -> Result<CertificateFile, FormatError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json { path: path.to_path_buf(), source })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    let mut text = to_json(value);
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

#[derive(Debug, Serialize)]
pub struct ResultJson<'a> {
    pub lambda: f64,
    pub p: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub method: &'static str,
    pub x: &'a [f64],
    pub support: &'a [usize],
}

impl<'a> From<&'a SpectralResult> for ResultJson<'a> {
    fn from(r: &'a SpectralResult) -> Self {
        ResultJson {
            lambda: r.lambda,
            p: r.p,
            residual: r.residual,
            iterations: r.iterations,
            converged: r.converged,
            method: r.method.as_str(),
            x: &r.x,
            support: &r.support,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ResidualsJson<'a> {
    pub weight_sum: Option<f64>,
    pub max_vertex_sum: f64,
    pub max_edge_product: f64,
    pub max_consistency: f64,
    pub vertex_sums: &'a [f64],
    pub edge_products: &'a [f64],
    pub consistency: &'a [f64],
}

#[derive(Debug, Serialize)]
pub struct VerdictJson<'a> {
    pub class: &'static str,
    pub consistent: bool,
    pub tol: f64,
    /// λ certified by a consistent normal labeling; the upper bound for a
    /// p < r subnormal one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<&'a [usize]>,
    pub residuals: ResidualsJson<'a>,
}

impl<'a> VerdictJson<'a> {
    pub fn new(v: &'a LabelingVerdict, certified_lambda: Option<f64>, support: Option<&'a [usize]>) -> Self {
        let res = &v.residuals;
        VerdictJson {
            class: v.class.as_str(),
            consistent: v.consistent,
            tol: v.tol,
            certified_lambda,
            support,
            residuals: ResidualsJson {
                weight_sum: res.weight_sum,
                max_vertex_sum: res.max_vertex_sum(),
                max_edge_product: res.max_edge_product(),
                max_consistency: res.max_consistency(),
                vertex_sums: &res.vertex_sums,
                edge_products: &res.edge_products,
                consistency: &res.consistency,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub name: &'static str,
    pub passed: bool,
    pub worst_violation: f64,
    pub at: Option<f64>,
    pub comparisons: usize,
    pub skipped: Option<&'static str>,
}

impl From<&CheckReport> for CheckJson {
    fn from(c: &CheckReport) -> Self {
        CheckJson {
            name: c.name,
            passed: c.passed,
            worst_violation: c.worst_violation,
            at: c.at,
            comparisons: c.comparisons,
            skipped: c.skipped,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PointJson {
    pub p: f64,
    pub lambda: f64,
    pub residual: f64,
    pub converged: bool,
    pub heuristic: bool,
    pub f: Option<f64>,
    pub g: Option<f64>,
    pub h: f64,
    pub ratio: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepJson {
    pub r: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub points: Vec<PointJson>,
    pub checks: Vec<CheckJson>,
}

impl SweepJson {
    pub fn new(curve: &SweepCurve, checks: &[CheckReport]) -> Self {
        SweepJson {
            r: curve.r,
            m: curve.m,
            min_degree: curve.min_degree,
            max_degree: curve.max_degree,
            points: curve
                .points
                .iter()
                .map(|pt| PointJson {
                    p: pt.p,
                    lambda: pt.lambda,
                    residual: pt.residual,
                    converged: pt.converged,
                    heuristic: pt.heuristic,
                    f: pt.f,
                    g: pt.g,
                    h: pt.h,
                    ratio: pt.ratio,
                })
                .collect(),
            checks: checks.iter().map(CheckJson::from).collect(),
        }
    }
}

/// Sweep CSV with columns p, lambda, f, g, h, ratio; undefined entries are
/// left empty.
pub fn sweep_csv(curve: &SweepCurve) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["p", "lambda", "f", "g", "h", "ratio"])?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for pt in &curve.points {
        w.write_record([
            pt.p.to_string(),
            pt.lambda.to_string(),
            opt(pt.f),
            opt(pt.g),
            pt.h.to_string(),
            pt.ratio.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Serialize)]
pub struct SandwichEntryJson<'a> {
    pub partition: &'a [Vec<usize>],
    pub lambda: f64,
    pub converged: bool,
    pub is_power: bool,
    pub is_join: bool,
}

#[derive(Debug, Serialize)]
pub struct SandwichJson<'a> {
    pub p: f64,
    pub lower: f64,
    pub upper: f64,
    pub ordering_holds: bool,
    pub endpoints_hold: bool,
    pub passed: bool,
    pub entries: Vec<SandwichEntryJson<'a>>,
}

impl<'a> From<&'a SandwichReport> for SandwichJson<'a> {
    fn from(s: &'a SandwichReport) -> Self {
        SandwichJson {
            p: s.p,
            lower: s.lower,
            upper: s.upper,
            ordering_holds: s.ordering_holds,
            endpoints_hold: s.endpoints_hold,
            passed: s.passed,
            entries: s
                .entries
                .iter()
                .map(|e| SandwichEntryJson {
                    partition: &e.partition,
                    lambda: e.lambda,
                    converged: e.converged,
                    is_power: e.is_power,
                    is_join: e.is_join,
                })
                .collect(),
        }
    }
}
