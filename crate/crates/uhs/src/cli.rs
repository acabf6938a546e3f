use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use uhs_core::analysis::{
    check_concavity, check_monotone_f_g, check_ratio_monotone, degree_bound, extension_sandwich_check,
    simple_degree_bound, sweep,
};
use uhs_core::constructions::{self, construct, extensions_enumerate, Operation};
use uhs_core::hypergraph::UniformHypergraph;
use uhs_core::labeling::{
    classify_labeling, classify_labeling_sub_r, labeling_from_eigenvector, sub_r_upper_bound, verify_normal_certificate,
    LabelClass, LabelingVerdict, PVector,
};
use uhs_core::spectral::{certificate_search_sub_r, solve_p_spectral, SolverOptions, SpectralResult};

use crate::format::{
    read_certificate, read_hypergraph, sweep_csv, to_json, write_atomic, write_hypergraph, write_json,
    CertificateFile, FormatError, ResultJson, SandwichJson, SweepJson, VerdictJson,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "uhs", version, about = "p-spectral radii of uniform hypergraphs and their labeling certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct SolverArgs {
    /// Eigenequation residual tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random starts for p < r.
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// Fixed-point damping in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    damping: f64,
    /// Largest n for the exhaustive p < r certificate search.
    #[arg(long, default_value_t = 20)]
    subgraph_limit: usize,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            seed: self.seed,
            restarts: self.restarts,
            damping: self.damping,
            subgraph_limit: self.subgraph_limit,
            ..SolverOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Join,
    Product,
    Power,
    Extend,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute λ^(p) and an eigenvector.
    Solve {
        /// `.uhg` file or fixture name.
        input: String,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the labeling built from the eigenvector here.
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify a certificate against a hypergraph.
    Verify {
        input: String,
        #[arg(long)]
        cert: PathBuf,
        /// Must match the certificate's p when given.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate both degree bounds.
    Bound {
        input: String,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Build a join, direct product, generalized power or all extensions.
    Construct {
        #[arg(long, value_enum)]
        op: Op,
        /// `.uhg` files or fixture names.
        #[arg(required = true, num_args = 1..=2)]
        operands: Vec<String>,
        /// Also solve the operands at p and report the predicted λ.
        #[arg(long)]
        p: Option<f64>,
        #[command(flatten)]
        solver: SolverArgs,
        /// Output file (a directory for `extend`).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Solve over a grid of p and run the monotonicity and convexity checks.
    Sweep {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<f64>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Induced sub-hypergraph certificate search for 1 ≤ p < r.
    CertifySubR {
        input: String,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Write the named example hypergraphs (and their certificates at --p).
    Fixtures {
        #[arg(long, default_value = ".")]
        output: PathBuf,
        #[arg(long)]
        p: Option<f64>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] uhs_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(uhs_core::Error::NoConvergence { .. } | uhs_core::Error::NoCertificate(_)) => {
                EXIT_NOT_CONVERGED
            }
            _ => EXIT_INVALID,
        }
    }
}

type CliResult = Result<i32, CliError>;

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_INVALID
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Solve { input, p, solver, emit_cert, format, output } => {
            cmd_solve(&input, p, &solver.options(), emit_cert.as_deref(), format, output.as_deref(), out)
        }
        Command::Verify { input, cert, p, tol, format } => cmd_verify(&input, &cert, p, tol, format, out),
        Command::Bound { input, p, format } => cmd_bound(&input, p, format, out),
        Command::Construct { op, operands, p, solver, output, format } => {
            cmd_construct(op, &operands, p, &solver.options(), output.as_deref(), format, out)
        }
        Command::Sweep { input, grid, solver, format, output } => {
            cmd_sweep(&input, &grid, &solver.options(), format, output.as_deref(), out)
        }
        Command::CertifySubR { input, p, solver, emit_cert, format } => {
            cmd_certify(&input, p, &solver.options(), emit_cert.as_deref(), format, out)
        }
        Command::Fixtures { output, p } => cmd_fixtures(&output, p, out, err),
    }
}

/// A path that exists is read as `.uhg`; otherwise a fixture name is tried.
fn load(input: &str) -> Result<UniformHypergraph, CliError> {
    let path = Path::new(input);
    if path.exists() {
        return Ok(read_hypergraph(path)?);
    }
    if let Some(g) = constructions::fixture(input) {
        return Ok(g);
    }
    Ok(read_hypergraph(path)?)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| FormatError::Io { path: PathBuf::from("<stdout>"), source })?,
    }
    Ok(())
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = to_json(value);
    s.push('\n');
    s
}

fn reject_csv(format: Option<Format>, command: &str) -> Result<(), CliError> {
    if format == Some(Format::Csv) {
        return Err(CliError::Usage(format!("`{command}` has no CSV output; use json or text")));
    }
    Ok(())
}

fn cmd_solve(
    input: &str,
    p: f64,
    opts: &SolverOptions,
    emit_cert: Option<&Path>,
    format: Option<Format>,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    reject_csv(format, "solve")?;
    let g = load(input)?;
    let res = solve_p_spectral(&g, p, opts)?;
    if let Some(path) = emit_cert {
        write_json(path, &certificate_from_result(&g, &res)?)?;
    }
    let text = match format.unwrap_or(Format::Json) {
        Format::Text => solve_text(&res),
        _ => json_line(&ResultJson::from(&res)),
    };
    emit(out, output, &text)?;
    Ok(if res.converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

/// The labeling built from a solver result: on all of G for p ≥ r, and on
/// G[support] (recorded in the file) for p < r.
fn certificate_from_result(g: &UniformHypergraph, res: &SpectralResult) -> Result<CertificateFile, CliError> {
    if res.lambda <= 0.0 {
        return Err(CliError::Usage("no certificate for a hypergraph without edges".into()));
    }
    if res.p >= g.r() as f64 {
        let l = labeling_from_eigenvector(g, &res.vector(), res.lambda)?;
        return Ok(CertificateFile::from_labeling(&l, None));
    }
    let sub = g.induced(&res.support);
    let x: Vec<f64> = sub.vertices.iter().map(|&v| res.x[v]).collect();
    let l = labeling_from_eigenvector(&sub.graph, &PVector::new(x, res.p)?, res.lambda)?;
    Ok(CertificateFile::from_labeling(&l, Some(res.support.clone())))
}

fn solve_text(res: &SpectralResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "lambda      {:.10}", res.lambda);
    let _ = writeln!(s, "p           {}", res.p);
    let _ = writeln!(s, "residual    {:.3e}", res.residual);
    let _ = writeln!(s, "iterations  {}", res.iterations);
    let _ = writeln!(s, "converged   {}", res.converged);
    let _ = writeln!(s, "method      {}", res.method.as_str());
    let _ = writeln!(s, "vertex  x");
    for (v, x) in res.x.iter().enumerate() {
        let _ = writeln!(s, "{v:>6}  {x:.12}");
    }
    s
}

fn cmd_verify(input: &str, cert_path: &Path, p: Option<f64>, tol: f64, format: Option<Format>, out: &mut dyn Write) -> CliResult {
    reject_csv(format, "verify")?;
    let g = load(input)?;
    let cert = read_certificate(cert_path)?;
    if let Some(p) = p {
        if (p - cert.p).abs() > 1e-12 * p.abs().max(1.0) {
            return Err(CliError::Usage(format!("--p {p} does not match the certificate's p = {}", cert.p)));
        }
    }
    let (verdict, certified, support) = verify_certificate(&g, &cert, tol)?;
    let text = match format.unwrap_or(Format::Json) {
        Format::Text => verdict_text(&verdict, certified),
        _ => json_line(&VerdictJson::new(&verdict, certified, support.as_deref())),
    };
    emit(out, None, &text)?;
    Ok(EXIT_OK)
}

type Verified = (LabelingVerdict, Option<f64>, Option<Vec<usize>>);

fn verify_certificate(g: &UniformHypergraph, cert: &CertificateFile, tol: f64) -> Result<Verified, CliError> {
    let p = cert.p;
    if let Some(support) = &cert.support {
        if let Some(&v) = support.iter().find(|&&v| v >= g.n()) {
            return Err(uhs_core::Error::UnknownVertex { vertex: v, n: g.n() }.into());
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Usage("certificate support must be strictly increasing".into()));
        }
        let sub = g.induced(support);
        let l = cert.to_labeling(&sub.graph)?;
        let verdict = verify_normal_certificate(&sub.graph, &l, tol)?;
        let certified = (verdict.class == LabelClass::Normal && verdict.consistent).then(|| l.certified_lambda());
        return Ok((verdict, certified, Some(support.clone())));
    }
    if p >= g.r() as f64 {
        let l = cert.to_labeling(g)?;
        let verdict = classify_labeling(g, &l, tol)?;
        let certified = (verdict.class == LabelClass::Normal && verdict.consistent).then(|| l.certified_lambda());
        return Ok((verdict, certified, None));
    }
    // p < r without a support: only the subnormal (upper bound) conditions apply.
    if cert.b.len() != g.m() || cert.b.iter().any(|row| row.len() != g.r()) {
        return Err(uhs_core::Error::SupportMismatch(format!("B must have {} rows of {} entries", g.m(), g.r())).into());
    }
    let corners: Vec<f64> = cert.b.iter().flatten().copied().collect();
    let verdict = classify_labeling_sub_r(g, &corners, p, cert.alpha, tol)?;
    let bound = (verdict.class == LabelClass::Subnormal).then(|| sub_r_upper_bound(cert.alpha, g.r(), g.m(), p));
    Ok((verdict, bound, None))
}

fn verdict_text(v: &LabelingVerdict, certified: Option<f64>) -> String {
    let res = &v.residuals;
    let mut s = String::new();
    let _ = writeln!(s, "class             {}", v.class);
    let _ = writeln!(s, "consistent        {}", v.consistent);
    let _ = writeln!(s, "tol               {:e}", v.tol);
    if let Some(ws) = res.weight_sum {
        let _ = writeln!(s, "weight sum - 1    {ws:.3e}");
    }
    let _ = writeln!(s, "max |row sum - 1| {:.3e}", res.max_vertex_sum());
    let _ = writeln!(s, "max edge residual {:.3e}", res.max_edge_product());
    let _ = writeln!(s, "max ratio spread  {:.3e}", res.max_consistency());
    if let Some(l) = certified {
        let _ = writeln!(s, "lambda            {l:.10}");
    }
    s
}

#[derive(Serialize)]
struct BoundJson {
    p: f64,
    degree_bound: f64,
    simple_degree_bound: f64,
}

fn cmd_bound(input: &str, p: f64, format: Option<Format>, out: &mut dyn Write) -> CliResult {
    reject_csv(format, "bound")?;
    let g = load(input)?;
    let b = BoundJson { p, degree_bound: degree_bound(&g, p)?, simple_degree_bound: simple_degree_bound(&g, p)? };
    let text = match format.unwrap_or(Format::Json) {
        Format::Text => format!(
            "degree bound         {:.10}\nsimple degree bound  {:.10}\n",
            b.degree_bound, b.simple_degree_bound
        ),
        _ => json_line(&b),
    };
    emit(out, None, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ConstructJson {
    op: &'static str,
    inputs: Vec<String>,
    r: usize,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    operand_lambdas: Option<Vec<f64>>,
    predicted_lambda: Option<f64>,
    provenance: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    uhg: Option<String>,
}

#[derive(Serialize)]
struct ExtensionJson<'a> {
    file: PathBuf,
    partition: &'a [Vec<usize>],
}

#[derive(Serialize)]
struct ExtendJson<'a> {
    extensions: Vec<ExtensionJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sandwich: Option<SandwichJson<'a>>,
}

fn cmd_construct(
    op: Op,
    operands: &[String],
    p: Option<f64>,
    opts: &SolverOptions,
    output: Option<&Path>,
    format: Option<Format>,
    out: &mut dyn Write,
) -> CliResult {
    reject_csv(format, "construct")?;
    let graphs = operands.iter().map(|s| load(s)).collect::<Result<Vec<_>, _>>()?;
    if op == Op::Extend {
        let [g] = &graphs[..] else {
            return Err(CliError::Usage("`--op extend` takes one operand".into()));
        };
        let Some(dir) = output else {
            return Err(CliError::Usage("`--op extend` needs --output <directory>".into()));
        };
        std::fs::create_dir_all(dir).map_err(|source| FormatError::Io { path: dir.to_path_buf(), source })?;
        let exts = extensions_enumerate(g)?;
        let mut listing = Vec::with_capacity(exts.len());
        for (k, ext) in exts.iter().enumerate() {
            let file = dir.join(format!("ext_{k:04}.uhg"));
            write_hypergraph(&file, &ext.graph)?;
            listing.push(ExtensionJson { file, partition: &ext.partition });
        }
        let sandwich = match p {
            Some(p) => Some(extension_sandwich_check(g, p, opts)?),
            None => None,
        };
        let report = ExtendJson { extensions: listing, sandwich: sandwich.as_ref().map(SandwichJson::from) };
        emit(out, None, &json_line(&report))?;
        return Ok(EXIT_OK);
    }

    let operation = match op {
        Op::Join => Operation::Join,
        Op::Product => Operation::Product,
        Op::Power => Operation::Power,
        Op::Extend => unreachable!("handled above"),
    };
    let refs: Vec<&UniformHypergraph> = graphs.iter().collect();
    let lambdas = match p {
        Some(p) => Some(refs.iter().map(|g| solve_p_spectral(g, p, opts).map(|r| r.lambda)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let report = construct(operation, &refs, lambdas.as_deref(), p.unwrap_or(f64::NAN))?;
    if let Some(path) = output {
        write_hypergraph(path, &report.result)?;
    }
    let format = format.unwrap_or(if output.is_some() { Format::Json } else { Format::Text });
    if format == Format::Text {
        if output.is_none() {
            emit(out, None, &report.result.to_text())?;
        } else if let Some(lambda) = report.predicted_lambda {
            emit(out, None, &format!("predicted lambda  {lambda:.10}\n"))?;
        }
        return Ok(EXIT_OK);
    }
    let json = ConstructJson {
        op: match op {
            Op::Join => "join",
            Op::Product => "product",
            Op::Power => "power",
            Op::Extend => "extend",
        },
        inputs: report.inputs,
        r: report.result.r(),
        n: report.result.n(),
        m: report.result.m(),
        p,
        operand_lambdas: lambdas,
        predicted_lambda: report.predicted_lambda,
        provenance: report.provenance,
        output: output.map(Path::to_path_buf),
        uhg: output.is_none().then(|| report.result.to_text()),
    };
    emit(out, None, &json_line(&json))?;
    Ok(EXIT_OK)
}

fn cmd_sweep(
    input: &str,
    grid: &[f64],
    opts: &SolverOptions,
    format: Option<Format>,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    let g = load(input)?;
    let curve = sweep(&g, grid, opts)?;
    let mut checks = Vec::new();
    checks.extend(check_monotone_f_g(&curve));
    checks.push(check_ratio_monotone(&curve));
    checks.extend(check_concavity(&curve));
    let text = match format.unwrap_or(Format::Json) {
        Format::Csv => sweep_csv(&curve).map_err(|source| FormatError::Csv { path: PathBuf::from("<csv>"), source })?,
        Format::Json => json_line(&SweepJson::new(&curve, &checks)),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:>10} {:>18} {:>10}", "p", "lambda", "converged");
            for pt in &curve.points {
                let _ = writeln!(s, "{:>10} {:>18.12} {:>10}", pt.p, pt.lambda, pt.converged);
            }
            for c in &checks {
                let status = match (c.skipped, c.passed) {
                    (Some(_), _) => "skipped",
                    (None, true) => "pass",
                    (None, false) => "FAIL",
                };
                let _ = writeln!(s, "{:<24} {status:<8} worst {:.3e}", c.name, c.worst_violation);
            }
            s
        }
    };
    emit(out, output, &text)?;
    Ok(if curve.all_converged() { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

#[derive(Serialize)]
struct CertifyJson {
    support: Vec<usize>,
    alpha: f64,
    lambda: f64,
    exhaustive: bool,
    candidates: usize,
    certificate: CertificateFile,
}

fn cmd_certify(
    input: &str,
    p: f64,
    opts: &SolverOptions,
    emit_cert: Option<&Path>,
    format: Option<Format>,
    out: &mut dyn Write,
) -> CliResult {
    reject_csv(format, "certify-sub-r")?;
    let g = load(input)?;
    let cert = certificate_search_sub_r(&g, p, opts)?;
    let file = CertificateFile::from_labeling(&cert.labeling, Some(cert.support.clone()));
    if let Some(path) = emit_cert {
        write_json(path, &file)?;
    }
    let text = match format.unwrap_or(Format::Json) {
        Format::Text => format!(
            "S           {:?}\nalpha       {:.12}\nlambda      {:.10}\nexhaustive  {}\ncandidates  {}\n",
            cert.support, cert.alpha, cert.lambda, cert.exhaustive, cert.candidates
        ),
        _ => json_line(&CertifyJson {
            support: cert.support.clone(),
            alpha: cert.alpha,
            lambda: cert.lambda,
            exhaustive: cert.exhaustive,
            candidates: cert.candidates,
            certificate: file,
        }),
    };
    emit(out, None, &text)?;
    Ok(if cert.exhaustive { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn cmd_fixtures(dir: &Path, p: Option<f64>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    std::fs::create_dir_all(dir).map_err(|source| FormatError::Io { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    let graphs = [
        ("grid_g1.uhg", constructions::grid_g1()),
        ("star_g2.uhg", constructions::star_g2()),
        ("two_triangles_path.uhg", constructions::two_triangles_path()),
        ("k3.uhg", constructions::k_r_r(3)?),
    ];
    for (name, g) in &graphs {
        let path = dir.join(name);
        write_hypergraph(&path, g)?;
        written.push(path);
    }
    if let Some(p) = p {
        for (name, threshold, make) in [
            ("grid_cert.json", 4.0, constructions::grid_certificate as fn(f64) -> uhs_core::Result<_>),
            ("star_cert.json", 3.0, constructions::star_certificate),
        ] {
            if p > threshold {
                let path = dir.join(name);
                write_json(&path, &CertificateFile::from_labeling(&make(p)?, None))?;
                written.push(path);
            } else {
                let _ = writeln!(err, "note: {name} needs p > {threshold}; skipped");
            }
        }
    }
    emit(out, None, &json_line(&written))?;
    Ok(EXIT_OK)
}
