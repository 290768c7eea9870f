//! Command implementations. Each command is a pure function of its
//! [`RunConfig`] and input files, returning the report text and exit code.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use log::info;
use ucnorm::agler_cone::{agler_feasibility, row_cone_check};
use ucnorm::opspace::{is_cc, kv_tuple};
use ucnorm::polyeval::{kv_polynomial, sup_norm_lb, uc_norm_lb};
use ucnorm::random::{point_in_ball, rng_for};
use ucnorm::realization::{
    build_colligation, eval_transfer, eval_transfer_on_tuple, two_z1z2, two_z1z2_f, two_z1z2_sigma,
    verify_factorization,
};
use ucnorm::tensor_core::op_norm;
use ucnorm::{
    Base, CcStatus, Colligation, ComplexMatrix, ConeProblem, ConeShape, ConeStatus, FactorizationData,
    MatrixPolynomial, MatrixTuple, OperatorSpaceSpec, PickOptions, PickProblem, PickStatus, SamplePlan,
    SamplingBudget, SearchBudget, C64,
};

use crate::error::{exit, CliError, CliResult};
use crate::format::Document;

/// Seed, named tolerances and budgets, and the output path of one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub budgets: BTreeMap<String, usize>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    pub fn budget(&self, name: &str, default: usize) -> usize {
        self.budgets.get(name).copied().unwrap_or(default)
    }
}

/// A finished command: the main report, extra files to write and the exit
/// code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub files: Vec<(PathBuf, String)>,
    pub exit: u8,
}

impl Outcome {
    fn report(doc: &Document, exit: u8) -> Self {
        Self {
            report: doc.render(),
            files: Vec::new(),
            exit,
        }
    }
}

pub fn load(path: &Path) -> CliResult<Document> {
    let src = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Document::parse(&src).map_err(|e| e.in_file(path))
}

fn with_file<T>(path: &Path, r: CliResult<T>) -> CliResult<T> {
    r.map_err(|e| e.in_file(path))
}

// ---------------------------------------------------------------- factorization

/// Factorization data from a `fact` document: polynomials `p` and `F`,
/// the tuple `sigma` and sample `points`.
pub fn fact_from_doc(doc: &Document) -> CliResult<FactorizationData> {
    doc.expect_kind("fact")?;
    let p = doc.get_poly("p")?;
    let f = doc.get_poly("f")?;
    let sigma = doc.get_tuple("sigma")?;
    let points = doc.get_points("points")?;
    Ok(FactorizationData::from_polynomials(points.to_vec(), f, sigma.clone(), p)?)
}

pub fn fact_doc(p: &MatrixPolynomial, f: &MatrixPolynomial, sigma: &MatrixTuple, points: &[Vec<C64>]) -> Document {
    let mut d = Document::new("fact");
    d.poly("p", p).poly("f", f).tuple("sigma", sigma).points("points", points);
    d
}

pub fn verify_factorization_cmd(cfg: &RunConfig, input: &Path) -> CliResult<Outcome> {
    let data = with_file(input, load(input).and_then(|d| fact_from_doc(&d)))?;
    let tol = cfg.tol("tol", 1e-10);
    let (residual, pass) = verify_factorization(&data, tol)?;
    let mut d = Document::new("report");
    d.text("command", "verify-factorization")
        .int("variables", data.sigma.len() as u64)
        .int("state_dim", data.k() as u64)
        .int("output_dim", data.n_out() as u64)
        .int("points", data.len() as u64)
        .value("tol", tol)
        .value("residual", residual)
        .text("status", if pass { "pass" } else { "fail" });
    Ok(Outcome::report(&d, if pass { exit::OK } else { exit::NEGATIVE }))
}

// ---------------------------------------------------------------- colligations

pub fn colligation_doc(col: &Colligation, sigma: &MatrixTuple) -> Document {
    let mut d = Document::new("colligation");
    d.int("state_dim", col.k() as u64)
        .int("output_dim", col.n_out() as u64)
        .matrix("a", col.a())
        .matrix("b", col.b())
        .matrix("c", col.c())
        .matrix("d", col.d())
        .tuple("sigma", sigma)
        .value("unitarity_residual", col.unitarity_residual());
    d
}

/// Loads a colligation and its tuple, re-validating unitarity.
pub fn colligation_from_doc(doc: &Document) -> CliResult<(Colligation, MatrixTuple)> {
    doc.expect_kind("colligation")?;
    let col = Colligation::new(
        doc.get_matrix("a")?.clone(),
        doc.get_matrix("b")?.clone(),
        doc.get_matrix("c")?.clone(),
        doc.get_matrix("d")?.clone(),
    )?;
    let sigma = doc.get_tuple("sigma")?.clone();
    if sigma.dim() != col.k() {
        return Err(ucnorm::Error::Dimension(format!(
            "sigma is {}x{} but the state space has dimension {}",
            sigma.dim(),
            sigma.dim(),
            col.k()
        ))
        .into());
    }
    Ok((col, sigma))
}

pub fn realize_cmd(cfg: &RunConfig, input: &Path) -> CliResult<Outcome> {
    let data = with_file(input, load(input).and_then(|d| fact_from_doc(&d)))?;
    let tol = cfg.tol("tol", 1e-9);
    let (residual, pass) = verify_factorization(&data, tol)?;
    if !pass {
        let mut d = Document::new("report");
        d.text("command", "realize")
            .value("tol", tol)
            .value("residual", residual)
            .text("status", "fail");
        return Ok(Outcome::report(&d, exit::NEGATIVE));
    }
    let col = build_colligation(&data, tol)?;
    info!("colligation with state dimension {}", col.k());
    let mut d = colligation_doc(&col, &data.sigma);
    d.value("factorization_residual", residual);
    Ok(Outcome::report(&d, exit::OK))
}

// ---------------------------------------------------------------- evaluation

/// Parses `re[:im],re[:im],…`.
pub fn parse_point(s: &str) -> CliResult<Vec<C64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let (re, im) = t.split_once(':').unwrap_or((t, "0"));
            let num = |x: &str| {
                x.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Usage(format!("bad coordinate `{t}` in --point")))
            };
            Ok(C64::new(num(re)?, num(im)?))
        })
        .collect()
}

pub enum EvalAt {
    Point(Vec<C64>),
    Tuple(PathBuf),
}

/// Evaluates a polynomial (`poly` file) or the transfer function of a
/// colligation (`colligation` file) at a point or on a commuting tuple.
pub fn eval_cmd(_cfg: &RunConfig, input: &Path, at: &EvalAt) -> CliResult<Outcome> {
    let doc = load(input)?;
    let tuple = match at {
        EvalAt::Tuple(path) => {
            let t = with_file(path, load(path).and_then(|d| {
                d.expect_kind("tuple")?;
                Ok(d.get_tuple("t")?.clone())
            }))?;
            Some(t)
        }
        EvalAt::Point(_) => None,
    };
    let value = match doc.kind.as_str() {
        "poly" => {
            let p = with_file(input, doc.get_poly("p").cloned())?;
            match (at, &tuple) {
                (EvalAt::Point(z), _) => p.eval_point(z)?,
                (_, Some(t)) => p.eval_tuple(t)?,
                _ => unreachable!(),
            }
        }
        "colligation" => {
            let (col, sigma) = with_file(input, colligation_from_doc(&doc))?;
            match (at, &tuple) {
                (EvalAt::Point(z), _) => eval_transfer(&col, &sigma, z)?,
                (_, Some(t)) => eval_transfer_on_tuple(&col, &sigma, t, 1.0)?,
                _ => unreachable!(),
            }
        }
        other => {
            return Err(CliError::Format(format!("cannot evaluate a ucnorm-{other} file")).in_file(input));
        }
    };
    let mut d = Document::new("report");
    d.text("command", "eval");
    if let EvalAt::Point(z) = at {
        d.points("at", std::slice::from_ref(z));
    }
    d.matrix("value", &value).value("norm", op_norm(&value));
    Ok(Outcome::report(&d, exit::OK))
}

// ---------------------------------------------------------------- von Neumann search

pub struct VnOptions {
    pub space: Option<String>,
    pub include_library: bool,
}

/// Searches for a commuting tuple with `‖p(S)‖` above the sup norm of `p`
/// on the scalar domain. Exit code 2 flags a violated inequality.
pub fn vn_search_cmd(cfg: &RunConfig, input: &Path, opts: &VnOptions) -> CliResult<Outcome> {
    let doc = load(input)?;
    let p = with_file(input, doc.expect_kind("poly").and_then(|_| doc.get_poly("p").cloned()))?;
    let spec = match (&opts.space, doc.has("space")) {
        (Some(tag), _) => OperatorSpaceSpec::from_tag(tag, p.n())?,
        (None, true) => with_file(input, doc.get_space())?,
        (None, false) => {
            return Err(CliError::Usage("no operator space: pass --space or add a space record".into()))
        }
    };
    let samples = cfg.budget("samples", 2000);
    let budget = SearchBudget {
        samples,
        max_dim: cfg.budget("max_dim", 4),
        seed: cfg.seed,
        include_library: opts.include_library,
        degree_cap: cfg.budget("degree_cap", 6) as u32,
        polish_steps: cfg.budget("polish_steps", 400),
    };
    let (lb, witness) = uc_norm_lb(&p, &spec, budget)?;
    let verdict = is_cc(&spec, &witness, cfg.tol("tol", 1e-9), SamplingBudget::none())?;
    let sup = match spec.dual() {
        Some(domain) => {
            let grid = cfg.budget("grid", 60);
            let grid_ok = (grid as f64).powi(p.n() as i32) <= 1e7;
            let plan = if domain.base() == Some(Base::Linf) && grid_ok {
                SamplePlan::TorusGrid { per_axis: grid }
            } else {
                SamplePlan::Random {
                    count: samples,
                    seed: cfg.seed,
                }
            };
            Some(sup_norm_lb(&p, &domain, plan))
        }
        None => None,
    };
    let margin = cfg.tol("margin", 1e-6);
    let violated = sup.is_some_and(|s| lb > s + margin);

    let mut d = Document::new("report");
    d.text("command", "vn-search")
        .space(&spec)
        .value("tuple_norm", lb)
        .int("witness_dim", witness.dim() as u64);
    if let Some(s) = sup {
        d.value("sup_norm_estimate", s).value("gap", lb - s);
    }
    d.text("witness_cc", status_word(verdict.status))
        .text("von_neumann", if violated { "violated" } else { "not-violated" })
        .tuple("witness", &witness);
    Ok(Outcome::report(&d, if violated { exit::NEGATIVE } else { exit::OK }))
}

fn status_word(s: CcStatus) -> &'static str {
    match s {
        CcStatus::Verified => "verified",
        CcStatus::Falsified => "falsified",
        CcStatus::Unknown => "unknown",
    }
}

// ---------------------------------------------------------------- Pick

pub fn pick_from_doc(doc: &Document) -> CliResult<PickProblem> {
    doc.expect_kind("pick")?;
    let spec = doc.get_space()?;
    let nodes = doc.get_points("nodes")?.to_vec();
    let targets = doc.get_scalars("targets")?.to_vec();
    Ok(PickProblem::new(spec, nodes, targets)?)
}

pub fn pick_cmd(cfg: &RunConfig, input: &Path) -> CliResult<Outcome> {
    let prob = with_file(input, load(input).and_then(|d| pick_from_doc(&d)))?;
    let opts = PickOptions {
        max_iter: cfg.budget("max_iter", PickOptions::default().max_iter),
        tol: cfg.tol("tol", PickOptions::default().tol),
        dim_cap: cfg.budget("dim_cap", PickOptions::default().dim_cap),
    };
    let res = ucnorm::pick::pick_solve_with(&prob, opts)?;
    let (word, code) = match res.status {
        PickStatus::Feasible => ("feasible", exit::OK),
        PickStatus::Infeasible => ("infeasible", exit::NEGATIVE),
        PickStatus::Undecided => ("undecided", exit::UNDECIDED),
    };
    let mut d = Document::new("report");
    d.text("command", "pick").space(prob.spec()).text("status", word);
    if let Some(m) = res.min_eigenvalue {
        d.value("min_eigenvalue", m);
    }
    d.value("residual", res.residual).int("iterations", res.iterations as u64);
    if let (Some(col), Some(w)) = (&res.interpolant, &res.witness) {
        let values = prob
            .nodes()
            .iter()
            .map(|z| res.interpolate(z))
            .collect::<ucnorm::Result<Vec<_>>>()?;
        d.scalars("interpolated", &values);
        for r in colligation_doc(col, &w.tuple).records {
            d.push(r);
        }
    }
    Ok(Outcome::report(&d, code))
}

// ---------------------------------------------------------------- cone

/// A `cone` document holds a space and points, and either a polynomial `p`
/// (target `I − p(λ_i)p(λ_j)*`) or a Hermitian `target` with `int block`.
pub fn cone_from_doc(doc: &Document) -> CliResult<ConeProblem> {
    doc.expect_kind("cone")?;
    let spec = doc.get_space()?;
    let points = doc.get_points("points")?.to_vec();
    if doc.has("p") {
        let p = doc.get_poly("p")?;
        let values = points
            .iter()
            .map(|z| p.eval_point(z))
            .collect::<ucnorm::Result<Vec<ComplexMatrix>>>()?;
        Ok(ConeProblem::from_values(spec, points, &values)?)
    } else {
        let target = doc.get_matrix("target")?.clone();
        let block = doc.get_int("block")? as usize;
        Ok(ConeProblem::new(spec, points, target, block)?)
    }
}

pub fn cone_cmd(cfg: &RunConfig, input: &Path) -> CliResult<Outcome> {
    let prob = with_file(input, load(input).and_then(|d| cone_from_doc(&d)))?;
    let closed_form = prob.shape() == ConeShape::Ball || prob.spec().n() == 1;
    let cert = if closed_form {
        row_cone_check(&prob)?
    } else {
        agler_feasibility(&prob, cfg.budget("max_iter", 10_000), cfg.tol("tol", 1e-9))?
    };
    // the closed form decides; the iterative solver can only fail to converge
    let (word, code) = match (cert.status, closed_form) {
        (ConeStatus::Feasible, _) => ("feasible", exit::OK),
        (ConeStatus::Undecided, true) => ("infeasible", exit::NEGATIVE),
        (ConeStatus::Undecided, false) => ("undecided", exit::UNDECIDED),
    };
    let mut d = Document::new("certificate");
    d.space(prob.spec())
        .text("status", word)
        .text(
            "shape",
            match cert.shape {
                ConeShape::Polydisk => "polydisk",
                ConeShape::Ball => "ball",
            },
        )
        .value("residual", cert.residual)
        .int("iterations", cert.iterations as u64)
        .int("kernels", cert.kernels.len() as u64);
    for (k, g) in cert.kernels.iter().enumerate() {
        d.matrix(&format!("kernel.{}", k + 1), g);
    }
    Ok(Outcome::report(&d, code))
}

// ---------------------------------------------------------------- bundled examples

pub const EXAMPLE_NAMES: [&str; 2] = ["kv", "twozw"];

/// Sample points of the two-variable factorization example: seeded points
/// of the open unit ball.
pub fn twozw_points(seed: u64, count: usize) -> Vec<Vec<C64>> {
    (0..count as u64)
        .map(|i| point_in_ball(Base::L2, 2, 0.95, &mut rng_for(seed, i)))
        .collect()
}

/// Files for a bundled example, relative to the output directory.
pub fn example_files(name: &str, seed: u64) -> CliResult<Vec<(PathBuf, String)>> {
    match name {
        "kv" => {
            let mut t = Document::new("tuple");
            t.tuple("t", &kv_tuple());
            let mut p = Document::new("poly");
            p.poly("p", &kv_polynomial());
            Ok(vec![("kv.tuple".into(), t.render()), ("kv.poly".into(), p.render())])
        }
        "twozw" => {
            let mut d = fact_doc(&two_z1z2(), &two_z1z2_f(), &two_z1z2_sigma(), &twozw_points(seed, 16));
            d.text("f_recipe", "1 0 0 0 z1 z2");
            Ok(vec![("twozw.fact".into(), d.render())])
        }
        other => Err(CliError::Usage(format!(
            "unknown example `{other}`, expected one of: {}",
            EXAMPLE_NAMES.join(", ")
        ))),
    }
}

pub fn examples_cmd(cfg: &RunConfig, name: &str) -> CliResult<Outcome> {
    let dir = cfg.output.clone().unwrap_or_else(|| PathBuf::from("."));
    let files: Vec<(PathBuf, String)> = example_files(name, cfg.seed)?
        .into_iter()
        .map(|(p, s)| (dir.join(p), s))
        .collect();
    let mut d = Document::new("report");
    d.text("command", "examples").text("name", name);
    for (path, _) in &files {
        d.text("wrote", &path.display().to_string());
    }
    Ok(Outcome {
        report: d.render(),
        files,
        exit: exit::OK,
    })
}
