//! Job dispatch for the `nijenhuis` command-line tool.
//!
//! A [`JobSpec`] names a command and its input files; [`run`] loads the
//! files, calls the matching library check and collects the reports into a
//! [`RunReport`]. [`batch`] runs a manifest of jobs in parallel and keeps
//! the manifest order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use nijenhuis::algebra::{classify_tensor, contract, is_leibniz, BilinearOp, OneOneTensor};
use nijenhuis::cartan::{PolyBivector, PolyForm, PolyOneOne};
use nijenhuis::courant_fd::{
    bialgebroid_nijenhuis_conditions, check_courant_axioms, drinfeld_double, is_dirac,
    is_dirac_nijenhuis, BlockTensor, CourantStructure, LieBialgebra, Subspace,
};
use nijenhuis::courant_tm::{
    check_dirac_graph, check_lambda_omega, check_poisson_nijenhuis_weak,
    check_presymplectic_nijenhuis, check_trivial_bialgebroid_nijenhuis, courant_nijenhuis_test,
    dirac_nijenhuis_on_graph, verify_lemma2, verify_theorem2, CourantTensor, DiracGraph,
    TestFamily,
};
use nijenhuis::{json, CheckReport};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const DEFAULT_FAMILY_DEGREE: u32 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckLeibniz,
    ClassifyTensor,
    Contract,
    Double,
    CheckCourant,
    CheckDirac,
    CheckDiracNijenhuis,
    CheckBialgebroidNijenhuis,
    CheckTheorem2,
    CheckTheorem3,
    CheckLemma2,
    CheckPn,
    CheckPresymplecticN,
    CheckLambdaOmega,
    CheckTrivialBialgebroid,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    /// Input files the command expects, for usage messages.
    pub fn usage(self) -> &'static str {
        use Command::*;
        match self {
            CheckLeibniz => "OP",
            ClassifyTensor | Contract => "OP TENSOR",
            Double => "BIALGEBRA",
            CheckCourant => "COURANT|BIALGEBRA",
            CheckDirac => "COURANT|BIALGEBRA SUBSPACE  or  GRAPH",
            CheckDiracNijenhuis => "COURANT|BIALGEBRA SUBSPACE TENSOR  or  GRAPH COURANT_TENSOR",
            CheckBialgebroidNijenhuis => "BIALGEBRA BLOCK_TENSOR",
            CheckTheorem2 | CheckTheorem3 | CheckLemma2 => "POLY_TENSOR",
            CheckPn => "BIVECTOR POLY_TENSOR",
            CheckPresymplecticN => "FORM POLY_TENSOR",
            CheckLambdaOmega => "FORM BIVECTOR",
            CheckTrivialBialgebroid => "COURANT_TENSOR",
        }
    }
}

fn default_degree() -> u32 {
    DEFAULT_FAMILY_DEGREE
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    #[serde(default = "default_degree")]
    pub family_degree: u32,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub job: JobSpec,
    pub checks: Vec<CheckReport>,
    /// Structure produced by `contract` and `double`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub artifact: Option<serde_json::Value>,
    /// Set when the inputs could not be loaded or violate a precondition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Seconds.
    pub wall_time: f64,
    pub version: String,
}

impl RunReport {
    /// 0 when every check passes, 1 when one fails, 2 on input errors.
    pub fn status(&self) -> i32 {
        if self.error.is_some() {
            2
        } else if self.checks.iter().all(CheckReport::passed) {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BatchReport {
    pub jobs: Vec<RunReport>,
    pub wall_time: f64,
    pub version: String,
}

impl BatchReport {
    pub fn status(&self) -> i32 {
        self.jobs.iter().map(RunReport::status).max().unwrap_or(0)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    jobs: Vec<JobSpec>,
}

struct Outcome {
    checks: Vec<CheckReport>,
    artifact: Option<serde_json::Value>,
}

impl From<CheckReport> for Outcome {
    fn from(r: CheckReport) -> Self {
        Outcome {
            checks: vec![r],
            artifact: None,
        }
    }
}

fn load_value(path: &Path) -> Result<serde_json::Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn from_value<T: DeserializeOwned>(path: &Path, v: serde_json::Value) -> Result<T, String> {
    serde_json::from_value(v).map_err(|e| format!("{}: {e}", path.display()))
}

/// A Courant structure file, or a Lie bialgebra file standing for its double.
fn load_courant(path: &Path) -> Result<CourantStructure, String> {
    let v = load_value(path)?;
    if v.get("dim_e").is_some() {
        Ok(drinfeld_double(&from_value::<LieBialgebra>(path, v)?))
    } else {
        from_value(path, v)
    }
}

fn lib<T>(r: nijenhuis::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn expect_inputs(job: &JobSpec, counts: &[usize]) -> Result<(), String> {
    if counts.contains(&job.inputs.len()) {
        Ok(())
    } else {
        Err(format!(
            "{} expects inputs {}, got {} file(s)",
            job.command.name(),
            job.command.usage(),
            job.inputs.len()
        ))
    }
}

fn dispatch(job: &JobSpec) -> Result<Outcome, String> {
    use Command::*;
    let inputs = &job.inputs;
    let arg = |i: usize| inputs[i].as_path();
    let fam = |n: usize| TestFamily::new(n, job.family_degree);
    match job.command {
        CheckLeibniz => {
            expect_inputs(job, &[1])?;
            let op: BilinearOp = load(arg(0))?;
            Ok(is_leibniz(&op).into())
        }
        ClassifyTensor => {
            expect_inputs(job, &[2])?;
            let op: BilinearOp = load(arg(0))?;
            let n: OneOneTensor = load(arg(1))?;
            let c = lib(classify_tensor(&op, &n))?;
            Ok(c.report.into())
        }
        Contract => {
            expect_inputs(job, &[2])?;
            let op: BilinearOp = load(arg(0))?;
            let n: OneOneTensor = load(arg(1))?;
            let c = lib(contract(&op, &n))?;
            Ok(Outcome {
                checks: vec![CheckReport::pass(
                    "contract",
                    format!("contracted structure constants, dim {}", c.dim()),
                )],
                artifact: Some(serde_json::to_value(&c).expect("serializable")),
            })
        }
        Double => {
            expect_inputs(job, &[1])?;
            let b: LieBialgebra = load(arg(0))?;
            let cs = drinfeld_double(&b);
            Ok(Outcome {
                checks: vec![b.check()],
                artifact: Some(serde_json::to_value(&cs).expect("serializable")),
            })
        }
        CheckCourant => {
            expect_inputs(job, &[1])?;
            Ok(check_courant_axioms(&load_courant(arg(0))?).into())
        }
        CheckDirac => {
            expect_inputs(job, &[1, 2])?;
            if inputs.len() == 1 {
                let g: DiracGraph = load(arg(0))?;
                Ok(lib(check_dirac_graph(&g, &fam(g.n())))?.into())
            } else {
                let cs = load_courant(arg(0))?;
                let l: Subspace = load(arg(1))?;
                Ok(lib(is_dirac(&cs, &l))?.into())
            }
        }
        CheckDiracNijenhuis => {
            expect_inputs(job, &[2, 3])?;
            if inputs.len() == 2 {
                let g: DiracGraph = load(arg(0))?;
                let n: CourantTensor = load(arg(1))?;
                Ok(lib(dirac_nijenhuis_on_graph(&g, &n, &fam(g.n())))?.into())
            } else {
                let cs = load_courant(arg(0))?;
                let l: Subspace = load(arg(1))?;
                let n: OneOneTensor = load(arg(2))?;
                Ok(lib(is_dirac_nijenhuis(&cs, &l, &n))?.into())
            }
        }
        CheckBialgebroidNijenhuis => {
            expect_inputs(job, &[2])?;
            let b: LieBialgebra = load(arg(0))?;
            let n: BlockTensor = load(arg(1))?;
            Ok(lib(bialgebroid_nijenhuis_conditions(&b, &n))?.into())
        }
        CheckTheorem2 | CheckTheorem3 | CheckLemma2 => {
            expect_inputs(job, &[1])?;
            let n0: PolyOneOne = load(arg(0))?;
            let f = fam(n0.n());
            let r = match job.command {
                CheckTheorem2 => verify_theorem2(&n0, &f),
                CheckTheorem3 => courant_nijenhuis_test(&n0, &f),
                _ => verify_lemma2(&n0, &f),
            };
            Ok(lib(r)?.into())
        }
        CheckPn => {
            expect_inputs(job, &[2])?;
            let lambda: PolyBivector = load(arg(0))?;
            let n0: PolyOneOne = load(arg(1))?;
            let r = lib(check_poisson_nijenhuis_weak(&lambda, &n0, &fam(lambda.n())))?;
            Ok(Outcome {
                checks: vec![r.weak, r.strong],
                artifact: None,
            })
        }
        CheckPresymplecticN => {
            expect_inputs(job, &[2])?;
            let omega: PolyForm = load(arg(0))?;
            let n0: PolyOneOne = load(arg(1))?;
            Ok(lib(check_presymplectic_nijenhuis(&omega, &n0, &fam(omega.n())))?.into())
        }
        CheckLambdaOmega => {
            expect_inputs(job, &[2])?;
            let omega: PolyForm = load(arg(0))?;
            let lambda: PolyBivector = load(arg(1))?;
            Ok(lib(check_lambda_omega(&omega, &lambda, &fam(omega.n())))?.into())
        }
        CheckTrivialBialgebroid => {
            expect_inputs(job, &[1])?;
            let n: CourantTensor = load(arg(0))?;
            Ok(lib(check_trivial_bialgebroid_nijenhuis(&n, &fam(n.n())))?.into())
        }
    }
}

pub fn run(job: &JobSpec) -> RunReport {
    let start = Instant::now();
    let (checks, artifact, error) = match dispatch(job) {
        Ok(o) => (o.checks, o.artifact, None),
        Err(e) => (vec![], None, Some(e)),
    };
    RunReport {
        job: job.clone(),
        checks,
        artifact,
        error,
        wall_time: start.elapsed().as_secs_f64(),
        version: VERSION.to_string(),
    }
}

/// Runs every job of a manifest file. Relative input paths are resolved
/// against the manifest's directory.
pub fn batch(manifest: &Path) -> Result<BatchReport, String> {
    let start = Instant::now();
    let text = fs::read_to_string(manifest).map_err(|e| format!("{}: {e}", manifest.display()))?;
    let m: Manifest =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", manifest.display()))?;
    let base = manifest.parent().unwrap_or(Path::new(""));
    let jobs: Vec<JobSpec> = m
        .jobs
        .into_iter()
        .map(|mut j| {
            j.inputs = j.inputs.into_iter().map(|p| base.join(p)).collect();
            j
        })
        .collect();
    let reports = jobs.par_iter().map(run).collect();
    Ok(BatchReport {
        jobs: reports,
        wall_time: start.elapsed().as_secs_f64(),
        version: VERSION.to_string(),
    })
}

pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let files: Vec<String> = r.job.inputs.iter().map(|p| p.display().to_string()).collect();
    let _ = writeln!(
        out,
        "{} {} (family degree {})",
        r.job.command.name(),
        files.join(" "),
        r.job.family_degree
    );
    if let Some(e) = &r.error {
        let _ = writeln!(out, "  ERROR {e}");
    }
    for c in &r.checks {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "  {tag} {}: {}", c.check, c.certificate);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "       identity {} at ({})", w.identity, w.inputs.join(", "));
            let _ = writeln!(out, "       lhs = {}", w.lhs);
            let _ = writeln!(out, "       rhs = {}", w.rhs);
        }
    }
    let _ = writeln!(out, "  status {} in {:.3} s", r.status(), r.wall_time);
    out
}

pub fn render_batch_text(b: &BatchReport) -> String {
    let mut out = String::new();
    for r in &b.jobs {
        out.push_str(&render_text(r));
    }
    let failed = b.jobs.iter().filter(|r| r.status() != 0).count();
    let _ = writeln!(
        out,
        "batch: {} job(s), {failed} not passing, status {} in {:.3} s",
        b.jobs.len(),
        b.status(),
        b.wall_time
    );
    out
}
