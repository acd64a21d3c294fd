//! Runs the registered checks over a manifest of instances and reports
//! per-check, per-instance outcomes.

mod analysis;
mod checks;
pub mod manifest;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::goursat::product_presentation;
use crate::graph::{chromatic_number, Computed};
use crate::enumeration::enumerate_submodules;
use crate::module::{Module, ModuleSpec};
use crate::specfile::SpecDoc;

use analysis::Analysis;
use checks::{CheckDef, Eval, Verdict, CHECKS};
pub use manifest::{Manifest, NamedPair, NamedSpec, MANIFEST_VERSION};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub spec: SpecDoc,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass {
        detail: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        side: Option<bool>,
    },
    Fail {
        witness: Witness,
    },
    Skipped {
        reason: String,
    },
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub instance: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub description: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub not_applicable: usize,
    /// Instances the hypothesis applies to; not-applicable ones are only counted.
    pub results: Vec<InstanceResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenCaseReport {
    pub instance: String,
    pub spec: SpecDoc,
    pub vertices: usize,
    pub chi: Computed<usize>,
    /// `μ_k / 2 + Σ_{i>k} μ_i`, kept as text since `μ_k / 2` may be fractional.
    pub comparison: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub open_case: Vec<OpenCaseReport>,
}

impl SuiteReport {
    pub fn success(&self) -> bool {
        self.failed == 0
    }
}

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

pub fn check_description(id: &str) -> Option<&'static str> {
    CHECKS.iter().find(|c| c.id == id).map(|c| c.description)
}

fn find(id: &str) -> Result<&'static CheckDef> {
    CHECKS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

fn outcome(v: Result<Verdict>, spec: impl FnOnce() -> SpecDoc) -> Outcome {
    match v {
        Ok(Verdict::Holds { detail, side }) => Outcome::Pass { detail, side },
        Ok(Verdict::Violated { expected, actual }) => Outcome::Fail {
            witness: Witness {
                spec: spec(),
                expected,
                actual,
            },
        },
        Ok(Verdict::Skipped(reason)) => Outcome::Skipped { reason },
        Ok(Verdict::NotApplicable) => Outcome::NotApplicable,
        Err(e) => Outcome::Fail {
            witness: Witness {
                spec: spec(),
                expected: "an evaluation without errors".into(),
                actual: format!("error: {e}"),
            },
        },
    }
}

/// Instances analysed once, or the reason an instance was skipped.
type Prepared = Vec<(String, std::result::Result<Analysis, String>)>;

fn prepare(manifest: &Manifest, bounds: &Bounds) -> Result<Prepared> {
    let specs = manifest.specs()?;
    specs
        .into_par_iter()
        .map(|(name, spec)| {
            let a = Analysis::new(spec, bounds)?;
            Ok((name, a))
        })
        .collect()
}

fn evaluate(def: &CheckDef, manifest: &Manifest, prepared: &Prepared, bounds: &Bounds) -> CheckReport {
    let outcomes: Vec<(String, Outcome)> = match def.eval {
        Eval::Instance(f) => prepared
            .par_iter()
            .map(|(name, a)| {
                let o = match a {
                    Ok(a) => outcome(f(a), || a.doc()),
                    Err(reason) => Outcome::Skipped { reason: reason.clone() },
                };
                (name.clone(), o)
            })
            .collect(),
        Eval::Pair(f) => manifest
            .goursat
            .par_iter()
            .map(|p| {
                let spec = || match (p.left.to_spec(), p.right.to_spec()) {
                    (Ok(u), Ok(w)) => product_presentation(&u.to_explicit(), &w.to_explicit())
                        .map(|pres| SpecDoc::from(&ModuleSpec::explicit(pres)))
                        .unwrap_or_else(|_| p.left.clone()),
                    _ => p.left.clone(),
                };
                (p.name.clone(), outcome(f(p, bounds), spec))
            })
            .collect(),
    };
    summarize(def, outcomes)
}

fn summarize(def: &CheckDef, outcomes: Vec<(String, Outcome)>) -> CheckReport {
    let mut report = CheckReport {
        id: def.id.to_string(),
        description: def.description.to_string(),
        status: Status::Pass,
        note: None,
        passed: 0,
        failed: 0,
        skipped: 0,
        not_applicable: 0,
        results: Vec::new(),
    };
    let (mut seen_true, mut seen_false) = (false, false);
    for (instance, o) in outcomes {
        match &o {
            Outcome::Pass { side, .. } => {
                report.passed += 1;
                match side {
                    Some(true) => seen_true = true,
                    Some(false) => seen_false = true,
                    None => {}
                }
            }
            Outcome::Fail { .. } => report.failed += 1,
            Outcome::Skipped { .. } => report.skipped += 1,
            Outcome::NotApplicable => {
                report.not_applicable += 1;
                continue;
            }
        }
        report.results.push(InstanceResult { instance, outcome: o });
    }
    if report.failed > 0 {
        report.status = Status::Fail;
    } else if report.passed == 0 && report.skipped > 0 {
        report.status = Status::Skipped;
        report.note = Some("every applicable instance exceeded a bound".into());
    } else if report.passed == 0 {
        report.status = Status::Fail;
        report.note = Some("no instance satisfies the hypothesis".into());
    } else if def.both_sides && !(seen_true && seen_false) {
        report.status = Status::Fail;
        let missing = if seen_true { "false" } else { "true" };
        report.note = Some(format!("no instance where the condition is {missing}"));
    }
    report
}

fn tally(suite: &str, checks: Vec<CheckReport>, open_case: Vec<OpenCaseReport>) -> SuiteReport {
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    SuiteReport {
        schema_version: REPORT_VERSION,
        suite: suite.to_string(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        checks,
        open_case,
    }
}

/// Runs one check over every instance of the manifest.
pub fn run_check(id: &str, manifest: &Manifest, bounds: &Bounds) -> Result<CheckReport> {
    let def = find(id)?;
    let prepared = match def.eval {
        Eval::Instance(_) => prepare(manifest, bounds)?,
        Eval::Pair(_) => Vec::new(),
    };
    Ok(evaluate(def, manifest, &prepared, bounds))
}

/// Runs the checks named in `only`, or all of them when it is empty. The
/// open case is explored only for a full run.
pub fn run_suite(suite: &str, manifest: &Manifest, only: &[String], bounds: &Bounds) -> Result<SuiteReport> {
    let defs: Vec<&CheckDef> = if only.is_empty() {
        CHECKS.iter().collect()
    } else {
        let mut ids: Vec<&str> = only.iter().map(String::as_str).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter().map(find).collect::<Result<_>>()?
    };
    let prepared = if defs.iter().any(|d| matches!(d.eval, Eval::Instance(_))) {
        prepare(manifest, bounds)?
    } else {
        Vec::new()
    };
    let checks: Vec<CheckReport> = defs
        .par_iter()
        .map(|d| evaluate(d, manifest, &prepared, bounds))
        .collect();
    let open_case = if only.is_empty() {
        manifest
            .open_case
            .par_iter()
            .map(|i| explore_open_case(&i.name, &i.spec.to_spec()?, bounds))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(tally(suite, checks, open_case))
}

/// Runs every check over a built-in manifest (`small` or `full`).
pub fn run_all(scale: &str, bounds: &Bounds) -> Result<SuiteReport> {
    run_suite(scale, &Manifest::builtin(scale)?, &[], bounds)
}

/// Computes χ for a semisimple module whose multiplicities are all even and
/// sets it beside `μ_k / 2 + Σ_{i>k} μ_i`. No relation is asserted.
pub fn explore_open_case(name: &str, spec: &ModuleSpec, bounds: &Bounds) -> Result<OpenCaseReport> {
    let ModuleSpec::Semisimple { components } = spec else {
        return Err(Error::InvalidParameters("the open case needs a semisimple spec".into()));
    };
    if components.iter().any(|c| c.mult % 2 == 1) {
        return Err(Error::InvalidParameters("the open case needs every multiplicity even".into()));
    }
    let lattice = enumerate_submodules(&Module::new(spec.clone(), bounds)?)?;
    let graph = crate::graph::build_graph(&lattice);
    let g = graph.graph();
    let n = lattice.composition_length();
    let k = n / 2;
    let tail: usize = (k + 1..n).map(|i| lattice.mu(i)).sum();
    let mu_k = lattice.mu(k);
    let comparison = if mu_k % 2 == 0 {
        (mu_k / 2 + tail).to_string()
    } else {
        format!("{}.5", mu_k / 2 + tail)
    };
    Ok(OpenCaseReport {
        instance: name.to_string(),
        spec: SpecDoc::from(spec),
        vertices: g.vertex_count(),
        chi: Computed::from_result(chromatic_number(g, bounds).map(|c| c.0))?,
        comparison,
    })
}
