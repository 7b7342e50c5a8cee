//! Corpus manifests and the batch check suite.

use std::path::Path;
use std::sync::Arc;

use conesec_core::bodies::ConvexBody;
use conesec_core::verify::{self, CheckResult, REMARK2_ANGLES};
use serde::{Deserialize, Serialize};

use crate::checks::{self, CaseFilter};
use crate::config::RunConfig;
use crate::error::{config, Result};
use crate::report::Report;
use crate::runner::{run_jobs, Job};
use crate::spec::{read, BodySpec};

/// Environment variable naming the default manifest.
pub const CORPUS_ENV: &str = "CONESEC_CORPUS";

const DEFAULT_CORPUS: &str = include_str!("../corpus/default.json");

/// Check groups, in the order they are listed in reports.
pub const GROUPS: [&str; 7] = ["gruenbaum", "theorem", "corollaries", "convex", "functions", "ci", "experiments"];

/// Dimensions of the fixed experiments run by the `experiments` group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Experiments {
    #[serde(default)]
    pub remark1: Vec<usize>,
    #[serde(default)]
    pub remark2: Vec<usize>,
    #[serde(default)]
    pub remark3: Vec<usize>,
    #[serde(default)]
    pub gruenbaum_equality: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    pub name: String,
    pub seed: u64,
    /// Directions per body for the direction sweeps.
    pub directions: usize,
    /// Directions per body for the CI minimizations, which are the costly part.
    pub ci_directions: usize,
    /// Largest dimension for the CI, isotropic and moment identity checks.
    pub max_dim_heavy: usize,
    /// Largest dimension for the section-function checks.
    pub max_dim_functions: usize,
    pub bodies: Vec<BodySpec>,
    pub experiments: Experiments,
}

impl Corpus {
    /// `path`, else `$CONESEC_CORPUS`, else the built-in manifest.
    pub fn load(path: Option<&str>) -> Result<Self> {
        let text = match path.map(String::from).or_else(|| std::env::var(CORPUS_ENV).ok()) {
            Some(p) => read(Path::new(&p))?,
            None => DEFAULT_CORPUS.to_string(),
        };
        Ok(serde_json::from_str(&text)?)
    }

    pub fn builtin() -> Self {
        serde_json::from_str(DEFAULT_CORPUS).expect("built-in corpus parses")
    }

    /// One job per (group, body), plus the experiments.
    pub fn jobs(&self, groups: &[&str]) -> Result<Vec<Job>> {
        let mut jobs = Vec::new();
        let want = |g: &str| groups.contains(&g);
        for spec in &self.bodies {
            let body = Arc::new(spec.build()?);
            let label = spec.label();
            let n = body.dim();
            let seed = self.seed;
            let dirs = self.directions;
            let heavy = n <= self.max_dim_heavy;
            let mut add = |name: &str, f: Box<dyn Fn(&ConvexBody, &str) -> conesec_core::Result<Vec<CheckResult>> + Send + Sync>| {
                let (body, l) = (Arc::clone(&body), label.clone());
                jobs.push(Job::new(name, label.clone(), move || f(&body, &l)));
            };
            if want("gruenbaum") {
                add("gruenbaum", Box::new(move |b, l| checks::gruenbaum(b, l, dirs, seed)));
            }
            if want("theorem") {
                add("theorem1", Box::new(move |b, l| checks::theorem1(b, l, seed, &CaseFilter::default())));
                if heavy {
                    add("theorem2", Box::new(move |b, l| checks::theorem2(b, l, seed, &CaseFilter { p: Some(1), ..Default::default() })));
                }
            }
            if want("corollaries") {
                add("corollary1", Box::new(move |b, l| checks::corollary1(b, l, seed, None)));
                add("corollary2", Box::new(move |b, l| checks::corollary2(b, l, 2, seed)));
                if heavy {
                    add("corollary3", Box::new(move |b, l| checks::corollary3(b, l, b.dim().min(2), 0, seed)));
                }
            }
            if want("convex") {
                add("lemma5", Box::new(|b, l| Ok(vec![verify::check_lemma5(b, l)?])));
                add("lemma7", Box::new(move |b, l| checks::lemma7(b, l, dirs, seed)));
                add("prop8", Box::new(|b, l| Ok(vec![verify::check_prop8(b, l)?])));
            }
            if want("functions") && n <= self.max_dim_functions {
                add(
                    "functions",
                    Box::new(move |b, l| {
                        let k = checks::default_codim(b.dim());
                        let f = checks::section_function(b, k, seed)?;
                        let mut out = Vec::new();
                        for name in ["fradelizi", "lemma6", "berwald", "lemma4", "prop9", "brunn"] {
                            out.extend(checks::function_check(name, &f, None, dirs, seed, l)?);
                        }
                        if heavy {
                            out.extend(checks::function_check("moment-identity", &f, None, 1, seed, l)?);
                        }
                        Ok(out)
                    }),
                );
            }
            if want("ci") && heavy && n >= 2 {
                let (cdirs, symmetric) = (self.ci_directions, spec.is_symmetric());
                add("ci", Box::new(move |b, l| Ok(checks::ci(b, l, cdirs, seed, 1e-8, symmetric, 1)?.1)));
            }
        }
        if want("experiments") {
            let e = &self.experiments;
            for &n in &e.remark1 {
                jobs.push(Job::new("remark1", format!("simplex(n={n})"), move || {
                    (1..n).map(|l| verify::experiment_remark1(n, l)).collect()
                }));
            }
            for &n in &e.remark2 {
                jobs.push(Job::new("remark2", format!("simplex(n={n})"), move || Ok(verify::experiment_remark2(n, &REMARK2_ANGLES)?.1)));
            }
            for &n in &e.remark3 {
                jobs.push(Job::new("remark3", format!("cube(n={n})"), move || Ok(vec![verify::experiment_remark3_cube(n)?])));
            }
            for &n in &e.gruenbaum_equality {
                jobs.push(Job::new("gruenbaum_equality", format!("pyramid(n={n})"), move || {
                    let mut apex = vec![0.0; n];
                    apex[n - 1] = 1.0;
                    Ok(vec![verify::experiment_gruenbaum_equality(&verify::gruenbaum_pyramid(n)?, &apex, &format!("pyramid(n={n})"))?])
                }));
            }
        }
        Ok(jobs)
    }
}

/// The `corpus` command.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let corpus = Corpus::load(cfg.corpus.as_deref())?;
    let groups: Vec<&str> = if cfg.only.is_empty() { GROUPS.to_vec() } else { cfg.only.iter().map(String::as_str).collect() };
    if let Some(bad) = groups.iter().find(|g| !GROUPS.contains(g)) {
        return Err(config(format!("unknown group {bad}; expected one of {}", GROUPS.join(", "))));
    }
    let jobs = corpus.jobs(&groups)?;
    let records = run_jobs(&jobs, cfg.jobs);
    let data = serde_json::json!({ "corpus": corpus.name, "bodies": corpus.bodies.len(), "jobs": jobs.len() });
    Ok(Report::new(cfg.clone(), &records).with_data(data))
}
