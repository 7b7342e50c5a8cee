//! Check builders shared by the `check` command and the corpus runner.

use conesec_core::ball_bodies::ConcaveFunction;
use conesec_core::bodies::ConvexBody;
use conesec_core::intersection_bodies::{ci_radial, summarize, CIEvaluation, CiInclusionReport, CiOptions};
use conesec_core::linalg::{norm, normalized};
use conesec_core::rng::{sphere_directions, stream, unit_vector};
use conesec_core::sections::SectionVolumeFunction;
use conesec_core::subspace::Subspace;
use conesec_core::verify::{self, ci_records, random_frame, theorem_cases, CheckResult, ConeKind, TheoremCase};
use conesec_core::{GeomError, Result};

use crate::runner::map_parallel;

/// Names accepted by `check`.
pub const CHECKS: [&str; 16] = [
    "gruenbaum",
    "theorem1",
    "theorem2",
    "corollary1",
    "corollary2",
    "corollary3",
    "lemma5",
    "lemma7",
    "prop8",
    "fradelizi",
    "lemma6",
    "berwald",
    "lemma4",
    "prop9",
    "moment-identity",
    "brunn",
];

/// Checks that take the section function of the body rather than the body.
pub const FUNCTION_CHECKS: [&str; 7] = ["fradelizi", "lemma6", "berwald", "lemma4", "prop9", "moment-identity", "brunn"];

/// Restricts the theorem grid.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CaseFilter {
    pub k: Option<usize>,
    pub p: Option<usize>,
    pub kind: Option<ConeKind>,
}

impl CaseFilter {
    pub fn accepts(&self, case: &TheoremCase) -> bool {
        self.k.map_or(true, |k| k == case.k)
            && self.p.map_or(true, |p| p == case.p)
            && self.kind.map_or(true, |kind| kind == case.kind)
    }
}

pub fn parse_kind(s: &str) -> Option<ConeKind> {
    [ConeKind::Ray, ConeKind::Orthant, ConeKind::Simplicial].into_iter().find(|k| k.name() == s)
}

pub fn cases(n: usize, seed: u64, filter: &CaseFilter) -> Result<Vec<TheoremCase>> {
    Ok(theorem_cases(n, seed)?.into_iter().filter(|c| filter.accepts(c)).collect())
}

fn tag(r: CheckResult, case: &TheoremCase) -> CheckResult {
    r.note(format!("{} cone", case.kind.name()))
}

pub fn gruenbaum(body: &ConvexBody, label: &str, dirs: usize, seed: u64) -> Result<Vec<CheckResult>> {
    sphere_directions(body.dim(), dirs, seed)
        .iter()
        .enumerate()
        .map(|(i, u)| Ok(verify::check_gruenbaum(body, u, label)?.with("direction", i as f64)))
        .collect()
}

pub fn theorem1(body: &ConvexBody, label: &str, seed: u64, filter: &CaseFilter) -> Result<Vec<CheckResult>> {
    cases(body.dim(), seed, filter)?
        .iter()
        .map(|c| Ok(tag(verify::check_main_theorem_part1(body, &c.flat, &c.cone, label)?, c)))
        .collect()
}

pub fn theorem2(body: &ConvexBody, label: &str, seed: u64, filter: &CaseFilter) -> Result<Vec<CheckResult>> {
    cases(body.dim(), seed, filter)?
        .iter()
        .map(|c| Ok(tag(verify::check_main_theorem_part2(body, &c.flat, &c.cone, label)?, c)))
        .collect()
}

/// Corollary 1 on the ray cases of the theorem grid.
pub fn corollary1(body: &ConvexBody, label: &str, seed: u64, k: Option<usize>) -> Result<Vec<CheckResult>> {
    let filter = CaseFilter { k, p: Some(1), kind: Some(ConeKind::Ray) };
    let mut out = Vec::new();
    for c in cases(body.dim(), seed, &filter)? {
        let theta = normalized(&c.cone.generators()[0]).ok_or(GeomError::Singular)?;
        out.extend(verify::check_corollary1(body, &c.flat, &theta, label)?);
    }
    Ok(out)
}

/// Corollary 2 on `pairs` seeded pairs of directions.
pub fn corollary2(body: &ConvexBody, label: &str, pairs: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let n = body.dim();
    let mut out = Vec::new();
    for i in 0..pairs {
        let mut rng = stream(seed, 1000 + i as u64);
        let u = unit_vector(&mut rng, n);
        let v = unit_vector(&mut rng, n);
        out.extend(verify::check_corollary2(body, &u, &v, label)?.map(|r| r.with("pair", i as f64)));
    }
    Ok(out)
}

/// Corollary 3 with `E` spanned by the first `n - codim` vectors of a seeded
/// frame and the orthant spanned by its first `p` vectors.
pub fn corollary3(body: &ConvexBody, label: &str, p: usize, codim: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let n = body.dim();
    if codim >= n || p == 0 || p > n - codim {
        return Err(GeomError::InvalidParameter(format!("need 1 <= p <= dim E; got p = {p}, dim E = {}", n.saturating_sub(codim))));
    }
    let frame = random_frame(n, n, seed, 7);
    let e = Subspace::from_orthonormal(n, frame[..n - codim].to_vec())?;
    Ok(verify::check_corollary3(body, &e, &frame[..p], label)?.to_vec())
}

pub fn lemma7(body: &ConvexBody, label: &str, dirs: usize, seed: u64) -> Result<Vec<CheckResult>> {
    sphere_directions(body.dim(), dirs, seed)
        .iter()
        .enumerate()
        .map(|(i, u)| Ok(verify::check_lemma7(body, u, label)?.with("direction", i as f64)))
        .collect()
}

/// The section function of `body` by a seeded flat of codimension `k`.
pub fn section_function(body: &ConvexBody, k: usize, seed: u64) -> Result<SectionVolumeFunction> {
    let n = body.dim();
    if k == 0 || k > n {
        return Err(GeomError::InvalidParameter(format!("codimension {k} outside 1..={n}")));
    }
    let frame = random_frame(n, n, seed, 3);
    let flat = Subspace::from_orthonormal(n, frame[..n - k].to_vec())?;
    SectionVolumeFunction::new(body.clone(), flat)
}

/// Default codimension for function checks: 2, or 1 on the line.
pub fn default_codim(n: usize) -> usize {
    n.min(2)
}

/// One of [`FUNCTION_CHECKS`] on `f`. `p` is the order where the check has
/// one; `None` picks the default (1, or all of 0..=2 for the moment
/// identity).
pub fn function_check(
    name: &str,
    f: &dyn ConcaveFunction,
    p: Option<usize>,
    dirs: usize,
    seed: u64,
    label: &str,
) -> Result<Vec<CheckResult>> {
    let k = f.dim();
    let pf = p.unwrap_or(1) as f64;
    Ok(match name {
        "fradelizi" => vec![verify::check_fradelizi(f, label)?],
        "lemma6" => vec![verify::check_lemma6(f, pf, dirs, seed, label)?],
        "berwald" => vec![verify::check_berwald(f, pf, pf.max((k + 1) as f64), dirs, seed, label)?],
        "lemma4" => verify::report_lemma4(f, pf, dirs, seed, label)?,
        "prop9" => vec![verify::report_prop9(f, dirs, seed, label)?],
        "brunn" => vec![verify::check_brunn(f, dirs, seed, label)?],
        "moment-identity" => {
            let orders: Vec<usize> = p.map_or(vec![0, 1, 2], |p| vec![p]);
            let mut out = Vec::new();
            for (i, u) in sphere_directions(k, dirs, seed).iter().enumerate() {
                for &q in &orders {
                    out.push(verify::check_moment_identity(f, u, q, label)?.with("direction", i as f64));
                }
            }
            out
        }
        other => return Err(GeomError::InvalidParameter(format!("unknown function check {other}"))),
    })
}

/// `CI(K)` against `I(K)` over seeded directions, the directions spread over
/// `threads` workers. Symmetric bodies also get the equality case: equal
/// radii and minimizer at the origin, both within `1e-6`.
pub fn ci(
    body: &ConvexBody,
    label: &str,
    dirs: usize,
    seed: u64,
    tol: f64,
    symmetric: bool,
    threads: usize,
) -> Result<(CiInclusionReport, Vec<CheckResult>)> {
    let opts = CiOptions { tol, ..CiOptions::default() };
    let directions = sphere_directions(body.dim(), dirs, seed);
    let evals = map_parallel(&directions, threads, |u| ci_radial(body, u, opts))
        .into_iter()
        .collect::<Result<Vec<CIEvaluation>>>()?;
    let report = summarize(evals);
    let mut out = ci_records(&report, tol, label);
    if symmetric {
        for (i, r) in report.records.iter().enumerate() {
            out.push(CheckResult::equality("ci_symmetric_equality", label, r.ci_radius, r.i_radius, 1e-6).with("direction", i as f64));
            out.push(
                CheckResult::within("ci_symmetric_minimizer", label, norm(&r.minimizer_z), 0.0, 1.0, 1e-6)
                    .with("direction", i as f64),
            );
        }
    }
    Ok((report, out))
}
