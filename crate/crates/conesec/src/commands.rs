//! One function per command, each turning a [`RunConfig`] into a [`Report`].

use std::path::Path;

use conesec_core::ball_bodies::{ball_body, sweep_directions, StarBody};
use conesec_core::bodies::ConvexBody;
use conesec_core::intersection_bodies::intersection_radial;
use conesec_core::rng::sphere_directions;
use conesec_core::sections::{cone_section_volume_polyhedral, cone_section_volume_radial, section, RadialQuadrature};
use conesec_core::subspace::Subspace;
use conesec_core::verify::{self, random_frame, CheckResult, REMARK2_ANGLES};
use conesec_core::volume::{moments, monte_carlo_volume};
use serde_json::{json, Value};

use crate::checks::{self, CaseFilter, CHECKS, FUNCTION_CHECKS};
use crate::config::{Command, RunConfig};
use crate::corpus;
use crate::error::{config, Result};
use crate::report::{Report, Table};
use crate::spec::{BodySpec, ConeSpec};

/// Names accepted by `experiment`.
pub const EXPERIMENTS: [&str; 6] = ["remark1", "remark2", "remark3", "alpha", "gruenbaum-equality", "constants"];

/// Runs the command and stamps the wall-clock time.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let start = std::time::Instant::now();
    let mut report = match cfg.command {
        Command::Volume => volume(cfg),
        Command::Section => section_cmd(cfg),
        Command::ConeVolume => cone_volume(cfg),
        Command::BallBody => ball_body_cmd(cfg),
        Command::IntersectionBody => intersection_body(cfg),
        Command::CiBody => ci_body(cfg),
        Command::Check => check(cfg),
        Command::Experiment => experiment(cfg),
        Command::Corpus => corpus::run(cfg),
    }?;
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

fn body(cfg: &RunConfig) -> Result<(BodySpec, ConvexBody)> {
    let spec = BodySpec::resolve(&cfg.body, cfg.n, cfg.seed, cfg.points)?;
    let body = spec.build()?;
    Ok((spec, body))
}

fn name(cfg: &RunConfig) -> Result<&str> {
    cfg.name.as_deref().ok_or_else(|| config("a name is required"))
}

fn codim(cfg: &RunConfig, n: usize, default: usize) -> Result<usize> {
    let k = cfg.k.unwrap_or(default);
    if k == 0 || k > n {
        return Err(config(format!("--k must lie in 1..={n}")));
    }
    Ok(k)
}

/// A seeded flat of codimension `k`.
fn seeded_flat(n: usize, k: usize, seed: u64) -> Result<Subspace> {
    let frame = random_frame(n, n, seed, 0);
    Ok(Subspace::from_orthonormal(n, frame[..n - k].to_vec())?)
}

fn direction_table(prefix: &str, dirs: &[Vec<f64>], extra: &[&str], rows: Vec<Vec<f64>>) -> Table {
    let dim = dirs.first().map_or(0, |d| d.len());
    let mut columns: Vec<String> = (1..=dim).map(|i| format!("{prefix}{i}")).collect();
    columns.extend(extra.iter().map(|s| s.to_string()));
    let rows = dirs.iter().zip(rows).map(|(d, r)| d.iter().copied().chain(r).collect()).collect();
    Table { columns, rows }
}

fn volume(cfg: &RunConfig) -> Result<Report> {
    let (spec, body) = body(cfg)?;
    let label = spec.label();
    let m = moments(&body)?;
    let mut checks = vec![CheckResult::report("volume", &label, m.volume, f64::NAN).with("n", body.dim() as f64)];
    let mut data = json!({ "volume": m.volume, "centroid": m.centroid, "second_moment": m.second_moment });
    if let Some(samples) = cfg.samples {
        let (est, sigma) = monte_carlo_volume(&body, samples, cfg.seed)?;
        checks.push(
            CheckResult::within("monte_carlo_volume", &label, est, m.volume, sigma, 3.0)
                .with("samples", samples as f64)
                .note("|estimate - exact| <= 3 sigma"),
        );
        data["monte_carlo"] = json!({ "estimate": est, "std_error": sigma, "samples": samples });
    }
    Ok(Report::new(cfg.clone(), &checks).with_data(data))
}

fn section_cmd(cfg: &RunConfig) -> Result<Report> {
    let (spec, body) = body(cfg)?;
    let n = body.dim();
    let k = codim(cfg, n, 1)?;
    let flat = seeded_flat(n, k, cfg.seed)?;
    let normal = flat.orthogonal_complement();
    let coords = cfg.offset.clone().unwrap_or_else(|| vec![0.0; k]);
    if coords.len() != k {
        return Err(config(format!("--offset needs {k} coordinates")));
    }
    let offset = normal.embed(&coords);
    let vol = section(&body, &flat, &offset)?.volume()?;
    let check = CheckResult::report("section_volume", &spec.label(), vol, f64::NAN).with("n", n as f64).with("k", k as f64);
    let data = json!({ "flat_basis": flat.basis(), "normal_basis": normal.basis(), "offset": offset, "volume": vol });
    Ok(Report::new(cfg.clone(), &[check]).with_data(data))
}

fn cone_volume(cfg: &RunConfig) -> Result<Report> {
    let (spec, body) = body(cfg)?;
    let n = body.dim();
    let (flat, cone) = match &cfg.cone {
        Some(path) => {
            let (flat, cone) = ConeSpec::load(Path::new(path))?.build()?;
            if flat.ambient_dim() != n {
                return Err(config("cone and body dimensions differ"));
            }
            (flat, cone)
        }
        None => {
            let kind = match &cfg.kind {
                Some(s) => Some(checks::parse_kind(s).ok_or_else(|| config(format!("unknown cone kind {s}")))?),
                None => None,
            };
            let filter = CaseFilter { k: Some(codim(cfg, n, 1)?), p: cfg.p, kind };
            let case = checks::cases(n, cfg.seed, &filter)?
                .into_iter()
                .next()
                .ok_or_else(|| config("no grid cone matches --k, --p and --kind"))?;
            (case.flat, case.cone)
        }
    };
    let label = spec.label();
    let exact = cone_section_volume_polyhedral(&body, &flat, &cone)?;
    let mirror = cone_section_volume_polyhedral(&body, &flat, &cone.negated())?;
    let radial = cone_section_volume_radial(&body, &flat, &cone, &RadialQuadrature::default())?;
    let k = n - flat.dim();
    let p = cone.dim();
    let check = CheckResult::within("cone_volume_routes", &label, radial, exact, exact.abs(), 1e-3)
        .with("n", n as f64)
        .with("k", k as f64)
        .with("p", p as f64);
    let data = json!({
        "flat_basis": flat.basis(),
        "generators": cone.generators(),
        "polyhedral": exact,
        "radial": radial,
        "polyhedral_negated": mirror,
    });
    Ok(Report::new(cfg.clone(), &[check]).with_data(data))
}

fn ball_body_cmd(cfg: &RunConfig) -> Result<Report> {
    let (spec, body) = body(cfg)?;
    let n = body.dim();
    let k = codim(cfg, n, checks::default_codim(n))?;
    let f = checks::section_function(&body, k, cfg.seed)?;
    let p = cfg.p.unwrap_or(k + 1);
    let l = ball_body(&f, p as f64)?;
    let dirs = sweep_directions(k, cfg.dirs, cfg.seed);
    let radii = dirs.iter().map(|t| l.radial(t)).collect::<conesec_core::Result<Vec<f64>>>()?;
    let (lo, hi) = min_max(&radii);
    let check = CheckResult::report("ball_body_radii", &spec.label(), lo, hi)
        .with("k", k as f64)
        .with("p", p as f64)
        .note("lhs = smallest radius, rhs = largest");
    let table = direction_table("theta", &dirs, &["radius"], radii.iter().map(|r| vec![*r]).collect());
    let data = json!({ "k": k, "p": p, "flat_basis": f.flat().basis(), "directions": dirs, "radii": radii });
    Ok(Report::new(cfg.clone(), &[check]).with_table(table).with_data(data))
}

fn intersection_body(cfg: &RunConfig) -> Result<Report> {
    let (spec, body) = body(cfg)?;
    let dirs = sphere_directions(body.dim(), cfg.dirs, cfg.seed);
    let radii = crate::runner::map_parallel(&dirs, cfg.jobs, |u| intersection_radial(&body, u))
        .into_iter()
        .collect::<conesec_core::Result<Vec<f64>>>()?;
    let (lo, hi) = min_max(&radii);
    let check = CheckResult::report("intersection_body_radii", &spec.label(), lo, hi)
        .with("n", body.dim() as f64)
        .note("lhs = smallest radius, rhs = largest");
    let table = direction_table("u", &dirs, &["radius"], radii.iter().map(|r| vec![*r]).collect());
    let data = json!({ "directions": dirs, "radii": radii });
    Ok(Report::new(cfg.clone(), &[check]).with_table(table).with_data(data))
}

fn ci_body(cfg: &RunConfig) -> Result<Report> {
    let (spec, body) = body(cfg)?;
    let (report, checks) = checks::ci(&body, &spec.label(), cfg.dirs, cfg.seed, cfg.tol, spec.is_symmetric(), cfg.jobs)?;
    let dirs: Vec<Vec<f64>> = report.records.iter().map(|r| r.direction.clone()).collect();
    let rows = report
        .records
        .iter()
        .map(|r| vec![r.i_radius, r.ci_radius, r.iterations as f64, r.certified_gap, f64::from(u8::from(r.certified))])
        .collect();
    let table = direction_table("u", &dirs, &["i_radius", "ci_radius", "iterations", "certified_gap", "certified"], rows);
    let directions: Vec<Value> = report
        .records
        .iter()
        .map(|r| {
            json!({
                "u": r.direction,
                "i_radius": r.i_radius,
                "ci_radius": r.ci_radius,
                "minimizer_z": r.minimizer_z,
                "iterations": r.iterations,
                "certified_gap": r.certified_gap,
                "certified": r.certified,
            })
        })
        .collect();
    let data = json!({
        "directions": directions,
        "summary": {
            "min_ratio": report.min_ratio,
            "max_ratio": report.max_ratio,
            "num_uncertified": report.num_uncertified,
            "num_violations": report.num_violations,
        },
    });
    Ok(Report::new(cfg.clone(), &checks).with_table(table).with_data(data))
}

fn check(cfg: &RunConfig) -> Result<Report> {
    let name = name(cfg)?;
    if !CHECKS.contains(&name) {
        return Err(config(format!("unknown check {name}; expected one of {}", CHECKS.join(", "))));
    }
    let (spec, body) = body(cfg)?;
    let label = spec.label();
    let n = body.dim();
    let kind = match &cfg.kind {
        Some(s) => Some(checks::parse_kind(s).ok_or_else(|| config(format!("unknown cone kind {s}")))?),
        None => None,
    };
    let filter = CaseFilter { k: cfg.k, p: cfg.p, kind };
    let records = if FUNCTION_CHECKS.contains(&name) {
        let k = codim(cfg, n, checks::default_codim(n))?;
        let f = checks::section_function(&body, k, cfg.seed)?;
        // --k picks the flat here, so the order comes from --p alone
        checks::function_check(name, &f, cfg.p, cfg.dirs, cfg.seed, &label)?
    } else {
        match name {
            "gruenbaum" => checks::gruenbaum(&body, &label, cfg.dirs, cfg.seed)?,
            "theorem1" => checks::theorem1(&body, &label, cfg.seed, &filter)?,
            "theorem2" => checks::theorem2(&body, &label, cfg.seed, &filter)?,
            "corollary1" => checks::corollary1(&body, &label, cfg.seed, cfg.k)?,
            "corollary2" => checks::corollary2(&body, &label, cfg.dirs, cfg.seed)?,
            "corollary3" => checks::corollary3(&body, &label, cfg.p.unwrap_or(n.min(2)), cfg.l.unwrap_or(0), cfg.seed)?,
            "lemma5" => vec![verify::check_lemma5(&body, &label)?],
            "lemma7" => checks::lemma7(&body, &label, cfg.dirs, cfg.seed)?,
            "prop8" => vec![verify::check_prop8(&body, &label)?],
            _ => unreachable!("name checked against CHECKS"),
        }
    };
    Ok(Report::new(cfg.clone(), &records))
}

fn experiment(cfg: &RunConfig) -> Result<Report> {
    let name = name(cfg)?;
    let n = cfg.n;
    match name {
        "remark1" => {
            if n < 2 {
                return Err(config("remark1 needs n >= 2"));
            }
            let ls: Vec<usize> = cfg.l.map_or_else(|| (1..n).collect(), |l| vec![l]);
            let records = ls.iter().map(|&l| verify::experiment_remark1(n, l)).collect::<conesec_core::Result<Vec<_>>>()?;
            Ok(Report::new(cfg.clone(), &records))
        }
        "remark2" => {
            let (rows, records) = verify::experiment_remark2(n, &REMARK2_ANGLES)?;
            let table = Table {
                columns: ["half_angle", "toward_vertex", "toward_facet", "ratio"].map(String::from).to_vec(),
                rows: rows.iter().map(|r| vec![r.half_angle, r.toward_vertex, r.toward_facet, r.ratio]).collect(),
            };
            Ok(Report::new(cfg.clone(), &records).with_table(table))
        }
        "remark3" => Ok(Report::new(cfg.clone(), &[verify::experiment_remark3_cube(n)?])),
        "alpha" => {
            let est = verify::experiment_alpha_n(n, cfg.trials, cfg.seed)?;
            let data = json!({
                "n": est.n,
                "trials": est.trials,
                "polytope_min": est.polytope_min,
                "simplex_min": est.simplex_min,
                "minimum": est.minimum,
            });
            Ok(Report::new(cfg.clone(), &verify::alpha_records(&est)).with_data(data))
        }
        "gruenbaum-equality" => {
            let pyramid = verify::gruenbaum_pyramid(n)?;
            let mut apex = vec![0.0; n];
            apex[n - 1] = 1.0;
            let r = verify::experiment_gruenbaum_equality(&pyramid, &apex, &format!("pyramid(n={n})"))?;
            Ok(Report::new(cfg.clone(), &[r]))
        }
        "constants" => {
            let ks: Vec<usize> = cfg.k.map_or_else(|| (1..=n).collect(), |k| vec![k]);
            let mut records = Vec::new();
            let mut data = Vec::new();
            for k in ks {
                let ps: Vec<usize> = cfg.p.map_or_else(|| (1..=k).collect(), |p| vec![p]);
                for p in ps {
                    for c in verify::explicit_constants(n, k, p)? {
                        records.push(
                            CheckResult::report(&c.name, "-", c.value, f64::NAN)
                                .with("n", n as f64)
                                .with("k", k as f64)
                                .with("p", p as f64),
                        );
                        data.push(json!({ "name": c.name, "n": n, "k": k, "p": p, "m": c.m, "value": c.value }));
                    }
                }
            }
            Ok(Report::new(cfg.clone(), &records).with_data(Value::Array(data)))
        }
        other => Err(config(format!("unknown experiment {other}; expected one of {}", EXPERIMENTS.join(", ")))),
    }
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(*x), hi.max(*x)))
}
