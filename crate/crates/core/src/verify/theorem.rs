use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::{corollary1_factor, gruenbaum_constant, theorem1_constant, theorem2_a_branch_factor, CheckResult};
use crate::bodies::{make_ball, ConvexBody, GEOM_TOL};
use crate::intersection_bodies::CiInclusionReport;
use crate::error::{invalid, Result};
use crate::linalg::{norm, normalized, orthonormalize, reject, scale};
use crate::sections::{cone_section_volume_polyhedral, flat_plus_span_volume, halfspace_volume, section, PolyhedralCone};
use crate::subspace::Subspace;
use crate::volume::{isotropic_position, moments};

fn require_centered(body: &ConvexBody) -> Result<f64> {
    let m = moments(body)?;
    if norm(&m.centroid) > GEOM_TOL * body.scale().max(1.0) {
        return Err(invalid("the centroid must be at the origin"));
    }
    Ok(m.volume)
}

/// `|K ∩ u^+| >= (1 + 1/n)^{-n} |K|` for centered `K`. Recorded as
/// `lhs = (1+1/n)^{-n} |K|`, `rhs = |K ∩ u^+|`, slack `1e-9`.
pub fn check_gruenbaum(body: &ConvexBody, u: &[f64], label: &str) -> Result<CheckResult> {
    let n = body.dim();
    let volume = require_centered(body)?;
    let cap = halfspace_volume(body, u)?;
    Ok(CheckResult::bound("gruenbaum", label, gruenbaum_constant(n) * volume, cap, 1e-9)
        .with("n", n as f64)
        .with("fraction", cap / volume))
}

fn dims(body: &ConvexBody, flat: &Subspace, cone: &PolyhedralCone) -> Result<(usize, usize, usize)> {
    let n = body.dim();
    if flat.ambient_dim() != n || cone.ambient().ambient_dim() != n {
        return Err(invalid("body, flat and cone live in different spaces"));
    }
    let k = n - flat.dim();
    let p = cone.dim();
    if !(1 <= p && p <= k) {
        return Err(invalid("need 1 <= p <= k"));
    }
    if cone.generators().iter().any(|g| norm(&flat.project(g)) > 1e-9 * norm(g)) {
        return Err(invalid("the cone must lie in the orthogonal complement of the flat"));
    }
    Ok((n, k, p))
}

/// `|K ∩ (F - C)| / |K ∩ (F + C)|` against the explicit constant, slack
/// `1e-6`. Volumes come from the polyhedral route.
pub fn check_main_theorem_part1(body: &ConvexBody, flat: &Subspace, cone: &PolyhedralCone, label: &str) -> Result<CheckResult> {
    let (n, k, p) = dims(body, flat, cone)?;
    require_centered(body)?;
    let plus = cone_section_volume_polyhedral(body, flat, cone)?;
    let minus = cone_section_volume_polyhedral(body, flat, &cone.negated())?;
    let bound = theorem1_constant(n, k, p)?.value;
    Ok(CheckResult::bound("theorem_part1", label, minus / plus, bound, 1e-6)
        .with("n", n as f64)
        .with("k", k as f64)
        .with("p", p as f64)
        .with("plus", plus)
        .with("minus", minus))
}

/// The `n^p` branch of the isotropic comparison: after putting `K` in
/// isotropic position, `n^{-p} ρ_B <= ρ_K <= n^p ρ_B` with
/// `ρ_X = |X ∩ (F+C)| / |X ∩ (F+G)|`. Recorded as
/// `lhs = max(ρ_K/ρ_B, ρ_B/ρ_K)`, `rhs = n^p`, slack `1e-6`. The factor
/// multiplying `a^{kp}` in the other branch is attached as a parameter.
pub fn check_main_theorem_part2(body: &ConvexBody, flat: &Subspace, cone: &PolyhedralCone, label: &str) -> Result<CheckResult> {
    let (n, k, p) = dims(body, flat, cone)?;
    let (iso, _) = isotropic_position(body)?;
    let k_ratio = cone_section_volume_polyhedral(&iso, flat, cone)? / flat_plus_span_volume(&iso, flat, cone)?;
    let ball = make_ball(n, 1.0)?;
    let b_ratio = cone_section_volume_polyhedral(&ball, flat, cone)? / flat_plus_span_volume(&ball, flat, cone)?;
    let spread = (k_ratio / b_ratio).max(b_ratio / k_ratio);
    Ok(CheckResult::bound("theorem_part2", label, spread, (n as f64).powi(p as i32), 1e-6)
        .with("n", n as f64)
        .with("k", k as f64)
        .with("p", p as f64)
        .with("body_ratio", k_ratio)
        .with("ball_ratio", b_ratio)
        .with("a_branch_factor", theorem2_a_branch_factor(n, k, p)?)
        .note("other branch: a^(kp) * a_branch_factor with a unspecified"))
}

/// Ray ratios `|K ∩ (F + R_+ θ)| / |K ∩ (F + R_- θ)|`: the larger of the
/// ratio and its inverse is asserted against the explicit constant with
/// `p = 1`, and divided by `k^2 (1 + k/(n-k+1))^{n-k-1}` to report the
/// smallest admissible absolute constant.
pub fn check_corollary1(body: &ConvexBody, flat: &Subspace, theta: &[f64], label: &str) -> Result<[CheckResult; 2]> {
    let cone = PolyhedralCone::ray(flat.orthogonal_complement(), theta)?;
    let (n, k, _) = dims(body, flat, &cone)?;
    require_centered(body)?;
    let plus = cone_section_volume_polyhedral(body, flat, &cone)?;
    let minus = cone_section_volume_polyhedral(body, flat, &cone.negated())?;
    let worst = (plus / minus).max(minus / plus);
    let factor = corollary1_factor(n, k);
    Ok([
        CheckResult::bound("corollary1", label, worst, theorem1_constant(n, k, 1)?.value, 1e-6)
            .with("n", n as f64)
            .with("k", k as f64)
            .with("plus_over_minus", plus / minus),
        CheckResult::report("corollary1_c", label, worst / factor, factor)
            .with("n", n as f64)
            .with("k", k as f64)
            .note("smallest c with ratio <= c k^2 (1+k/(n-k+1))^(n-k-1); rhs holds the explicit factor"),
    ])
}

/// The two halves of `K ∩ u^⊥` cut by `v`. Asserts the explicit `k = 2` ray
/// bound on the larger ratio and reports that ratio as the empirical `c`.
pub fn check_corollary2(body: &ConvexBody, u: &[f64], v: &[f64], label: &str) -> Result<[CheckResult; 2]> {
    let n = body.dim();
    if n < 2 {
        return Err(invalid("need dimension at least 2"));
    }
    let u = normalized(u).ok_or_else(|| invalid("u must be nonzero"))?;
    let mut w = v.to_vec();
    reject(&mut w, core::slice::from_ref(&u));
    if norm(&w) <= 1e-9 * norm(v) {
        return Err(invalid("v must differ from ±u"));
    }
    let w = scale(&w, 1.0 / norm(&w));
    let flat = Subspace::span(n, &[u, w.clone()])?.orthogonal_complement();
    let [bound, report] = check_corollary1(body, &flat, &w, label)?;
    let worst = bound.lhs;
    Ok([
        CheckResult { name: "corollary2".into(), ..bound },
        CheckResult::report("corollary2_c", label, worst, report.rhs).with("n", n as f64).note("smallest c in 1/c <= ratio <= c"),
    ])
}

/// Orthant cuts of central sections of an isotropic body: with
/// `|E| = n - k + p` and orthonormal `u_1..u_p` in `E`,
/// `|K ∩ E ∩ {<x,u_i> >= 0}| >= (2n)^{-p} |K ∩ E|`. The body is moved to
/// isotropic position first. Also reports `-ln(fraction)/(kp)`, the
/// smallest `c` for the `e^{-ckp}` branch.
pub fn check_corollary3(body: &ConvexBody, e: &Subspace, dirs: &[Vec<f64>], label: &str) -> Result<[CheckResult; 2]> {
    let n = body.dim();
    let p = dirs.len();
    if p == 0 || e.ambient_dim() != n {
        return Err(invalid("need at least one direction in a subspace of R^n"));
    }
    let k = n + p - e.dim();
    if !(p <= k && k <= n) {
        return Err(invalid("need p <= k <= n"));
    }
    for d in dirs {
        if e.residual(d) > 1e-9 * norm(d) {
            return Err(invalid("directions must lie in E"));
        }
    }
    let units: Vec<Vec<f64>> = dirs.iter().map(|d| scale(d, 1.0 / norm(d))).collect();
    let mut rest = Vec::new();
    for b in e.basis() {
        let mut r = b.clone();
        reject(&mut r, &units);
        rest.push(r);
    }
    let flat = Subspace::from_orthonormal(n, orthonormalize(&rest, 1e-9))?;
    if flat.dim() != n - k {
        return Err(invalid("directions must be linearly independent"));
    }
    let cone = PolyhedralCone::orthant(flat.orthogonal_complement(), &units)?;
    let (iso, _) = isotropic_position(body)?;
    let whole = section(&iso, e, &vec![0.0; n])?.volume()?;
    let part = cone_section_volume_polyhedral(&iso, &flat, &cone)?;
    let frac = part / whole;
    let floor = (2.0 * n as f64).powi(-(p as i32));
    Ok([
        CheckResult::bound("corollary3", label, floor, frac, 1e-6)
            .with("n", n as f64)
            .with("k", k as f64)
            .with("p", p as f64),
        CheckResult::report("corollary3_c", label, -frac.ln() / (k * p) as f64, 0.0)
            .with("n", n as f64)
            .with("k", k as f64)
            .with("p", p as f64)
            .note(format!("fraction {frac:.6e}; smallest c with e^(-ckp) <= fraction")),
    ])
}

/// Shape of the cone in a theorem grid case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    Ray,
    Orthant,
    Simplicial,
}

impl ConeKind {
    pub fn name(self) -> &'static str {
        match self {
            ConeKind::Ray => "ray",
            ConeKind::Orthant => "orthant",
            ConeKind::Simplicial => "simplicial",
        }
    }
}

/// One `(F, C)` configuration for the theorem checks.
#[derive(Debug, Clone)]
pub struct TheoremCase {
    pub k: usize,
    pub p: usize,
    pub kind: ConeKind,
    pub flat: Subspace,
    pub cone: PolyhedralCone,
}

/// Orthonormal `count`-frame in `R^n` drawn from the stream `(seed, index)`.
pub fn random_frame(n: usize, count: usize, seed: u64, index: u64) -> Vec<Vec<f64>> {
    let mut rng = crate::rng::stream(seed, index);
    loop {
        let vs: Vec<Vec<f64>> = (0..count).map(|_| crate::rng::gaussian_vector(&mut rng, n)).collect();
        let frame = orthonormalize(&vs, 1e-6);
        if frame.len() == count {
            return frame;
        }
    }
}

/// For every `1 <= k <= n` and `1 <= p <= min(k, 2)`: a seeded flat `F` of
/// dimension `n - k` with a ray (`p = 1`) or an orthant and a simplicial
/// cone (`p = 2`) in `F^⊥`.
pub fn theorem_cases(n: usize, seed: u64) -> Result<Vec<TheoremCase>> {
    let mut out = Vec::new();
    for k in 1..=n {
        let frame = random_frame(n, n, seed, (k * 16) as u64);
        let flat = Subspace::from_orthonormal(n, frame[..n - k].to_vec())?;
        let normal = flat.orthogonal_complement();
        let inner = |count: usize, index: u64| -> Vec<Vec<f64>> {
            random_frame(k, count, seed, (k * 16) as u64 + index).iter().map(|c| normal.embed(c)).collect()
        };
        let ray = inner(1, 1);
        out.push(TheoremCase { k, p: 1, kind: ConeKind::Ray, flat: flat.clone(), cone: PolyhedralCone::ray(normal.clone(), &ray[0])? });
        if k >= 2 {
            let orth = inner(2, 2);
            out.push(TheoremCase { k, p: 2, kind: ConeKind::Orthant, flat: flat.clone(), cone: PolyhedralCone::orthant(normal.clone(), &orth)? });
            // Two unit generators at a seeded angle in (0.2π, 0.8π).
            let plane = inner(2, 3);
            let angle = core::f64::consts::PI * (0.2 + 0.6 * crate::rng::uniform01(&mut crate::rng::stream(seed, (k * 16 + 4) as u64)));
            let g2: Vec<f64> = plane[0].iter().zip(&plane[1]).map(|(a, b)| angle.cos() * a + angle.sin() * b).collect();
            let cone = PolyhedralCone::new(normal.clone(), vec![plane[0].clone(), g2])?;
            out.push(TheoremCase { k, p: 2, kind: ConeKind::Simplicial, flat, cone });
        }
    }
    Ok(out)
}

/// Records for `CI(K) ⊂ I(K)`: per direction the upper inclusion (slack
/// `1e-9`) and the minimization certificate `gap <= tol`, plus the smallest
/// ratio `r_CI / r_I` as the empirical inner constant.
pub fn ci_records(report: &CiInclusionReport, tol: f64, label: &str) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (i, r) in report.records.iter().enumerate() {
        out.push(CheckResult::bound("ci_upper_inclusion", label, r.ci_radius, r.i_radius, 1e-9).with("direction", i as f64));
        out.push(
            CheckResult::bound("ci_certificate", label, r.certified_gap, tol, 0.0)
                .with("direction", i as f64)
                .with("iterations", r.iterations as f64),
        );
    }
    out.push(
        CheckResult::report("ci_inner_constant", label, report.min_ratio, report.max_ratio)
            .with("directions", report.records.len() as f64)
            .note("smallest r_CI / r_I; rhs holds the largest"),
    );
    out
}
