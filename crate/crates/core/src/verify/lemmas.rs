use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::CheckResult;
use crate::ball_bodies::{
    ball_body, berwald_inclusion_constants, fradelizi_factor, geometric_distance_lb, lemma6_factor, maximize,
    moment_identity_check, ray_moment_quadrature, sphere_integral, sweep_directions, Concavity, ConcaveFunction, StarBody,
};
use crate::bodies::{ConvexBody, GEOM_TOL};
use crate::error::{invalid, GeomError, Result};
use crate::linalg::{add, dot, norm, scale, to_matrix, unit};
use crate::special::gamma;
use crate::volume::moments;

fn power_index(f: &dyn ConcaveFunction) -> Result<f64> {
    match f.concavity() {
        Concavity::Power(m) => Ok(m),
        Concavity::LogConcave => Err(GeomError::Unsupported("needs a 1/m-concave function".into())),
    }
}

fn require_barycenter(f: &dyn ConcaveFunction) -> Result<()> {
    if f.barycenter_zero() {
        Ok(())
    } else {
        Err(invalid("the barycenter of f must be at the origin"))
    }
}

/// `max f <= (1 + k/(m+1))^m f(0)`; `e^k` for log-concave `f`. The maximum
/// comes from [`maximize`], which approaches it from below.
pub fn check_fradelizi(f: &dyn ConcaveFunction, label: &str) -> Result<CheckResult> {
    require_barycenter(f)?;
    let k = f.dim();
    let factor = match f.concavity() {
        Concavity::Power(m) => fradelizi_factor(k, m),
        Concavity::LogConcave => (k as f64).exp(),
    };
    let f0 = f.evaluate(&vec![0.0; k])?;
    let (fmax, _) = maximize(f)?;
    Ok(CheckResult::bound("fradelizi", label, fmax, factor * f0, 1e-6)
        .with("k", k as f64)
        .with("factor", factor))
}

fn centered_moments(body: &ConvexBody) -> Result<crate::volume::MomentSummary> {
    let m = moments(body)?;
    if norm(&m.centroid) > GEOM_TOL * body.scale().max(1.0) {
        return Err(invalid("the centroid must be at the origin"));
    }
    Ok(m)
}

/// `(inradius, circumradius)` about the origin, exact for polytopes and
/// balls.
fn radii(body: &ConvexBody) -> Result<(f64, f64)> {
    match body {
        ConvexBody::Ball(b) => {
            let c = norm(&b.center);
            Ok((b.radius - c, b.radius + c))
        }
        _ => {
            let p = body.polytope().ok_or_else(|| GeomError::Unsupported("needs a polytope or a ball".into()))?;
            let inner = p.halfspaces().iter().map(|h| h.offset / norm(&h.normal)).fold(f64::INFINITY, f64::min);
            let outer = p.vertices().iter().map(|v| norm(v)).fold(0.0, f64::max);
            Ok((inner, outer))
        }
    }
}

/// `-L ⊂ k L` for centered `L`, through the exact
/// `max_θ r_L(-θ)/r_L(θ) = max_{v, i} <a_i, -v>/b_i` over vertices `v` and
/// facets `<a_i, x> <= b_i`.
pub fn check_lemma5(body: &ConvexBody, label: &str) -> Result<CheckResult> {
    centered_moments(body)?;
    let k = body.dim();
    let worst = match body {
        ConvexBody::Ball(_) => 1.0,
        _ => {
            let p = body.polytope().ok_or_else(|| GeomError::Unsupported("needs a polytope or a ball".into()))?;
            let mut worst = 0.0_f64;
            for v in p.vertices() {
                for h in p.halfspaces() {
                    worst = worst.max(-dot(&h.normal, v) / h.offset);
                }
            }
            worst
        }
    };
    Ok(CheckResult::bound("lemma5", label, worst, k as f64, 1e-9).with("k", k as f64))
}

/// `-L_p(f) ⊂ factor · L_p(f)` over sampled directions, for `1/m`-concave `f`
/// with barycenter at the origin.
pub fn check_lemma6(f: &dyn ConcaveFunction, p: f64, num_dirs: usize, seed: u64, label: &str) -> Result<CheckResult> {
    require_barycenter(f)?;
    let m = power_index(f)?;
    let k = f.dim();
    let factor = lemma6_factor(k, m, p)?;
    let body = ball_body(f, p)?;
    let mut worst = 0.0_f64;
    for theta in sweep_directions(k, num_dirs, seed) {
        worst = worst.max(body.radial(&scale(&theta, -1.0))? / body.radial(&theta)?);
    }
    Ok(CheckResult::bound("lemma6", label, worst, factor, 1e-6)
        .with("k", k as f64)
        .with("m", m)
        .with("p", p))
}

/// `h_L(u)^2/(k(k+2)) <= (1/|L|) ∫_L <x,u>^2 <= k/(k+2) h_L(u)^2`, exact.
/// Recorded as `lhs = max(lower/mid, mid/upper)` against `1`.
pub fn check_lemma7(body: &ConvexBody, u: &[f64], label: &str) -> Result<CheckResult> {
    let m = centered_moments(body)?;
    let k = body.dim() as f64;
    let h = body.support(u);
    let mid = m.quadratic(u) / m.volume;
    let lower = h * h / (k * (k + 2.0));
    let upper = k / (k + 2.0) * h * h;
    Ok(CheckResult::bound("lemma7", label, (lower / mid).max(mid / upper), 1.0, 1e-9)
        .with("k", k)
        .with("lower", lower)
        .with("mean_square", mid)
        .with("upper", upper))
}

fn eigen_range(matrix: &[Vec<f64>]) -> (f64, f64) {
    let eig = to_matrix(matrix).symmetric_eigen();
    let lo = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// `β B ⊂ L ⊂ r k β B` with `γ`, `γ r^2` the extreme eigenvalues of
/// `∫_L x x^T` and `β = sqrt(γ/|L|) sqrt((k+2)/k)`. Exact in- and
/// circumradii; recorded as `lhs = max(β/inradius, circumradius/(rkβ))`
/// against `1` with slack `1e-7`, as the eigenvalues carry rounding.
pub fn check_prop8(body: &ConvexBody, label: &str) -> Result<CheckResult> {
    let m = centered_moments(body)?;
    let k = body.dim() as f64;
    let (gamma_lo, gamma_hi) = eigen_range(&m.second_moment);
    let r = (gamma_hi / gamma_lo).sqrt();
    let beta = (gamma_lo / m.volume).sqrt() * ((k + 2.0) / k).sqrt();
    let (inner, outer) = radii(body)?;
    Ok(CheckResult::bound("prop8", label, (beta / inner).max(outer / (r * k * beta)), 1.0, 1e-7)
        .with("k", k)
        .with("r", r)
        .with("beta", beta)
        .with("inradius", inner)
        .with("circumradius", outer))
}

/// `∫ <x,u>^2 f(x) dx`, exact where the function knows it.
fn second_moment(f: &dyn ConcaveFunction, u: &[f64]) -> Result<f64> {
    match f.moment_exact(u, 2) {
        Some(v) => v,
        None => {
            let k = f.dim();
            let g = |t: &[f64]| Ok(ray_moment_quadrature(f, t, (k + 2) as f64)? * dot(t, u).powi(2));
            sphere_integral(k, &g, 1e-8, 0.0)
        }
    }
}

/// Matrix of `∫ x x^T f(x) dx` by polarization.
fn second_moment_matrix(f: &dyn ConcaveFunction) -> Result<Vec<Vec<f64>>> {
    let k = f.dim();
    let diag: Vec<f64> = (0..k).map(|i| second_moment(f, &unit(k, i))).collect::<Result<_>>()?;
    let mut out = vec![vec![0.0; k]; k];
    for i in 0..k {
        out[i][i] = diag[i];
        for j in 0..i {
            let s = second_moment(f, &add(&unit(k, i), &unit(k, j)))?;
            out[i][j] = 0.5 * (s - diag[i] - diag[j]);
            out[j][i] = out[i][j];
        }
    }
    Ok(out)
}

/// `d_g(L_{k+1}(f), B) <= r a^k` with `a` unspecified: reports
/// `a = (d_g / r)^{1/k}`, where `d_g` is the sampled lower bound and `r^2`
/// the eigenvalue ratio of `∫ x x^T f`.
pub fn report_prop9(f: &dyn ConcaveFunction, num_dirs: usize, seed: u64, label: &str) -> Result<CheckResult> {
    require_barycenter(f)?;
    let k = f.dim();
    let (lo, hi) = eigen_range(&second_moment_matrix(f)?);
    let r = (hi / lo).sqrt();
    let body = ball_body(f, (k + 1) as f64)?;
    let (mut rmin, mut rmax) = (f64::INFINITY, 0.0_f64);
    for theta in sweep_directions(k, num_dirs, seed) {
        let v = body.radial(&theta)?;
        rmin = rmin.min(v);
        rmax = rmax.max(v);
    }
    let dg = rmax / rmin;
    Ok(CheckResult::report("prop9_a", label, (dg / r).powf(1.0 / k as f64), f64::NAN)
        .with("k", k as f64)
        .with("r", r)
        .with("distance", dg)
        .note("smallest a with d_g(L_{k+1}, B) <= r a^k over sampled directions"))
}

/// The explicit distance bound `d_g(L_{k+1}(f), L_p(f)) <= lemma6 factor / k`
/// is asserted on the sampled distance. The constants `c`, `d` of
/// `d L_{k+2} ⊂ f(0)^{-1/((k+1)(k+2))} L_{k+1} ⊂ c e^{1/k} L_{k+2}` are
/// reported.
pub fn report_lemma4(f: &dyn ConcaveFunction, p: f64, num_dirs: usize, seed: u64, label: &str) -> Result<Vec<CheckResult>> {
    require_barycenter(f)?;
    let m = power_index(f)?;
    let k = f.dim();
    let kf = k as f64;
    if !(p >= 1.0 && p <= kf + 1.0) {
        return Err(invalid("need 1 <= p <= k + 1"));
    }
    let lk1 = ball_body(f, kf + 1.0)?;
    let lk2 = ball_body(f, kf + 2.0)?;
    let lp = ball_body(f, p)?;
    let dist = geometric_distance_lb(&lk1, &lp, num_dirs, seed)?;
    let bound = lemma6_factor(k, m, p)? / kf;
    let f0 = f.evaluate(&vec![0.0; k])?;
    let e = 1.0 / ((kf + 1.0) * (kf + 2.0));
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    for theta in sweep_directions(k, num_dirs, seed) {
        let rho = f0.powf(-e) * lk1.radial(&theta)? / lk2.radial(&theta)?;
        lo = lo.min(rho);
        hi = hi.max(rho);
    }
    Ok(vec![
        CheckResult::bound("lemma4_distance", label, dist, bound, 1e-6)
            .with("k", kf)
            .with("m", m)
            .with("p", p),
        CheckResult::report("lemma4_d", label, lo, f64::NAN).with("k", kf).note("largest d with d L_{k+2} inside the scaled L_{k+1}"),
        CheckResult::report("lemma4_c", label, hi * (-1.0 / kf).exp(), f64::NAN)
            .with("k", kf)
            .note("smallest c with the scaled L_{k+1} inside c e^{1/k} L_{k+2}"),
    ])
}

/// `lower f(0)^{1/p-1/q} L_q ⊂ L_p ⊂ upper max(f)^{1/p-1/q} L_q` over sampled
/// directions. Log-concave functions use the `m -> ∞` limit
/// `lower = Γ(p)^{1/p} / Γ(q)^{1/q}`. Recorded as the worst two-sided
/// violation ratio against `1`.
pub fn check_berwald(f: &dyn ConcaveFunction, p: f64, q: f64, num_dirs: usize, seed: u64, label: &str) -> Result<CheckResult> {
    let k = f.dim();
    let (lower, upper) = match f.concavity() {
        Concavity::Power(m) => berwald_inclusion_constants(p, q, m)?,
        Concavity::LogConcave => {
            let (_, upper) = berwald_inclusion_constants(p, q, 0.0)?;
            (gamma(p)?.powf(1.0 / p) / gamma(q)?.powf(1.0 / q), upper)
        }
    };
    let e = 1.0 / p - 1.0 / q;
    let f0 = f.evaluate(&vec![0.0; k])?;
    let (fmax, _) = maximize(f)?;
    let (lp, lq) = (ball_body(f, p)?, ball_body(f, q)?);
    let mut worst = 0.0_f64;
    for theta in sweep_directions(k, num_dirs, seed) {
        let rho = lp.radial(&theta)? / lq.radial(&theta)?;
        worst = worst.max(lower * f0.powf(e) / rho).max(rho / (upper * fmax.powf(e)));
    }
    Ok(CheckResult::bound("berwald", label, worst, 1.0, 1e-6)
        .with("k", k as f64)
        .with("p", p)
        .with("q", q)
        .with("lower", lower)
        .with("upper", upper))
}

/// `∫_{L_{k+p}(f)} <x,u>^p = (1/(k+p)) ∫ <x,u>^p f` for `p <= 2`, judged
/// relative to the magnitude reported by [`moment_identity_check`].
pub fn check_moment_identity(f: &dyn ConcaveFunction, u: &[f64], p: usize, label: &str) -> Result<CheckResult> {
    let id = moment_identity_check(f, u, p)?;
    Ok(CheckResult::within("moment_identity", label, id.lhs, id.rhs, id.scale, 1e-4)
        .with("k", f.dim() as f64)
        .with("p", p as f64))
}

/// Midpoint concavity of `f^{1/m}` along seeded chords between points of the
/// support; for indicators (`m = 0`) only the support is tested. Recorded
/// as the largest `mean/midpoint` ratio against `1`.
pub fn check_brunn(f: &dyn ConcaveFunction, chords: usize, seed: u64, label: &str) -> Result<CheckResult> {
    let m = power_index(f)?;
    let k = f.dim();
    let radius = f.support_radius();
    let pow = |v: f64| if m == 0.0 { (v > 0.0) as i32 as f64 } else { v.powf(1.0 / m) };
    let mut worst = 0.0_f64;
    let mut tested = 0;
    let mut rng = crate::rng::stream(seed, 0);
    let mut attempts = 0;
    while tested < chords && attempts < 100 * chords {
        attempts += 1;
        let x = scale(&crate::rng::ball_point(&mut rng, k), radius);
        let y = scale(&crate::rng::ball_point(&mut rng, k), radius);
        let (fx, fy) = (f.evaluate(&x)?, f.evaluate(&y)?);
        if !(fx > 0.0 && fy > 0.0) {
            continue;
        }
        let mid: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 0.5 * (a + b)).collect();
        let mean = 0.5 * (pow(fx) + pow(fy));
        let at_mid = pow(f.evaluate(&mid)?);
        worst = worst.max(if at_mid > 0.0 { mean / at_mid } else { f64::INFINITY });
        tested += 1;
    }
    if tested == 0 {
        return Err(GeomError::GenerationFailed(attempts));
    }
    Ok(CheckResult::bound("brunn_concavity", label, worst, 1.0, 1e-9)
        .with("k", k as f64)
        .with("m", m)
        .with("chords", tested as f64))
}
