//! Ball's bodies `L_p(f)` of `1/m`-concave functions: ray integrals, radial
//! oracles, moment identities, Berwald's inclusion factors and geometric
//! distance estimates between star bodies.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::bodies::{ConvexBody, Polytope};
use crate::error::{invalid, GeomError, Result};
use crate::linalg::{dot, norm, scale, unit};
use crate::quadrature::{adaptive_pieces, gauss_legendre};
use crate::special::beta;

#[cfg(test)]
mod tests;

/// Concavity class of a nonnegative function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Concavity {
    /// `f^{1/m}` is concave on the support. `m = 0` marks an indicator.
    Power(f64),
    LogConcave,
}

/// Where a function vanishes along a ray and where it stops being smooth.
#[derive(Debug, Clone, PartialEq)]
pub struct RayProfile {
    /// `f(tθ) = 0` for `t > end`.
    pub end: f64,
    /// Interior kinks in `(0, end)`, sorted.
    pub breaks: Vec<f64>,
    /// Polynomial degree of `f(tθ)` between kinks, when it is piecewise
    /// polynomial.
    pub degree: Option<usize>,
}

/// A nonnegative function on `R^k` with known concavity and bounded support.
pub trait ConcaveFunction: Sync {
    fn dim(&self) -> usize;

    fn evaluate(&self, x: &[f64]) -> Result<f64>;

    fn concavity(&self) -> Concavity;

    /// `f = 0` outside the ball of this radius around the origin.
    fn support_radius(&self) -> f64;

    /// Whether `∫ <x, u> f(x) dx = 0` for all `u`.
    fn barycenter_zero(&self) -> bool;

    fn ray_profile(&self, _theta: &[f64]) -> Option<RayProfile> {
        None
    }

    /// `∫_0^∞ t^{q-1} f(tθ) dt` for unit `θ`, when a closed form is known.
    fn ray_moment_exact(&self, _theta: &[f64], _q: f64) -> Option<Result<f64>> {
        None
    }

    /// `∫ <x, u>^p f(x) dx`, when a closed form is known.
    fn moment_exact(&self, _u: &[f64], _p: usize) -> Option<Result<f64>> {
        None
    }
}

/// The indicator of the centered ball `r B_2^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallIndicator {
    pub dim: usize,
    pub radius: f64,
}

impl ConcaveFunction for BallIndicator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        Ok(if norm(x) <= self.radius { 1.0 } else { 0.0 })
    }

    fn concavity(&self) -> Concavity {
        Concavity::Power(0.0)
    }

    fn support_radius(&self) -> f64 {
        self.radius
    }

    fn barycenter_zero(&self) -> bool {
        true
    }

    fn ray_profile(&self, _theta: &[f64]) -> Option<RayProfile> {
        Some(RayProfile { end: self.radius, breaks: Vec::new(), degree: Some(0) })
    }

    fn ray_moment_exact(&self, _theta: &[f64], q: f64) -> Option<Result<f64>> {
        Some(Ok(self.radius.powf(q) / q))
    }

    fn moment_exact(&self, u: &[f64], p: usize) -> Option<Result<f64>> {
        let m = crate::volume::unit_ball_moment(self.dim, p);
        Some(Ok(m * self.radius.powi((self.dim + p) as i32) * norm(u).powi(p as i32)))
    }
}

/// A function given by a closure, with declared properties.
pub struct FnOracle<F> {
    pub dim: usize,
    pub f: F,
    pub concavity: Concavity,
    pub support_radius: f64,
    pub barycenter_zero: bool,
}

impl<F: Fn(&[f64]) -> f64 + Sync> ConcaveFunction for FnOracle<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        Ok((self.f)(x))
    }

    fn concavity(&self) -> Concavity {
        self.concavity
    }

    fn support_radius(&self) -> f64 {
        self.support_radius
    }

    fn barycenter_zero(&self) -> bool {
        self.barycenter_zero
    }
}

/// Where `f(tθ)` drops to zero, by bisection on `f > 0` (the support is
/// convex and contains the origin).
fn support_end(f: &dyn ConcaveFunction, theta: &[f64]) -> Result<f64> {
    let r = f.support_radius();
    if f.evaluate(&scale(theta, r))? > 0.0 {
        return Ok(r);
    }
    if f.evaluate(&vec![0.0; theta.len()])? <= 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, r);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f.evaluate(&scale(theta, mid))? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// `∫_0^∞ t^{q-1} f(tθ) dt` by Gauss-Legendre quadrature on the smooth
/// pieces of the ray, doubling the order until two passes agree to `1e-8`.
///
/// Piecewise polynomial profiles start at the order that integrates them
/// exactly; others start at 64 nodes per piece. For `q < 1` the first piece
/// is integrated in `s = t^q`, which removes the singularity at the origin.
pub fn ray_moment_quadrature(f: &dyn ConcaveFunction, theta: &[f64], q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(invalid("ray moment order must be positive"));
    }
    let profile = match f.ray_profile(theta) {
        Some(p) => p,
        None => RayProfile { end: support_end(f, theta)?, breaks: Vec::new(), degree: None },
    };
    if profile.end <= 0.0 {
        return Ok(0.0);
    }
    let mut knots = vec![0.0];
    knots.extend(profile.breaks.iter().copied());
    knots.push(profile.end);
    let mut order = match profile.degree {
        Some(d) if q.fract() == 0.0 => (d + q as usize).div_ceil(2) + 1,
        // smooth between breakpoints, so a low starting order converges
        Some(_) => 16,
        None => 64,
    };
    let singular = q < 1.0;
    // ∫_0^b t^{q-1} g(t) dt = (1/q) ∫_0^{b^q} g(s^{1/q}) ds
    let head = |s: f64| s.powf(1.0 / q);
    let pass = |order: usize| -> Result<f64> {
        let rule = gauss_legendre(order);
        let mut total = 0.0;
        for (i, w) in knots.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            let h = 0.5 * (b - a);
            let c = 0.5 * (a + b);
            for (x, wt) in rule.0.iter().zip(&rule.1) {
                total += if singular && i == 0 {
                    let hs = 0.5 * b.powf(q);
                    wt * hs / q * f.evaluate(&scale(theta, head(hs * (1.0 + x))))?
                } else {
                    let t = c + h * x;
                    wt * h * t.powf(q - 1.0) * f.evaluate(&scale(theta, t))?
                };
            }
        }
        Ok(total)
    };
    let mut prev = pass(order)?;
    while order < 1024 {
        order *= 2;
        let cur = pass(order)?;
        if (cur - prev).abs() <= 1e-8 * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    // Fall back to adaptive subdivision for rough profiles.
    let mut failure = None;
    let mut eval = |t: f64| match f.evaluate(&scale(theta, t)) {
        Ok(v) => v,
        Err(e) => {
            failure = Some(e);
            0.0
        }
    };
    let value = if singular {
        let first = adaptive_pieces(|s| eval(head(s)) / q, &[0.0, knots[1].powf(q)], 1e-10, 0.0, 4000)?.value;
        let rest = if knots.len() > 2 {
            adaptive_pieces(|t| t.powf(q - 1.0) * eval(t), &knots[1..], 1e-10, 0.0, 4000)?.value
        } else {
            0.0
        };
        first + rest
    } else {
        adaptive_pieces(|t| t.powf(q - 1.0) * eval(t), &knots, 1e-10, 0.0, 4000)?.value
    };
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// `∫_0^∞ t^{q-1} f(tθ) dt` for unit `θ`: exact when the function knows a
/// closed form, by ray quadrature otherwise.
pub fn ray_moment(f: &dyn ConcaveFunction, theta: &[f64], q: f64) -> Result<f64> {
    match f.ray_moment_exact(theta, q) {
        Some(v) => v,
        None => ray_moment_quadrature(f, theta, q),
    }
}

/// `I_p(f, x) = (∫_0^∞ t^{p-1} f(tx) dt)^{1/p}`; zero when `f` vanishes on the
/// ray.
pub fn i_p(f: &dyn ConcaveFunction, x: &[f64], p: f64) -> Result<f64> {
    let l = norm(x);
    if l == 0.0 {
        return Err(invalid("I_p needs a nonzero direction"));
    }
    let j = ray_moment(f, &scale(x, 1.0 / l), p)?;
    Ok(j.powf(1.0 / p) / l)
}

/// A star body given by its radial function on unit vectors.
pub trait StarBody: Sync {
    fn dim(&self) -> usize;

    fn radial(&self, theta: &[f64]) -> Result<f64>;

    fn label(&self) -> String;

    /// Gauge `||x|| = |x| / r(x / |x|)`.
    fn gauge(&self, x: &[f64]) -> Result<f64> {
        let l = norm(x);
        if l == 0.0 {
            return Ok(0.0);
        }
        Ok(l / self.radial(&scale(x, 1.0 / l))?)
    }
}

impl StarBody for ConvexBody {
    fn dim(&self) -> usize {
        ConvexBody::dim(self)
    }

    fn radial(&self, theta: &[f64]) -> Result<f64> {
        ConvexBody::radial(self, theta)
    }

    fn label(&self) -> String {
        String::from("convex body")
    }
}

/// `L_p(f)`, the body with radial function `θ -> I_p(f, θ)`.
pub struct BallBody<'a> {
    f: &'a dyn ConcaveFunction,
    p: f64,
}

impl<'a> BallBody<'a> {
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn function(&self) -> &'a dyn ConcaveFunction {
        self.f
    }
}

impl StarBody for BallBody<'_> {
    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn radial(&self, theta: &[f64]) -> Result<f64> {
        i_p(self.f, theta, self.p)
    }

    fn label(&self) -> String {
        format!("L_{}(f)", self.p)
    }
}

/// `L_p(f)` for `f` positive at the origin.
pub fn ball_body(f: &dyn ConcaveFunction, p: f64) -> Result<BallBody<'_>> {
    if !(p > 0.0) {
        return Err(invalid("p must be positive"));
    }
    if !(f.evaluate(&vec![0.0; f.dim()])? > 0.0) {
        return Err(GeomError::OriginNotInterior);
    }
    Ok(BallBody { f, p })
}

/// `∫_{S^{k-1}} g(θ) dθ` by iterated adaptive Gauss-Kronrod rules in
/// hyperspherical coordinates. For `k = 1` the sphere is `{-1, 1}` with
/// counting measure.
pub fn sphere_integral(
    k: usize,
    g: &dyn Fn(&[f64]) -> Result<f64>,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<f64> {
    match k {
        0 => Err(invalid("sphere of dimension -1")),
        1 => Ok(g(&[1.0])? + g(&[-1.0])?),
        _ => {
            let (lo, hi, pieces) = if k == 2 { (0.0, 2.0 * core::f64::consts::PI, 8) } else { (0.0, core::f64::consts::PI, 4) };
            let breaks: Vec<f64> = (0..=pieces).map(|i| lo + (hi - lo) * i as f64 / pieces as f64).collect();
            let mut failure = None;
            let r = adaptive_pieces(
                |phi| {
                    if failure.is_some() {
                        return 0.0;
                    }
                    let (s, c) = phi.sin_cos();
                    let v = if k == 2 {
                        g(&[c, s])
                    } else {
                        let inner = |w: &[f64]| {
                            let mut x = Vec::with_capacity(k);
                            x.push(c);
                            x.extend(w.iter().map(|wi| s * wi));
                            g(&x)
                        };
                        sphere_integral(k - 1, &inner, rel_tol, abs_tol)
                            .map(|v| v * s.powi(k as i32 - 2))
                    };
                    v.unwrap_or_else(|e| {
                        failure = Some(e);
                        0.0
                    })
                },
                &breaks,
                rel_tol,
                abs_tol,
                4000,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            Ok(r?.value)
        }
    }
}

/// `∫_L <x, u>^p dx = (1/(k+p)) ∫_{S^{k-1}} r_L(θ)^{k+p} <θ, u>^p dθ`.
pub fn star_moment(star: &dyn StarBody, u: &[f64], p: usize, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    let k = star.dim();
    let q = (k + p) as i32;
    let g = |theta: &[f64]| Ok(star.radial(theta)?.powi(q) * dot(theta, u).powi(p as i32));
    Ok(sphere_integral(k, &g, rel_tol, abs_tol)? / q as f64)
}

/// Both sides of `∫_{L_{k+p}(f)} <x,u>^p dx = (1/(k+p)) ∫ <x,u>^p f(x) dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentIdentity {
    /// Polar-coordinate quadrature over `L_{k+p}(f)`.
    pub lhs: f64,
    /// From the exact moments of `f` where known.
    pub rhs: f64,
    /// Magnitude against which the difference should be judged: `|rhs|` for
    /// even `p`, the Cauchy-Schwarz bound on `∫|<x,u>|^p f / (k+p)` for odd `p`.
    pub scale: f64,
}

pub fn moment_identity_check(f: &dyn ConcaveFunction, u: &[f64], p: usize) -> Result<MomentIdentity> {
    if p > 2 {
        return Err(invalid("the moment identity is checked for p in 0..=2"));
    }
    let k = f.dim();
    let q = (k + p) as f64;
    let exact = |r: usize| -> Result<f64> {
        match f.moment_exact(u, r) {
            Some(v) => v,
            None => {
                // Polar coordinates with ray quadrature.
                let g = |t: &[f64]| Ok(ray_moment_quadrature(f, t, (k + r) as f64)? * dot(t, u).powi(r as i32));
                sphere_integral(k, &g, 1e-8, 0.0)
            }
        }
    };
    let rhs = exact(p)? / q;
    let scale = if p % 2 == 0 { rhs.abs() } else { (exact(p - 1)? * exact(p + 1)?).sqrt() / q };
    let body = ball_body(f, q)?;
    // the error estimate runs well above the true error; 1e-5 keeps a margin under 1e-4
    let lhs = star_moment(&body, u, p, 1e-5, 1e-6 * scale * q)?;
    Ok(MomentIdentity { lhs, rhs, scale })
}

/// Scalar factors of the Berwald chain
/// `lower · f(0)^{1/p-1/q} L_q(f) ⊂ L_p(f) ⊂ upper · max(f)^{1/p-1/q} L_q(f)`
/// for a `1/m`-concave `f` and `0 < p <= q`:
/// `lower = B(p,m+1)^{1/p} / B(q,m+1)^{1/q}`, `upper = q^{1/q} / p^{1/p}`.
pub fn berwald_inclusion_constants(p: f64, q: f64, m: f64) -> Result<(f64, f64)> {
    if !(p > 0.0 && p <= q) {
        return Err(invalid("Berwald factors need 0 < p <= q"));
    }
    if !(m >= 0.0) {
        return Err(invalid("concavity index must be nonnegative"));
    }
    let lower = beta(p, m + 1.0)?.powf(1.0 / p) / beta(q, m + 1.0)?.powf(1.0 / q);
    let upper = q.powf(1.0 / q) / p.powf(1.0 / p);
    Ok((lower, upper))
}

/// `(1 + k/(m+1))^m`, the bound on `max f / f(0)` for barycentric `f`.
pub fn fradelizi_factor(k: usize, m: f64) -> f64 {
    (1.0 + k as f64 / (m + 1.0)).powf(m)
}

/// `k (1 + k/(m+1))^{m/p} ((k+1) B(k+1, m+1))^{1/(k+1)} / (p B(p, m+1))^{1/p}`,
/// the factor with `-L_p(f) ⊂ factor · L_p(f)`.
pub fn lemma6_factor(k: usize, m: f64, p: f64) -> Result<f64> {
    let kf = k as f64;
    if !(p > 0.0 && p <= kf + 1.0) {
        return Err(invalid("need 0 < p <= k + 1"));
    }
    let top = ((kf + 1.0) * beta(kf + 1.0, m + 1.0)?).powf(1.0 / (kf + 1.0));
    let bottom = (p * beta(p, m + 1.0)?).powf(1.0 / p);
    Ok(kf * (1.0 + kf / (m + 1.0)).powf(m / p) * top / bottom)
}

/// Largest value of `f` and a maximizer: grid search over the support box,
/// then compass search from the best grid points. For `1/m`-concave `f`
/// every local maximum is global.
pub fn maximize(f: &dyn ConcaveFunction) -> Result<(f64, Vec<f64>)> {
    let k = f.dim();
    let r = f.support_radius();
    let per_axis: usize = match k {
        1 => 64,
        2 => 24,
        3 => 10,
        _ => 6,
    };
    let mut samples: Vec<(f64, Vec<f64>)> = Vec::new();
    let total = per_axis.pow(k as u32);
    for idx in 0..total {
        let mut rem = idx;
        let x: Vec<f64> = (0..k)
            .map(|_| {
                let i = rem % per_axis;
                rem /= per_axis;
                -r + 2.0 * r * (i as f64 + 0.5) / per_axis as f64
            })
            .collect();
        samples.push((f.evaluate(&x)?, x));
    }
    samples.push((f.evaluate(&vec![0.0; k])?, vec![0.0; k]));
    samples.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut best = samples[0].clone();
    for (v0, x0) in samples.into_iter().take(3) {
        let (mut v, mut x) = (v0, x0);
        let mut step = 2.0 * r / per_axis as f64;
        while step > 1e-11 * r {
            let mut moved = false;
            for i in 0..k {
                for s in [1.0, -1.0] {
                    let mut y = x.clone();
                    y[i] += s * step;
                    let fy = f.evaluate(&y)?;
                    if fy > v {
                        v = fy;
                        x = y;
                        moved = true;
                    }
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        if v > best.0 {
            best = (v, x);
        }
    }
    Ok(best)
}

/// Directions used for direction sweeps: `count` seeded uniform directions
/// followed by `±e_i`. On the line this is just `{1, -1}`.
pub fn sweep_directions(k: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    if k == 1 {
        return vec![vec![1.0], vec![-1.0]];
    }
    let mut dirs = crate::rng::sphere_directions(k, count, seed);
    for i in 0..k {
        dirs.push(unit(k, i));
        dirs.push(scale(&unit(k, i), -1.0));
    }
    dirs
}

/// `max_θ (r_A/r_B) · max_θ (r_B/r_A)` over sampled directions: a lower
/// bound on the geometric distance `d_g(A, B)`.
pub fn geometric_distance_lb(a: &dyn StarBody, b: &dyn StarBody, num_dirs: usize, seed: u64) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(GeomError::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    let (mut up, mut down) = (0.0_f64, 0.0_f64);
    for theta in sweep_directions(a.dim(), num_dirs, seed) {
        let ra = a.radial(&theta)?;
        let rb = b.radial(&theta)?;
        if !(ra > 0.0 && rb > 0.0) {
            return Err(invalid("radial functions must be positive"));
        }
        up = up.max(ra / rb);
        down = down.max(rb / ra);
    }
    Ok(up * down)
}

/// Inscribed polytope through boundary points of a star body. In the plane
/// the directions are equally spaced; otherwise they are seeded uniform
/// directions plus `±e_i`.
pub fn polytope_approximation(star: &dyn StarBody, num_dirs: usize, seed: u64) -> Result<Polytope> {
    let k = star.dim();
    let dirs: Vec<Vec<f64>> = if k == 2 {
        (0..num_dirs)
            .map(|i| {
                let a = 2.0 * core::f64::consts::PI * i as f64 / num_dirs as f64;
                vec![a.cos(), a.sin()]
            })
            .collect()
    } else {
        sweep_directions(k, num_dirs, seed)
    };
    let mut pts = Vec::with_capacity(dirs.len());
    for d in dirs {
        pts.push(scale(&d, star.radial(&d)?));
    }
    Polytope::from_points(&pts)
}

/// Largest relative violation of the triangle inequality for the gauge of a
/// star body over seeded pairs of points: `(|x+y| - |x| - |y|) / (|x| + |y|)`.
/// Nonpositive (up to rounding) for convex bodies.
pub fn gauge_convexity_defect(star: &dyn StarBody, samples: usize, seed: u64) -> Result<f64> {
    let k = star.dim();
    let mut worst = f64::NEG_INFINITY;
    for i in 0..samples as u64 {
        let mut rng = crate::rng::stream(seed, i);
        let x = crate::rng::gaussian_vector(&mut rng, k);
        let y = crate::rng::gaussian_vector(&mut rng, k);
        let s = crate::linalg::add(&x, &y);
        let (gx, gy, gs) = (star.gauge(&x)?, star.gauge(&y)?, star.gauge(&s)?);
        worst = worst.max((gs - gx - gy) / (gx + gy));
    }
    Ok(worst)
}
