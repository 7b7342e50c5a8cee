//! Radial functions of the intersection body `I(K)` and the convex
//! intersection body `CI(K)`.
//!
//! `r_CI(u)` is the minimum over `z` in `P_u K^*` of
//! `Φ(z) = ∫_{K ∩ u^⊥} (1 - <z, y>)^{-n} dy`. On a `d`-simplex `S` with
//! `n = d + 1` the integral has the closed form `|S| / Π_i (1 - <z, v_i>)`,
//! so `Φ` and its derivatives are exact sums over a triangulation of the
//! section. A quadrature version of `Φ` is kept as an independent check.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::bodies::ConvexBody;
use crate::error::{invalid, GeomError, Result};
use crate::linalg::{axpy, det, dot, factorial, norm, scale, sub};
use crate::quadrature::{adaptive, simplex_rule};
use crate::sections::{halfspace_volume, section, Section};
use crate::special::gamma;
use crate::subspace::Subspace;


/// Points `z` of the admissible region keep `1 - <z, v> >= SHRINK_MARGIN` at
/// every vertex `v` of the section, i.e. `z` stays in `(1 - 1e-6) P_u K^*`.
pub const SHRINK_MARGIN: f64 = 1e-6;

/// `r_I(u) = |K ∩ u^⊥|`.
pub fn intersection_radial(body: &ConvexBody, u: &[f64]) -> Result<f64> {
    let flat = Subspace::orthogonal_to(u)?;
    section(body, &flat, &vec![0.0; body.dim()])?.volume()
}

#[derive(Debug, Clone)]
enum Shape {
    Simplices { simplices: Vec<(Vec<Vec<f64>>, f64)>, vertices: Vec<Vec<f64>> },
    Ball { radius: f64 },
}

/// The central section `K ∩ u^⊥` in orthonormal coordinates of `u^⊥`, set up
/// for evaluating the kernel integral `Φ`.
#[derive(Debug, Clone)]
pub struct CentralSection {
    direction: Vec<f64>,
    flat: Subspace,
    body: ConvexBody,
    shape: Shape,
    volume: f64,
    /// Largest distance from the origin to the section.
    reach: f64,
}

impl CentralSection {
    pub fn new(body: &ConvexBody, u: &[f64]) -> Result<Self> {
        let n = body.dim();
        if n < 2 {
            return Err(invalid("central sections need dimension at least 2"));
        }
        if !body.origin_is_interior() {
            return Err(GeomError::OriginNotInterior);
        }
        let direction = crate::linalg::normalized(u).ok_or_else(|| invalid("direction must be nonzero"))?;
        let flat = Subspace::orthogonal_to(&direction)?;
        let sec = match section(body, &flat, &vec![0.0; n])? {
            Section::Body(b) => b,
            _ => return Err(GeomError::OriginNotInterior),
        };
        let d = n - 1;
        let (shape, volume, reach) = match &sec {
            ConvexBody::Ball(b) if d >= 2 => {
                (Shape::Ball { radius: b.radius }, b.volume(), b.radius)
            }
            ConvexBody::Ball(b) => {
                let vertices = vec![vec![-b.radius], vec![b.radius]];
                let simplices = vec![(vertices.clone(), 2.0 * b.radius)];
                (Shape::Simplices { simplices, vertices }, 2.0 * b.radius, b.radius)
            }
            _ => {
                let p = sec.polytope().ok_or_else(|| GeomError::Unsupported("section of an affine image".into()))?;
                let df = factorial(d);
                let mut simplices = Vec::with_capacity(p.num_simplices());
                let mut volume = 0.0;
                for s in p.simplices() {
                    let edges: Vec<Vec<f64>> = s[1..].iter().map(|v| sub(v, s[0])).collect();
                    let vol = det(&edges).abs() / df;
                    if vol > 0.0 {
                        volume += vol;
                        simplices.push((s.iter().map(|v| v.to_vec()).collect(), vol));
                    }
                }
                let vertices = p.vertices().to_vec();
                let reach = vertices.iter().map(|v| norm(v)).fold(0.0, f64::max);
                (Shape::Simplices { simplices, vertices }, volume, reach)
            }
        };
        Ok(CentralSection { direction, flat, body: sec, shape, volume, reach })
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    /// Orthonormal coordinates of `u^⊥` used for `z`.
    pub fn flat(&self) -> &Subspace {
        &self.flat
    }

    /// The section as a body in the coordinates of [`Self::flat`].
    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn reach(&self) -> f64 {
        self.reach
    }

    fn dim(&self) -> usize {
        self.flat.dim()
    }

    /// `min_y (1 - <z, y>)` over the section; positive exactly when `z` is
    /// interior to `P_u K^*`.
    pub fn margin(&self, z: &[f64]) -> f64 {
        match &self.shape {
            Shape::Simplices { vertices, .. } => {
                vertices.iter().map(|v| 1.0 - dot(z, v)).fold(f64::INFINITY, f64::min)
            }
            Shape::Ball { radius } => 1.0 - radius * norm(z),
        }
    }

    pub fn is_admissible(&self, z: &[f64]) -> bool {
        z.len() == self.dim() && self.margin(z) >= SHRINK_MARGIN
    }

    fn check(&self, z: &[f64]) -> Result<()> {
        if z.len() != self.dim() {
            return Err(GeomError::DimensionMismatch { expected: self.dim(), got: z.len() });
        }
        if !(self.margin(z) > 0.0) {
            return Err(GeomError::OutsideDomain);
        }
        Ok(())
    }

    /// `Φ(z)` and its gradient, with `z` in flat coordinates.
    pub fn objective_and_gradient(&self, z: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.check(z)?;
        let d = self.dim();
        match &self.shape {
            Shape::Simplices { simplices, .. } => {
                let mut value = 0.0;
                let mut grad = vec![0.0; d];
                for (verts, vol) in simplices {
                    let mut prod = 1.0;
                    let mut pull = vec![0.0; d];
                    for v in verts {
                        let l = 1.0 - dot(z, v);
                        prod *= l;
                        axpy(&mut pull, 1.0 / l, v);
                    }
                    let term = vol / prod;
                    value += term;
                    axpy(&mut grad, term, &pull);
                }
                Ok((value, grad))
            }
            Shape::Ball { radius } => ball_objective(d, *radius, z),
        }
    }

    pub fn objective(&self, z: &[f64]) -> Result<f64> {
        Ok(self.objective_and_gradient(z)?.0)
    }

    /// Hessian of `Φ` for triangulated sections: each simplex term
    /// `t = vol / Π l_i` has `∇²t = t (g g^T + Σ v_i v_i^T / l_i^2)` with
    /// `g = Σ v_i / l_i`. `None` for ball sections.
    pub fn hessian(&self, z: &[f64]) -> Result<Option<Vec<Vec<f64>>>> {
        self.check(z)?;
        let d = self.dim();
        let Shape::Simplices { simplices, .. } = &self.shape else {
            return Ok(None);
        };
        let mut h = vec![vec![0.0; d]; d];
        for (verts, vol) in simplices {
            let mut prod = 1.0;
            let mut pull = vec![0.0; d];
            let mut outer = vec![vec![0.0; d]; d];
            for v in verts {
                let l = 1.0 - dot(z, v);
                prod *= l;
                axpy(&mut pull, 1.0 / l, v);
                for (row, vi) in outer.iter_mut().zip(v) {
                    axpy(row, vi / (l * l), v);
                }
            }
            let term = vol / prod;
            for i in 0..d {
                for j in 0..d {
                    h[i][j] += term * (pull[i] * pull[j] + outer[i][j]);
                }
            }
        }
        Ok(Some(h))
    }

    /// `Φ(z)` by Gauss rules on the triangulation, splitting simplices along
    /// their longest edge until two rule orders agree to `rel_tol`. Ball
    /// sections are integrated in polar coordinates.
    pub fn objective_quadrature(&self, z: &[f64], rel_tol: f64) -> Result<f64> {
        self.check(z)?;
        let n = (self.dim() + 1) as i32;
        let kernel = |y: &[f64]| (1.0 - dot(z, y)).powi(-n);
        match &self.shape {
            Shape::Simplices { simplices, .. } => {
                let d = self.dim();
                let rules = (simplex_rule(d, 5), simplex_rule(d, 9));
                let mut total = 0.0;
                for (verts, vol) in simplices {
                    total += refine(verts, *vol, &kernel, &rules, rel_tol, 0);
                }
                Ok(total)
            }
            Shape::Ball { radius } => {
                let d = self.dim();
                let inner = |theta: &[f64]| {
                    let a = dot(z, theta);
                    let r = *radius;
                    adaptive(|t| t.powi(d as i32 - 1) * (1.0 - a * t).powi(-n), 0.0, r, rel_tol, 0.0, 2000)
                        .map(|i| i.value)
                };
                crate::ball_bodies::sphere_integral(d, &inner, rel_tol, 0.0)
            }
        }
    }

    /// `|K ∩ u^⊥ ∩ z^+|` with `z^+ = {y : <y, z> >= 0}`; the whole section
    /// for `z = 0`.
    pub fn halfspace_volume(&self, z: &[f64]) -> Result<f64> {
        if norm(z) == 0.0 {
            return Ok(self.volume);
        }
        halfspace_volume(&self.body, z)
    }
}

/// Closed forms for a centered `d`-ball of radius `r`, `d >= 2`. Along each
/// ray `∫_0^r t^{d-1} (1 - a t)^{-d-1} dt = r^d / (d (1 - a r)^d)`, and the
/// sphere integral of a function of `<z, θ>` reduces to one angle.
fn ball_objective(d: usize, r: f64, z: &[f64]) -> Result<(f64, Vec<f64>)> {
    let s = norm(z);
    let sphere = 2.0 * core::f64::consts::PI.powf((d as f64 - 1.0) / 2.0) / gamma((d as f64 - 1.0) / 2.0)?;
    let di = d as i32;
    if s == 0.0 {
        return Ok((sphere * r.powi(di) / d as f64 * beta_half(d)?, vec![0.0; d]));
    }
    let mut failure = None;
    let mut value_at = |f: &dyn Fn(f64) -> f64| -> f64 {
        match adaptive(|phi| f(phi) * phi.sin().powi(di - 2), 0.0, core::f64::consts::PI, 1e-13, 0.0, 4000) {
            Ok(i) => i.value,
            Err(e) => {
                failure = Some(e);
                0.0
            }
        }
    };
    let value = value_at(&|phi: f64| r.powi(di) / d as f64 * (1.0 - r * s * phi.cos()).powi(-di));
    let slope = value_at(&|phi: f64| r.powi(di + 1) * phi.cos() * (1.0 - r * s * phi.cos()).powi(-di - 1));
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((sphere * value, scale(z, sphere * slope / s)))
}

/// `∫_0^π sin^{d-2} φ dφ`.
fn beta_half(d: usize) -> Result<f64> {
    crate::special::beta(0.5, (d as f64 - 1.0) / 2.0)
}

fn refine(
    verts: &[Vec<f64>],
    vol: f64,
    g: &dyn Fn(&[f64]) -> f64,
    rules: &(Vec<(Vec<f64>, f64)>, Vec<(Vec<f64>, f64)>),
    rel_tol: f64,
    depth: usize,
) -> f64 {
    let d = verts.len() - 1;
    let apply = |rule: &[(Vec<f64>, f64)]| -> f64 {
        let mut s = 0.0;
        for (mu, w) in rule {
            let mut y = verts[0].clone();
            for (i, m) in mu.iter().enumerate() {
                for (yj, (a, b)) in y.iter_mut().zip(verts[i + 1].iter().zip(&verts[0])) {
                    *yj += m * (a - b);
                }
            }
            s += w * g(&y);
        }
        s * vol * factorial(d)
    };
    let coarse = apply(&rules.0);
    let fine = apply(&rules.1);
    if (fine - coarse).abs() <= rel_tol * fine.abs() || depth >= 24 {
        return fine;
    }
    let (mut bi, mut bj, mut best) = (0, 1, -1.0);
    for i in 0..=d {
        for j in i + 1..=d {
            let l = norm(&sub(&verts[i], &verts[j]));
            if l > best {
                (bi, bj, best) = (i, j, l);
            }
        }
    }
    let mid: Vec<f64> = verts[bi].iter().zip(&verts[bj]).map(|(a, b)| 0.5 * (a + b)).collect();
    let mut left = verts.to_vec();
    left[bi] = mid.clone();
    let mut right = verts.to_vec();
    right[bj] = mid;
    refine(&left, vol / 2.0, g, rules, rel_tol, depth + 1) + refine(&right, vol / 2.0, g, rules, rel_tol, depth + 1)
}

/// `Φ(z)` for `z ∈ u^⊥` given in ambient coordinates.
pub fn ci_objective(body: &ConvexBody, u: &[f64], z: &[f64]) -> Result<f64> {
    let sec = CentralSection::new(body, u)?;
    let zc = in_flat(&sec, z)?;
    sec.objective(&zc)
}

/// `∇Φ(z) = n ∫ y (1 - <z, y>)^{-n-1} dy`, an ambient vector in `u^⊥`.
pub fn ci_objective_gradient(body: &ConvexBody, u: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    let sec = CentralSection::new(body, u)?;
    let zc = in_flat(&sec, z)?;
    Ok(sec.flat().embed(&sec.objective_and_gradient(&zc)?.1))
}

fn in_flat(sec: &CentralSection, z: &[f64]) -> Result<Vec<f64>> {
    if z.len() != sec.flat().ambient_dim() {
        return Err(GeomError::DimensionMismatch { expected: sec.flat().ambient_dim(), got: z.len() });
    }
    if dot(z, sec.direction()).abs() > 1e-9 * (1.0 + norm(z)) {
        return Err(invalid("z must lie in u^⊥"));
    }
    Ok(sec.flat().coords(z))
}

/// Stopping rule and iteration budget for [`ci_radial`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiOptions {
    /// Certified when `|∇Φ| · reach <= tol · Φ`.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for CiOptions {
    fn default() -> Self {
        CiOptions { tol: 1e-8, max_iterations: 10_000 }
    }
}

/// One evaluation of `r_CI(u)` next to `r_I(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CIEvaluation {
    pub direction: Vec<f64>,
    pub i_radius: f64,
    pub ci_radius: f64,
    /// Ambient coordinates; lies in `u^⊥`.
    pub minimizer_z: Vec<f64>,
    pub iterations: usize,
    /// `|∇Φ| · reach / Φ` at the minimizer.
    pub certified_gap: f64,
    pub certified: bool,
}

/// Minimizes `Φ` over the shrunken admissible region by gradient descent
/// from `z = 0`, with Barzilai-Borwein trial steps and Armijo backtracking
/// (parameter `1e-4`, shrink `0.5`). `Φ` blows up at the boundary of
/// `P_u K^*`, so the minimizer is interior and the constraint only acts by
/// rejecting trial points. Convexity turns the gradient certificate into a
/// global one.
pub fn ci_radial(body: &ConvexBody, u: &[f64], opts: CiOptions) -> Result<CIEvaluation> {
    let sec = CentralSection::new(body, u)?;
    let (z, value, iterations, gap) = minimize(&sec, opts)?;
    Ok(CIEvaluation {
        direction: sec.direction().to_vec(),
        i_radius: sec.volume(),
        ci_radius: value,
        minimizer_z: sec.flat().embed(&z),
        iterations,
        certified_gap: gap,
        certified: gap <= opts.tol,
    })
}

fn minimize(sec: &CentralSection, opts: CiOptions) -> Result<(Vec<f64>, f64, usize, f64)> {
    let d = sec.flat().dim();
    let reach = sec.reach();
    let mut z = vec![0.0; d];
    let (mut f, mut g) = sec.objective_and_gradient(&z)?;
    let gap = |f: f64, g: &[f64]| norm(g) * reach / f;
    // First trial step: a tenth of the distance to the polar boundary.
    let mut step = 0.1 / (reach * norm(&g)).max(f64::MIN_POSITIVE);
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
    for it in 0..opts.max_iterations {
        if gap(f, &g) <= opts.tol {
            return Ok((z, f, it, gap(f, &g)));
        }
        if let Some((pz, pg)) = &prev {
            let s = sub(&z, pz);
            let y = sub(&g, pg);
            let sy = dot(&s, &y);
            if sy > 0.0 {
                step = dot(&s, &s) / sy;
            }
        }
        let gg = dot(&g, &g);
        let mut t = step;
        let mut accepted = None;
        for _ in 0..80 {
            let trial: Vec<f64> = z.iter().zip(&g).map(|(zi, gi)| zi - t * gi).collect();
            if sec.is_admissible(&trial) {
                let (ft, gt) = sec.objective_and_gradient(&trial)?;
                if ft <= f - 1e-4 * t * gg {
                    accepted = Some((trial, ft, gt));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((nz, nf, ng)) = accepted else {
            // The decrease is below floating point resolution of Φ.
            let (z, f, g) = newton_polish(sec, z, f, g, opts.tol, reach)?;
            return Ok((z, f, it, gap(f, &g)));
        };
        prev = Some((core::mem::replace(&mut z, nz), core::mem::replace(&mut g, ng)));
        f = nf;
    }
    let (z, f, g) = newton_polish(sec, z, f, g, opts.tol, reach)?;
    Ok((z, f, opts.max_iterations, gap(f, &g)))
}

/// Newton steps accepted on a decrease of `|∇Φ|`, which stays measurable
/// where changes of `Φ` itself are lost to rounding.
fn newton_polish(
    sec: &CentralSection,
    mut z: Vec<f64>,
    mut f: f64,
    mut g: Vec<f64>,
    tol: f64,
    reach: f64,
) -> Result<(Vec<f64>, f64, Vec<f64>)> {
    for _ in 0..50 {
        if norm(&g) * reach <= tol * f {
            break;
        }
        let Some(h) = sec.hessian(&z)? else { break };
        let Ok(step) = crate::linalg::solve(&h, &g) else { break };
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = z.iter().zip(&step).map(|(zi, si)| zi - t * si).collect();
            if sec.is_admissible(&trial) {
                let (ft, gt) = sec.objective_and_gradient(&trial)?;
                if norm(&gt) < norm(&g) {
                    accepted = Some((trial, ft, gt));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((nz, nf, ng)) = accepted else { break };
        (z, f, g) = (nz, nf, ng);
    }
    Ok((z, f, g))
}

/// Derivative-free cross-check: compass search on `Φ` from `z = 0` with the
/// step halved down to `1e-10 / reach`. Returns the minimizer in flat
/// coordinates and the value.
pub fn ci_compass_search(sec: &CentralSection) -> Result<(Vec<f64>, f64)> {
    let d = sec.flat().dim();
    let mut z = vec![0.0; d];
    let mut f = sec.objective(&z)?;
    let mut step = 0.25 / sec.reach();
    while step > 1e-10 / sec.reach() {
        let mut moved = false;
        for i in 0..d {
            for s in [1.0, -1.0] {
                let mut y = z.clone();
                y[i] += s * step;
                if sec.is_admissible(&y) {
                    let fy = sec.objective(&y)?;
                    if fy < f {
                        (z, f, moved) = (y, fy, true);
                    }
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok((z, f))
}

/// `CI(K) ⊂ I(K)` over seeded directions, with the smallest observed
/// ratio `r_CI / r_I` as an empirical inner constant.
#[derive(Debug, Clone, PartialEq)]
pub struct CiInclusionReport {
    pub records: Vec<CIEvaluation>,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub num_uncertified: usize,
    /// Directions with `r_CI > r_I (1 + 1e-9)`.
    pub num_violations: usize,
}

impl CiInclusionReport {
    pub fn upper_inclusion_holds(&self) -> bool {
        self.num_violations == 0
    }
}

pub fn ci_inclusion_report(body: &ConvexBody, num_dirs: usize, seed: u64, opts: CiOptions) -> Result<CiInclusionReport> {
    let dirs = crate::rng::sphere_directions(body.dim(), num_dirs, seed);
    let records = dirs.iter().map(|u| ci_radial(body, u, opts)).collect::<Result<Vec<_>>>()?;
    Ok(summarize(records))
}

/// Builds the report summary from per-direction records (which callers may
/// compute in parallel).
pub fn summarize(records: Vec<CIEvaluation>) -> CiInclusionReport {
    let ratios = records.iter().map(|r| r.ci_radius / r.i_radius);
    let min_ratio = ratios.clone().fold(f64::INFINITY, f64::min);
    let max_ratio = ratios.fold(f64::NEG_INFINITY, f64::max);
    let num_uncertified = records.iter().filter(|r| !r.certified).count();
    let num_violations = records.iter().filter(|r| r.ci_radius > r.i_radius * (1.0 + 1e-9)).count();
    CiInclusionReport { records, min_ratio, max_ratio, num_uncertified, num_violations }
}
