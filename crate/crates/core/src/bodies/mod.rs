//! Convex bodies in `R^n` and their primitive functionals.
//!
//! Polytopes carry both descriptions (see [`Polytope`]); the
//! [`VPolytope`]/[`HPolytope`] wrappers only remember which one the body was
//! specified by. Balls are kept exact, and affine images of balls stay
//! symbolic.

mod polytope;

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

pub use crate::hull::Halfspace;
pub use crate::subspace::Subspace;
pub use polytope::{Polytope, GEOM_TOL};

use crate::error::{invalid, GeomError, Result};
use crate::linalg::{dot, mat_vec, norm, scale, sub};

pub const MAX_DIM: usize = 8;

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(GeomError::DimensionOutOfRange(n))
    }
}

/// A polytope specified by its vertices.
#[derive(Debug, Clone)]
pub struct VPolytope(Polytope);

/// A polytope specified by halfspaces `<a, x> <= b`.
#[derive(Debug, Clone)]
pub struct HPolytope(Polytope);

impl VPolytope {
    /// Hull of the given points; non-extreme and duplicate points are
    /// dropped. Lower-dimensional input yields [`GeomError::Degenerate`].
    pub fn new(points: &[Vec<f64>]) -> Result<Self> {
        Polytope::from_points(points).map(Self)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        self.0.vertices()
    }

    pub fn polytope(&self) -> &Polytope {
        &self.0
    }

    /// Dimension of the affine hull of the vertices (always `dim`, since
    /// lower-dimensional inputs are rejected).
    pub fn affine_dim(&self) -> usize {
        self.0.dim()
    }
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: &[Halfspace]) -> Result<Self> {
        Polytope::from_halfspaces(dim, halfspaces).map(Self)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        self.0.halfspaces()
    }

    pub fn polytope(&self) -> &Polytope {
        &self.0
    }
}

/// Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(invalid("ball radius must be positive"));
        }
        Ok(Self { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Volume of the unit ball in `R^n`: `π^{n/2} / Γ(n/2 + 1)`.
    pub fn unit_volume(n: usize) -> f64 {
        let h = n as f64 / 2.0;
        (h * core::f64::consts::PI.ln() - libm::lgamma(h + 1.0)).exp()
    }

    pub fn volume(&self) -> f64 {
        Self::unit_volume(self.dim()) * self.radius.powi(self.dim() as i32)
    }

    fn ray_exit(&self, origin: &[f64], dir: &[f64]) -> f64 {
        // |o + t d - c|^2 = r^2, largest root.
        let w = sub(origin, &self.center);
        let a = dot(dir, dir);
        let b = dot(&w, dir);
        let c = dot(&w, &w) - self.radius * self.radius;
        let disc = (b * b - a * c).max(0.0);
        ((-b + disc.sqrt()) / a).max(0.0)
    }
}

/// `x -> matrix · x + shift` applied to a base body.
#[derive(Debug, Clone)]
pub struct AffineImage {
    pub base: Box<ConvexBody>,
    pub matrix: Vec<Vec<f64>>,
    inverse: Vec<Vec<f64>>,
    pub shift: Vec<f64>,
}

impl AffineImage {
    pub fn new(base: ConvexBody, matrix: Vec<Vec<f64>>, shift: Vec<f64>) -> Result<Self> {
        let n = base.dim();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) || shift.len() != n {
            return Err(GeomError::DimensionMismatch { expected: n, got: matrix.len() });
        }
        let d = crate::linalg::det(&matrix);
        if d.abs() <= 1e-12 {
            return Err(GeomError::Singular);
        }
        let inverse = crate::linalg::inverse(&matrix)?;
        Ok(Self { base: Box::new(base), matrix, inverse, shift })
    }

    pub fn determinant(&self) -> f64 {
        crate::linalg::det(&self.matrix)
    }

    /// Preimage of `x` in base coordinates.
    pub fn pull_back(&self, x: &[f64]) -> Vec<f64> {
        mat_vec(&crate::linalg::to_matrix(&self.inverse), &sub(x, &self.shift))
    }

    fn pull_back_dir(&self, d: &[f64]) -> Vec<f64> {
        mat_vec(&crate::linalg::to_matrix(&self.inverse), d)
    }
}

/// Which description a polytope body is presented in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Vertices,
    Halfspaces,
}

#[derive(Debug, Clone)]
pub enum ConvexBody {
    VPolytope(VPolytope),
    HPolytope(HPolytope),
    Ball(Ball),
    Affine(AffineImage),
}

impl From<Polytope> for ConvexBody {
    fn from(p: Polytope) -> Self {
        ConvexBody::VPolytope(VPolytope(p))
    }
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::VPolytope(p) => p.dim(),
            ConvexBody::HPolytope(p) => p.dim(),
            ConvexBody::Ball(b) => b.dim(),
            ConvexBody::Affine(a) => a.base.dim(),
        }
    }

    pub fn polytope(&self) -> Option<&Polytope> {
        match self {
            ConvexBody::VPolytope(p) => Some(&p.0),
            ConvexBody::HPolytope(p) => Some(&p.0),
            _ => None,
        }
    }

    pub fn is_polytope(&self) -> bool {
        self.polytope().is_some()
    }

    /// Characteristic length used to scale tolerances.
    pub fn scale(&self) -> f64 {
        match self {
            ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => self.polytope().unwrap().scale(),
            ConvexBody::Ball(b) => 2.0 * b.radius * (b.dim() as f64).sqrt(),
            ConvexBody::Affine(_) => {
                let (lo, hi) = self.bounding_box();
                crate::linalg::dist(&lo, &hi)
            }
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        match self {
            ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => {
                self.polytope().unwrap().contains(x, tol)
            }
            ConvexBody::Ball(b) => crate::linalg::dist(x, &b.center) <= b.radius + tol,
            ConvexBody::Affine(a) => a.base.contains(&a.pull_back(x), tol),
        }
    }

    /// Whether `x` is interior with margin `tol` (relative to the body scale).
    pub fn contains_interior(&self, x: &[f64], tol: f64) -> bool {
        match self {
            ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => {
                let p = self.polytope().unwrap();
                let margin = tol * p.scale();
                p.halfspaces().iter().all(|h| h.excess(x) < -margin)
            }
            ConvexBody::Ball(b) => crate::linalg::dist(x, &b.center) < b.radius * (1.0 - tol),
            ConvexBody::Affine(a) => a.base.contains_interior(&a.pull_back(x), tol),
        }
    }

    pub fn origin_is_interior(&self) -> bool {
        self.contains_interior(&vec![0.0; self.dim()], GEOM_TOL)
    }

    /// `h_K(u) = sup_{x in K} <x, u>`.
    pub fn support(&self, u: &[f64]) -> f64 {
        match self {
            ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => self.polytope().unwrap().support(u),
            ConvexBody::Ball(b) => dot(&b.center, u) + b.radius * norm(u),
            ConvexBody::Affine(a) => {
                let at_u: Vec<f64> = (0..u.len())
                    .map(|j| (0..u.len()).map(|i| a.matrix[i][j] * u[i]).sum())
                    .collect();
                a.base.support(&at_u) + dot(&a.shift, u)
            }
        }
    }

    /// Largest `t >= 0` with `origin + t dir` in the body, for `origin` in
    /// the body.
    pub fn ray_exit(&self, origin: &[f64], dir: &[f64]) -> f64 {
        match self {
            ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => {
                self.polytope().unwrap().ray_exit(origin, dir)
            }
            ConvexBody::Ball(b) => b.ray_exit(origin, dir),
            ConvexBody::Affine(a) => a.base.ray_exit(&a.pull_back(origin), &a.pull_back_dir(dir)),
        }
    }

    /// `r_K(u) = max{a >= 0 : a u in K}`; requires the origin in the interior.
    pub fn radial(&self, u: &[f64]) -> Result<f64> {
        if !self.origin_is_interior() {
            return Err(GeomError::OriginNotInterior);
        }
        Ok(self.ray_exit(&vec![0.0; self.dim()], u))
    }

    /// Gauge `||x||_K = min{a >= 0 : x in a K}`.
    pub fn minkowski_norm(&self, x: &[f64]) -> Result<f64> {
        if norm(x) == 0.0 {
            return if self.origin_is_interior() { Ok(0.0) } else { Err(GeomError::OriginNotInterior) };
        }
        Ok(1.0 / self.radial(x)?)
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim();
        let mut lo = vec![0.0; n];
        let mut hi = vec![0.0; n];
        for i in 0..n {
            let e = crate::linalg::unit(n, i);
            hi[i] = self.support(&e);
            lo[i] = -self.support(&scale(&e, -1.0));
        }
        (lo, hi)
    }

    pub fn translate(&self, t: &[f64]) -> ConvexBody {
        match self {
            ConvexBody::VPolytope(p) => ConvexBody::VPolytope(VPolytope(p.0.translate(t))),
            ConvexBody::HPolytope(p) => ConvexBody::HPolytope(HPolytope(p.0.translate(t))),
            ConvexBody::Ball(b) => {
                ConvexBody::Ball(Ball { center: crate::linalg::add(&b.center, t), radius: b.radius })
            }
            ConvexBody::Affine(a) => ConvexBody::Affine(AffineImage {
                base: a.base.clone(),
                matrix: a.matrix.clone(),
                inverse: a.inverse.clone(),
                shift: crate::linalg::add(&a.shift, t),
            }),
        }
    }

    /// Image under `x -> A x + b`. Polytopes are mapped eagerly; balls become
    /// [`ConvexBody::Affine`] unless `A` is a multiple of an orthogonal matrix.
    pub fn affine_image(&self, a: &[Vec<f64>], b: &[f64]) -> Result<ConvexBody> {
        match self {
            ConvexBody::VPolytope(p) => Ok(ConvexBody::VPolytope(VPolytope(p.0.map_affine(a, b)?))),
            ConvexBody::HPolytope(p) => Ok(ConvexBody::HPolytope(HPolytope(p.0.map_affine(a, b)?))),
            ConvexBody::Ball(ball) => {
                let m = crate::linalg::to_matrix(a);
                let mtm = m.transpose() * &m;
                let s2 = mtm[(0, 0)];
                let n = ball.dim();
                let conformal = (0..n).all(|i| {
                    (0..n).all(|j| {
                        let e = if i == j { s2 } else { 0.0 };
                        (mtm[(i, j)] - e).abs() <= 1e-12 * s2.abs().max(1.0)
                    })
                });
                if conformal && s2 > 0.0 {
                    let mut c = mat_vec(&m, &ball.center);
                    c.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    Ok(ConvexBody::Ball(Ball::new(c, ball.radius * s2.sqrt())?))
                } else {
                    Ok(ConvexBody::Affine(AffineImage::new(self.clone(), a.to_vec(), b.to_vec())?))
                }
            }
            ConvexBody::Affine(img) => {
                // Compose: A (M y + s) + b.
                let am = crate::linalg::to_matrix(a);
                let composed = &am * crate::linalg::to_matrix(&img.matrix);
                let mut shift = mat_vec(&am, &img.shift);
                shift.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                img.base.affine_image(&crate::linalg::from_matrix(&composed), &shift)
            }
        }
    }

    /// Polar body `K^* = {y : <x, y> <= 1 for all x in K}`.
    pub fn polar(&self) -> Result<ConvexBody> {
        if !self.origin_is_interior() {
            return Err(GeomError::OriginNotInterior);
        }
        match self {
            ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => {
                let p = self.polytope().unwrap();
                let pts: Vec<Vec<f64>> =
                    p.halfspaces().iter().map(|h| scale(&h.normal, 1.0 / h.offset)).collect();
                let dual = Polytope::from_points(&pts)?;
                Ok(match self {
                    ConvexBody::VPolytope(_) => ConvexBody::HPolytope(HPolytope(dual)),
                    _ => ConvexBody::VPolytope(VPolytope(dual)),
                })
            }
            ConvexBody::Ball(b) => {
                if norm(&b.center) > 0.0 {
                    return Err(GeomError::Unsupported("polar of an off-center ball".into()));
                }
                Ok(ConvexBody::Ball(Ball::new(b.center.clone(), 1.0 / b.radius)?))
            }
            ConvexBody::Affine(a) => {
                if norm(&a.shift) > 0.0 {
                    return Err(GeomError::Unsupported("polar of a shifted affine image".into()));
                }
                // (A K)^* = A^{-T} K^*
                let inv_t: Vec<Vec<f64>> = (0..a.inverse.len())
                    .map(|i| (0..a.inverse.len()).map(|j| a.inverse[j][i]).collect())
                    .collect();
                a.base.polar()?.affine_image(&inv_t, &vec![0.0; self.dim()])
            }
        }
    }

    /// Same body presented in the other description. Balls have no polytope
    /// description.
    pub fn convert(&self, target: Representation) -> Result<ConvexBody> {
        let p = self
            .polytope()
            .ok_or_else(|| GeomError::Unsupported("conversion of a non-polytope body".into()))?
            .clone();
        Ok(match target {
            Representation::Vertices => ConvexBody::VPolytope(VPolytope(p)),
            Representation::Halfspaces => ConvexBody::HPolytope(HPolytope(p)),
        })
    }
}

/// `C^{*z} = {y : <y - z, x - z> <= 1 for all x in C} = z + (C - z)^*`.
pub fn polar_with_center(body: &ConvexBody, z: &[f64]) -> Result<ConvexBody> {
    if !body.contains_interior(z, GEOM_TOL) {
        return Err(GeomError::NotInterior);
    }
    let neg: Vec<f64> = z.iter().map(|x| -x).collect();
    Ok(body.translate(&neg).polar()?.translate(z))
}

/// Orthogonal projection onto `subspace`, in the subspace's coordinates.
pub fn project(body: &ConvexBody, subspace: &Subspace) -> Result<ConvexBody> {
    if subspace.dim() == 0 {
        return Err(invalid("projection onto the zero subspace"));
    }
    if subspace.ambient_dim() != body.dim() {
        return Err(GeomError::DimensionMismatch { expected: body.dim(), got: subspace.ambient_dim() });
    }
    match body {
        ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => {
            let pts: Vec<Vec<f64>> =
                body.polytope().unwrap().vertices().iter().map(|v| subspace.coords(v)).collect();
            Ok(ConvexBody::VPolytope(VPolytope::new(&pts)?))
        }
        ConvexBody::Ball(b) => Ok(ConvexBody::Ball(Ball::new(subspace.coords(&b.center), b.radius)?)),
        ConvexBody::Affine(_) => Err(GeomError::Unsupported("projection of an affine image".into())),
    }
}

/// Regular simplex with `n + 1` unit-length vertices and centroid `0`.
pub fn make_regular_simplex(n: usize) -> Result<VPolytope> {
    check_dim(n)?;
    let ones = vec![1.0 / ((n + 1) as f64).sqrt(); n + 1];
    let basis = crate::linalg::complement(&[ones], n + 1);
    let mut verts: Vec<Vec<f64>> = (0..=n)
        .map(|i| {
            let e = crate::linalg::unit(n + 1, i);
            basis.iter().map(|b| dot(b, &e)).collect::<Vec<f64>>()
        })
        .collect();
    let c = crate::linalg::mean(&verts);
    for v in verts.iter_mut() {
        *v = sub(v, &c);
        let l = norm(v);
        v.iter_mut().for_each(|x| *x /= l);
    }
    // Re-center exactly after normalization.
    let c = crate::linalg::mean(&verts);
    for v in verts.iter_mut() {
        *v = sub(v, &c);
    }
    VPolytope::new(&verts)
}

/// `[-1, 1]^n` as an H-polytope.
pub fn make_cube(n: usize) -> Result<HPolytope> {
    check_dim(n)?;
    let mut hs = Vec::with_capacity(2 * n);
    for i in 0..n {
        hs.push(Halfspace::new(crate::linalg::unit(n, i), 1.0));
        hs.push(Halfspace::new(scale(&crate::linalg::unit(n, i), -1.0), 1.0));
    }
    HPolytope::new(n, &hs)
}

/// `conv(±e_i)`.
pub fn make_cross_polytope(n: usize) -> Result<VPolytope> {
    check_dim(n)?;
    let mut pts = Vec::with_capacity(2 * n);
    for i in 0..n {
        pts.push(crate::linalg::unit(n, i));
        pts.push(scale(&crate::linalg::unit(n, i), -1.0));
    }
    VPolytope::new(&pts)
}

pub fn make_ball(n: usize, radius: f64) -> Result<ConvexBody> {
    check_dim(n)?;
    Ok(ConvexBody::Ball(Ball::new(vec![0.0; n], radius)?))
}

/// Hull of `num_points` seeded uniform points of the unit ball, translated so
/// that its centroid is the origin.
pub fn random_centered_polytope(n: usize, num_points: usize, seed: u64) -> Result<VPolytope> {
    check_dim(n)?;
    if num_points < n + 1 {
        return Err(invalid("need at least n + 1 points"));
    }
    const RETRIES: u64 = 100;
    for attempt in 0..=RETRIES {
        let pts: Vec<Vec<f64>> = (0..num_points as u64)
            .map(|i| {
                let mut rng = crate::rng::stream(seed, attempt * num_points as u64 + i);
                crate::rng::ball_point(&mut rng, n)
            })
            .collect();
        match Polytope::from_points(&pts) {
            Ok(p) => {
                let c = crate::volume::polytope_moments(&p).centroid;
                return Ok(VPolytope(p.translate(&scale(&c, -1.0))));
            }
            Err(GeomError::Degenerate { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GeomError::GenerationFailed(RETRIES as usize))
}

#[cfg(test)]
mod tests;
