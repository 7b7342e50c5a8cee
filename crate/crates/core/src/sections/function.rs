use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::{section, section_with, Section};
use crate::ball_bodies::{ConcaveFunction, Concavity, RayProfile};
use crate::bodies::{ConvexBody, GEOM_TOL};
use crate::error::{GeomError, Result};
use crate::hull::Halfspace;
use crate::linalg::{norm, scale, unit};
use crate::subspace::Subspace;

const MEMO_GRID: f64 = 1e-10;

/// `f(x) = |K ∩ (F + x)|_{n-k}` for `x` in `F^⊥`, evaluated in the
/// coordinates of an orthonormal basis of `F^⊥`.
///
/// `f` is `1/m`-concave on its support with `m = dim F` (Brunn). For `F = {0}`
/// it is the indicator of `K`. Evaluations are memoized on a `1e-10` grid;
/// the table sits behind a lock so shared use from several threads is safe
/// and gives the same values regardless of interleaving.
#[derive(Debug)]
pub struct SectionVolumeFunction {
    body: ConvexBody,
    flat: Subspace,
    normal: Subspace,
    radius: f64,
    centered: bool,
    memo: spin::Mutex<BTreeMap<Vec<i64>, f64>>,
}

impl SectionVolumeFunction {
    pub fn new(body: ConvexBody, flat: Subspace) -> Result<Self> {
        if flat.ambient_dim() != body.dim() {
            return Err(GeomError::DimensionMismatch { expected: body.dim(), got: flat.ambient_dim() });
        }
        if flat.dim() == body.dim() {
            return Err(crate::error::invalid("the flat must be a proper subspace"));
        }
        if matches!(body, ConvexBody::Affine(_)) {
            return Err(GeomError::Unsupported("section functions of affine images of balls".into()));
        }
        let normal = flat.orthogonal_complement();
        let radius = match &body {
            ConvexBody::Ball(b) => norm(&normal.coords(&b.center)) + b.radius,
            _ => body
                .polytope()
                .unwrap()
                .vertices()
                .iter()
                .map(|v| norm(&normal.coords(v)))
                .fold(0.0, f64::max),
        };
        let m = crate::volume::moments(&body)?;
        let centered = norm(&m.centroid) <= GEOM_TOL * body.scale();
        Ok(Self { body, flat, normal, radius, centered, memo: spin::Mutex::new(BTreeMap::new()) })
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn flat(&self) -> &Subspace {
        &self.flat
    }

    /// The orthonormal basis of `F^⊥` whose coordinates `f` takes.
    pub fn normal_space(&self) -> &Subspace {
        &self.normal
    }

    /// `k = n - dim F`.
    pub fn codomain_dim(&self) -> usize {
        self.normal.dim()
    }

    /// `m = dim F`.
    pub fn concavity_index(&self) -> usize {
        self.flat.dim()
    }

    /// `f` at a point of `F^⊥` given in ambient coordinates.
    pub fn value_at(&self, x: &[f64]) -> Result<f64> {
        self.evaluate(&self.normal.coords(x))
    }

    /// `K ∩ (F ⊕ R_+ θ)` for unit `θ` (in `F^⊥` coordinates), in coordinates
    /// whose last axis is `θ`.
    pub fn ray_slab(&self, theta: &[f64]) -> Result<Section> {
        let n = self.body.dim();
        let dir = self.normal.embed(theta);
        let mut basis = self.flat.basis().to_vec();
        basis.push(dir);
        let s = match Subspace::from_orthonormal(n, basis.clone()) {
            Ok(s) => s,
            Err(_) => Subspace::span(n, &basis)?,
        };
        let d = s.dim();
        let half = Halfspace::new(scale(&unit(d, d - 1), -1.0), 0.0);
        section_with(&self.body, &s, &vec![0.0; n], &[half])
    }

    fn quantize(y: &[f64]) -> Vec<i64> {
        y.iter().map(|v| (v / MEMO_GRID).round() as i64).collect()
    }
}

impl ConcaveFunction for SectionVolumeFunction {
    fn dim(&self) -> usize {
        self.normal.dim()
    }

    fn evaluate(&self, y: &[f64]) -> Result<f64> {
        let key = Self::quantize(y);
        if let Some(v) = self.memo.lock().get(&key) {
            return Ok(*v);
        }
        let v = section(&self.body, &self.flat, &self.normal.embed(y))?.volume()?;
        self.memo.lock().insert(key, v);
        Ok(v)
    }

    fn concavity(&self) -> Concavity {
        Concavity::Power(self.flat.dim() as f64)
    }

    fn support_radius(&self) -> f64 {
        self.radius
    }

    fn barycenter_zero(&self) -> bool {
        self.centered
    }

    fn ray_profile(&self, theta: &[f64]) -> Option<RayProfile> {
        if !self.body.is_polytope() {
            return None;
        }
        let slab = self.ray_slab(theta).ok()?;
        let Some(body) = slab.body() else {
            return Some(RayProfile { end: 0.0, breaks: Vec::new(), degree: Some(self.flat.dim()) });
        };
        let d = body.dim();
        let mut heights: Vec<f64> = body.polytope().unwrap().vertices().iter().map(|v| v[d - 1]).collect();
        heights.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let end = *heights.last().unwrap();
        let tol = 1e-12 * end;
        let mut breaks: Vec<f64> = Vec::new();
        for h in heights {
            if h > tol && h < end - tol && breaks.last().map_or(true, |b| h - b > tol) {
                breaks.push(h);
            }
        }
        Some(RayProfile { end, breaks, degree: Some(self.flat.dim()) })
    }

    fn ray_moment_exact(&self, theta: &[f64], q: f64) -> Option<Result<f64>> {
        match &self.body {
            ConvexBody::Ball(b) => {
                if norm(&self.normal.coords(&b.center)) > 1e-12 * b.radius || !(q > 0.0) {
                    return None;
                }
                // ∫_0^r t^{q-1} ω_m (r^2 - t^2)^{m/2} dt = ω_m r^{q+m} B(q/2, m/2 + 1) / 2
                let m = self.flat.dim() as f64;
                let omega = crate::bodies::Ball::unit_volume(self.flat.dim());
                let beta = crate::special::beta(q / 2.0, m / 2.0 + 1.0).ok()?;
                Some(Ok(omega * b.radius.powf(q + m) * beta / 2.0))
            }
            _ => {
                if q < 1.0 || q.fract() != 0.0 {
                    return None;
                }
                let slab = match self.ray_slab(theta) {
                    Ok(s) => s,
                    Err(e) => return Some(Err(e)),
                };
                let Some(body) = slab.body() else { return Some(Ok(0.0)) };
                let d = body.dim();
                let e = unit(d, d - 1);
                let p = body.polytope().unwrap();
                let deg = q as usize - 1;
                Some(Ok(p.simplices().map(|s| crate::volume::simplex_linear_moment(&s, &e, deg)).sum()))
            }
        }
    }

    fn moment_exact(&self, u: &[f64], p: usize) -> Option<Result<f64>> {
        let lifted = self.normal.embed(u);
        match &self.body {
            ConvexBody::Ball(b) => {
                if norm(&b.center) > 1e-12 * b.radius {
                    return None;
                }
                let n = self.body.dim();
                let unit_moment = crate::volume::unit_ball_moment(n, p);
                Some(Ok(unit_moment * b.radius.powi((n + p) as i32) * norm(&lifted).powi(p as i32)))
            }
            _ => Some(crate::volume::moment_p(&self.body, &lifted, p)),
        }
    }
}
