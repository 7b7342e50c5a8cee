//! Sections of convex bodies by affine flats and by cones, the section
//! volume function `x -> |K ∩ (F + x)|`, and two routes to cone-section
//! volumes `|K ∩ (F + C)|`.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::bodies::{Ball, ConvexBody, Polytope};
use crate::error::{GeomError, Result};
use crate::hull::Halfspace;
use crate::linalg::{dot, norm, sub};
use crate::subspace::Subspace;

mod cone;
mod function;
mod radial;

pub use cone::PolyhedralCone;
pub use function::SectionVolumeFunction;
pub use radial::{cone_section_volume_radial, RadialQuadrature};


/// The result of cutting a body with a flat, in the flat's coordinates.
#[derive(Debug, Clone)]
pub enum Section {
    /// No interior (in the flat's dimension): zero measure.
    Empty,
    /// A zero-dimensional flat meeting the body.
    Point,
    Body(ConvexBody),
}

impl Section {
    /// Measure in the flat's own dimension (counting measure for points).
    pub fn volume(&self) -> Result<f64> {
        match self {
            Section::Empty => Ok(0.0),
            Section::Point => Ok(1.0),
            Section::Body(b) => Ok(crate::volume::moments(b)?.volume),
        }
    }

    pub fn body(&self) -> Option<&ConvexBody> {
        match self {
            Section::Body(b) => Some(b),
            _ => None,
        }
    }
}

/// `K ∩ (offset + flat)`, in the orthonormal coordinates of `flat` with the
/// origin at `offset`.
pub fn section(body: &ConvexBody, flat: &Subspace, offset: &[f64]) -> Result<Section> {
    section_with(body, flat, offset, &[])
}

/// As [`section`], additionally intersected with `extra` halfspaces written
/// in the flat's coordinates.
pub fn section_with(body: &ConvexBody, flat: &Subspace, offset: &[f64], extra: &[Halfspace]) -> Result<Section> {
    let n = body.dim();
    if flat.ambient_dim() != n || offset.len() != n {
        return Err(GeomError::DimensionMismatch { expected: n, got: flat.ambient_dim() });
    }
    let d = flat.dim();
    if d == 0 {
        let inside = body.contains(offset, crate::bodies::GEOM_TOL * body.scale())
            && extra.iter().all(|h| h.offset >= 0.0);
        return Ok(if inside { Section::Point } else { Section::Empty });
    }
    match body {
        ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => {
            let p = body.polytope().unwrap();
            let mut rows = Vec::with_capacity(p.halfspaces().len() + extra.len());
            let tol = crate::bodies::GEOM_TOL * p.scale();
            for h in p.halfspaces() {
                let a = flat.coords(&h.normal);
                let b = h.offset - dot(&h.normal, offset);
                if norm(&a) <= 1e-12 {
                    // Constraint parallel to the flat.
                    if b < -tol {
                        return Ok(Section::Empty);
                    }
                    continue;
                }
                rows.push(Halfspace::new(a, b));
            }
            rows.extend(extra.iter().cloned());
            match Polytope::from_halfspaces(d, &rows) {
                Ok(q) => Ok(Section::Body(q.into())),
                Err(GeomError::Empty) | Err(GeomError::Degenerate { .. }) => Ok(Section::Empty),
                Err(e) => Err(e),
            }
        }
        ConvexBody::Ball(ball) => {
            if !extra.is_empty() {
                return Err(GeomError::Unsupported("ball sections with extra constraints".into()));
            }
            let rel = sub(&ball.center, offset);
            let c = flat.coords(&rel);
            let d2 = dot(&rel, &rel) - dot(&c, &c);
            let r2 = ball.radius * ball.radius - d2.max(0.0);
            if r2 <= (crate::bodies::GEOM_TOL * ball.radius).powi(2) {
                return Ok(Section::Empty);
            }
            Ok(Section::Body(ConvexBody::Ball(Ball::new(c, r2.sqrt())?)))
        }
        ConvexBody::Affine(_) => Err(GeomError::Unsupported("sections of affine images of balls".into())),
    }
}

/// `S = F ⊕ G` with the basis of `F` first and that of `G` last.
fn sum_space(flat: &Subspace, cone: &PolyhedralCone) -> Result<Subspace> {
    let n = flat.ambient_dim();
    for g in cone.generators() {
        if flat.dim() > 0 && norm(&flat.coords(g)) > 1e-9 * norm(g) {
            return Err(crate::error::invalid("cone is not orthogonal to the flat"));
        }
    }
    let mut vectors: Vec<Vec<f64>> = flat.basis().to_vec();
    vectors.extend(cone.span().basis().iter().cloned());
    let s = Subspace::span(n, &vectors)?;
    if s.dim() != flat.dim() + cone.dim() {
        return Err(crate::error::invalid("cone span meets the flat"));
    }
    Ok(s)
}

/// `|K ∩ (F + C)|_{n-k+p}` by intersecting the section `K ∩ (F ⊕ G)` with the
/// facet inequalities of `C` (lifted so they ignore the `F` coordinates).
///
/// Centered balls use the solid-angle fraction of `C` instead.
pub fn cone_section_volume_polyhedral(body: &ConvexBody, flat: &Subspace, cone: &PolyhedralCone) -> Result<f64> {
    let s = sum_space(flat, cone)?;
    match body {
        ConvexBody::Ball(b) => {
            if norm(&b.center) > 1e-12 * b.radius {
                return Err(GeomError::Unsupported("cone sections of off-center balls".into()));
            }
            let whole = section(body, &s, &vec![0.0; body.dim()])?.volume()?;
            Ok(whole * cone.solid_angle_fraction()?)
        }
        _ => {
            let extra: Vec<Halfspace> = cone
                .facet_normals()
                .iter()
                .map(|w| Halfspace::new(s.coords(w).iter().map(|x| -x).collect(), 0.0))
                .collect();
            section_with(body, &s, &vec![0.0; body.dim()], &extra)?.volume()
        }
    }
}

/// `|K ∩ (F + G)|` for `G = span(C)`.
pub fn flat_plus_span_volume(body: &ConvexBody, flat: &Subspace, cone: &PolyhedralCone) -> Result<f64> {
    let s = sum_space(flat, cone)?;
    section(body, &s, &vec![0.0; body.dim()])?.volume()
}

/// `|K ∩ u^+|` with `u^+ = {x : <x, u> >= 0}`.
pub fn halfspace_volume(body: &ConvexBody, u: &[f64]) -> Result<f64> {
    let flat = Subspace::orthogonal_to(u)?;
    let cone = PolyhedralCone::ray(Subspace::full(body.dim()), u)?;
    cone_section_volume_polyhedral(body, &flat, &cone)
}
