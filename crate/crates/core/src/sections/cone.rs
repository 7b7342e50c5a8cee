use alloc::format;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{GeomError, Result};
use crate::linalg::{dot, inverse, norm, normalized, scale};
use crate::subspace::Subspace;

/// A simplicial cone `{Σ λ_i g_i : λ_i >= 0}` with linearly independent
/// generators, living inside `ambient`.
///
/// Rays, orthants `{x in E : <x, u_i> >= 0}` for orthonormal `u_i`, and
/// general simplicial cones are all of this form.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    ambient: Subspace,
    generators: Vec<Vec<f64>>,
    span: Subspace,
    // Inward unit normals in ambient coordinates: x in span belongs to the
    // cone iff <w_i, x> >= 0 for all i.
    facets: Vec<Vec<f64>>,
}

impl PolyhedralCone {
    pub fn new(ambient: Subspace, generators: Vec<Vec<f64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(crate::error::invalid("a cone needs at least one generator"));
        }
        let n = ambient.ambient_dim();
        let mut gens = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.len() != n {
                return Err(GeomError::DimensionMismatch { expected: n, got: g.len() });
            }
            let l = norm(g);
            if l == 0.0 {
                return Err(crate::error::invalid("zero cone generator"));
            }
            if ambient.residual(g) > 1e-9 * l {
                return Err(crate::error::invalid("cone generator outside its ambient subspace"));
            }
            // Snap onto the ambient subspace so the residual is at rounding level.
            gens.push(ambient.project(g));
        }
        let span = Subspace::span(n, &gens)?;
        let p = gens.len();
        if span.dim() != p {
            return Err(GeomError::Unsupported(format!(
                "non-simplicial cone: {p} generators span dimension {}",
                span.dim()
            )));
        }
        // Generator matrix in span coordinates; rows of its inverse give the
        // facet functionals.
        let m: Vec<Vec<f64>> =
            (0..p).map(|i| gens.iter().map(|g| dot(&span.basis()[i], g)).collect()).collect();
        let minv = inverse(&m)?;
        let facets = minv
            .iter()
            .map(|row| {
                let w = span.embed(row);
                let l = norm(&w);
                scale(&w, 1.0 / l)
            })
            .collect();
        Ok(Self { ambient, generators: gens, span, facets })
    }

    /// The ray `R_+ θ`.
    pub fn ray(ambient: Subspace, theta: &[f64]) -> Result<Self> {
        Self::new(ambient, alloc::vec![theta.to_vec()])
    }

    /// `{x in span(u_i) : <x, u_i> >= 0}` for pairwise orthogonal `u_i`.
    pub fn orthant(ambient: Subspace, directions: &[Vec<f64>]) -> Result<Self> {
        for (i, a) in directions.iter().enumerate() {
            for b in &directions[..i] {
                if dot(a, b).abs() > 1e-12 * norm(a) * norm(b) {
                    return Err(crate::error::invalid("orthant directions must be pairwise orthogonal"));
                }
            }
        }
        Self::new(ambient, directions.to_vec())
    }

    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    /// `G = span(C)`.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// `p = dim span(C)`.
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn facet_normals(&self) -> &[Vec<f64>] {
        &self.facets
    }

    /// `-C`.
    pub fn negated(&self) -> Self {
        Self {
            ambient: self.ambient.clone(),
            generators: self.generators.iter().map(|g| scale(g, -1.0)).collect(),
            span: self.span.clone(),
            facets: self.facets.iter().map(|w| scale(w, -1.0)).collect(),
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let l = norm(x).max(1.0);
        self.span.residual(x) <= tol * l && self.facets.iter().all(|w| dot(w, x) >= -tol * l)
    }

    fn is_orthant(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[..i].iter().all(|b| dot(a, b).abs() <= 1e-12 * norm(a) * norm(b))
        })
    }

    /// Fraction of the unit sphere of `G` covered by the cone. Closed forms
    /// exist for orthants and for `p <= 3`.
    pub fn solid_angle_fraction(&self) -> Result<f64> {
        let p = self.dim();
        if self.is_orthant() {
            return Ok(0.5.powi(p as i32));
        }
        let u: Vec<Vec<f64>> = self.generators.iter().map(|g| normalized(g).unwrap()).collect();
        match p {
            2 => Ok(dot(&u[0], &u[1]).clamp(-1.0, 1.0).acos() / (2.0 * core::f64::consts::PI)),
            3 => {
                let c: Vec<Vec<f64>> = u.iter().map(|g| self.span.coords(g)).collect();
                let triple = crate::linalg::det(&c).abs();
                let den = 1.0 + dot(&u[0], &u[1]) + dot(&u[0], &u[2]) + dot(&u[1], &u[2]);
                let omega = 2.0 * triple.atan2(den);
                Ok(omega / (4.0 * core::f64::consts::PI))
            }
            _ => Err(GeomError::Unsupported(format!("solid angle of a {p}-dimensional simplicial cone"))),
        }
    }
}
