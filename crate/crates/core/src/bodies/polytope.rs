use alloc::vec::Vec;

use crate::error::{GeomError, Result};
use crate::hull::{convex_hull, scale_of, Halfspace};
use crate::linalg::{dot, mat_vec, mean, norm, scale};
use crate::lp::chebyshev_center;

/// Default relative geometric tolerance.
pub const GEOM_TOL: f64 = 1e-9;

/// A full-dimensional polytope carrying both of its descriptions plus a
/// triangulation of its boundary.
///
/// Both representations are computed at construction, so every query is a
/// pure read and the type is freely shareable across threads.
#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    halfspaces: Vec<Halfspace>,
    boundary_points: Vec<Vec<f64>>,
    boundary: Vec<Vec<usize>>,
    apex: Vec<f64>,
}

impl Polytope {
    /// Convex hull of a point cloud; fails with [`GeomError::Degenerate`]
    /// when the points do not span `R^dim`.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        let hull = convex_hull(points, GEOM_TOL)?;
        let vertices: Vec<Vec<f64>> = hull.vertices.iter().map(|&i| hull.points[i].clone()).collect();
        let apex = mean(&vertices);
        Ok(Self {
            dim: hull.dim,
            vertices,
            halfspaces: hull.facets,
            boundary_points: hull.points,
            boundary: hull.simplices,
            apex,
        })
    }

    /// Intersection of halfspaces in `R^dim`.
    ///
    /// Returns [`GeomError::Empty`] when the intersection has no interior and
    /// [`GeomError::Unbounded`] when it is not a polytope.
    pub fn from_halfspaces(dim: usize, halfspaces: &[Halfspace]) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(halfspaces.len());
        let mut rhs: Vec<f64> = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            if h.normal.len() != dim {
                return Err(GeomError::DimensionMismatch { expected: dim, got: h.normal.len() });
            }
            let l = norm(&h.normal);
            if l <= 1e-14 {
                if h.offset < -1e-12 {
                    return Err(GeomError::Empty);
                }
                continue;
            }
            rows.push(scale(&h.normal, 1.0 / l));
            rhs.push(h.offset / l);
        }
        if dim == 0 {
            return Err(GeomError::DimensionOutOfRange(0));
        }
        if rows.len() < dim + 1 {
            return Err(GeomError::Unbounded);
        }
        if dim == 1 {
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for (a, b) in rows.iter().zip(&rhs) {
                if a[0] > 0.0 {
                    hi = hi.min(b / a[0]);
                } else {
                    lo = lo.max(b / a[0]);
                }
            }
            if !lo.is_finite() || !hi.is_finite() {
                return Err(GeomError::Unbounded);
            }
            if hi - lo <= GEOM_TOL * hi.abs().max(lo.abs()).max(1e-300) {
                return Err(GeomError::Empty);
            }
            return Self::from_points(&[alloc::vec![lo], alloc::vec![hi]]);
        }

        let (center, radius) = chebyshev_center(&rows, &rhs)?;
        let extent = rhs.iter().fold(0.0_f64, |s, b| s.max(b.abs())) + norm(&center);
        if radius <= GEOM_TOL * extent.max(1e-300) {
            return Err(GeomError::Empty);
        }
        if radius >= 1e5 * extent {
            return Err(GeomError::Unbounded);
        }
        // Polar dual around the Chebyshev center: facets of the dual hull are
        // vertices of the primal polytope.
        let dual: Vec<Vec<f64>> = rows
            .iter()
            .zip(&rhs)
            .map(|(a, b)| scale(a, 1.0 / (b - dot(a, &center))))
            .collect();
        let dual_hull = match convex_hull(&dual, GEOM_TOL) {
            Ok(h) => h,
            Err(GeomError::Degenerate { .. }) => return Err(GeomError::Unbounded),
            Err(e) => return Err(e),
        };
        // The center must be strictly inside the dual hull, else some
        // direction escapes every constraint.
        let dual_scale = scale_of(&dual);
        if dual_hull.facets.iter().any(|f| f.offset <= GEOM_TOL * dual_scale) {
            return Err(GeomError::Unbounded);
        }
        let points: Vec<Vec<f64>> = dual_hull
            .facets
            .iter()
            .map(|f| {
                let mut v = scale(&f.normal, 1.0 / f.offset);
                v.iter_mut().zip(&center).for_each(|(x, c)| *x += c);
                v
            })
            .collect();
        Self::from_points(&points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points.
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Irredundant facet inequalities with unit normals.
    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// A strictly interior point (the vertex average).
    pub fn interior_point(&self) -> &[f64] {
        &self.apex
    }

    /// Characteristic length: the bounding-box diagonal.
    pub fn scale(&self) -> f64 {
        scale_of(&self.vertices)
    }

    /// Full-dimensional simplices (as vertex lists) triangulating the body:
    /// the interior apex coned over the boundary triangulation.
    pub fn simplices(&self) -> impl Iterator<Item = Vec<&[f64]>> + '_ {
        self.boundary.iter().map(move |s| {
            let mut v: Vec<&[f64]> = Vec::with_capacity(self.dim + 1);
            v.push(&self.apex);
            v.extend(s.iter().map(|&i| self.boundary_points[i].as_slice()));
            v
        })
    }

    pub fn num_simplices(&self) -> usize {
        self.boundary.len()
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.halfspaces.iter().all(|h| h.excess(x) <= tol)
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        self.vertices.iter().map(|v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest `t >= 0` with `origin + t dir` in the polytope; `origin` must
    /// belong to the polytope.
    pub fn ray_exit(&self, origin: &[f64], dir: &[f64]) -> f64 {
        let mut t = f64::INFINITY;
        for h in &self.halfspaces {
            let rate = dot(&h.normal, dir);
            if rate > 0.0 {
                t = t.min((h.offset - dot(&h.normal, origin)).max(0.0) / rate);
            }
        }
        t
    }

    /// Image under `x -> A x + b` for invertible `A` (rows). The boundary
    /// triangulation is carried along unchanged.
    pub fn map_affine(&self, a: &[Vec<f64>], b: &[f64]) -> Result<Self> {
        let inv = crate::linalg::inverse(a)?;
        let am = crate::linalg::to_matrix(a);
        let inv_t = crate::linalg::to_matrix(&inv).transpose();
        let map = |p: &Vec<f64>| {
            let mut y = mat_vec(&am, p);
            y.iter_mut().zip(b).for_each(|(yi, bi)| *yi += bi);
            y
        };
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| {
                let n = mat_vec(&inv_t, &h.normal);
                let off = h.offset + dot(&n, b);
                let l = norm(&n);
                Halfspace::new(scale(&n, 1.0 / l), off / l)
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            vertices: self.vertices.iter().map(map).collect(),
            halfspaces,
            boundary_points: self.boundary_points.iter().map(map).collect(),
            boundary: self.boundary.clone(),
            apex: map(&self.apex),
        })
    }

    pub fn translate(&self, t: &[f64]) -> Self {
        let shift = |p: &Vec<f64>| crate::linalg::add(p, t);
        Self {
            dim: self.dim,
            vertices: self.vertices.iter().map(shift).collect(),
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace::new(h.normal.clone(), h.offset + dot(&h.normal, t)))
                .collect(),
            boundary_points: self.boundary_points.iter().map(shift).collect(),
            boundary: self.boundary.clone(),
            apex: shift(&self.apex),
        }
    }
}
