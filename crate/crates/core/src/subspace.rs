//! Linear subspaces of `R^n` carried by orthonormal bases.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, GeomError, Result};
use crate::linalg::{axpy, complement, dot, orthonormalize};

const ORTHO_TOL: f64 = 1e-12;

/// A linear subspace of `R^n` given by an orthonormal basis. The empty basis
/// is the zero subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<f64>>,
}

impl Subspace {
    /// Wraps an already orthonormal basis, checking `<b_i, b_j> = δ_ij`
    /// within `1e-12`.
    pub fn from_orthonormal(ambient_dim: usize, basis: Vec<Vec<f64>>) -> Result<Self> {
        for (i, b) in basis.iter().enumerate() {
            if b.len() != ambient_dim {
                return Err(GeomError::DimensionMismatch { expected: ambient_dim, got: b.len() });
            }
            for (j, c) in basis.iter().enumerate().take(i + 1) {
                let target = if i == j { 1.0 } else { 0.0 };
                if (dot(b, c) - target).abs() > ORTHO_TOL {
                    return Err(invalid("basis is not orthonormal"));
                }
            }
        }
        Ok(Self { ambient_dim, basis })
    }

    /// The span of arbitrary vectors; linearly dependent inputs are dropped.
    pub fn span(ambient_dim: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(GeomError::DimensionMismatch { expected: ambient_dim, got: v.len() });
        }
        Ok(Self { ambient_dim, basis: orthonormalize(vectors, 1e-10) })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| crate::linalg::unit(ambient_dim, i)).collect();
        Self { ambient_dim, basis }
    }

    /// The hyperplane `u^⊥`.
    pub fn orthogonal_to(u: &[f64]) -> Result<Self> {
        let n = u.len();
        let line = orthonormalize(&[u.to_vec()], 1e-12);
        if line.is_empty() {
            return Err(invalid("zero normal vector"));
        }
        Ok(Self { ambient_dim: n, basis: complement(&line, n) })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn orthogonal_complement(&self) -> Self {
        Self { ambient_dim: self.ambient_dim, basis: complement(&self.basis, self.ambient_dim) }
    }

    /// Coordinates of the orthogonal projection of `x` in this basis.
    pub fn coords(&self, x: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|b| dot(b, x)).collect()
    }

    /// The point of `R^n` with the given coordinates.
    pub fn embed(&self, coords: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut x, *c, b);
        }
        x
    }

    /// Orthogonal projection of `x` onto the subspace, in ambient coordinates.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        self.embed(&self.coords(x))
    }

    /// Distance from `x` to the subspace.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let p = self.project(x);
        crate::linalg::dist(x, &p)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.residual(x) <= tol * crate::linalg::norm(x).max(1.0)
    }

    /// Orthogonal direct sum with a subspace orthogonal to this one. The basis
    /// of `self` comes first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if other.ambient_dim != self.ambient_dim {
            return Err(GeomError::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        Self::from_orthonormal(self.ambient_dim, basis)
            .map_err(|_| invalid("direct sum of non-orthogonal subspaces"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_has_codimension_one() {
        let h = Subspace::orthogonal_to(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(h.dim(), 2);
        for b in h.basis() {
            assert!(dot(b, &[1.0, 2.0, 3.0]).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_orthonormal_basis() {
        assert!(Subspace::from_orthonormal(2, vec![vec![1.0, 0.0], vec![1.0, 1.0]]).is_err());
    }

    #[test]
    fn embed_inverts_coords_on_the_subspace() {
        let s = Subspace::span(3, &[vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]]).unwrap();
        let x = s.embed(&[0.3, -1.2]);
        let back = s.coords(&x);
        assert!((back[0] - 0.3).abs() < 1e-12 && (back[1] + 1.2).abs() < 1e-12);
        assert!(s.residual(&x) < 1e-12);
    }
}
