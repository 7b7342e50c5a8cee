use alloc::vec::Vec;
use num_traits::Float;

use super::{PolyhedralCone, SectionVolumeFunction};
use crate::ball_bodies::{ray_moment, ray_moment_quadrature, ConcaveFunction};
use crate::bodies::ConvexBody;
use crate::error::{GeomError, Result};
use crate::linalg::{det, dot, norm, scale};
use crate::quadrature::adaptive;
use crate::subspace::Subspace;

/// Accuracy settings for [`cone_section_volume_radial`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialQuadrature {
    /// Relative tolerance of the angular integration.
    pub rel_tol: f64,
    /// Subinterval budget of each adaptive pass.
    pub max_intervals: usize,
    /// Evaluate ray integrals by quadrature even when an exact form exists.
    pub quadrature_rays: bool,
}

impl Default for RadialQuadrature {
    fn default() -> Self {
        Self { rel_tol: 1e-8, max_intervals: 2000, quadrature_rays: false }
    }
}

/// `|K ∩ (F + C)| = ∫_{C ∩ S^{p-1}(G)} I_p(f, θ)^p dθ` with `f` the section
/// volume function of `(K, F)`.
///
/// The cone is parametrized over the simplex by `μ -> Mμ` (columns of `M` are
/// the generators), which turns the spherical integral into
/// `|det M| ∫_{Δ_{p-1}} I_p(f, Mμ)^p dμ`. That integral is done by nested
/// adaptive Gauss-Kronrod rules.
pub fn cone_section_volume_radial(
    body: &ConvexBody,
    flat: &Subspace,
    cone: &PolyhedralCone,
    spec: &RadialQuadrature,
) -> Result<f64> {
    let f = SectionVolumeFunction::new(body.clone(), flat.clone())?;
    let normal = f.normal_space().clone();
    let p = cone.dim();
    let gens: Vec<Vec<f64>> = cone.generators().iter().map(|g| normal.coords(g)).collect();
    for (g, full) in gens.iter().zip(cone.generators()) {
        if (norm(g) - norm(full)).abs() > 1e-9 * norm(full) {
            return Err(crate::error::invalid("cone is not orthogonal to the flat"));
        }
    }
    let basis = cone.span().basis();
    let m: Vec<Vec<f64>> = (0..p)
        .map(|i| cone.generators().iter().map(|g| dot(&basis[i], g)).collect())
        .collect();
    let jac = det(&m).abs();
    let q = p as f64;
    let integrand = |mu: &[f64]| -> Result<f64> {
        let mut x = alloc::vec![0.0; f.dim()];
        for (w, g) in mu.iter().zip(&gens) {
            crate::linalg::axpy(&mut x, *w, g);
        }
        let l = norm(&x);
        let theta = scale(&x, 1.0 / l);
        let j = if spec.quadrature_rays { ray_moment_quadrature(&f, &theta, q)? } else { ray_moment(&f, &theta, q)? };
        Ok(j * l.powf(-q))
    };
    let value = simplex_integral(p - 1, &integrand, spec)?;
    Ok(jac * value)
}

/// `∫_{Δ_d} g(μ_1, ..., μ_d, 1 - Σ μ_i) dμ` over the standard simplex by
/// iterated adaptive quadrature.
fn simplex_integral(d: usize, g: &dyn Fn(&[f64]) -> Result<f64>, spec: &RadialQuadrature) -> Result<f64> {
    let mut prefix = Vec::with_capacity(d + 1);
    nested(d, 1.0, &mut prefix, g, spec)
}

fn nested(
    remaining: usize,
    budget: f64,
    prefix: &mut Vec<f64>,
    g: &dyn Fn(&[f64]) -> Result<f64>,
    spec: &RadialQuadrature,
) -> Result<f64> {
    if remaining == 0 {
        prefix.push(budget);
        let v = g(prefix);
        prefix.pop();
        return v;
    }
    let mut failure: Option<GeomError> = None;
    let mut local = prefix.clone();
    let r = adaptive(
        |t| {
            if failure.is_some() {
                return 0.0;
            }
            local.push(t);
            let v = nested(remaining - 1, budget - t, &mut local, g, spec);
            local.pop();
            v.unwrap_or_else(|e| {
                failure = Some(e);
                0.0
            })
        },
        0.0,
        budget,
        spec.rel_tol,
        0.0,
        spec.max_intervals,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(r?.value)
}
