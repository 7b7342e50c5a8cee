use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use super::{gruenbaum_constant, random_frame, theorem1_constant, CheckResult};
use crate::bodies::{make_cube, make_regular_simplex, random_centered_polytope, ConvexBody, Polytope};
use crate::error::{invalid, GeomError, Result};
use crate::linalg::{factorial, normalized};
use crate::sections::{cone_section_volume_polyhedral, halfspace_volume, section, PolyhedralCone};
use crate::subspace::Subspace;
use crate::volume::{isotropic_position, moments};

/// Cones whose volume falls below this are reported as unresolvable.
pub const MIN_CONE_VOLUME: f64 = 1e-12;

/// Pyramid of height 1 over `[-1, 1]^{n-1}` with its centroid at the origin
/// and its apex on the positive `x_n` axis.
pub fn gruenbaum_pyramid(n: usize) -> Result<ConvexBody> {
    if n == 0 {
        return Err(GeomError::DimensionOutOfRange(0));
    }
    let base = -1.0 / (n as f64 + 1.0);
    let mut pts = Vec::new();
    for mask in 0..(1usize << (n - 1)) {
        let mut v: Vec<f64> = (0..n - 1).map(|i| if mask >> i & 1 == 1 { 1.0 } else { -1.0 }).collect();
        v.push(base);
        pts.push(v);
    }
    let mut apex = vec![0.0; n];
    apex[n - 1] = 1.0 + base;
    pts.push(apex);
    Ok(Polytope::from_points(&pts)?.into())
}

/// Equality in `|K ∩ u^+| >= (1 + 1/n)^{-n} |K|` for a cone in the
/// direction `u`: the fraction on the apex side must equal the constant.
pub fn experiment_gruenbaum_equality(body: &ConvexBody, apex_direction: &[f64], label: &str) -> Result<CheckResult> {
    let n = body.dim();
    let vol = moments(body)?.volume;
    let frac = halfspace_volume(body, apex_direction)? / vol;
    Ok(CheckResult::equality("gruenbaum_equality", label, frac, gruenbaum_constant(n), 1e-9).with("n", n as f64))
}

/// The simplex section `Δ_n ∩ E_l` cut through the origin parallel to the
/// facet `conv(v_1..v_l)`: the part towards the opposite vertex
/// `f = -(v_1 + .. + v_l)/(n+1-l)` has relative volume `(l/(n+1))^l`.
/// The parameters also carry the reversed ratio for comparison with the ray
/// bound at `k = n - l + 1`.
pub fn experiment_remark1(n: usize, l: usize) -> Result<CheckResult> {
    if !(1 <= l && l < n && n <= 8) {
        return Err(invalid("need 1 <= l <= n - 1 <= 7"));
    }
    let simplex: ConvexBody = make_regular_simplex(n)?.polytope().clone().into();
    let verts = make_regular_simplex(n)?.vertices().to_vec();
    let e = Subspace::span(n, &verts[..l])?;
    let mut f = vec![0.0; n];
    for v in &verts[..l] {
        for (fi, vi) in f.iter_mut().zip(v) {
            *fi -= vi / (n + 1 - l) as f64;
        }
    }
    let fhat = normalized(&f).ok_or_else(|| invalid("degenerate configuration"))?;
    let mut rest = Vec::new();
    for b in e.basis() {
        let mut r = b.clone();
        crate::linalg::reject(&mut r, core::slice::from_ref(&fhat));
        rest.push(r);
    }
    let flat = Subspace::from_orthonormal(n, crate::linalg::orthonormalize(&rest, 1e-9))?;
    let cone = PolyhedralCone::ray(flat.orthogonal_complement(), &fhat)?;
    let plus = cone_section_volume_polyhedral(&simplex, &flat, &cone)?;
    let whole = section(&simplex, &e, &vec![0.0; n])?.volume()?;
    let ratio = plus / whole;
    let lf = l as f64;
    let expected = (lf / (n as f64 + 1.0)).powi(l as i32);
    Ok(CheckResult::equality("remark1", "regular simplex", ratio, expected, 1e-6)
        .with("n", n as f64)
        .with("l", lf)
        .with("minus_over_plus", (whole - plus) / plus)
        .with("k", (n + 1 - l) as f64))
}

/// Rows of the Sylvester-Hadamard matrix of order `n`, a power of two.
pub fn hadamard(n: usize) -> Result<Vec<Vec<f64>>> {
    if n == 0 || !n.is_power_of_two() {
        return Err(invalid("Hadamard rows are built for powers of two"));
    }
    let mut h = vec![vec![1.0]];
    while h.len() < n {
        let m = h.len();
        let mut next = vec![vec![0.0; 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                next[i][j] = h[i][j];
                next[i][j + m] = h[i][j];
                next[i + m][j] = h[i][j];
                next[i + m][j + m] = -h[i][j];
            }
        }
        h = next;
    }
    Ok(h)
}

/// `|[-1,1]^n ∩ C| = n^{n/2}/n!` for the cone over `n` pairwise orthogonal
/// vertices of the facet `x_1 = 1`.
pub fn experiment_remark3_cube(n: usize) -> Result<CheckResult> {
    if n > 8 {
        return Err(GeomError::DimensionOutOfRange(n));
    }
    let rows = hadamard(n)?;
    let cube = ConvexBody::HPolytope(make_cube(n)?);
    let cone = PolyhedralCone::new(Subspace::full(n), rows)?;
    let vol = cone_section_volume_polyhedral(&cube, &Subspace::zero(n), &cone)?;
    let nf = n as f64;
    Ok(CheckResult::equality("remark3_cube", "cube", vol, nf.powf(nf / 2.0) / factorial(n), 1e-6).with("n", nf))
}

/// Default half-angles for the shrinking-cone table. At `n = 5` the cone
/// towards the facet drops below [`MIN_CONE_VOLUME`] soon after `0.02`.
pub const REMARK2_ANGLES: [f64; 5] = [0.5, 0.25, 0.1, 0.05, 0.02];

/// One row of the shrinking-cone table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Remark2Row {
    pub half_angle: f64,
    /// `|C ∩ Δ|`, the cone around the vertex direction.
    pub toward_vertex: f64,
    /// `|(-C) ∩ Δ|`.
    pub toward_facet: f64,
    pub ratio: f64,
}

/// Generators `cos α v + sin α w_i` around the unit vertex direction `v`,
/// with `w_i` the vertices of a regular simplex in `v^⊥`.
pub fn remark2_generators(n: usize, half_angle: f64) -> Result<Vec<Vec<f64>>> {
    if n < 2 {
        return Err(GeomError::DimensionOutOfRange(n));
    }
    let v = make_regular_simplex(n)?.vertices()[0].clone();
    let perp = Subspace::orthogonal_to(&v)?;
    let (c, s) = (half_angle.cos(), half_angle.sin());
    Ok(make_regular_simplex(n - 1)?
        .vertices()
        .iter()
        .map(|w| {
            let w = perp.embed(w);
            v.iter().zip(&w).map(|(a, b)| c * a + s * b).collect()
        })
        .collect())
}

/// `|C ∩ Δ| / |(-C) ∩ Δ|` for simplicial cones shrinking around a vertex
/// direction of the regular simplex `Δ`. Returns the table with its checks:
/// every ratio is bounded by the `k = p = n` constant `n^n`, and the ratios
/// do not decrease by more than 1% along the sequence. The limit `n^n` is
/// reported against the last ratio.
pub fn experiment_remark2(n: usize, half_angles: &[f64]) -> Result<(Vec<Remark2Row>, Vec<CheckResult>)> {
    if !(2..=5).contains(&n) {
        return Err(GeomError::DimensionOutOfRange(n));
    }
    let simplex: ConvexBody = make_regular_simplex(n)?.polytope().clone().into();
    let zero = Subspace::zero(n);
    let bound = theorem1_constant(n, n, n)?.value;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for &alpha in half_angles {
        let cone = PolyhedralCone::new(Subspace::full(n), remark2_generators(n, alpha)?)?;
        let toward_vertex = cone_section_volume_polyhedral(&simplex, &zero, &cone)?;
        let toward_facet = cone_section_volume_polyhedral(&simplex, &zero, &cone.negated())?;
        if toward_vertex.min(toward_facet) < MIN_CONE_VOLUME {
            return Err(GeomError::Unsupported("cone volume below 1e-12".into()));
        }
        let ratio = toward_vertex / toward_facet;
        rows.push(Remark2Row { half_angle: alpha, toward_vertex, toward_facet, ratio });
        checks.push(
            CheckResult::bound("remark2_bound", "regular simplex", ratio, bound, 1e-6)
                .with("n", n as f64)
                .with("half_angle", alpha),
        );
    }
    let drop = rows.windows(2).map(|w| w[0].ratio / w[1].ratio).fold(0.0, f64::max);
    if rows.len() >= 2 {
        checks.push(CheckResult::bound("remark2_monotone", "regular simplex", drop, 1.0, 0.01).with("n", n as f64));
    }
    if let Some(last) = rows.last() {
        checks.push(
            CheckResult::report("remark2_limit", "regular simplex", last.ratio, bound)
                .with("n", n as f64)
                .with("half_angle", last.half_angle)
                .note("limit n^n as the cone shrinks"),
        );
    }
    Ok((rows, checks))
}

/// `2 (|K ∩ orthant| / |K|)^{1/n}` for the orthant spanned by `frame`.
pub fn alpha_value(body: &ConvexBody, frame: &[Vec<f64>]) -> Result<f64> {
    let n = body.dim();
    let cone = PolyhedralCone::orthant(Subspace::full(n), frame)?;
    let part = cone_section_volume_polyhedral(body, &Subspace::zero(n), &cone)?;
    let whole = moments(body)?.volume;
    Ok(2.0 * (part / whole).powf(1.0 / n as f64))
}

/// Smallest observed `2 (|K ∩ orthant|/|K|)^{1/n}` over seeded isotropic
/// random polytopes and over the regular simplex, each with random
/// orthonormal frames.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaEstimate {
    pub n: usize,
    pub trials: usize,
    pub polytope_min: f64,
    pub simplex_min: f64,
    pub minimum: f64,
}

pub fn experiment_alpha_n(n: usize, trials: usize, seed: u64) -> Result<AlphaEstimate> {
    if !(1..=6).contains(&n) || trials == 0 {
        return Err(invalid("need 1 <= n <= 6 and at least one trial"));
    }
    let simplex: ConvexBody = make_regular_simplex(n)?.polytope().clone().into();
    let (mut polytope_min, mut simplex_min) = (f64::INFINITY, f64::INFINITY);
    for t in 0..trials as u64 {
        let body: ConvexBody = random_centered_polytope(n, 2 * n + 4, seed.wrapping_add(t))?.polytope().clone().into();
        let (iso, _) = isotropic_position(&body)?;
        polytope_min = polytope_min.min(alpha_value(&iso, &random_frame(n, n, seed, 2 * t))?);
        simplex_min = simplex_min.min(alpha_value(&simplex, &random_frame(n, n, seed, 2 * t + 1))?);
    }
    Ok(AlphaEstimate { n, trials, polytope_min, simplex_min, minimum: polytope_min.min(simplex_min) })
}

/// Report records for an [`AlphaEstimate`]; the reference is the bound
/// `1/n` that follows from the orthant estimate.
pub fn alpha_records(est: &AlphaEstimate) -> Vec<CheckResult> {
    let n = est.n as f64;
    [("alpha_n_polytopes", est.polytope_min), ("alpha_n_simplex", est.simplex_min)]
        .into_iter()
        .map(|(name, v)| {
            CheckResult::report(name, "isotropic random", v, 1.0 / n)
                .with("n", n)
                .with("trials", est.trials as f64)
                .with("sqrt_n_times_value", v * n.sqrt())
        })
        .collect()
}
