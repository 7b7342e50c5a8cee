//! Exact volumes, centroids and second moments of polytopes by triangulation,
//! a Monte Carlo cross-check, and the isotropic-position transform.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::bodies::{Ball, ConvexBody, Polytope};
use crate::error::{invalid, GeomError, Result};
use crate::linalg::{dot, factorial, from_matrix, mat_vec, scale, sub, to_matrix};

/// Volume, centroid and the raw second-moment matrix `∫_K x x^T dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub volume: f64,
    pub centroid: Vec<f64>,
    pub second_moment: Vec<Vec<f64>>,
}

impl MomentSummary {
    /// `∫_K <x, u>^2 dx`.
    pub fn quadratic(&self, u: &[f64]) -> f64 {
        let m = to_matrix(&self.second_moment);
        dot(u, &mat_vec(&m, u))
    }

    /// Second moments about the centroid, `∫_K (x - c)(x - c)^T dx`.
    pub fn central_second_moment(&self) -> Vec<Vec<f64>> {
        let n = self.centroid.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.second_moment[i][j] - self.volume * self.centroid[i] * self.centroid[j])
                    .collect()
            })
            .collect()
    }
}

fn simplex_volume(verts: &[&[f64]]) -> f64 {
    let n = verts.len() - 1;
    let mut rows: Vec<Vec<f64>> = verts[1..].iter().map(|v| sub(v, verts[0])).collect();
    crate::linalg::det_in_place(&mut rows).abs() / factorial(n)
}

pub fn polytope_moments(p: &Polytope) -> MomentSummary {
    let n = p.dim();
    let mut volume = 0.0;
    let mut first = vec![0.0; n];
    let mut second = vec![vec![0.0; n]; n];
    let denom = ((n + 1) * (n + 2)) as f64;
    for s in p.simplices() {
        let v = simplex_volume(&s);
        if v == 0.0 {
            continue;
        }
        volume += v;
        let mut sum = vec![0.0; n];
        for w in &s {
            crate::linalg::axpy(&mut sum, 1.0, w);
        }
        crate::linalg::axpy(&mut first, v / (n + 1) as f64, &sum);
        // ∫_S x x^T = vol / ((n+1)(n+2)) (Σ w w^T + s s^T)
        for i in 0..n {
            for j in i..n {
                let mut acc = sum[i] * sum[j];
                for w in &s {
                    acc += w[i] * w[j];
                }
                second[i][j] += v * acc / denom;
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            second[i][j] = second[j][i];
        }
    }
    let centroid = scale(&first, 1.0 / volume);
    MomentSummary { volume, centroid, second_moment: second }
}

fn ball_moments(b: &Ball) -> MomentSummary {
    let n = b.dim();
    let volume = b.volume();
    let r2 = b.radius * b.radius / (n + 2) as f64;
    let second = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| volume * (if i == j { r2 } else { 0.0 } + b.center[i] * b.center[j]))
                .collect()
        })
        .collect();
    MomentSummary { volume, centroid: b.center.clone(), second_moment: second }
}

/// Exact moments of a polytope, ball, or affine image of either.
pub fn moments(body: &ConvexBody) -> Result<MomentSummary> {
    match body {
        ConvexBody::VPolytope(_) | ConvexBody::HPolytope(_) => Ok(polytope_moments(body.polytope().unwrap())),
        ConvexBody::Ball(b) => Ok(ball_moments(b)),
        ConvexBody::Affine(img) => {
            let base = moments(&img.base)?;
            let det = img.determinant().abs();
            let a = to_matrix(&img.matrix);
            let n = body.dim();
            let bvec = nalgebra::DVector::from_column_slice(&img.shift);
            let m = to_matrix(&base.second_moment);
            let first = nalgebra::DVector::from_column_slice(&base.centroid) * base.volume;
            // |det A| (A M A^T + A m b^T + b m^T A^T + vol b b^T)
            let am = &a * &first;
            let second = (&a * m * a.transpose()
                + &am * bvec.transpose()
                + &bvec * am.transpose()
                + &bvec * bvec.transpose() * base.volume)
                * det;
            let mut centroid = mat_vec(&a, &base.centroid);
            centroid.iter_mut().zip(&img.shift).for_each(|(c, s)| *c += s);
            let _ = n;
            Ok(MomentSummary { volume: base.volume * det, centroid, second_moment: from_matrix(&second) })
        }
    }
}

/// Complete homogeneous symmetric polynomial `h_p(x_0, ..., x_m)`.
fn complete_homogeneous(xs: &[f64], p: usize) -> f64 {
    let mut h = vec![0.0; p + 1];
    h[0] = 1.0;
    for &x in xs {
        for d in 1..=p {
            h[d] += x * h[d - 1];
        }
    }
    h[p]
}

/// `∫_S <x, u>^p dx` over a simplex: `vol · p! n! / (n + p)! · h_p(<w_i, u>)`.
pub fn simplex_linear_moment(verts: &[&[f64]], u: &[f64], p: usize) -> f64 {
    let n = verts.len() - 1;
    let vol = simplex_volume(verts);
    let vals: Vec<f64> = verts.iter().map(|w| dot(w, u)).collect();
    vol * factorial(p) * factorial(n) / factorial(n + p) * complete_homogeneous(&vals, p)
}

/// `∫_{B_2^n} x_1^p dx = Γ((p+1)/2) π^{(n-1)/2} / Γ((n+p)/2 + 1)` for even
/// `p`, zero for odd `p`.
pub fn unit_ball_moment(n: usize, p: usize) -> f64 {
    if p % 2 == 1 {
        return 0.0;
    }
    let (n, p) = (n as f64, p as f64);
    let ln = crate::special::ln_gamma((p + 1.0) / 2.0) + 0.5 * (n - 1.0) * core::f64::consts::PI.ln()
        - crate::special::ln_gamma((n + p) / 2.0 + 1.0);
    ln.exp()
}

/// Exact `∫_K <x, u>^p dx` for a polytope and `p` in `0..=4`.
pub fn moment_p(body: &ConvexBody, u: &[f64], p: usize) -> Result<f64> {
    if p > 4 {
        return Err(invalid("moment order must be in 0..=4"));
    }
    let poly = body
        .polytope()
        .ok_or_else(|| GeomError::Unsupported("linear moments of a non-polytope body".into()))?;
    Ok(poly.simplices().map(|s| simplex_linear_moment(&s, u, p)).sum())
}

/// Rejection-sampling volume estimate in the bounding box, with its binomial
/// standard error.
pub fn monte_carlo_volume(body: &ConvexBody, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if samples < 1000 {
        return Err(invalid("at least 1000 samples are required"));
    }
    let (lo, hi) = body.bounding_box();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let mut rng = crate::rng::stream(seed, 0);
    let mut x = vec![0.0; lo.len()];
    let mut hits = 0usize;
    for _ in 0..samples {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = lo[i] + (hi[i] - lo[i]) * crate::rng::uniform01(&mut rng);
        }
        if body.contains(&x, 0.0) {
            hits += 1;
        }
    }
    let f = hits as f64 / samples as f64;
    Ok((f * box_volume, box_volume * (f * (1.0 - f) / samples as f64).sqrt()))
}

/// The affine map `x -> matrix · x + shift` putting a body in isotropic
/// position, and the common value of `∫ <x, u>^2 dx` over unit `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicTransform {
    pub matrix: Vec<Vec<f64>>,
    pub shift: Vec<f64>,
    pub isotropy_constant: f64,
}

/// Moves the centroid to the origin and whitens the second moments with the
/// inverse square root of the central moment matrix, scaled to keep the
/// volume unchanged.
pub fn isotropic_position(body: &ConvexBody) -> Result<(ConvexBody, IsotropicTransform)> {
    let m = moments(body)?;
    let n = body.dim();
    let sigma = to_matrix(&m.central_second_moment());
    let eig = sigma.symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| !(l > 0.0)) {
        return Err(GeomError::NotPositiveDefinite);
    }
    let log_det: f64 = eig.eigenvalues.iter().map(|l| l.ln()).sum();
    let s = (log_det / (2 * n) as f64).exp();
    let inv_sqrt = nalgebra::DMatrix::from_diagonal(&eig.eigenvalues.map(|l| s / l.sqrt()));
    let a = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
    let a = (&a + a.transpose()) * 0.5;
    let shift: Vec<f64> = mat_vec(&a, &m.centroid).iter().map(|x| -x).collect();
    let matrix = from_matrix(&a);
    let image = body.affine_image(&matrix, &shift)?;
    Ok((image, IsotropicTransform { matrix, shift, isotropy_constant: s * s }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{make_ball, make_cube, make_regular_simplex, random_centered_polytope};

    #[test]
    fn cube_moments() {
        let k = ConvexBody::HPolytope(make_cube(3).unwrap());
        let m = moments(&k).unwrap();
        assert!((m.volume - 8.0).abs() < 1e-12);
        assert!(m.centroid.iter().all(|c| c.abs() < 1e-12));
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 8.0 / 3.0 } else { 0.0 };
                assert!((m.second_moment[i][j] - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn disc_moments() {
        let m = moments(&make_ball(2, 1.0).unwrap()).unwrap();
        assert!((m.volume - core::f64::consts::PI).abs() < 1e-12);
        assert!((m.second_moment[0][0] - core::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn regular_simplex_centroid() {
        for n in 1..=6 {
            let k: ConvexBody = make_regular_simplex(n).unwrap().polytope().clone().into();
            let m = moments(&k).unwrap();
            assert!(m.centroid.iter().all(|c| c.abs() < 1e-10), "n = {n}");
        }
    }

    #[test]
    fn linear_moments_of_the_square() {
        let k = ConvexBody::HPolytope(make_cube(2).unwrap());
        assert!((moment_p(&k, &[1.0, 0.0], 0).unwrap() - 4.0).abs() < 1e-12);
        assert!(moment_p(&k, &[1.0, 0.0], 1).unwrap().abs() < 1e-12);
        assert!((moment_p(&k, &[1.0, 0.0], 2).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        // ∫_{[-1,1]^2} x^4 = 2/5 · 2
        assert!((moment_p(&k, &[1.0, 0.0], 4).unwrap() - 0.8).abs() < 1e-12);
        assert!(moment_p(&k, &[1.0, 0.0], 5).is_err());
    }

    #[test]
    fn simplex_moment_matches_one_dimensional_quadrature() {
        // Triangle (0,0),(1,0),(0,1), functional x: ∫ x^p = ∫_0^1 x^p (1-x) dx = 1/((p+1)(p+2)).
        let v: [&[f64]; 3] = [&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]];
        for p in 0..=4 {
            let exact = 1.0 / ((p + 1) * (p + 2)) as f64;
            assert!((simplex_linear_moment(&v, &[1.0, 0.0], p) - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn isotropic_position_whitens() {
        let k: ConvexBody = random_centered_polytope(3, 12, 5).unwrap().polytope().clone().into();
        let (iso, t) = isotropic_position(&k).unwrap();
        let m = moments(&iso).unwrap();
        assert!(m.centroid.iter().all(|c| c.abs() < 1e-9));
        let vol0 = moments(&k).unwrap().volume;
        assert!((m.volume - vol0).abs() < 1e-10 * vol0);
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { t.isotropy_constant } else { 0.0 };
                assert!((m.second_moment[i][j] - e).abs() < 1e-7 * t.isotropy_constant);
            }
        }
    }

    #[test]
    fn ball_moments_match_closed_forms() {
        assert!((unit_ball_moment(2, 0) - core::f64::consts::PI).abs() < 1e-12);
        assert!((unit_ball_moment(2, 2) - core::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((unit_ball_moment(1, 4) - 0.4).abs() < 1e-12);
        assert_eq!(unit_ball_moment(3, 3), 0.0);
    }

    #[test]
    fn monte_carlo_rejects_small_samples() {
        let k = ConvexBody::HPolytope(make_cube(2).unwrap());
        assert!(monte_carlo_volume(&k, 999, 0).is_err());
        let (est, se) = monte_carlo_volume(&k, 1000, 0).unwrap();
        assert!((est - 4.0).abs() < 1e-12 && se == 0.0);
    }
}
