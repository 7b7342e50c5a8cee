use super::*;
use crate::bodies::{make_ball, make_cube, random_centered_polytope};
use crate::linalg::unit;
use crate::sections::SectionVolumeFunction;
use crate::special::{binom, gamma};
use crate::subspace::Subspace;
use core::f64::consts::{PI, SQRT_2};
use proptest::prelude::*;

fn section_fn(n: usize, flat_dim: usize, seed: u64) -> SectionVolumeFunction {
    let k: ConvexBody = random_centered_polytope(n, 2 * n + 3, seed).unwrap().polytope().clone().into();
    let basis: Vec<Vec<f64>> = (0..flat_dim).map(|i| unit(n, i)).collect();
    SectionVolumeFunction::new(k, Subspace::span(n, &basis).unwrap()).unwrap()
}

fn angle(a: f64) -> Vec<f64> {
    vec![a.cos(), a.sin()]
}

#[test]
fn ball_indicator_radial() {
    for k in 1..=3 {
        let f = BallIndicator { dim: k, radius: 1.0 };
        let theta = unit(k, 0);
        for p in [1.0, 2.0, 2.5, 4.0] {
            let want = (1.0 / p).powf(1.0 / p);
            assert!((i_p(&f, &theta, p).unwrap() - want).abs() < 1e-14);
            let quad = ray_moment_quadrature(&f, &theta, p).unwrap().powf(1.0 / p);
            // Integer orders are integrated exactly; others stop once two
            // passes agree to 1e-8.
            let tol = if p == f64::floor(p) { 1e-12 } else { 1e-9 };
            assert!((quad - want).abs() < tol, "k={k} p={p}: {quad}");
        }
    }
}

#[test]
fn exponential_profile_gives_gamma() {
    let f = FnOracle {
        dim: 1,
        f: |x: &[f64]| (-x[0].abs()).exp(),
        concavity: Concavity::LogConcave,
        support_radius: 80.0,
        barycenter_zero: true,
    };
    for p in [1.0, 1.5, 2.0, 3.0, 5.0] {
        let got = i_p(&f, &[1.0], p).unwrap();
        let want = gamma(p).unwrap().powf(1.0 / p);
        assert!((got - want).abs() < 1e-9 * want, "p={p}: {got} vs {want}");
    }
}

#[test]
fn i_p_is_homogeneous_of_degree_minus_one() {
    let f = section_fn(3, 1, 5);
    for a in [0.3, 1.9, 4.0] {
        let x = angle(a);
        for p in [1.0, 2.0, 3.0] {
            let one = i_p(&f, &x, p).unwrap();
            let two = i_p(&f, &scale(&x, 2.0), p).unwrap();
            assert!((two - one / 2.0).abs() < 1e-9 * one);
        }
    }
    assert!(i_p(&f, &[0.0, 0.0], 1.0).is_err());
}

#[test]
fn ball_bodies_of_balls_are_balls() {
    let f = BallIndicator { dim: 2, radius: 1.0 };
    let l = ball_body(&f, 3.0).unwrap();
    for a in [0.0, 1.0, 2.0, 5.5] {
        assert!((l.radial(&angle(a)).unwrap() - 3f64.powf(-1.0 / 3.0)).abs() < 1e-14);
    }
    let g = SectionVolumeFunction::new(make_ball(3, 1.0).unwrap(), Subspace::span(3, &[unit(3, 2)]).unwrap()).unwrap();
    let lg = ball_body(&g, 2.0).unwrap();
    let r0 = lg.radial(&angle(0.0)).unwrap();
    for a in [0.4, 1.3, 2.9, 4.4] {
        assert!((lg.radial(&angle(a)).unwrap() - r0).abs() < 1e-7 * r0);
    }
}

#[test]
fn ball_body_needs_mass_at_the_origin() {
    let f = FnOracle {
        dim: 1,
        f: |x: &[f64]| if x[0] > 0.5 && x[0] < 1.0 { 1.0 } else { 0.0 },
        concavity: Concavity::Power(0.0),
        support_radius: 1.0,
        barycenter_zero: false,
    };
    assert_eq!(ball_body(&f, 1.0).err(), Some(GeomError::OriginNotInterior));
    assert!(ball_body(&BallIndicator { dim: 1, radius: 1.0 }, 0.0).is_err());
}

#[test]
fn sphere_areas() {
    let one = |_: &[f64]| Ok(1.0);
    assert_eq!(sphere_integral(1, &one, 1e-12, 0.0).unwrap(), 2.0);
    assert!((sphere_integral(2, &one, 1e-12, 0.0).unwrap() - 2.0 * PI).abs() < 1e-12);
    assert!((sphere_integral(3, &one, 1e-12, 0.0).unwrap() - 4.0 * PI).abs() < 1e-11);
    assert!((sphere_integral(4, &one, 1e-10, 0.0).unwrap() - 2.0 * PI * PI).abs() < 1e-8);
    // ∫_{S^2} θ_1^2 = 4π/3
    let sq = |t: &[f64]| Ok(t[1] * t[1]);
    assert!((sphere_integral(3, &sq, 1e-12, 0.0).unwrap() - 4.0 * PI / 3.0).abs() < 1e-11);
}

#[test]
fn moment_identity_for_the_disc_indicator() {
    let f = BallIndicator { dim: 2, radius: 1.0 };
    let u = [1.0, 0.0];
    let two = moment_identity_check(&f, &u, 2).unwrap();
    assert!((two.rhs - PI / 16.0).abs() < 1e-14);
    assert!((two.lhs - two.rhs).abs() < 1e-8 * two.scale);
    let zero = moment_identity_check(&f, &u, 0).unwrap();
    assert!((zero.rhs - PI / 2.0).abs() < 1e-14);
    assert!((zero.lhs - zero.rhs).abs() < 1e-8 * zero.scale);
    let one = moment_identity_check(&f, &u, 1).unwrap();
    assert!(one.rhs.abs() < 1e-15 && one.lhs.abs() < 1e-8 * one.scale);
    assert!(moment_identity_check(&f, &u, 3).is_err());
}

#[test]
fn moment_identity_for_a_section_function() {
    let f = section_fn(4, 2, 17);
    let u = [0.6, 0.8];
    for p in 0..=2 {
        let m = moment_identity_check(&f, &u, p).unwrap();
        assert!((m.lhs - m.rhs).abs() <= 1e-4 * m.scale, "p={p}: {m:?}");
    }
}

#[test]
fn moment_identity_falls_back_to_quadrature() {
    // Same function as the disc indicator, but without closed forms.
    let f = FnOracle {
        dim: 2,
        f: |x: &[f64]| if norm(x) <= 1.0 { 1.0 } else { 0.0 },
        concavity: Concavity::Power(0.0),
        support_radius: 1.0,
        barycenter_zero: true,
    };
    let m = moment_identity_check(&f, &[0.0, 1.0], 2).unwrap();
    assert!((m.rhs - PI / 16.0).abs() < 1e-7);
    assert!((m.lhs - m.rhs).abs() < 1e-6 * m.scale);
}

#[test]
fn centroid_of_l_k_plus_one_is_the_origin() {
    let f = section_fn(4, 2, 23);
    let body = ball_body(&f, 3.0).unwrap();
    let poly = polytope_approximation(&body, 720, 0).unwrap();
    let m = crate::volume::polytope_moments(&poly);
    let diam = 2.0 * poly.vertices().iter().map(|v| norm(v)).fold(0.0, f64::max);
    assert!(norm(&m.centroid) < 1e-4 * diam, "{:?}", m.centroid);
    // L_2(f) for the same f has no reason to be centered.
    let off = polytope_approximation(&ball_body(&f, 2.0).unwrap(), 720, 0).unwrap();
    assert!(norm(&crate::volume::polytope_moments(&off).centroid) > norm(&m.centroid));
}

#[test]
fn berwald_constants() {
    let (lo, hi) = berwald_inclusion_constants(2.5, 2.5, 3.0).unwrap();
    assert!((lo - 1.0).abs() < 1e-14 && (hi - 1.0).abs() < 1e-14);
    let (lo, hi) = berwald_inclusion_constants(1.0, 2.0, 1.0).unwrap();
    assert!((lo - 6f64.sqrt() / 2.0).abs() < 1e-13);
    assert!((hi - SQRT_2).abs() < 1e-14);
    assert!(berwald_inclusion_constants(2.0, 1.0, 1.0).is_err());
    assert!(berwald_inclusion_constants(1.0, 2.0, -1.0).is_err());
}

#[test]
fn beta_binomial_identity() {
    for p in 1..=10 {
        for q in 1..=10 {
            let (pf, qf) = (p as f64, q as f64);
            let v = pf * beta(pf, qf + 1.0).unwrap() * binom(pf + qf, pf).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "p={p} q={q}: {v}");
        }
    }
}

#[test]
fn factors_for_indicators_are_trivial() {
    // m = 0: the chain is an equality and the Fradelizi factor is 1.
    let (lo, hi) = berwald_inclusion_constants(1.0, 3.0, 0.0).unwrap();
    assert!((lo - hi).abs() < 1e-14);
    assert_eq!(fradelizi_factor(3, 0.0), 1.0);
    assert!((fradelizi_factor(2, 2.0) - (5.0f64 / 3.0).powi(2)).abs() < 1e-14);
}

#[test]
fn berwald_sandwich_on_section_functions() {
    for (n, flat_dim, seed) in [(3, 1, 1), (4, 2, 2), (5, 2, 3), (4, 1, 4)] {
        let f = section_fn(n, flat_dim, seed);
        let k = f.codomain_dim();
        let m = f.concavity_index() as f64;
        let f0 = f.evaluate(&vec![0.0; k]).unwrap();
        let fmax = maximize(&f).unwrap().0;
        for (p, q) in [(1.0, 2.0), (2.0, 3.0), (1.0, 4.0)] {
            let (lo, hi) = berwald_inclusion_constants(p, q, m).unwrap();
            let e = 1.0 / p - 1.0 / q;
            for theta in sweep_directions(k, 16, seed) {
                let rp = i_p(&f, &theta, p).unwrap();
                let rq = i_p(&f, &theta, q).unwrap();
                assert!(lo * f0.powf(e) * rq <= rp * (1.0 + 1e-6), "lower n={n} p={p} q={q}");
                assert!(rp <= hi * fmax.powf(e) * rq * (1.0 + 1e-6), "upper n={n} p={p} q={q}");
            }
        }
    }
}

#[test]
fn fradelizi_and_lemma6_on_section_functions() {
    for (n, flat_dim, seed) in [(3, 1, 7), (4, 2, 8), (5, 3, 9)] {
        let f = section_fn(n, flat_dim, seed);
        let k = f.codomain_dim();
        let m = f.concavity_index() as f64;
        let f0 = f.evaluate(&vec![0.0; k]).unwrap();
        let (fmax, _) = maximize(&f).unwrap();
        assert!(fmax >= f0);
        assert!(fmax <= fradelizi_factor(k, m) * f0 * (1.0 + 1e-6));
        for p in [1.0, 2.0, (k + 1) as f64] {
            let factor = lemma6_factor(k, m, p).unwrap();
            for theta in sweep_directions(k, 12, seed) {
                let fwd = i_p(&f, &theta, p).unwrap();
                let back = i_p(&f, &scale(&theta, -1.0), p).unwrap();
                assert!(back <= factor * fwd * (1.0 + 1e-6));
            }
        }
    }
    assert!(lemma6_factor(2, 1.0, 4.0).is_err());
}

#[test]
fn maximize_finds_an_off_center_peak() {
    let f = FnOracle {
        dim: 2,
        f: |x: &[f64]| (1.0 - ((x[0] - 0.3).powi(2) + (x[1] + 0.2).powi(2)).sqrt()).max(0.0),
        concavity: Concavity::Power(1.0),
        support_radius: 1.5,
        barycenter_zero: false,
    };
    let (v, x) = maximize(&f).unwrap();
    assert!((v - 1.0).abs() < 1e-9);
    assert!((x[0] - 0.3).abs() < 1e-9 && (x[1] + 0.2).abs() < 1e-9);
}

#[test]
fn geometric_distances() {
    let disc = make_ball(2, 1.0).unwrap();
    let big = make_ball(2, 3.0).unwrap();
    assert_eq!(geometric_distance_lb(&disc, &disc, 50, 1).unwrap(), 1.0);
    assert!((geometric_distance_lb(&disc, &big, 50, 1).unwrap() - 1.0).abs() < 1e-14);
    let square = ConvexBody::HPolytope(make_cube(2).unwrap());
    let mut last = 0.0;
    for dirs in [10, 100, 1000, 10000] {
        let d = geometric_distance_lb(&square, &disc, dirs, 3).unwrap();
        assert!(d <= SQRT_2 + 1e-12);
        assert!(d >= last);
        last = d;
    }
    assert!(last > SQRT_2 - 1e-3, "{last}");
    let cube3 = ConvexBody::HPolytope(make_cube(3).unwrap());
    assert!(geometric_distance_lb(&cube3, &disc, 10, 1).is_err());
}

#[test]
fn ball_bodies_pass_the_convexity_spot_check() {
    let f = section_fn(4, 2, 31);
    for p in [1.0, 2.0, 3.0] {
        let l = ball_body(&f, p).unwrap();
        assert!(gauge_convexity_defect(&l, 200, 5).unwrap() <= 1e-7);
    }
    let square = ConvexBody::HPolytope(make_cube(2).unwrap());
    assert!(gauge_convexity_defect(&square, 200, 5).unwrap() <= 1e-12);
}

#[test]
fn inscribed_polygons_converge() {
    let f = BallIndicator { dim: 2, radius: 1.0 };
    let l = ball_body(&f, 2.0).unwrap();
    let poly = polytope_approximation(&l, 1000, 0).unwrap();
    let area = crate::volume::polytope_moments(&poly).volume;
    // radius 2^{-1/2}: the disc has area π/2
    assert!(area < PI / 2.0 && area > PI / 2.0 * (1.0 - 1e-4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn berwald_lower_never_exceeds_upper(p in 0.1f64..6.0, dq in 0.0f64..6.0, m in 0.0f64..10.0) {
        let (lo, hi) = berwald_inclusion_constants(p, p + dq, m).unwrap();
        prop_assert!(lo <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn scaled_ball_indicators(r in 0.1f64..5.0, p in 0.5f64..6.0, a in 0.0f64..6.3) {
        let f = BallIndicator { dim: 2, radius: r };
        let want = r * (1.0 / p).powf(1.0 / p);
        prop_assert!((i_p(&f, &angle(a), p).unwrap() - want).abs() < 1e-12 * want);
        let quad = ray_moment_quadrature(&f, &angle(a), p).unwrap().powf(1.0 / p);
        prop_assert!((quad - want).abs() < 1e-8 * want);
    }
}

#[test]
fn ray_moments_below_order_one() {
    // tent (1 - |x|)_+ on the line: ∫_0^1 t^{q-1}(1-t) dt = 1/q - 1/(q+1)
    let tent = FnOracle {
        dim: 1,
        f: |x: &[f64]| (1.0 - x[0].abs()).max(0.0),
        concavity: Concavity::Power(1.0),
        support_radius: 1.0,
        barycenter_zero: true,
    };
    for q in [0.1, 0.25, 0.5, 0.9] {
        let got = ray_moment_quadrature(&tent, &[1.0], q).unwrap();
        let want = 1.0 / q - 1.0 / (q + 1.0);
        assert!((got - want).abs() <= 1e-9 * want, "q={q}: {got} vs {want}");
    }
}
