use super::*;
use crate::ball_bodies::{lemma6_factor, BallIndicator};
use crate::bodies::{make_ball, make_cross_polytope, make_cube, make_regular_simplex, random_centered_polytope, ConvexBody};
use crate::linalg::unit;
use crate::sections::{PolyhedralCone, SectionVolumeFunction};
use crate::subspace::Subspace;
use alloc::vec::Vec;

fn cube(n: usize) -> ConvexBody {
    ConvexBody::HPolytope(make_cube(n).unwrap())
}

fn simplex(n: usize) -> ConvexBody {
    make_regular_simplex(n).unwrap().polytope().clone().into()
}

fn random(n: usize, seed: u64) -> ConvexBody {
    random_centered_polytope(n, 2 * n + 4, seed).unwrap().polytope().clone().into()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-300)
}

#[test]
fn theorem_constant_through_the_beta_identity() {
    for n in 1..=10 {
        for k in 1..=n {
            for p in 1..=k {
                let c = theorem1_constant(n, k, p).unwrap().value;
                assert!(c.is_finite() && c >= 1.0, "({n},{k},{p}) -> {c}");
                let via = lemma6_factor(k, (n - k) as f64, p as f64).unwrap().powi(p as i32);
                assert!(close(c, via, 1e-10), "({n},{k},{p}): {c} vs {via}");
            }
        }
        for p in 1..=n {
            assert!(close(theorem1_constant(n, n, p).unwrap().value, (n as f64).powi(p as i32), 1e-12));
        }
    }
    assert!(theorem1_constant(3, 2, 3).is_err());
    assert!(theorem1_constant(3, 4, 1).is_err());
    let consts = explicit_constants(4, 2, 1).unwrap();
    assert!(consts.iter().all(|c| c.value.is_finite() && c.value > 0.0));
}

#[test]
fn gruenbaum_values() {
    assert!(close(gruenbaum_constant(2), 4.0 / 9.0, 1e-15));
    // triangle cut through its centroid parallel to a side: (2/3)^2 on the apex side
    let tri = simplex(2);
    let apex = make_regular_simplex(2).unwrap().vertices()[0].clone();
    let r = experiment_gruenbaum_equality(&tri, &apex, "triangle").unwrap();
    assert!(r.passed && close(r.lhs, 4.0 / 9.0, 1e-12), "{r:?}");
    for n in 2..=6 {
        let pyr = gruenbaum_pyramid(n).unwrap();
        let r = experiment_gruenbaum_equality(&pyr, &unit(n, n - 1), "pyramid").unwrap();
        assert!(r.passed, "{r:?}");
        let other = check_gruenbaum(&pyr, &unit(n, 0), "pyramid").unwrap();
        assert!(other.passed && close(other.ratio(), 2.0 * gruenbaum_constant(n), 1e-9));
    }
    let ball = check_gruenbaum(&make_ball(3, 1.0).unwrap(), &[0.0, 0.6, 0.8], "ball").unwrap();
    assert!(ball.passed && close(ball.parameters["fraction"], 0.5, 1e-12));
}

#[test]
fn gruenbaum_on_random_polytopes() {
    let mut count = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed as usize % 4);
        let body = random(n, 500 + seed);
        let u = crate::rng::unit_vector(&mut crate::rng::stream(seed, 1), n);
        let r = check_gruenbaum(&body, &u, "random").unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.parameters["fraction"] < 1.0 - gruenbaum_constant(n) + 1e-9);
        count += 1;
    }
    assert_eq!(count, 200);
    let shifted = random(3, 1).translate(&[0.1, 0.0, 0.0]);
    assert!(check_gruenbaum(&shifted, &unit(3, 0), "shifted").is_err());
}

#[test]
fn part1_symmetric_and_grid() {
    for body in [cube(3), make_cross_polytope(4).unwrap().polytope().clone().into()] {
        for case in theorem_cases(body.dim(), 3).unwrap() {
            let r = check_main_theorem_part1(&body, &case.flat, &case.cone, "symmetric").unwrap();
            assert!(r.passed && close(r.lhs, 1.0, 1e-9), "{r:?}");
        }
    }
    for n in 2..=6 {
        let cases = theorem_cases(n, 10 + n as u64).unwrap();
        let expected: usize = (1..=n).map(|k| if k >= 2 { 3 } else { 1 }).sum();
        assert_eq!(cases.len(), expected);
        let body = random(n, 70 + n as u64);
        for case in cases {
            assert_eq!(case.flat.dim(), n - case.k);
            assert_eq!(case.cone.dim(), case.p);
            let r = check_main_theorem_part1(&body, &case.flat, &case.cone, "random").unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}

#[test]
fn remark1_configuration_through_the_ray_check() {
    for n in 2..=6 {
        for l in 1..n {
            let r = experiment_remark1(n, l).unwrap();
            assert!(r.passed, "n={n} l={l}: {r:?}");
            let want = ((n as f64 + 1.0) / l as f64).powi(l as i32) - 1.0;
            assert!(close(r.parameters["minus_over_plus"], want, 1e-6));
        }
    }
    assert!(close(experiment_remark1(3, 1).unwrap().lhs, 0.25, 1e-9));
    assert!(close(experiment_remark1(3, 2).unwrap().lhs, 0.25, 1e-9));
    assert!(close(experiment_remark1(5, 3).unwrap().lhs, 0.125, 1e-9));
    assert!(experiment_remark1(3, 3).is_err());

    // the same configuration through the ray ratio, k = n - l + 1
    let (n, l) = (4, 2);
    let verts = make_regular_simplex(n).unwrap().vertices().to_vec();
    let f: Vec<f64> = (0..n).map(|i| -(verts[0][i] + verts[1][i]) / (n + 1 - l) as f64).collect();
    let e = Subspace::span(n, &verts[..l]).unwrap();
    let mut rest = Vec::new();
    let fhat = crate::linalg::normalized(&f).unwrap();
    for b in e.basis() {
        let mut r = b.clone();
        crate::linalg::reject(&mut r, core::slice::from_ref(&fhat));
        rest.push(r);
    }
    let flat = Subspace::from_orthonormal(n, crate::linalg::orthonormalize(&rest, 1e-9)).unwrap();
    let [bound, report] = check_corollary1(&simplex(n), &flat, &fhat, "simplex").unwrap();
    assert!(bound.passed);
    let ratio = 1.0 / bound.parameters["plus_over_minus"];
    assert!(close(ratio, (5.0_f64 / 2.0).powi(2) - 1.0, 1e-9));
    assert!(!report.assertable);
}

#[test]
fn part2_cases() {
    let ball = make_ball(3, 1.0).unwrap();
    for case in theorem_cases(3, 1).unwrap() {
        let r = check_main_theorem_part2(&ball, &case.flat, &case.cone, "ball").unwrap();
        assert!(r.passed && close(r.lhs, 1.0, 1e-9), "{r:?}");
    }
    // quadrants of the cube: both ratios are 1/4
    let q = PolyhedralCone::orthant(Subspace::full(2), &[unit(2, 0), unit(2, 1)]).unwrap();
    let r = check_main_theorem_part2(&cube(2), &Subspace::zero(2), &q, "cube").unwrap();
    assert!(r.passed && close(r.parameters["body_ratio"], 0.25, 1e-12) && close(r.parameters["ball_ratio"], 0.25, 1e-12));
    for case in theorem_cases(3, 2).unwrap().into_iter().filter(|c| c.p == 1) {
        let r = check_main_theorem_part2(&simplex(3), &case.flat, &case.cone, "simplex").unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.parameters["a_branch_factor"] > 0.0);
    }
}

#[test]
fn corollaries() {
    let c = cube(3);
    let [b, rep] = check_corollary2(&c, &[0.0, 0.0, 1.0], &[0.3, 0.4, 0.5], "cube").unwrap();
    assert!(b.passed && close(b.lhs, 1.0, 1e-12) && close(rep.lhs, 1.0, 1e-12));
    assert!(check_corollary2(&c, &[0.0, 0.0, 1.0], &[0.0, 0.0, -2.0], "cube").is_err());
    for seed in 0..10 {
        let n = 2 + seed as usize % 4;
        let body = random(n, 900 + seed);
        let mut rng = crate::rng::stream(seed, 5);
        let u = crate::rng::unit_vector(&mut rng, n);
        let v = crate::rng::unit_vector(&mut rng, n);
        let [b, rep] = check_corollary2(&body, &u, &v, "random").unwrap();
        assert!(b.passed && rep.lhs >= 1.0, "{b:?}");
    }
    // coordinate quadrant of the cube
    let e = Subspace::full(4);
    let [b, rep] = check_corollary3(&cube(4), &e, &[unit(4, 0), unit(4, 1)], "cube").unwrap();
    assert!(b.passed && close(b.rhs, 0.25, 1e-9), "{b:?}");
    assert!(close(rep.lhs, -(0.25_f64).ln() / 4.0, 1e-9));
    for seed in 0..5 {
        let n = 3 + seed as usize % 2;
        let body = random(n, 300 + seed);
        let frame = random_frame(n, n, seed, 0);
        let e = Subspace::from_orthonormal(n, frame[..n - 1].to_vec()).unwrap();
        let [b, _] = check_corollary3(&body, &e, &frame[..2], "random").unwrap();
        assert!(b.passed && b.parameters["k"] == 3.0, "{b:?}");
    }
}

#[test]
fn remark3_hadamard_cones() {
    for (n, want) in [(1, 1.0), (2, 1.0), (4, 2.0 / 3.0), (8, 4096.0 / 40320.0)] {
        let h = hadamard(n).unwrap();
        for i in 0..n {
            assert_eq!(h[i][0], 1.0);
            for j in 0..i {
                assert_eq!(crate::linalg::dot(&h[i], &h[j]), 0.0);
            }
        }
        let r = experiment_remark3_cube(n).unwrap();
        assert!(r.passed && close(r.lhs, want, 1e-9), "{r:?}");
    }
    assert!(experiment_remark3_cube(6).is_err());
}

#[test]
fn remark2_table() {
    for n in 2..=5 {
        let (rows, checks) = experiment_remark2(n, &REMARK2_ANGLES).unwrap();
        assert_eq!(rows.len(), REMARK2_ANGLES.len());
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        let target = (n as f64).powi(n as i32);
        assert!(rows[0].ratio < target);
        assert!(rows.last().unwrap().ratio > rows[0].ratio);
    }
    let (rows, _) = experiment_remark2(2, &REMARK2_ANGLES).unwrap();
    assert!(close(rows.last().unwrap().ratio, 4.0, 0.05));
    let (rows, _) = experiment_remark2(2, &[0.01]).unwrap();
    assert!(close(rows[0].ratio, 4.0, 0.02));
    assert!(experiment_remark2(5, &[0.01]).is_err());
    assert!(experiment_remark2(6, &REMARK2_ANGLES).is_err());
}

#[test]
fn alpha_values() {
    for n in 2..=4 {
        let frame: Vec<Vec<f64>> = (0..n).map(|i| unit(n, i)).collect();
        assert!(close(alpha_value(&cube(n), &frame).unwrap(), 1.0, 1e-12));
        let ball = make_ball(n, 1.0).unwrap();
        assert!(close(alpha_value(&ball, &random_frame(n, n, 1, 0)).unwrap(), 1.0, 1e-9));
    }
    for n in 2..=4 {
        let est = experiment_alpha_n(n, 6, 42).unwrap();
        assert!(est.minimum >= 1.0 / n as f64 && est.minimum <= 1.0 + 1e-9, "{est:?}");
        assert_eq!(est, experiment_alpha_n(n, 6, 42).unwrap());
        assert!(alpha_records(&est).iter().all(|r| !r.assertable));
    }
}

#[test]
fn lemma5_cases() {
    let r = check_lemma5(&make_ball(3, 2.0).unwrap(), "ball").unwrap();
    assert!(r.passed && r.lhs == 1.0);
    let r = check_lemma5(&simplex(2), "triangle").unwrap();
    assert!(r.passed && close(r.lhs, 2.0, 1e-9), "{r:?}");
    for n in 2..=5 {
        let r = check_lemma5(&simplex(n), "simplex").unwrap();
        assert!(r.passed && close(r.lhs, n as f64, 1e-9));
        assert!(check_lemma5(&random(n, n as u64), "random").unwrap().passed);
    }
}

#[test]
fn lemma7_and_prop8_on_random_polytopes() {
    for seed in 0..20 {
        let n = 1 + seed as usize % 5;
        let body = random(n.max(1), 40 + seed);
        let u = crate::rng::unit_vector(&mut crate::rng::stream(seed, 2), n);
        let r = check_lemma7(&body, &u, "random").unwrap();
        assert!(r.passed, "{r:?}");
        let r = check_prop8(&body, "random").unwrap();
        assert!(r.passed, "{r:?}");
    }
    // the cube: mean square 1/3, support 1 in coordinate directions
    let r = check_lemma7(&cube(3), &unit(3, 0), "cube").unwrap();
    assert!(close(r.parameters["mean_square"], 1.0 / 3.0, 1e-12));
    // ball: γ = |B|/(k+2), so β = 1/sqrt(k) = 1/2 and rkβ = 2; both ratios are 1/2
    let r = check_prop8(&make_ball(4, 1.0).unwrap(), "ball").unwrap();
    assert!(r.passed && close(r.parameters["beta"], 0.5, 1e-9) && close(r.lhs, 0.5, 1e-9), "{r:?}");
}

fn section_fn(n: usize, flat_dim: usize, seed: u64) -> SectionVolumeFunction {
    let basis: Vec<Vec<f64>> = (0..flat_dim).map(|i| unit(n, i)).collect();
    SectionVolumeFunction::new(random(n, seed), Subspace::span(n, &basis).unwrap()).unwrap()
}

#[test]
fn function_lemmas_on_section_functions() {
    for (n, flat_dim, seed) in [(3, 1, 1), (3, 2, 2), (4, 2, 3)] {
        let f = section_fn(n, flat_dim, seed);
        let k = f.codomain_dim();
        assert!(check_fradelizi(&f, "sec").unwrap().passed);
        assert!(check_lemma6(&f, 1.0, 24, seed, "sec").unwrap().passed);
        assert!(check_berwald(&f, 1.0, (k + 1) as f64, 24, seed, "sec").unwrap().passed);
        let l4 = report_lemma4(&f, 1.0, 24, seed, "sec").unwrap();
        assert!(l4[0].passed && !l4[1].assertable && l4[1].lhs > 0.0);
        let p9 = report_prop9(&f, 24, seed, "sec").unwrap();
        assert!(!p9.assertable && p9.lhs.is_finite() && p9.lhs > 0.0);
        let b = check_brunn(&f, 20, seed, "sec").unwrap();
        assert!(b.passed, "{b:?}");
    }
    let f = section_fn(3, 1, 9);
    let r = check_moment_identity(&f, &[0.6, 0.8], 2, "sec").unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn function_lemmas_on_indicators() {
    let f = BallIndicator { dim: 2, radius: 1.5 };
    let r = check_fradelizi(&f, "disc").unwrap();
    assert!(r.passed && close(r.lhs, 1.0, 0.0));
    let r = check_lemma6(&f, 2.0, 12, 0, "disc").unwrap();
    assert!(r.passed && close(r.lhs, 1.0, 1e-12));
    // the distance between dilates is 1
    let r = report_lemma4(&f, 2.0, 12, 0, "disc").unwrap();
    assert!(close(r[0].lhs, 1.0, 1e-9) && close(r[0].rhs, 1.0, 1e-12));
    let r = report_prop9(&f, 12, 0, "disc").unwrap();
    assert!(close(r.lhs, 1.0, 1e-9));
    let r = check_moment_identity(&f, &[1.0, 0.0], 1, "disc").unwrap();
    assert!(r.passed && r.rhs == 0.0);
    assert!(check_berwald(&f, 0.5, 3.0, 12, 0, "disc").unwrap().passed);
}

#[test]
fn check_result_conventions() {
    let b = CheckResult::bound("x", "b", 1.0, 1.0, 0.0);
    assert!(b.passed && !b.failed());
    let b = CheckResult::bound("x", "b", 1.1, 1.0, 0.05);
    assert!(!b.passed && b.failed());
    let e = CheckResult::equality("x", "b", 2.0 + 1e-9, 2.0, 1e-6);
    assert!(e.passed);
    let r = CheckResult::report("x", "b", 5.0, f64::NAN);
    assert!(r.passed && !r.failed());
    let w = CheckResult::within("x", "b", 1e-12, 0.0, 1.0, 1e-6);
    assert!(w.passed && w.parameters["magnitude"] == 1.0);
}
