use super::*;
use crate::volume::moments;

fn body(p: VPolytope) -> ConvexBody {
    ConvexBody::VPolytope(p)
}

#[test]
fn regular_simplex_is_regular_and_centered() {
    let s = make_regular_simplex(1).unwrap();
    let mut xs: Vec<f64> = s.vertices().iter().map(|v| v[0]).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((xs[0] + 1.0).abs() < 1e-12 && (xs[1] - 1.0).abs() < 1e-12);

    let s = make_regular_simplex(2).unwrap();
    let v = s.vertices();
    let d01 = crate::linalg::dist(&v[0], &v[1]);
    assert!((crate::linalg::dist(&v[1], &v[2]) - d01).abs() < 1e-12);
    assert!((crate::linalg::dist(&v[0], &v[2]) - d01).abs() < 1e-12);

    let s = make_regular_simplex(4).unwrap();
    assert_eq!(s.vertices().len(), 5);
    let sum = s.vertices().iter().fold(vec![0.0; 4], |acc, v| crate::linalg::add(&acc, v));
    assert!(norm(&sum) < 1e-12);
    assert!(make_regular_simplex(9).is_err());
    assert!(make_regular_simplex(0).is_err());
}

#[test]
fn standard_volumes() {
    let cube = ConvexBody::HPolytope(make_cube(2).unwrap());
    assert!((moments(&cube).unwrap().volume - 4.0).abs() < 1e-12);
    let cross = body(make_cross_polytope(3).unwrap());
    assert!((moments(&cross).unwrap().volume - 8.0 / 6.0).abs() < 1e-12);
    let ball = make_ball(2, 1.0).unwrap();
    assert!((moments(&ball).unwrap().volume - core::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn random_polytope_is_deterministic_and_centered() {
    let a = random_centered_polytope(2, 5, 7).unwrap();
    let b = random_centered_polytope(2, 5, 7).unwrap();
    assert_eq!(a.vertices(), b.vertices());
    let k = body(random_centered_polytope(4, 12, 3).unwrap());
    let c = moments(&k).unwrap().centroid;
    assert!(norm(&c) < 1e-10);
}

#[test]
fn random_polytope_vertices_are_extreme() {
    // Oracle: a vertex is extreme iff it lies strictly outside the hull of
    // the remaining vertices.
    let p = random_centered_polytope(3, 15, 11).unwrap();
    let verts = p.vertices();
    for (i, v) in verts.iter().enumerate() {
        let rest: Vec<Vec<f64>> =
            verts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, w)| w.clone()).collect();
        let others = Polytope::from_points(&rest).unwrap();
        assert!(!others.contains(v, 1e-12));
    }
}

#[test]
fn support_and_radial_of_the_square() {
    let cube = ConvexBody::HPolytope(make_cube(2).unwrap());
    assert!((cube.support(&[1.0, 0.0]) - 1.0).abs() < 1e-12);
    assert!((cube.radial(&[1.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
    let d = [core::f64::consts::FRAC_1_SQRT_2, core::f64::consts::FRAC_1_SQRT_2];
    assert!((cube.support(&d) - 2f64.sqrt()).abs() < 1e-12);
    assert!((cube.radial(&d).unwrap() - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn simplex_support_is_at_most_twice_the_opposite() {
    let s = body(make_regular_simplex(2).unwrap());
    for u in crate::rng::sphere_directions(2, 100, 1) {
        let neg = scale(&u, -1.0);
        assert!(s.support(&neg) <= 2.0 * s.support(&u) + 1e-12);
    }
}

#[test]
fn radial_requires_interior_origin() {
    let shifted = ConvexBody::HPolytope(make_cube(2).unwrap()).translate(&[1.0, 0.0]);
    assert_eq!(shifted.radial(&[1.0, 0.0]), Err(GeomError::OriginNotInterior));
    assert!(shifted.polar().is_err());
}

#[test]
fn polar_pairs() {
    let cube = ConvexBody::HPolytope(make_cube(2).unwrap());
    let p = cube.polar().unwrap();
    let mut got: Vec<Vec<f64>> = p.polytope().unwrap().vertices().to_vec();
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut want = vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![0.0, 1.0], vec![1.0, 0.0]];
    want.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (g, w) in got.iter().zip(&want) {
        assert!(crate::linalg::dist(g, w) < 1e-12);
    }
    match make_ball(3, 2.0).unwrap().polar().unwrap() {
        ConvexBody::Ball(b) => assert!((b.radius - 0.5).abs() < 1e-15),
        other => panic!("{other:?}"),
    }
}

fn same_vertex_sets(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|v| b.iter().any(|w| crate::linalg::dist(v, w) < tol))
}

#[test]
fn polar_is_an_involution_on_simplex() {
    let s = body(make_regular_simplex(3).unwrap());
    let pp = s.polar().unwrap().polar().unwrap();
    assert!(same_vertex_sets(
        s.polytope().unwrap().vertices(),
        pp.polytope().unwrap().vertices(),
        1e-9
    ));
}

#[test]
fn polar_with_center_of_shifted_box() {
    // C = [-1,3] x [-1,1], z = (1,0): C - z = [-2,2] x [-1,1], whose polar is
    // conv(±e1/2, ±e2); translate back by z.
    let hs = vec![
        Halfspace::new(vec![1.0, 0.0], 3.0),
        Halfspace::new(vec![-1.0, 0.0], 1.0),
        Halfspace::new(vec![0.0, 1.0], 1.0),
        Halfspace::new(vec![0.0, -1.0], 1.0),
    ];
    let c = ConvexBody::HPolytope(HPolytope::new(2, &hs).unwrap());
    let z = [1.0, 0.0];
    let pz = polar_with_center(&c, &z).unwrap();
    // Oracle straight from the definition: y is in C^{*z} iff
    // <y - z, x - z> <= 1 for every vertex x of C.
    let cverts = c.polytope().unwrap().vertices();
    for y in pz.polytope().unwrap().vertices() {
        let worst = cverts
            .iter()
            .map(|x| dot(&sub(y, &z), &sub(x, &z)))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((worst - 1.0).abs() < 1e-12);
    }
    let want = vec![vec![1.5, 0.0], vec![0.5, 0.0], vec![1.0, 1.0], vec![1.0, -1.0]];
    assert!(same_vertex_sets(pz.polytope().unwrap().vertices(), &want, 1e-12));

    let disc = make_ball(2, 1.0).unwrap();
    match polar_with_center(&disc, &[0.0, 0.0]).unwrap() {
        ConvexBody::Ball(b) => assert!((b.radius - 1.0).abs() < 1e-15),
        other => panic!("{other:?}"),
    }
    assert_eq!(polar_with_center(&c, &[3.0, 0.0]).unwrap_err(), GeomError::NotInterior);
}

#[test]
fn projections() {
    let cube = ConvexBody::HPolytope(make_cube(3).unwrap());
    let plane = Subspace::orthogonal_to(&[0.0, 0.0, 1.0]).unwrap();
    let sq = project(&cube, &plane).unwrap();
    assert_eq!(sq.dim(), 2);
    assert!((moments(&sq).unwrap().volume - 4.0).abs() < 1e-12);

    let ball = make_ball(3, 1.5).unwrap();
    match project(&ball, &plane).unwrap() {
        ConvexBody::Ball(b) => assert_eq!((b.dim(), b.radius), (2, 1.5)),
        other => panic!("{other:?}"),
    }

    let s = make_regular_simplex(2).unwrap();
    let line = Subspace::span(2, &[vec![1.0, 0.0]]).unwrap();
    let seg = project(&body(s.clone()), &line).unwrap();
    let xs: Vec<f64> = s.vertices().iter().map(|v| v[0]).collect();
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!((seg.support(&[1.0]) - hi).abs() < 1e-12);
    assert!((-seg.support(&[-1.0]) - lo).abs() < 1e-12);
}

#[test]
fn conversions() {
    let cube = ConvexBody::HPolytope(make_cube(3).unwrap());
    let v = cube.convert(Representation::Vertices).unwrap();
    assert_eq!(v.polytope().unwrap().vertices().len(), 8);
    let cross = body(make_cross_polytope(3).unwrap());
    let h = cross.convert(Representation::Halfspaces).unwrap();
    let hs = h.polytope().unwrap().halfspaces();
    assert_eq!(hs.len(), 8);
    for f in hs {
        assert!(f.normal.iter().all(|x| (x.abs() - 1.0 / 3f64.sqrt()).abs() < 1e-12));
        assert!((f.offset - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }
    assert!(make_ball(2, 1.0).unwrap().convert(Representation::Vertices).is_err());
}

#[test]
fn round_trip_reproduces_vertices() {
    let p = random_centered_polytope(4, 10, 2).unwrap();
    let h = HPolytope::new(4, p.polytope().halfspaces()).unwrap();
    assert!(same_vertex_sets(p.vertices(), h.polytope().vertices(), 1e-9));
}

#[test]
fn degenerate_vertices_are_flagged() {
    let pts = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
    assert!(matches!(VPolytope::new(&pts), Err(GeomError::Degenerate { .. })));
}

#[test]
fn affine_ball_is_an_ellipsoid() {
    let ball = make_ball(2, 1.0).unwrap();
    let e = ball.affine_image(&[vec![2.0, 0.0], vec![0.0, 1.0]], &[0.0, 0.0]).unwrap();
    assert!(matches!(e, ConvexBody::Affine(_)));
    assert!((e.support(&[1.0, 0.0]) - 2.0).abs() < 1e-12);
    assert!((e.radial(&[0.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
    assert!((moments(&e).unwrap().volume - 2.0 * core::f64::consts::PI).abs() < 1e-12);
    let scaled = ball.affine_image(&[vec![0.0, 3.0], vec![-3.0, 0.0]], &[1.0, 0.0]).unwrap();
    assert!(matches!(scaled, ConvexBody::Ball(ref b) if (b.radius - 3.0).abs() < 1e-12));
}
