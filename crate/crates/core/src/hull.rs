//! Incremental (beneath-beyond) convex hull in `R^n`, `n <= 8`.
//!
//! The boundary is kept as a simplicial complex of `(n-1)`-simplices with
//! facet adjacency. Each new point sees a set of facets; the ridges between
//! seen and unseen facets form the horizon, and the point is coned over it.
//! Coplanar simplices are merged afterwards into the irredundant facet list.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{GeomError, Result};
use crate::linalg::{complement, dist, dot, mean, orthonormalize, reject, sub};

/// Closed halfspace `<normal, x> <= offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// Signed distance-like slack `<normal, x> - offset` (a true distance
    /// when the normal is a unit vector).
    pub fn excess(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }
}

/// Result of a hull computation. Point indices refer to `points`, the
/// deduplicated input.
#[derive(Debug, Clone)]
pub struct Hull {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    /// Indices of extreme points.
    pub vertices: Vec<usize>,
    /// Irredundant facets with unit outward normals.
    pub facets: Vec<Halfspace>,
    /// Boundary triangulation: each entry holds `dim` point indices.
    pub simplices: Vec<Vec<usize>>,
    /// A strictly interior point.
    pub interior: Vec<f64>,
}

struct Facet {
    verts: Vec<usize>,
    normal: Vec<f64>,
    offset: f64,
    neighbors: Vec<usize>,
    alive: bool,
}

/// Bounding-box diagonal of a point set (at least `f64::MIN_POSITIVE`).
pub fn scale_of(points: &[Vec<f64>]) -> f64 {
    let n = points.first().map_or(0, Vec::len);
    let mut s2 = 0.0;
    for i in 0..n {
        let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p[i]), hi.max(p[i]))
        });
        s2 += (hi - lo) * (hi - lo);
    }
    s2.sqrt().max(f64::MIN_POSITIVE)
}

/// Removes points closer than `tol` to an earlier point.
pub fn dedup_points(points: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| dist(p, q) < tol) {
            out.push(p.clone());
        }
    }
    out
}

/// Affine hull of `points` as (origin, orthonormal basis of directions).
pub fn affine_hull(points: &[Vec<f64>], tol: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    let origin = points[0].clone();
    let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, &origin)).collect();
    let s = scale_of(points);
    let basis = orthonormalize(&diffs, tol / s.max(1e-300));
    (origin, basis)
}

fn plane_through(points: &[Vec<f64>], verts: &[usize], interior: &[f64]) -> (Vec<f64>, f64) {
    let n = interior.len();
    let p0 = &points[verts[0]];
    let diffs: Vec<Vec<f64>> = verts[1..].iter().map(|&v| sub(&points[v], p0)).collect();
    let basis = orthonormalize(&diffs, 1e-14);
    let mut normal = complement(&basis, n).swap_remove(0);
    let mut offset = dot(&normal, p0);
    if dot(&normal, interior) > offset {
        normal.iter_mut().for_each(|x| *x = -*x);
        offset = -offset;
    }
    (normal, offset)
}

/// Computes the convex hull of `points` in `R^n`. `tol` is the relative
/// geometric tolerance (scaled by the bounding-box diagonal) used for
/// deduplication, visibility and facet merging.
///
/// Returns [`GeomError::Degenerate`] with the affine hull when the points do
/// not span `R^n`.
pub fn convex_hull(points: &[Vec<f64>], tol: f64) -> Result<Hull> {
    let n = points.first().map_or(0, Vec::len);
    if points.is_empty() {
        return Err(GeomError::Empty);
    }
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(GeomError::DimensionMismatch { expected: n, got: p.len() });
    }
    let scale = scale_of(points);
    let eps = tol * scale;
    let pts = dedup_points(points, eps);
    if n == 0 {
        return Ok(Hull {
            dim: 0,
            points: pts,
            vertices: vec![0],
            facets: Vec::new(),
            simplices: Vec::new(),
            interior: Vec::new(),
        });
    }

    // Initial simplex: greedily maximize distance to the current affine hull.
    let first = (0..pts.len())
        .min_by(|&a, &b| pts[a][0].partial_cmp(&pts[b][0]).unwrap())
        .unwrap();
    let mut chosen = vec![first];
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    while chosen.len() < n + 1 {
        let mut best = (0.0, usize::MAX, Vec::new());
        for (i, p) in pts.iter().enumerate() {
            let mut w = sub(p, &pts[first]);
            reject(&mut w, &dirs);
            let d = crate::linalg::norm(&w);
            if d > best.0 {
                best = (d, i, w);
            }
        }
        if best.0 <= eps {
            let (origin, basis) = affine_hull(&pts, eps);
            return Err(GeomError::Degenerate { origin, basis });
        }
        let w = best.2;
        let l = crate::linalg::norm(&w);
        dirs.push(w.iter().map(|x| x / l).collect());
        chosen.push(best.1);
    }
    let simplex_pts: Vec<Vec<f64>> = chosen.iter().map(|&i| pts[i].clone()).collect();
    let interior = mean(&simplex_pts);

    let mut facets: Vec<Facet> = Vec::new();
    // Facet `o` omits chosen[o].
    for o in 0..=n {
        let mut verts: Vec<usize> = (0..=n).filter(|&i| i != o).map(|i| chosen[i]).collect();
        verts.sort_unstable();
        let (normal, offset) = plane_through(&pts, &verts, &interior);
        facets.push(Facet { verts, normal, offset, neighbors: Vec::new(), alive: true });
    }
    for o in 0..=n {
        let nb = facets[o]
            .verts
            .iter()
            .map(|v| chosen.iter().position(|c| c == v).unwrap())
            .collect();
        facets[o].neighbors = nb;
    }

    let mut order: Vec<usize> = (0..pts.len()).filter(|i| !chosen.contains(i)).collect();
    order.sort_by(|&a, &b| {
        dist(&pts[b], &interior).partial_cmp(&dist(&pts[a], &interior)).unwrap()
    });

    let vis_eps = 0.1 * eps;
    let mut visible = Vec::new();
    for q in order {
        let p = &pts[q];
        visible.clear();
        visible.resize(facets.len(), false);
        let mut any = false;
        for (fi, f) in facets.iter().enumerate() {
            if f.alive && dot(&f.normal, p) - f.offset > vis_eps {
                visible[fi] = true;
                any = true;
            }
        }
        if !any {
            continue;
        }
        let mut ridge_map: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
        let mut created = Vec::new();
        for fi in 0..visible.len() {
            if !visible[fi] {
                continue;
            }
            for j in 0..n {
                let nb = facets[fi].neighbors[j];
                if visible[nb] {
                    continue;
                }
                let mut verts: Vec<usize> = facets[fi]
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &v)| v)
                    .collect();
                verts.push(q);
                verts.sort_unstable();
                let (normal, offset) = plane_through(&pts, &verts, &interior);
                let id = facets.len();
                let mut neighbors = vec![usize::MAX; n];
                let qpos = verts.iter().position(|&v| v == q).unwrap();
                neighbors[qpos] = nb;
                // Re-point the unseen neighbor at the new facet.
                if let Some(slot) = facets[nb].neighbors.iter().position(|&x| x == fi) {
                    facets[nb].neighbors[slot] = id;
                }
                for (pos, _) in verts.iter().enumerate().filter(|&(pos, _)| pos != qpos) {
                    let key: Vec<usize> = verts
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != pos)
                        .map(|(_, &v)| v)
                        .collect();
                    if let Some((other, other_pos)) = ridge_map.remove(&key) {
                        neighbors[pos] = other;
                        let of: &mut Facet = &mut facets[other];
                        of.neighbors[other_pos] = id;
                    } else {
                        ridge_map.insert(key, (id, pos));
                    }
                }
                facets.push(Facet { verts, normal, offset, neighbors, alive: true });
                visible.push(false);
                created.push(id);
            }
        }
        // New facets may have been linked before their partner existed; the
        // map pass above handles both orders, so every slot is now filled.
        debug_assert!(created.iter().all(|&id| facets[id].neighbors.iter().all(|&x| x != usize::MAX)));
        for (fi, f) in facets.iter_mut().enumerate() {
            if visible[fi] {
                f.alive = false;
            }
        }
    }

    let live: Vec<&Facet> = facets.iter().filter(|f| f.alive).collect();

    // Merge coplanar simplices into facets.
    let mut merged: Vec<Halfspace> = Vec::new();
    for f in &live {
        let dup = merged.iter().any(|h| {
            dist(&h.normal, &f.normal) < 1e-9 && (h.offset - f.offset).abs() < eps
        });
        if !dup {
            merged.push(Halfspace::new(f.normal.clone(), f.offset));
        }
    }

    // Extreme points: the facet normals through the point have full rank.
    let mut used = vec![false; pts.len()];
    for f in &live {
        for &v in &f.verts {
            used[v] = true;
        }
    }
    let on_tol = 10.0 * eps;
    let mut vertices = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if !used[i] {
            continue;
        }
        let normals: Vec<Vec<f64>> = merged
            .iter()
            .filter(|h| h.excess(p).abs() <= on_tol)
            .map(|h| h.normal.clone())
            .collect();
        if orthonormalize(&normals, 1e-7).len() == n {
            vertices.push(i);
        }
    }

    let simplices = live.iter().map(|f| f.verts.clone()).collect();
    Ok(Hull { dim: n, points: pts, vertices, facets: merged, simplices, interior })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::factorial;

    fn cube_points(n: usize) -> Vec<Vec<f64>> {
        (0..1usize << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { 1.0 } else { -1.0 }).collect())
            .collect()
    }

    fn fan_volume(h: &Hull) -> f64 {
        let n = h.dim;
        h.simplices
            .iter()
            .map(|s| {
                let rows: Vec<Vec<f64>> = s.iter().map(|&v| sub(&h.points[v], &h.interior)).collect();
                crate::linalg::det(&rows).abs() / factorial(n)
            })
            .sum()
    }

    #[test]
    fn cube_hull_in_several_dimensions() {
        for n in 1..=5 {
            let h = convex_hull(&cube_points(n), 1e-9).unwrap();
            assert_eq!(h.vertices.len(), 1 << n);
            assert_eq!(h.facets.len(), 2 * n);
            assert!((fan_volume(&h) - (1 << n) as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn interior_and_edge_points_are_not_vertices() {
        let mut pts = cube_points(2);
        pts.push(vec![0.0, 1.0]); // midpoint of an edge
        pts.push(vec![0.2, 0.1]);
        pts.insert(0, vec![1.0, 0.0]); // processed early, still not extreme
        let h = convex_hull(&pts, 1e-9).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.facets.len(), 4);
        assert!((fan_volume(&h) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_input_reports_affine_hull() {
        let pts = vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]];
        match convex_hull(&pts, 1e-9) {
            Err(GeomError::Degenerate { basis, .. }) => assert_eq!(basis.len(), 2),
            other => panic!("expected degenerate, got {other:?}"),
        }
    }

    #[test]
    fn cross_polytope_facets() {
        let mut pts = Vec::new();
        for i in 0..4 {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; 4];
                e[i] = s;
                pts.push(e);
            }
        }
        let h = convex_hull(&pts, 1e-9).unwrap();
        assert_eq!(h.facets.len(), 16);
        assert!((fan_volume(&h) - 16.0 / 24.0).abs() < 1e-12);
    }
}
