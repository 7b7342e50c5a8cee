//! Small dense vector helpers on `[f64]` slices. Dimensions here never exceed
//! nine, so plain `Vec<f64>` points are the working currency of the crate and
//! `nalgebra` is reserved for factorizations.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_traits::Float;

use crate::error::{GeomError, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `y += s * x`
pub fn axpy(y: &mut [f64], s: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let l = norm(a);
    if l > 0.0 && l.is_finite() {
        Some(scale(a, 1.0 / l))
    } else {
        None
    }
}

pub fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

pub fn mean(points: &[Vec<f64>]) -> Vec<f64> {
    let n = points.first().map_or(0, Vec::len);
    let mut c = vec![0.0; n];
    for p in points {
        axpy(&mut c, 1.0, p);
    }
    let m = points.len().max(1) as f64;
    c.iter_mut().for_each(|x| *x /= m);
    c
}

pub fn mat_vec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * x[j]).sum())
        .collect()
}

/// Removes from `v` its components along the orthonormal `basis`, twice
/// (classical Gram-Schmidt with one reorthogonalization pass).
pub fn reject(v: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(v, b);
            axpy(v, -c, b);
        }
    }
}

/// Orthonormal basis of `span(vectors)`; vectors whose residual norm falls
/// below `tol` times their original norm are dropped.
pub fn orthonormalize(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let n0 = norm(v);
        if n0 == 0.0 {
            continue;
        }
        let mut w = v.clone();
        reject(&mut w, &basis);
        let r = norm(&w);
        if r > tol * n0.max(1.0) {
            basis.push(scale(&w, 1.0 / r));
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of the orthonormal `basis`
/// in `R^n`.
pub fn complement(basis: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut all: Vec<Vec<f64>> = basis.to_vec();
    let mut out = Vec::new();
    while all.len() < n {
        // Pick the coordinate axis with the largest residual for stability.
        let mut best: Option<(f64, Vec<f64>)> = None;
        for i in 0..n {
            let mut e = unit(n, i);
            reject(&mut e, &all);
            let r = norm(&e);
            if best.as_ref().is_none_or(|(br, _)| r > *br) {
                best = Some((r, e));
            }
        }
        let (r, e) = best.expect("n > 0");
        let u = scale(&e, 1.0 / r);
        all.push(u.clone());
        out.push(u);
    }
    out
}

/// Determinant by Gaussian elimination with partial pivoting. `rows` is
/// consumed as scratch space.
pub fn det_in_place(rows: &mut [Vec<f64>]) -> f64 {
    let n = rows.len();
    let mut d = 1.0;
    for col in 0..n {
        let mut piv = col;
        let mut best = rows[col][col].abs();
        for (r, row) in rows.iter().enumerate().skip(col + 1) {
            if row[col].abs() > best {
                best = row[col].abs();
                piv = r;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != col {
            rows.swap(piv, col);
            d = -d;
        }
        let p = rows[col][col];
        d *= p;
        for r in col + 1..n {
            let f = rows[r][col] / p;
            if f != 0.0 {
                for c in col..n {
                    let v = rows[col][c];
                    rows[r][c] -= f * v;
                }
            }
        }
    }
    d
}

pub fn det(rows: &[Vec<f64>]) -> f64 {
    let mut m = rows.to_vec();
    det_in_place(&mut m)
}

/// Solves `A x = b` for square `A` given by rows.
pub fn solve(rows: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = rows.len();
    let a = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let lu = a.lu();
    let rhs = nalgebra::DVector::from_column_slice(b);
    lu.solve(&rhs)
        .map(|x| x.iter().copied().collect())
        .ok_or(GeomError::Singular)
}

/// Inverse of a square matrix given by rows, returned by rows.
pub fn inverse(rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = rows.len();
    let a = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let inv = a.try_inverse().ok_or(GeomError::Singular)?;
    Ok((0..n).map(|i| (0..n).map(|j| inv[(i, j)]).collect()).collect())
}

pub fn to_matrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn from_matrix(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}
