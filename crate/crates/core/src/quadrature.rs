//! Gauss-Legendre rules, adaptive Gauss-Kronrod integration on intervals, and
//! collapsed-coordinate product rules on simplices.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{GeomError, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]` (Newton iteration on the
/// Legendre recurrence).
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; order];
    let mut w = vec![0.0; order];
    let m = order.div_ceil(2);
    for i in 0..m {
        let mut z = (core::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..order {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = order as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[order - 1 - i] = wi;
    }
    (x, w)
}

/// Fixed-order Gauss-Legendre rule on `[a, b]`.
pub fn integrate_gl(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let h = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.0.iter().zip(&rule.1).map(|(x, w)| w * f(mid + h * x)).sum::<f64>() * h
}

// Kronrod 15-point extension of the 7-point Gauss rule (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Globally adaptive Gauss-Kronrod (15-point) integration of `f` over
/// `[a, b]`, bisecting the interval with the largest error estimate until the
/// total estimate is below `max(abs_tol, rel_tol |I|)`.
///
/// Returns [`GeomError::Quadrature`] with the achieved relative error when
/// `max_intervals` is exhausted first.
pub fn adaptive(
    f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<Integral> {
    adaptive_pieces(f, &[a, b], rel_tol, abs_tol, max_intervals)
}

/// As [`adaptive`], starting from the partition given by the sorted
/// `breaks` (kinks of the integrand belong there).
pub fn adaptive_pieces(
    mut f: impl FnMut(f64) -> f64,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<Integral> {
    let mut intervals: Vec<(f64, f64, f64, f64)> = Vec::new();
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let (v, e) = gk15(&mut f, w[0], w[1]);
            intervals.push((w[0], w[1], v, e));
            evaluations += 15;
        }
    }
    loop {
        let value: f64 = intervals.iter().map(|t| t.2).sum();
        let error: f64 = intervals.iter().map(|t| t.3).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) || error == 0.0 {
            return Ok(Integral { value, error, evaluations });
        }
        if intervals.len() >= max_intervals.max(breaks.len()) {
            return Err(GeomError::Quadrature(error / value.abs().max(f64::MIN_POSITIVE)));
        }
        let (idx, _) = intervals
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, t)| if t.3 > best.1 { (i, t.3) } else { best });
        let (lo, hi, _, _) = intervals.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        evaluations += 30;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}

/// Product rule on the standard `d`-simplex `{μ >= 0, Σ μ_i <= 1}` obtained by
/// collapsing the cube `[0,1]^d` (Duffy map) and using `order` Gauss-Legendre
/// points per axis. Returns barycentric-free coordinates `μ` and weights
/// summing to `1/d!`.
pub fn simplex_rule(d: usize, order: usize) -> Vec<(Vec<f64>, f64)> {
    let (x, w) = gauss_legendre(order);
    let nodes: Vec<(f64, f64)> = x.iter().zip(&w).map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    if d == 0 {
        return alloc::vec![(Vec::new(), 1.0)];
    }
    loop {
        // μ_j = (1 - Σ_{i<j} μ_i) u_j, a triangular map with Jacobian ∏ rest_j.
        let mut mu = Vec::with_capacity(d);
        let mut rest = 1.0;
        let mut weight = 1.0;
        for &k in &idx {
            let (u, wu) = nodes[k];
            mu.push(rest * u);
            weight *= wu * rest;
            rest *= 1.0 - u;
        }
        out.push((mu, weight));
        let mut j = 0;
        loop {
            if j == d {
                return out;
            }
            idx[j] += 1;
            if idx[j] < order {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}
