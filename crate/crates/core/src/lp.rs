//! Dense two-phase simplex for the small linear programs that come up when
//! intersecting polytopes with flats (Chebyshev centers, interior points).
//! Problem sizes are tens to a few hundred rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{GeomError, Result};
use crate::linalg::norm;

const EPS: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    cost: Vec<f64>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pr = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    for (v, q) in row.iter_mut().zip(&pr) {
                        *v -= f * q;
                    }
                }
            }
        }
        let f = self.cost[c];
        if f != 0.0 {
            for (v, q) in self.cost.iter_mut().zip(&pr) {
                *v -= f * q;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on the current cost row (reduced costs; the
    /// program maximizes, so a negative entry may enter). Columns with
    /// `allowed[j] == false` never enter.
    ///
    /// Entering columns are chosen by the most negative reduced cost per unit
    /// column length; after a run of degenerate pivots the rule switches to
    /// Bland's to rule out cycling. The ratio test prefers the largest pivot
    /// among near-ties, which keeps the tableau well conditioned.
    fn optimize(&mut self, allowed: &[bool]) -> Result<()> {
        let rhs = self.cols;
        let mut degenerate_run = 0;
        for _ in 0..50_000 {
            let bland = degenerate_run > 50;
            let mut enter: Option<(usize, f64)> = None;
            for j in (0..self.cols).filter(|&j| allowed[j]) {
                let col_max = self.rows.iter().fold(1.0_f64, |s, r| s.max(r[j].abs()));
                let score = self.cost[j] / col_max;
                if self.cost[j] < -EPS * col_max && enter.map_or(true, |(_, best)| score < best) {
                    enter = Some((j, score));
                    if bland {
                        break;
                    }
                }
            }
            let Some((enter, _)) = enter else {
                return Ok(());
            };
            let col_max = self.rows.iter().fold(0.0_f64, |s, r| s.max(r[enter].abs()));
            let pivot_tol = 1e-9 * col_max;
            let mut min_ratio = f64::INFINITY;
            for row in &self.rows {
                let a = row[enter];
                if a > pivot_tol {
                    min_ratio = min_ratio.min(row[rhs].max(0.0) / a);
                }
            }
            if !min_ratio.is_finite() {
                return Err(GeomError::Unbounded);
            }
            let slack = EPS * (1.0 + min_ratio);
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[enter];
                if a > pivot_tol && row[rhs].max(0.0) / a <= min_ratio + slack {
                    let better = match leave {
                        None => true,
                        Some((bi, ba)) => {
                            if bland {
                                self.basis[i] < self.basis[bi]
                            } else {
                                a > ba
                            }
                        }
                    };
                    if better {
                        leave = Some((i, a));
                    }
                }
            }
            let (r, _) = leave.unwrap();
            if min_ratio <= slack {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, enter);
        }
        Err(GeomError::Unsupported("simplex iteration limit".into()))
    }
}

/// Maximizes `c·x` subject to `A x <= b` over free `x`.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let d = c.len();
    let m = a.len();
    let n_art = b.iter().filter(|&&v| v < 0.0).count();
    // columns: x+ (d), x- (d), slacks (m), artificials (n_art), rhs
    let cols = 2 * d + m + n_art;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = 0;
    for i in 0..m {
        let mut row = vec![0.0; cols + 1];
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..d {
            row[j] = sign * a[i][j];
            row[d + j] = -sign * a[i][j];
        }
        row[2 * d + i] = sign;
        row[cols] = sign * b[i];
        if b[i] < 0.0 {
            let col = 2 * d + m + art;
            row[col] = 1.0;
            basis.push(col);
            art += 1;
        } else {
            basis.push(2 * d + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, cost: vec![0.0; cols + 1], basis, cols };
    let first_art = 2 * d + m;

    if n_art > 0 {
        // Phase I: maximize -sum(artificials).
        for j in first_art..cols {
            t.cost[j] = 1.0;
        }
        for i in 0..m {
            if t.basis[i] >= first_art {
                let row = t.rows[i].clone();
                for (v, q) in t.cost.iter_mut().zip(&row) {
                    *v -= q;
                }
            }
        }
        let allowed = vec![true; cols];
        t.optimize(&allowed)?;
        let scale = b.iter().fold(1.0_f64, |s, v| s.max(v.abs()));
        if t.cost[cols] < -1e-9 * scale {
            return Err(GeomError::Infeasible);
        }
        // Drive remaining artificials out of the basis where possible.
        for i in 0..m {
            if t.basis[i] >= first_art {
                if let Some(j) = (0..first_art).find(|&j| t.rows[i][j].abs() > 1e-9) {
                    t.pivot(i, j);
                }
            }
        }
    }

    // Phase II.
    t.cost = vec![0.0; cols + 1];
    for j in 0..d {
        t.cost[j] = -c[j];
        t.cost[d + j] = c[j];
    }
    for i in 0..m {
        let bj = t.basis[i];
        let f = t.cost[bj];
        if f != 0.0 {
            let row = t.rows[i].clone();
            for (v, q) in t.cost.iter_mut().zip(&row) {
                *v -= f * q;
            }
        }
    }
    let mut allowed = vec![true; cols];
    for a in allowed.iter_mut().skip(first_art) {
        *a = false;
    }
    t.optimize(&allowed)?;

    let mut x = vec![0.0; d];
    for (i, &bj) in t.basis.iter().enumerate() {
        let v = t.rows[i][cols];
        if bj < d {
            x[bj] += v;
        } else if bj < 2 * d {
            x[bj - d] -= v;
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution { x, value })
}

/// Center and radius of the largest ball inside `{y : a_i·y <= b_i}`.
/// A nonpositive radius means the polyhedron has empty interior.
pub fn chebyshev_center(a: &[Vec<f64>], b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let d = a.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(a.len() + 1);
    let mut rhs = Vec::with_capacity(a.len() + 1);
    for (ai, bi) in a.iter().zip(b) {
        let mut row = ai.clone();
        row.push(norm(ai));
        rows.push(row);
        rhs.push(*bi);
    }
    // Cap the radius so the program stays bounded for unbounded inputs.
    let cap = 1e6 * b.iter().fold(1.0_f64, |s, v| s.max(v.abs()));
    let mut row = vec![0.0; d + 1];
    row[d] = 1.0;
    rows.push(row);
    rhs.push(cap);
    let mut c = vec![0.0; d + 1];
    c[d] = 1.0;
    let sol = maximize(&c, &rows, &rhs)?;
    let r = sol.x[d];
    let mut center = sol.x;
    center.truncate(d);
    Ok((center, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_textbook_program() {
        // max 3x + 2y st x + y <= 4, x + 3y <= 6, x >= 0, y >= 0 -> (4, 0), 12
        let a = vec![vec![1.0, 1.0], vec![1.0, 3.0], vec![-1.0, 0.0], vec![0.0, -1.0]];
        let s = maximize(&[3.0, 2.0], &a, &[4.0, 6.0, 0.0, 0.0]).unwrap();
        assert!((s.value - 12.0).abs() < 1e-10);
    }

    #[test]
    fn needs_phase_one() {
        // x >= 2, y >= 1, x + y <= 10; min x + y -> 3
        let a = vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![1.0, 1.0]];
        let s = maximize(&[-1.0, -1.0], &a, &[-2.0, -1.0, 10.0]).unwrap();
        assert!((s.value + 3.0).abs() < 1e-10);
    }

    #[test]
    fn detects_infeasibility() {
        let a = vec![vec![1.0], vec![-1.0]];
        assert_eq!(maximize(&[1.0], &a, &[-1.0, -1.0]), Err(GeomError::Infeasible));
    }

    #[test]
    fn chebyshev_center_of_shifted_box() {
        // [2, 4] x [-1, 1]
        let a = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]];
        let (c, r) = chebyshev_center(&a, &[4.0, -2.0, 1.0, 1.0]).unwrap();
        assert!((r - 1.0).abs() < 1e-10);
        assert!((c[0] - 3.0).abs() < 1e-10 && c[1].abs() < 1e-10);
    }

    #[test]
    fn empty_interior_gives_nonpositive_radius() {
        // x <= 0 and x >= 0 in R^1
        let a = vec![vec![1.0], vec![-1.0]];
        let (_, r) = chebyshev_center(&a, &[0.0, 0.0]).unwrap();
        assert!(r <= 1e-12);
    }

    #[test]
    fn near_degenerate_section_stays_bounded() {
        // Constraints of a thin planar section that once produced a spurious
        // unbounded verdict from a round-off reduced cost.
        let rows: Vec<(Vec<f64>, f64)> = vec![
            (vec![-0.055817452241318254, -0.6144804436722234], -0.10895393040231438),
            (vec![0.19665285449153236, 0.03850468530464614], 0.5693998771181232),
            (vec![0.07321764857764858, -0.03193432181395966], 0.7029523064214214),
            (vec![0.5970059613256498, -0.36933016569402916], 0.2848273251154425),
            (vec![-0.1425389230649269, -0.7962596630553521], 0.7371343518274256),
            (vec![-0.0034355715194748625, 0.034398525914965686], 0.7193890832548265),
            (vec![-0.35312040090690733, 0.3629461595202001], 0.6474302039550672),
            (vec![0.2934997707198576, 0.07880672899521775], 0.4276543969205517),
            (vec![0.24212529330615407, -0.147711618852323], -0.08925432788692805),
            (vec![0.2851984757284365, 0.037214910621363874], 0.3397990059718079),
            (vec![0.17328733084667006, 0.027856169060030085], -0.01729745405824326),
            (vec![0.6020853320836858, 0.1831656013101443], -0.010036419034836264),
            (vec![0.18796551323717792, 0.703820505586876], 0.4249204858430337),
            (vec![0.13737274344254669, 0.6513387162892043], 0.213835860454748),
            (vec![0.14976757848484468, -0.0072978765156265], 0.21383998605128426),
            (vec![-0.8538951594169023, 0.007958139379292012], 0.3838145870304922),
            (vec![-0.9253571066196451, 0.011793255768376658], 0.34186341443301976),
            (vec![-0.8597254887254908, -0.13295616976006086], 0.33438706278635016),
            (vec![-0.8410824439874331, -0.26771528978363013], 0.2416253209579271),
            (vec![-0.6410118816726547, 0.2652381159269325], 0.44540183010503137),
            (vec![-0.743166392969667, 0.4608789658466613], 0.43080234939877377),
            (vec![0.7076573897602514, -0.21909114199463847], -0.03433710489433722),
            (vec![0.5946546394009884, 0.03155825482186459], -0.06351604277654738),
            (vec![0.5296398755525412, -0.2437237195464868], -0.15801772864129027),
            (vec![0.5613825048497727, -0.31288442755735996], 0.08528058189804344),
            (vec![0.01559625072893039, -0.6093648441933012], -0.12121841983399212),
            (vec![-0.1062487544593903, -0.39363040730902044], 0.01934843775161127),
            (vec![0.3620281938065847, -0.0048370956877253355], 0.06559666819342874),
            (vec![0.5210838896199667, 0.05828736357574284], -0.029918286351377665),
            (vec![0.3960712480129708, 0.0444152287397807], 0.005227773498822863),
            (vec![0.2592795950409933, -0.10375847827500287], 0.13160327836503705),
            (vec![0.2766482253089829, -0.11792543338002444], 0.13069487072087027),
            (vec![0.2510103024796983, -0.11198534961785087], 0.1308341612762234),
        ];
        let a: Vec<Vec<f64>> = rows.iter().map(|(r, _)| r.iter().map(|v| v / norm(r)).collect()).collect();
        let b: Vec<f64> = rows.iter().map(|(r, v)| v / norm(r)).collect();
        let (c, r) = chebyshev_center(&a, &b).unwrap();
        assert!(r > 0.08 && r < 0.09, "{r}");
        for (ai, bi) in a.iter().zip(&b) {
            let s: f64 = ai.iter().zip(&c).map(|(x, y)| x * y).sum();
            assert!(s + r <= bi + 1e-9);
        }
    }
}
