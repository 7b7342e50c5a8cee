//! Checkable forms of the inequalities, identities and sharpness examples,
//! together with the explicit constants they involve.
//!
//! Bounds that contain an unspecified absolute constant are split: their
//! explicit part is asserted, and the smallest constant consistent with the
//! data is reported in a non-assertable record.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{invalid, Result};
use crate::special::binom;

mod experiments;
mod lemmas;
mod theorem;

pub use experiments::*;
pub use lemmas::*;
pub use theorem::*;

#[cfg(test)]
mod tests;

/// One evaluated inequality or identity.
///
/// Bounds pass when `lhs <= rhs * (1 + slack)`. Identities (records built
/// with [`CheckResult::equality`]) pass when `|lhs - rhs| <= slack * |rhs|`,
/// and [`CheckResult::within`] records measure the same difference against a
/// separate magnitude.
/// Report-only records carry `assertable = false` and always pass.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub body_spec: String,
    pub parameters: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub passed: bool,
    pub assertable: bool,
    pub notes: String,
}

impl CheckResult {
    fn base(name: &str, body: &str, lhs: f64, rhs: f64, slack: f64, passed: bool, assertable: bool) -> Self {
        CheckResult {
            name: name.to_string(),
            body_spec: body.to_string(),
            parameters: BTreeMap::new(),
            lhs,
            rhs,
            slack,
            passed,
            assertable,
            notes: String::new(),
        }
    }

    /// `lhs <= rhs (1 + slack)`.
    pub fn bound(name: &str, body: &str, lhs: f64, rhs: f64, slack: f64) -> Self {
        let passed = lhs <= rhs + slack * rhs.abs();
        Self::base(name, body, lhs, rhs, slack, passed, true)
    }

    /// `|lhs - rhs| <= slack |rhs|`.
    pub fn equality(name: &str, body: &str, lhs: f64, rhs: f64, slack: f64) -> Self {
        let passed = (lhs - rhs).abs() <= slack * rhs.abs();
        Self::base(name, body, lhs, rhs, slack, passed, true)
    }

    /// `|lhs - rhs| <= tol * magnitude`, for identities whose sides can vanish.
    /// `slack` holds `tol`, the magnitude goes into the parameters.
    pub fn within(name: &str, body: &str, lhs: f64, rhs: f64, magnitude: f64, tol: f64) -> Self {
        let passed = (lhs - rhs).abs() <= tol * magnitude;
        Self::base(name, body, lhs, rhs, tol, passed, true).with("magnitude", magnitude)
    }

    /// An empirical quantity with no assertion attached; `rhs` holds a
    /// reference value when there is one.
    pub fn report(name: &str, body: &str, value: f64, reference: f64) -> Self {
        Self::base(name, body, value, reference, 0.0, true, false)
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn note(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    /// `lhs / rhs`, the quantity tabulated in reports.
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }

    /// Counts toward the exit status.
    pub fn failed(&self) -> bool {
        self.assertable && !self.passed
    }
}

/// A closed-form constant appearing in a statement.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitConstant {
    pub name: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub p: Option<f64>,
    pub m: Option<f64>,
    pub value: f64,
}

/// `(1 + 1/n)^{-n}`.
pub fn gruenbaum_constant(n: usize) -> f64 {
    let n = n as f64;
    (1.0 + 1.0 / n).powf(-n)
}

/// `k^p (1 + k/(n+1-k))^{n-k} C(n+p-k, p) C(n+1, k+1)^{-p/(k+1)}`, the bound
/// on `|K ∩ (F-C)| / |K ∩ (F+C)|`.
pub fn theorem1_constant(n: usize, k: usize, p: usize) -> Result<ExplicitConstant> {
    if !(1 <= p && p <= k && k <= n) {
        return Err(invalid("need 1 <= p <= k <= n"));
    }
    let (nf, kf, pf) = (n as f64, k as f64, p as f64);
    let value = kf.powf(pf)
        * (1.0 + kf / (nf + 1.0 - kf)).powf(nf - kf)
        * binom(nf + pf - kf, pf)?
        * binom(nf + 1.0, kf + 1.0)?.powf(-pf / (kf + 1.0));
    Ok(ExplicitConstant { name: "theorem_part1".into(), n: Some(n), k: Some(k), p: Some(pf), m: Some(nf - kf), value })
}

/// The factor multiplying `a^{kp}` in the second branch of the isotropic
/// comparison: `(1 + k/(n+1-k))^{n-k} C(n+p-k, p) C(n+1, k+1)^{-p/(k+1)}`.
pub fn theorem2_a_branch_factor(n: usize, k: usize, p: usize) -> Result<f64> {
    Ok(theorem1_constant(n, k, p)?.value / (k as f64).powi(p as i32))
}

/// `k^2 (1 + k/(n-k+1))^{n-k-1}`, the explicit part of the ray bound; the
/// full bound multiplies it by an unspecified constant.
pub fn corollary1_factor(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    kf * kf * (1.0 + kf / (nf - kf + 1.0)).powf(nf - kf - 1.0)
}

/// All explicit constants for one `(n, k, p)`, for tabulation.
pub fn explicit_constants(n: usize, k: usize, p: usize) -> Result<Vec<ExplicitConstant>> {
    let m = (n - k) as f64;
    let mut out = alloc::vec![
        ExplicitConstant { name: "gruenbaum".into(), n: Some(n), k: None, p: None, m: None, value: gruenbaum_constant(n) },
        theorem1_constant(n, k, p)?,
        ExplicitConstant {
            name: "fradelizi".into(),
            n: None,
            k: Some(k),
            p: None,
            m: Some(m),
            value: crate::ball_bodies::fradelizi_factor(k, m),
        },
        ExplicitConstant {
            name: "lemma6".into(),
            n: None,
            k: Some(k),
            p: Some(p as f64),
            m: Some(m),
            value: crate::ball_bodies::lemma6_factor(k, m, p as f64)?,
        },
    ];
    if p < k + 1 {
        let (lower, upper) = crate::ball_bodies::berwald_inclusion_constants(p as f64, (k + 1) as f64, m)?;
        for (name, value) in [("berwald_lower", lower), ("berwald_upper", upper)] {
            out.push(ExplicitConstant { name: name.into(), n: None, k: Some(k), p: Some(p as f64), m: Some(m), value });
        }
    }
    Ok(out)
}
