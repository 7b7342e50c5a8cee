//! JSON descriptions of bodies and cones.

use std::path::Path;

use conesec_core::bodies::{
    make_ball, make_cross_polytope, make_cube, make_regular_simplex, random_centered_polytope, Ball, ConvexBody, Halfspace,
    HPolytope, VPolytope,
};
use conesec_core::sections::PolyhedralCone;
use conesec_core::subspace::Subspace;
use conesec_core::verify::gruenbaum_pyramid;
use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};

/// One facet inequality `<a, x> <= b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceSpec {
    pub a: Vec<f64>,
    pub b: f64,
}

/// A convex body, either listed explicitly or named with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Vpolytope {
        vertices: Vec<Vec<f64>>,
    },
    Hpolytope {
        halfspaces: Vec<HalfspaceSpec>,
    },
    Ball {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        radius: f64,
    },
    Simplex {
        n: usize,
    },
    Cube {
        n: usize,
    },
    Cross {
        n: usize,
    },
    /// Pyramid over `[-1,1]^{n-1}` with its centroid at the origin.
    Pyramid {
        n: usize,
    },
    /// Hull of `points` seeded random points, recentred at its centroid.
    Random {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<usize>,
        seed: u64,
    },
}

/// Names accepted by `--body` besides file paths.
pub const BUILTIN_BODIES: [&str; 6] = ["simplex", "cube", "cross", "ball", "pyramid", "random"];

impl BodySpec {
    /// A builtin body from its name, or `None` if the name is not builtin.
    pub fn builtin(name: &str, n: usize, seed: u64, points: Option<usize>) -> Option<Self> {
        Some(match name {
            "simplex" => BodySpec::Simplex { n },
            "cube" => BodySpec::Cube { n },
            "cross" => BodySpec::Cross { n },
            "ball" => BodySpec::Ball { center: None, n: Some(n), radius: 1.0 },
            "pyramid" => BodySpec::Pyramid { n },
            "random" => BodySpec::Random { n, points, seed },
            _ => return None,
        })
    }

    /// `--body` argument: builtin name or path to a JSON body spec.
    pub fn resolve(arg: &str, n: usize, seed: u64, points: Option<usize>) -> Result<Self> {
        if let Some(spec) = Self::builtin(arg, n, seed, points) {
            return Ok(spec);
        }
        let text = read(Path::new(arg))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn dim(&self) -> usize {
        match self {
            BodySpec::Vpolytope { vertices } => vertices.first().map_or(0, |v| v.len()),
            BodySpec::Hpolytope { halfspaces } => halfspaces.first().map_or(0, |h| h.a.len()),
            BodySpec::Ball { center, n, .. } => center.as_ref().map_or(n.unwrap_or(0), |c| c.len()),
            BodySpec::Simplex { n }
            | BodySpec::Cube { n }
            | BodySpec::Cross { n }
            | BodySpec::Pyramid { n }
            | BodySpec::Random { n, .. } => *n,
        }
    }

    /// Short stable label used in reports.
    pub fn label(&self) -> String {
        let n = self.dim();
        match self {
            BodySpec::Vpolytope { vertices } => format!("vpolytope(n={n},vertices={})", vertices.len()),
            BodySpec::Hpolytope { halfspaces } => format!("hpolytope(n={n},facets={})", halfspaces.len()),
            BodySpec::Ball { radius, .. } => format!("ball(n={n},r={radius})"),
            BodySpec::Simplex { .. } => format!("simplex(n={n})"),
            BodySpec::Cube { .. } => format!("cube(n={n})"),
            BodySpec::Cross { .. } => format!("cross(n={n})"),
            BodySpec::Pyramid { .. } => format!("pyramid(n={n})"),
            BodySpec::Random { points, seed, .. } => {
                format!("random(n={n},points={},seed={seed})", points.unwrap_or(2 * n + 4))
            }
        }
    }

    /// Whether the body is symmetric about the origin by construction.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, BodySpec::Cube { .. } | BodySpec::Cross { .. })
            || matches!(self, BodySpec::Ball { center, .. } if center.as_ref().map_or(true, |c| c.iter().all(|x| *x == 0.0)))
    }

    pub fn build(&self) -> Result<ConvexBody> {
        let n = self.dim();
        if n == 0 {
            return Err(config(format!("{}: empty body description", self.label())));
        }
        Ok(match self {
            BodySpec::Vpolytope { vertices } => ConvexBody::VPolytope(VPolytope::new(vertices)?),
            BodySpec::Hpolytope { halfspaces } => {
                let hs: Vec<Halfspace> = halfspaces.iter().map(|h| Halfspace::new(h.a.clone(), h.b)).collect();
                ConvexBody::HPolytope(HPolytope::new(n, &hs)?)
            }
            BodySpec::Ball { center: Some(c), radius, .. } => ConvexBody::Ball(Ball::new(c.clone(), *radius)?),
            BodySpec::Ball { radius, .. } => make_ball(n, *radius)?,
            BodySpec::Simplex { .. } => make_regular_simplex(n)?.polytope().clone().into(),
            BodySpec::Cube { .. } => ConvexBody::HPolytope(make_cube(n)?),
            BodySpec::Cross { .. } => make_cross_polytope(n)?.polytope().clone().into(),
            BodySpec::Pyramid { .. } => gruenbaum_pyramid(n)?,
            BodySpec::Random { points, seed, .. } => {
                random_centered_polytope(n, points.unwrap_or(2 * n + 4), *seed)?.polytope().clone().into()
            }
        })
    }
}

/// A cone `C` in the orthogonal complement of the flat `F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub generators: Vec<Vec<f64>>,
    /// Orthonormal basis of `F`; empty for `F = {0}`.
    #[serde(default)]
    pub flat_basis: Vec<Vec<f64>>,
}

/// Tolerance for the orthonormality check on `flat_basis`.
pub const ORTHONORMAL_TOL: f64 = 1e-9;

impl ConeSpec {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&read(path)?)?)
    }

    pub fn build(&self) -> Result<(Subspace, PolyhedralCone)> {
        let n = self
            .generators
            .first()
            .map(|g| g.len())
            .ok_or_else(|| config("cone needs at least one generator"))?;
        for (i, a) in self.flat_basis.iter().enumerate() {
            if a.len() != n {
                return Err(config("flat basis vectors must match the generator dimension"));
            }
            for (j, b) in self.flat_basis.iter().enumerate().take(i + 1) {
                let want = if i == j { 1.0 } else { 0.0 };
                let got: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                if (got - want).abs() > ORTHONORMAL_TOL {
                    return Err(config(format!("flat basis is not orthonormal: <b{i}, b{j}> = {got}")));
                }
            }
        }
        let flat = Subspace::from_orthonormal(n, self.flat_basis.clone())?;
        let cone = PolyhedralCone::new(flat.orthogonal_complement(), self.generators.clone())?;
        Ok((flat, cone))
    }
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Read { path: path.display().to_string(), source })
}
