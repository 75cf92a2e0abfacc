//! Problem data, hypothesis checks, and the geometry of the closed domain.
//!
//! The domain is the unit square `0 < x < 1, 0 < y < 1` (heat equation)
//! glued along `y = 0` to the characteristic triangle with vertices
//! `A(0,0)`, `B(1,0)`, `C(1/2,-1/2)` (wave equation).

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Expr};

pub const DEFAULT_TOL_COMPAT: f64 = 1e-10;
pub const DEFAULT_EPS_GEO: f64 = 1e-12;

/// Input data: coefficients of the characteristic condition and the three
/// data functions.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub a: f64,
    pub b: f64,
    /// u(0, y), in the variable `y`.
    pub phi0: Expr,
    /// u(1, y), in the variable `y`.
    pub phi1: Expr,
    /// Right-hand side of `a·u(x/2, -x/2) + b·u((x+1)/2, (x-1)/2) = ψ(x)`.
    pub psi: Expr,
    source: ProblemFile,
}

/// On-disk JSON form of a problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub a: f64,
    pub b: f64,
    pub phi0: String,
    pub phi1: String,
    pub psi: String,
}

impl ProblemSpec {
    pub fn from_file(file: ProblemFile) -> Result<ProblemSpec> {
        let parse = |field: &str, text: &str, var: &str| {
            expr::parse(text, var).map_err(|source| Error::Parse {
                field: field.to_string(),
                source,
            })
        };
        if !file.a.is_finite() || !file.b.is_finite() {
            return Err(Error::ProblemFile("coefficients must be finite".into()));
        }
        Ok(ProblemSpec {
            a: file.a,
            b: file.b,
            phi0: parse("phi0", &file.phi0, "y")?,
            phi1: parse("phi1", &file.phi1, "y")?,
            psi: parse("psi", &file.psi, "x")?,
            source: file,
        })
    }

    /// Convenience constructor from expression strings.
    pub fn new(a: f64, b: f64, phi0: &str, phi1: &str, psi: &str) -> Result<ProblemSpec> {
        ProblemSpec::from_file(ProblemFile {
            a,
            b,
            phi0: phi0.into(),
            phi1: phi1.into(),
            psi: psi.into(),
        })
    }

    pub fn from_json(text: &str) -> Result<ProblemSpec> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| Error::ProblemFile(e.to_string()))?;
        ProblemSpec::from_file(file)
    }

    pub fn load(path: &Path) -> Result<ProblemSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ProblemFile(format!("{}: {e}", path.display())))?;
        ProblemSpec::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.source).expect("problem file serializes")
    }

    pub fn source(&self) -> &ProblemFile {
        &self.source
    }

    /// The same coefficients with all data identically zero.
    pub fn homogeneous(&self) -> ProblemSpec {
        ProblemSpec::new(self.a, self.b, "0", "0", "0").expect("zero data parse")
    }

    /// (a + b) / (a - b), the drift coefficient of the interface equation.
    pub fn lambda(&self) -> Result<f64> {
        if self.a == self.b {
            return Err(Error::DegenerateCoefficients(self.a));
        }
        Ok((self.a + self.b) / (self.a - self.b))
    }

    pub fn phi0_at(&self, y: f64) -> Result<f64> {
        self.phi0
            .eval(y)
            .map_err(|e| Error::eval(format!("phi0({y})"), e))
    }

    pub fn phi1_at(&self, y: f64) -> Result<f64> {
        self.phi1
            .eval(y)
            .map_err(|e| Error::eval(format!("phi1({y})"), e))
    }

    pub fn psi_at(&self, x: f64) -> Result<f64> {
        self.psi
            .eval(x)
            .map_err(|e| Error::eval(format!("psi({x})"), e))
    }
}

/// Outcome of checking the solvability hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub a_ne_b: bool,
    pub nondegenerate: bool,
    /// a²·φ₀(0) − b²·φ₁(0) − (a·ψ(0) − b·ψ(1)); zero for compatible data.
    pub compatibility_defect: f64,
    pub messages: Vec<String>,
}

impl ValidationReport {
    pub fn compatible(&self, tol_compat: f64) -> bool {
        self.compatibility_defect.abs() <= tol_compat
    }
}

pub fn validate(p: &ProblemSpec, tol_compat: f64) -> Result<ValidationReport> {
    let (a, b) = (p.a, p.b);
    let phi0 = p.phi0_at(0.0)?;
    let phi1 = p.phi1_at(0.0)?;
    let psi0 = p.psi_at(0.0)?;
    let psi1 = p.psi_at(1.0)?;
    let compatibility_defect = a * a * phi0 - b * b * phi1 - (a * psi0 - b * psi1);

    let a_ne_b = a != b;
    let nondegenerate = a * a + b * b > 0.0;
    let mut messages = Vec::new();
    if !nondegenerate {
        messages.push("a and b vanish together (a^2 + b^2 > 0 is required)".to_string());
    }
    if !a_ne_b {
        messages.push(format!("a = b = {a}: solvability requires a != b"));
    }
    let compatible = compatibility_defect.abs() <= tol_compat;
    if !compatible {
        messages.push(format!(
            "corner compatibility a^2 phi0(0) - b^2 phi1(0) = a psi(0) - b psi(1) fails: defect {compatibility_defect}"
        ));
    }
    Ok(ValidationReport {
        ok: a_ne_b && nondegenerate && compatible,
        a_ne_b,
        nondegenerate,
        compatibility_defect,
        messages,
    })
}

/// Classification of a point of the plane relative to the closed domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    ParabolicInterior,
    HyperbolicInterior,
    Interface,
    ParabolicBoundary,
    HyperbolicBoundary,
    Outside,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::ParabolicInterior => "parabolic_interior",
            Region::HyperbolicInterior => "hyperbolic_interior",
            Region::Interface => "interface",
            Region::ParabolicBoundary => "parabolic_boundary",
            Region::HyperbolicBoundary => "hyperbolic_boundary",
            Region::Outside => "outside",
        }
    }

    pub fn is_parabolic(self) -> bool {
        matches!(self, Region::ParabolicInterior | Region::ParabolicBoundary)
    }

    pub fn is_hyperbolic(self) -> bool {
        matches!(
            self,
            Region::HyperbolicInterior | Region::HyperbolicBoundary
        )
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_point(x: f64, y: f64, eps_geo: f64) -> Region {
    if !(x.is_finite() && y.is_finite()) {
        return Region::Outside;
    }
    let in_unit = |v: f64| v >= -eps_geo && v <= 1.0 + eps_geo;
    if y.abs() <= eps_geo {
        return if in_unit(x) {
            Region::Interface
        } else {
            Region::Outside
        };
    }
    if y > 0.0 {
        if !in_unit(x) || y > 1.0 + eps_geo {
            return Region::Outside;
        }
        let on_wall = x.abs() <= eps_geo || (x - 1.0).abs() <= eps_geo;
        let on_lid = (y - 1.0).abs() <= eps_geo;
        return if on_wall || on_lid {
            Region::ParabolicBoundary
        } else {
            Region::ParabolicInterior
        };
    }
    // y < 0: characteristic coordinates
    let p = x + y;
    let q = x - y;
    if p < -eps_geo || q > 1.0 + eps_geo {
        return Region::Outside;
    }
    if p.abs() <= eps_geo || (q - 1.0).abs() <= eps_geo {
        Region::HyperbolicBoundary
    } else {
        Region::HyperbolicInterior
    }
}
