//! The assembled solution over the whole closed domain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::eval_hyperbolic;
use crate::interface::{solve_interface, InterfaceData};
use crate::parabolic::{ParabolicSolver, SeriesConfig};
use crate::problem::{classify_point, validate, ProblemSpec, Region, ValidationReport};
use crate::problem::{DEFAULT_EPS_GEO, DEFAULT_TOL_COMPAT};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Downgrade a failed corner-compatibility check to a warning.
    pub force: bool,
    pub tol_compat: f64,
    pub quad: QuadratureConfig,
    pub series: SeriesConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            force: false,
            tol_compat: DEFAULT_TOL_COMPAT,
            quad: QuadratureConfig::default(),
            series: SeriesConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub problem: ProblemSpec,
    pub validation: ValidationReport,
    pub interface: InterfaceData,
    pub parabolic: ParabolicSolver,
    /// Messages for hypotheses that were violated but forced through.
    pub warnings: Vec<String>,
}

impl Solution {
    /// Validate, solve the interface problem, and prepare both evaluators.
    ///
    /// a = b and a = b = 0 are always errors; a compatibility defect is an
    /// error unless `opts.force` is set.
    pub fn build(p: &ProblemSpec, opts: &SolveOptions) -> Result<Solution> {
        let validation = validate(p, opts.tol_compat)?;
        if !validation.a_ne_b || !validation.nondegenerate {
            return Err(Error::Validation(validation.messages.join("; ")));
        }
        let mut warnings = Vec::new();
        if !validation.ok {
            if !opts.force {
                return Err(Error::Validation(validation.messages.join("; ")));
            }
            warnings.extend(validation.messages.iter().cloned());
        }
        let interface = solve_interface(p, &opts.quad)?;
        let parabolic = ParabolicSolver::new(p, &interface, &opts.series)?;
        Ok(Solution {
            problem: p.clone(),
            validation,
            interface,
            parabolic,
            warnings,
        })
    }

    /// Replace the interface traces, keeping the problem data and series
    /// configuration.
    pub fn with_interface(&self, interface: InterfaceData) -> Result<Solution> {
        let parabolic = ParabolicSolver::new(&self.problem, &interface, self.parabolic.config())?;
        Ok(Solution {
            interface,
            parabolic,
            ..self.clone()
        })
    }

    pub fn series(&self) -> &SeriesConfig {
        self.parabolic.config()
    }

    /// u at any point of the closed domain, with its region.
    pub fn eval(&self, x: f64, y: f64) -> Result<(Region, f64)> {
        let region = classify_point(x, y, DEFAULT_EPS_GEO);
        let u = match region {
            Region::Interface => self.interface.tau(x),
            Region::ParabolicInterior | Region::ParabolicBoundary => self.parabolic.eval(x, y),
            Region::HyperbolicInterior | Region::HyperbolicBoundary => {
                eval_hyperbolic(&self.interface, x, y)
            }
            Region::Outside => Err(Error::OutsideDomain {
                x,
                y,
                domain: "closed domain",
            }),
        };
        u.map(|u| (region, u)).map_err(|e| e.at(x, y))
    }
}
