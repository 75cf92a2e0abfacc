//! Numerical certification of a computed solution.
//!
//! Checks the heat and wave residuals, both one-sided limits at the
//! interface, the characteristic condition, the wall data, an independent
//! finite-difference solve of the interface problem, and that the
//! homogeneous problem with the same coefficients has only the zero
//! solution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::eval_hyperbolic;
use crate::problem::ProblemSpec;
use crate::solution::{Solution, SolveOptions};

/// Second-order finite-difference solve of `τ'' − λτ' = g` with the
/// boundary values `τ(0) = φ₀(0)`, `τ(1) = φ₁(0)` on `m` intervals. Returns
/// the `m + 1` nodal values.
pub fn fd_bvp_oracle(p: &ProblemSpec, m: usize) -> Result<Vec<f64>> {
    if m < 16 {
        return Err(Error::Config(format!("oracle needs m >= 16, got {m}")));
    }
    let lambda = p.lambda()?;
    let scale = -2.0 / (p.a - p.b);
    let dpsi = p.psi.differentiate();
    let h = 1.0 / m as f64;
    let left = p.phi0_at(0.0)?;
    let right = p.phi1_at(0.0)?;

    let lower = 1.0 / (h * h) + lambda / (2.0 * h);
    let diag = -2.0 / (h * h);
    let upper = 1.0 / (h * h) - lambda / (2.0 * h);
    let n = m - 1;
    let mut rhs = Vec::with_capacity(n);
    for i in 1..m {
        let x = i as f64 * h;
        let g = scale
            * dpsi
                .eval(x)
                .map_err(|e| Error::eval(format!("psi'({x})"), e))?;
        rhs.push(g);
    }
    rhs[0] -= lower * left;
    rhs[n - 1] -= upper * right;

    let interior = solve_tridiagonal(
        &vec![lower; n - 1],
        &vec![diag; n],
        &vec![upper; n - 1],
        &rhs,
    )?;
    let mut out = Vec::with_capacity(m + 1);
    out.push(left);
    out.extend(interior);
    out.push(right);
    Ok(out)
}

/// Thomas elimination for a tridiagonal system.
pub fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    assert!(n >= 1 && lower.len() + 1 == n && upper.len() + 1 == n && rhs.len() == n);
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0];
    if pivot == 0.0 || !pivot.is_finite() {
        return Err(Error::SingularSystem(0));
    }
    c[0] = if n > 1 { upper[0] / pivot } else { 0.0 };
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i - 1] * c[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::SingularSystem(i));
        }
        if i < n - 1 {
            c[i] = upper[i] / pivot;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Pass thresholds for each recorded defect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub residual_parabolic: f64,
    pub residual_hyperbolic: f64,
    pub interface: f64,
    pub gluing: f64,
    pub boundary: f64,
    pub oracle: f64,
    pub homogeneous: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual_parabolic: 1e-4,
            residual_hyperbolic: 1e-5,
            interface: 1e-2,
            gluing: 1e-8,
            boundary: 1e-2,
            oracle: 1e-5,
            homogeneous: 1e-12,
        }
    }
}

/// Sample sets and stencils used by [`verify_solution`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Points per axis of each subdomain's residual grid.
    pub n_interior: usize,
    /// Lowest row of the heat residual grid.
    pub residual_y_floor: f64,
    /// Steps of the heat residual stencil in x and y.
    pub h_x: f64,
    pub h_y: f64,
    /// Step of the wave residual stencil.
    pub h_wave: f64,
    /// Depth below the interface for the hyperbolic one-sided limit.
    pub delta: f64,
    /// Distance from the walls for the wall-data check.
    pub boundary_delta: f64,
    /// Samples of x ∈ [0.1, 0.9] for the interface check and of
    /// y ∈ [0.1, 0.9] for the wall check.
    pub n_edge: usize,
    /// Samples of x ∈ [0, 1] for the characteristic condition.
    pub n_gluing: usize,
    /// Intervals of the finite-difference oracle.
    pub oracle_m: usize,
    /// Also solve the homogeneous problem and record its sup norm.
    pub check_homogeneous: bool,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n_interior: 64,
            residual_y_floor: 0.05,
            h_x: 1e-3,
            h_y: 1e-4,
            h_wave: 1e-3,
            delta: 1e-3,
            boundary_delta: 1e-3,
            n_edge: 81,
            n_gluing: 1001,
            oracle_m: 2048,
            check_homogeneous: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub residual_parabolic_sup: f64,
    pub residual_hyperbolic_sup: f64,
    pub interface_defect_sup: f64,
    pub gluing_defect_sup: f64,
    pub boundary_defect_sup: f64,
    pub tau_oracle_defect_sup: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub homogeneous_sup: Option<f64>,
    pub passed: bool,
    pub tolerances: Tolerances,
    pub grids: GridConfig,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Names of the checks that exceeded their tolerance.
    pub fn failures(&self) -> Vec<&'static str> {
        let t = &self.tolerances;
        let mut out = Vec::new();
        let mut check = |name, v: f64, tol: f64| {
            if !(v <= tol) {
                out.push(name);
            }
        };
        check(
            "residual_parabolic",
            self.residual_parabolic_sup,
            t.residual_parabolic,
        );
        check(
            "residual_hyperbolic",
            self.residual_hyperbolic_sup,
            t.residual_hyperbolic,
        );
        check("interface", self.interface_defect_sup, t.interface);
        check("gluing", self.gluing_defect_sup, t.gluing);
        check("boundary", self.boundary_defect_sup, t.boundary);
        check("oracle", self.tau_oracle_defect_sup, t.oracle);
        if let Some(h) = self.homogeneous_sup {
            check("homogeneous", h, t.homogeneous);
        }
        out
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Deterministic sup over points evaluated in parallel.
fn sup_over<F>(pts: &[(f64, f64)], f: F) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let vals: Vec<f64> = pts
        .par_iter()
        .map(|&(x, y)| f(x, y).map_err(|e| e.at(x, y)))
        .collect::<Result<_>>()?;
    Ok(vals
        .into_iter()
        .fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v) }))
}

/// Interior points of the square whose heat stencil stays inside.
pub fn parabolic_residual_points(g: &GridConfig) -> Vec<(f64, f64)> {
    let xs = linspace(0.02, 0.98, g.n_interior);
    let ys = linspace(g.residual_y_floor, 0.98, g.n_interior);
    ys.iter()
        .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
        .collect()
}

/// Interior points of the triangle whose wave stencil stays inside.
pub fn hyperbolic_residual_points(g: &GridConfig) -> Vec<(f64, f64)> {
    let margin = 4.0 * g.h_wave;
    let xs = linspace(0.0, 1.0, g.n_interior);
    let ys = linspace(-0.5, 0.0, g.n_interior);
    ys.iter()
        .flat_map(|&y| xs.iter().map(move |&x| (x, y)))
        .filter(|&(x, y)| y <= -margin && x + y >= margin && x - y <= 1.0 - margin)
        .collect()
}

fn heat_residual(sol: &Solution, g: &GridConfig, x: f64, y: f64) -> Result<f64> {
    let u = |x, y| sol.parabolic.eval(x, y);
    let c = u(x, y)?;
    let uxx = (u(x + g.h_x, y)? - 2.0 * c + u(x - g.h_x, y)?) / (g.h_x * g.h_x);
    let uy = (u(x, y + g.h_y)? - u(x, y - g.h_y)?) / (2.0 * g.h_y);
    Ok((uxx - uy).abs())
}

fn wave_residual(sol: &Solution, g: &GridConfig, x: f64, y: f64) -> Result<f64> {
    let d = &sol.interface;
    let h = g.h_wave;
    let c = eval_hyperbolic(d, x, y)?;
    let uxx = (eval_hyperbolic(d, x + h, y)? - 2.0 * c + eval_hyperbolic(d, x - h, y)?) / (h * h);
    let uyy = (eval_hyperbolic(d, x, y + h)? - 2.0 * c + eval_hyperbolic(d, x, y - h)?) / (h * h);
    Ok((uyy - uxx).abs())
}

/// sup over x ∈ [0,1] of |a·u(x/2, −x/2) + b·u((x+1)/2, (x−1)/2) − ψ(x)|.
pub fn gluing_defect(sol: &Solution, samples: usize) -> Result<f64> {
    let p = &sol.problem;
    let pts: Vec<(f64, f64)> = linspace(0.0, 1.0, samples)
        .into_iter()
        .map(|x| (x, 0.0))
        .collect();
    sup_over(&pts, |x, _| {
        let left = eval_hyperbolic(&sol.interface, 0.5 * x, -0.5 * x)?;
        let right = eval_hyperbolic(&sol.interface, 0.5 * (x + 1.0), 0.5 * (x - 1.0))?;
        Ok((p.a * left + p.b * right - p.psi_at(x)?).abs())
    })
}

/// Largest one-sided interface defect over x ∈ [0.1, 0.9]:
/// `(max |u(x, y_min) − τ(x)|, max |u(x, −δ) − τ(x)|)`.
pub fn interface_defects(sol: &Solution, samples: usize, delta: f64) -> Result<(f64, f64)> {
    let y_top = sol.series().y_min;
    let pts: Vec<(f64, f64)> = linspace(0.1, 0.9, samples)
        .into_iter()
        .map(|x| (x, 0.0))
        .collect();
    let above = sup_over(&pts, |x, _| {
        Ok((sol.parabolic.eval(x, y_top)? - sol.interface.tau(x)?).abs())
    })?;
    let below = sup_over(&pts, |x, _| {
        Ok((eval_hyperbolic(&sol.interface, x, -delta)? - sol.interface.tau(x)?).abs())
    })?;
    Ok((above, below))
}

fn boundary_defect(sol: &Solution, g: &GridConfig) -> Result<f64> {
    let p = &sol.problem;
    let d = g.boundary_delta;
    let pts: Vec<(f64, f64)> = linspace(0.1, 0.9, g.n_edge)
        .into_iter()
        .map(|y| (0.0, y))
        .collect();
    sup_over(&pts, |_, y| {
        let left = (sol.parabolic.eval(d, y)? - p.phi0_at(y)?).abs();
        let right = (sol.parabolic.eval(1.0 - d, y)? - p.phi1_at(y)?).abs();
        Ok(left.max(right))
    })
}

/// sup of |τ_oracle − τ| over the oracle nodes.
pub fn oracle_defect(sol: &Solution, m: usize) -> Result<f64> {
    let nodes = fd_bvp_oracle(&sol.problem, m)?;
    let mut sup: f64 = 0.0;
    for (i, v) in nodes.iter().enumerate() {
        let x = i as f64 / m as f64;
        sup = sup.max((v - sol.interface.tau(x)?).abs());
    }
    Ok(sup)
}

/// Sup of |u| over both residual grids and the interface, for the problem
/// with the same coefficients and zero data.
pub fn homogeneous_sup(p: &ProblemSpec, opts: &SolveOptions, g: &GridConfig) -> Result<f64> {
    let zero = Solution::build(&p.homogeneous(), opts)?;
    let mut pts = parabolic_residual_points(g);
    pts.extend(hyperbolic_residual_points(g));
    pts.extend(linspace(0.0, 1.0, g.n_edge).into_iter().map(|x| (x, 0.0)));
    sup_over(&pts, |x, y| Ok(zero.eval(x, y)?.1.abs()))
}

/// Run every check on a solved problem.
pub fn verify_solution(
    sol: &Solution,
    grids: &GridConfig,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let residual_parabolic_sup = sup_over(&parabolic_residual_points(grids), |x, y| {
        heat_residual(sol, grids, x, y)
    })?;
    let residual_hyperbolic_sup = sup_over(&hyperbolic_residual_points(grids), |x, y| {
        wave_residual(sol, grids, x, y)
    })?;
    let (above, below) = interface_defects(sol, grids.n_edge, grids.delta)?;
    let gluing_defect_sup = gluing_defect(sol, grids.n_gluing)?;
    let boundary_defect_sup = boundary_defect(sol, grids)?;
    let tau_oracle_defect_sup = oracle_defect(sol, grids.oracle_m)?;
    let homogeneous = if grids.check_homogeneous {
        let opts = SolveOptions {
            force: true,
            series: *sol.series(),
            ..SolveOptions::default()
        };
        Some(homogeneous_sup(&sol.problem, &opts, grids)?)
    } else {
        None
    };

    let mut report = VerificationReport {
        residual_parabolic_sup,
        residual_hyperbolic_sup,
        interface_defect_sup: above.max(below),
        gluing_defect_sup,
        boundary_defect_sup,
        tau_oracle_defect_sup,
        homogeneous_sup: homogeneous,
        passed: false,
        tolerances: *tol,
        grids: *grids,
    };
    report.passed = report.failures().is_empty();
    Ok(report)
}
