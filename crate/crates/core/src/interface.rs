//! Interface traces τ(x) = u(x, 0) and ν(x) = u_y(x, 0).
//!
//! Matching the heat equation at y = 0 gives ν = τ''. The d'Alembert
//! solution below the interface, differentiated along the characteristic
//! condition, gives (a+b)τ' − (a−b)ν = 2ψ'. Together they form the two-point
//! problem
//!
//! ```text
//! τ'' − λτ' = g,   g = −2ψ'/(a−b),   λ = (a+b)/(a−b),
//! τ(0) = φ₀(0),    τ(1) = φ₁(0),
//! ```
//!
//! solved here with the integrating factor e^{−λx}:
//! τ'(x) = e^{λx}(c + H(x)) where H(x) = ∫₀ˣ e^{−λs} g(s) ds, and the
//! constant c is fixed by the right endpoint.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::problem::{ProblemSpec, DEFAULT_EPS_GEO};
use crate::quadrature::{cumulative_simpson, simpson, HermiteTable, QuadratureConfig};

/// Solved interface traces. Immutable; cheap to share across threads.
#[derive(Debug, Clone)]
pub struct InterfaceData {
    pub lambda: f64,
    pub tau0: f64,
    pub tau1: f64,
    /// Integrating-factor constant: τ'(0) = c.
    pub c: f64,
    /// Sup difference at shared nodes between this solve and the
    /// half-resolution one.
    pub richardson_estimate: f64,
    a_minus_b: f64,
    /// τ as evaluated by [`InterfaceData::tau`].
    trace: HermiteTable,
    /// The solved τ from which ν and its antiderivative are derived.
    solved: HermiteTable,
    /// H with slopes e^{−λx} g(x).
    h_table: HermiteTable,
    psi: Expr,
    psi_prime: Expr,
    psi0: f64,
}

struct Tables {
    tau: HermiteTable,
    h: HermiteTable,
    c: f64,
}

fn build(
    p: &ProblemSpec,
    lambda: f64,
    tau0: f64,
    tau1: f64,
    psi_prime: &Expr,
    m: usize,
) -> Result<Tables> {
    let step = 1.0 / (m - 1) as f64;
    let scale = -2.0 / (p.a - p.b);
    let xs: Vec<f64> = (0..m).map(|i| i as f64 * step).collect();
    let mut integrand = Vec::with_capacity(m);
    for &x in &xs {
        let dpsi = psi_prime
            .eval(x)
            .map_err(|e| Error::eval(format!("psi'({x})"), e))?;
        integrand.push((-lambda * x).exp() * scale * dpsi);
    }
    let h = cumulative_simpson(&integrand, step);
    let outer: Vec<f64> = xs
        .iter()
        .zip(&h)
        .map(|(x, hv)| (lambda * x).exp() * hv)
        .collect();
    let j = cumulative_simpson(&outer, step);
    let e = |x: f64| {
        if lambda == 0.0 {
            x
        } else {
            (lambda * x).exp_m1() / lambda
        }
    };
    let c = (tau1 - tau0 - j[m - 1]) / e(1.0);

    let mut values: Vec<f64> = xs
        .iter()
        .zip(&j)
        .map(|(&x, jv)| tau0 + c * e(x) + jv)
        .collect();
    values[m - 1] = tau1;
    let slopes: Vec<f64> = xs
        .iter()
        .zip(&h)
        .map(|(&x, hv)| (lambda * x).exp() * (c + hv))
        .collect();
    if !c.is_finite() || values.iter().chain(&slopes).any(|v| !v.is_finite()) {
        return Err(Error::Accuracy {
            achieved: f64::INFINITY,
            tolerance: 0.0,
        });
    }
    Ok(Tables {
        tau: HermiteTable::new(values, slopes),
        h: HermiteTable::new(h, integrand),
        c,
    })
}

/// Solve the interface problem for τ and build ν and its antiderivative.
pub fn solve_interface(p: &ProblemSpec, quad: &QuadratureConfig) -> Result<InterfaceData> {
    quad.validate()?;
    let lambda = p.lambda()?;
    let tau0 = p.phi0_at(0.0)?;
    let tau1 = p.phi1_at(0.0)?;
    let psi_prime = p.psi.differentiate();

    let fine = build(p, lambda, tau0, tau1, &psi_prime, quad.nodes)?;
    let coarse = build(p, lambda, tau0, tau1, &psi_prime, quad.coarsened().nodes)?;
    let richardson_estimate = coarse
        .tau
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| (v - fine.tau.values()[2 * i]).abs())
        .fold(0.0, f64::max);
    if richardson_estimate > quad.richardson_tol {
        return Err(Error::Accuracy {
            achieved: richardson_estimate,
            tolerance: quad.richardson_tol,
        });
    }

    Ok(InterfaceData {
        lambda,
        tau0,
        tau1,
        c: fine.c,
        richardson_estimate,
        a_minus_b: p.a - p.b,
        trace: fine.tau.clone(),
        solved: fine.tau,
        h_table: fine.h,
        psi: p.psi.clone(),
        psi0: p.psi_at(0.0)?,
        psi_prime,
    })
}

fn check_unit(what: &'static str, x: f64) -> Result<f64> {
    if (-DEFAULT_EPS_GEO..=1.0 + DEFAULT_EPS_GEO).contains(&x) {
        Ok(x.clamp(0.0, 1.0))
    } else {
        Err(Error::OutOfRange { what, value: x })
    }
}

impl InterfaceData {
    /// τ(x) = u(x, 0).
    pub fn tau(&self, x: f64) -> Result<f64> {
        Ok(self.trace.eval(check_unit("x", x)?))
    }

    /// τ'(x) = e^{λx}(c + H(x)).
    pub fn tau_prime(&self, x: f64) -> Result<f64> {
        let x = check_unit("x", x)?;
        Ok((self.lambda * x).exp() * (self.c + self.h_table.eval(x)))
    }

    /// g(x) = −2ψ'(x)/(a−b), the right-hand side of the interface equation.
    pub fn forcing(&self, x: f64) -> Result<f64> {
        let d = self
            .psi_prime
            .eval(x)
            .map_err(|e| Error::eval(format!("psi'({x})"), e))?;
        Ok(-2.0 / self.a_minus_b * d)
    }

    /// ν(x) = λτ'(x) − 2ψ'(x)/(a−b), which equals τ''(x).
    pub fn nu(&self, x: f64) -> Result<f64> {
        let x = check_unit("x", x)?;
        Ok(self.lambda * self.tau_prime(x)? + self.forcing(x)?)
    }

    /// N(x) = ∫₀ˣ ν = λ(τ(x) − τ(0)) − 2(ψ(x) − ψ(0))/(a−b).
    pub fn nu_antider(&self, x: f64) -> Result<f64> {
        let x = check_unit("x", x)?;
        let psi = self
            .psi
            .eval(x)
            .map_err(|e| Error::eval(format!("psi({x})"), e))?;
        Ok(self.lambda * (self.solved.eval(x) - self.tau0)
            - 2.0 / self.a_minus_b * (psi - self.psi0))
    }

    /// Number of interface grid nodes.
    pub fn grid_len(&self) -> usize {
        self.trace.values().len()
    }

    pub fn grid_step(&self) -> f64 {
        self.trace.step()
    }

    /// Nodal τ values on the interface grid.
    pub fn tau_nodes(&self) -> &[f64] {
        self.trace.values()
    }

    /// ∫₀¹ τν by Simpson on the interface grid. Zero for homogeneous data.
    pub fn energy(&self) -> Result<f64> {
        let step = self.grid_step();
        let mut f = Vec::with_capacity(self.grid_len());
        for (i, t) in self.trace.values().iter().enumerate() {
            f.push(t * self.nu(i as f64 * step)?);
        }
        Ok(simpson(&f, step))
    }

    /// A copy whose τ is shifted by `delta(x) = (δτ, δτ')` while ν and N stay
    /// those of the solved trace. Used to check that verification detects a
    /// trace inconsistent with the characteristic condition.
    pub fn with_tau_perturbation(&self, delta: impl Fn(f64) -> (f64, f64)) -> InterfaceData {
        InterfaceData {
            trace: self.trace.perturbed(delta),
            ..self.clone()
        }
    }
}
