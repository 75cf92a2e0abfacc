//! Green's-function evaluation in the unit square above the interface.
//!
//! For `u_y = u_xx` on `0 < x < 1` with `u(0,y) = φ₀(y)`, `u(1,y) = φ₁(y)`
//! and `u(x,0) = τ(x)` the solution is
//!
//! ```text
//! u = ∫₀ʸ G_ξ(x,y;0,t) φ₀(t) dt − ∫₀ʸ G_ξ(x,y;1,t) φ₁(t) dt + ∫₀¹ G(x,y;ξ,0) τ(ξ) dξ,
//! G(x,y;ξ,η) = 2 Σ sin(πnx) sin(πnξ) e^{−n²π²(y−η)}.
//! ```
//!
//! Two evaluation modes share this representation:
//!
//! * **Fixed term count** (`SeriesConfig::n_terms = Some(N)`): the partial
//!   sums over n ≤ N of the three terms above, with the time integrals done
//!   by Gauss–Legendre. This is what a plot of "the first N terms" shows.
//!   The wall terms converge only like 1/n, so these partial sums are not
//!   accurate near the walls and do not satisfy the heat equation pointwise.
//! * **Adaptive** (default): the same series after integrating the wall
//!   terms by parts twice in time. The parts that converge slowly sum in
//!   closed form to the lift
//!   `L = (1−x)φ₀(y) + xφ₁(y) − φ₀'(y)q₀(x) − φ₁'(y)q₁(x)` with
//!   `q₀(x) = (s − s³)/6, s = 1−x` and `q₁(x) = (x − x³)/6`, and the
//!   remainder is
//!   `Σ sin(πnx) [A_n e^{−n²π²y} + k⁻¹ ∫₀ʸ e^{−k(y−t)} w_n''(t) dt]`,
//!   where `A_n` is the sine coefficient of `τ − L(·,0)` and `w_n` that of
//!   `(1−x)φ₀ + xφ₁`. Its terms decay like e^{−n²π²y} and n⁻⁵.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::interface::InterfaceData;
use crate::problem::{classify_point, ProblemSpec, DEFAULT_EPS_GEO};
use crate::quadrature::{simpson, GaussLegendre};

use std::f64::consts::PI;

/// The exponential kernel is below e^{-30} outside `[y − 30/k, y]`.
const WINDOW_EXPONENT: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Target for the truncated tail of each series.
    pub eps_tail: f64,
    /// Hard cap on the number of series terms.
    pub n_cap: usize,
    /// Smallest height at which the spectral series is used.
    pub y_min: f64,
    /// Gauss–Legendre nodes per time integral.
    pub quad_nodes: usize,
    /// Fixed number of terms. `None` selects the adaptive mode.
    pub n_terms: Option<usize>,
    /// Below `y_min`, evolve the initial layer with the image kernel instead
    /// of refusing. Adaptive mode only.
    pub small_time_images: bool,
    /// Image pairs on each side for the image kernel.
    pub k_images: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            eps_tail: 1e-10,
            n_cap: 200,
            y_min: 1e-3,
            quad_nodes: 32,
            n_terms: None,
            small_time_images: false,
            k_images: 8,
        }
    }
}

impl SeriesConfig {
    pub fn with_terms(n: usize) -> SeriesConfig {
        SeriesConfig {
            n_terms: Some(n),
            ..SeriesConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_tail > 0.0) {
            return Err(Error::Config("eps_tail must be positive".into()));
        }
        if self.n_cap < 1 || self.quad_nodes < 1 || self.k_images < 1 {
            return Err(Error::Config(
                "n_cap, quad_nodes and k_images must be at least 1".into(),
            ));
        }
        if !(self.y_min > 0.0 && self.y_min < 1.0) {
            return Err(Error::Config("y_min must lie in (0, 1)".into()));
        }
        if self.n_terms == Some(0) {
            return Err(Error::Config("n_terms must be at least 1".into()));
        }
        Ok(())
    }
}

/// Which wall the boundary-flux kernel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Wall {
    /// x = 0
    Left,
    /// x = 1
    Right,
}

/// Smallest N whose tail `Σ_{n>N} weight(n)·e^{−n²π²t}` is bounded below
/// `eps` (geometric bound on the decreasing term ratio), capped at `cap`.
fn terms_needed(t: f64, eps: f64, cap: usize, weight: impl Fn(f64) -> f64) -> usize {
    let term = |n: f64| weight(n) * (-(n * n) * PI * PI * t).exp();
    for n in 1..cap {
        let next = (n + 1) as f64;
        let t_next = term(next);
        let ratio = term(next + 1.0) / t_next;
        if t_next == 0.0 || (ratio < 1.0 && t_next / (1.0 - ratio) < eps) {
            return n;
        }
    }
    cap
}

fn series_len(t: f64, cfg: &SeriesConfig, weight: impl Fn(f64) -> f64) -> usize {
    cfg.n_terms
        .unwrap_or_else(|| terms_needed(t, cfg.eps_tail, cfg.n_cap, weight))
}

/// `G(x,y;ξ,η) = 2 Σ sin(πnx) sin(πnξ) e^{−n²π²(y−η)}`.
pub fn green_spectral(x: f64, y: f64, xi: f64, eta: f64, cfg: &SeriesConfig) -> Result<f64> {
    let t = y - eta;
    if !(t > 0.0) {
        return Err(Error::Causality(t));
    }
    let n_max = series_len(t, cfg, |_| 2.0);
    let mut acc = 0.0;
    for n in 1..=n_max {
        let nf = n as f64;
        acc += (PI * nf * x).sin() * (PI * nf * xi).sin() * (-(nf * nf) * PI * PI * t).exp();
    }
    Ok(2.0 * acc)
}

/// ∂G/∂ξ at a wall: `2 Σ πn sin(πnx) e^{−n²π²(y−t)}` at ξ = 0 and the same
/// with the factor (−1)ⁿ at ξ = 1.
pub fn green_wall_flux(x: f64, y: f64, wall: Wall, t: f64, cfg: &SeriesConfig) -> Result<f64> {
    let s = y - t;
    if !(s > 0.0) {
        return Err(Error::Causality(s));
    }
    let n_max = series_len(s, cfg, |n| 2.0 * PI * n);
    let mut acc = 0.0;
    for n in 1..=n_max {
        let nf = n as f64;
        let sign = match wall {
            Wall::Right if n % 2 == 1 => -1.0,
            _ => 1.0,
        };
        acc += sign * PI * nf * (PI * nf * x).sin() * (-(nf * nf) * PI * PI * s).exp();
    }
    Ok(2.0 * acc)
}

fn free_kernel(z: f64, t: f64) -> f64 {
    (-z * z / (4.0 * t)).exp() / (4.0 * PI * t).sqrt()
}

/// Image form of the same kernel:
/// `Σ_{k=−K..K} [Φ(x−ξ−2k, t) − Φ(x+ξ−2k, t)]`, `Φ(z,t) = e^{−z²/4t}/√(4πt)`.
pub fn green_images(x: f64, y: f64, xi: f64, eta: f64, k_images: usize) -> Result<f64> {
    let t = y - eta;
    if !(t > 0.0) {
        return Err(Error::Causality(t));
    }
    let k = k_images as i64;
    let mut acc = 0.0;
    for j in -k..=k {
        let shift = 2.0 * j as f64;
        acc += free_kernel(x - xi - shift, t) - free_kernel(x + xi - shift, t);
    }
    Ok(acc)
}

/// Largest sine index resolved by an interface grid with `nodes` nodes.
pub fn resolvable_modes(nodes: usize) -> usize {
    (nodes - 1) / 20
}

/// `c_n = ∫₀¹ sin(πnξ) τ(ξ) dξ`, n = 1..=n_max, by Simpson on the interface
/// grid.
pub fn sine_coefficients(d: &InterfaceData, n_max: usize) -> Result<Vec<f64>> {
    let limit = resolvable_modes(d.grid_len());
    if n_max > limit {
        return Err(Error::Unresolvable {
            requested: n_max,
            limit,
        });
    }
    let h = d.grid_step();
    let tau = d.tau_nodes();
    let mut f = vec![0.0; tau.len()];
    Ok((1..=n_max)
        .map(|n| {
            let w = PI * n as f64;
            for (i, (fi, ti)) in f.iter_mut().zip(tau).enumerate() {
                *fi = (w * i as f64 * h).sin() * ti;
            }
            simpson(&f, h)
        })
        .collect())
}

fn eval_ctx(e: &Expr, name: &str, t: f64) -> Result<f64> {
    e.eval(t)
        .map_err(|err| Error::eval(format!("{name}({t})"), err))
}

/// (−1)ⁿ
fn alt(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Parabolic evaluator with the sine coefficients and data derivatives
/// computed once.
#[derive(Debug, Clone)]
pub struct ParabolicSolver {
    cfg: SeriesConfig,
    gl: GaussLegendre,
    phi0: Expr,
    phi1: Expr,
    dphi0: Expr,
    dphi1: Expr,
    ddphi0: Expr,
    ddphi1: Expr,
    /// Both second derivatives fold to zero.
    straight: bool,
    /// Bound on |φ₀''| + |φ₁''| over [0, 1].
    curvature_bound: f64,
    coeffs: Vec<f64>,
    lifted: Vec<f64>,
    lifted_max: f64,
    tau_nodes: Vec<f64>,
    grid_step: f64,
    phi0_0: f64,
    phi1_0: f64,
    dphi0_0: f64,
    dphi1_0: f64,
}

impl ParabolicSolver {
    pub fn new(p: &ProblemSpec, d: &InterfaceData, cfg: &SeriesConfig) -> Result<ParabolicSolver> {
        cfg.validate()?;
        let n_max = cfg.n_terms.unwrap_or(0).max(cfg.n_cap);
        let coeffs = sine_coefficients(d, n_max)?;
        let dphi0 = p.phi0.differentiate();
        let dphi1 = p.phi1.differentiate();
        let ddphi0 = dphi0.differentiate();
        let ddphi1 = dphi1.differentiate();
        let straight = ddphi0.is_zero() && ddphi1.is_zero();

        let mut curvature_bound: f64 = 0.0;
        if !straight {
            for i in 0..=256 {
                let t = i as f64 / 256.0;
                let v =
                    eval_ctx(&ddphi0, "phi0''", t)?.abs() + eval_ctx(&ddphi1, "phi1''", t)?.abs();
                curvature_bound = curvature_bound.max(v);
            }
            // sampled maximum, padded
            curvature_bound *= 1.5;
        }

        let phi0_0 = p.phi0_at(0.0)?;
        let phi1_0 = p.phi1_at(0.0)?;
        let dphi0_0 = eval_ctx(&dphi0, "phi0'", 0.0)?;
        let dphi1_0 = eval_ctx(&dphi1, "phi1'", 0.0)?;
        let lifted: Vec<f64> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let n = i + 1;
                let pn = PI * n as f64;
                let k = pn * pn;
                let w0 = 2.0 * (phi0_0 - alt(n) * phi1_0) / pn;
                let dw0 = 2.0 * (dphi0_0 - alt(n) * dphi1_0) / pn;
                2.0 * c - w0 + dw0 / k
            })
            .collect();
        let lifted_max = lifted.iter().fold(0.0f64, |m, v| m.max(v.abs()));

        Ok(ParabolicSolver {
            cfg: *cfg,
            gl: GaussLegendre::new(cfg.quad_nodes),
            phi0: p.phi0.clone(),
            phi1: p.phi1.clone(),
            dphi0,
            dphi1,
            ddphi0,
            ddphi1,
            straight,
            curvature_bound,
            coeffs,
            lifted,
            lifted_max,
            tau_nodes: d.tau_nodes().to_vec(),
            grid_step: d.grid_step(),
            phi0_0,
            phi1_0,
            dphi0_0,
            dphi1_0,
        })
    }

    pub fn config(&self) -> &SeriesConfig {
        &self.cfg
    }

    /// `c_n` for n = 1, 2, ...
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// u(x, y) for a point of the closed square with y ≥ y_min (or any
    /// y > 0 in image mode).
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if !classify_point(x, y, DEFAULT_EPS_GEO).is_parabolic() {
            return Err(Error::OutsideDomain {
                x,
                y,
                domain: "closed parabolic square",
            });
        }
        let y = y.min(1.0);
        let x = x.clamp(0.0, 1.0);
        let below = y < self.cfg.y_min;
        if below && !(self.cfg.small_time_images && self.cfg.n_terms.is_none()) {
            return Err(Error::Reliability {
                y,
                y_min: self.cfg.y_min,
            });
        }
        if x == 0.0 {
            return eval_ctx(&self.phi0, "phi0", y);
        }
        if x == 1.0 {
            return eval_ctx(&self.phi1, "phi1", y);
        }
        match self.cfg.n_terms {
            Some(n) => self.eval_partial_sums(x, y, n),
            None if below => self.eval_lifted(x, y, true),
            None => self.eval_lifted(x, y, false),
        }
    }

    /// ∫ over the kernel window of `e^{−k(y−t)} f(t)`.
    fn windowed<F: FnMut(f64) -> Result<f64>>(&self, k: f64, y: f64, mut f: F) -> Result<f64> {
        let lo = (y - WINDOW_EXPONENT / k).max(0.0);
        self.gl
            .integrate(lo, y, |t| Ok((-k * (y - t)).exp() * f(t)?))
    }

    fn eval_partial_sums(&self, x: f64, y: f64, n_terms: usize) -> Result<f64> {
        let mut acc = 0.0;
        for n in 1..=n_terms {
            let pn = PI * n as f64;
            let k = pn * pn;
            let left = self.windowed(k, y, |t| eval_ctx(&self.phi0, "phi0", t))?;
            let right = self.windowed(k, y, |t| eval_ctx(&self.phi1, "phi1", t))?;
            let wall = pn * (left - alt(n) * right);
            let initial = (-k * y).exp() * self.coeffs[n - 1];
            acc += (pn * x).sin() * (wall + initial);
        }
        Ok(2.0 * acc)
    }

    fn lift(&self, x: f64, y: f64) -> Result<f64> {
        let s = 1.0 - x;
        let q0 = (s - s * s * s) / 6.0;
        let q1 = (x - x * x * x) / 6.0;
        Ok(
            s * eval_ctx(&self.phi0, "phi0", y)? + x * eval_ctx(&self.phi1, "phi1", y)?
                - eval_ctx(&self.dphi0, "phi0'", y)? * q0
                - eval_ctx(&self.dphi1, "phi1'", y)? * q1,
        )
    }

    fn lift_at_zero(&self, x: f64) -> f64 {
        let s = 1.0 - x;
        s * self.phi0_0 + x * self.phi1_0
            - self.dphi0_0 * (s - s * s * s) / 6.0
            - self.dphi1_0 * (x - x * x * x) / 6.0
    }

    fn eval_lifted(&self, x: f64, y: f64, images: bool) -> Result<f64> {
        let mut u = self.lift(x, y)?;

        let n_exp = if images {
            0
        } else {
            let scale = self.lifted_max.max(f64::MIN_POSITIVE);
            terms_needed(y, self.cfg.eps_tail / scale, self.cfg.n_cap, |_| 1.0)
        };
        let n_alg = if self.straight {
            0
        } else {
            let n = (self.curvature_bound / (2.0 * PI.powi(5) * self.cfg.eps_tail)).powf(0.25);
            (n.ceil() as usize).min(self.cfg.n_cap)
        };

        if images {
            let h = self.grid_step;
            let mut f = Vec::with_capacity(self.tau_nodes.len());
            for (i, tau) in self.tau_nodes.iter().enumerate() {
                let xi = i as f64 * h;
                f.push(
                    green_images(x, y, xi, 0.0, self.cfg.k_images)? * (tau - self.lift_at_zero(xi)),
                );
            }
            u += simpson(&f, h);
        } else {
            for n in 1..=n_exp {
                let k = (PI * n as f64).powi(2);
                u += (PI * n as f64 * x).sin() * self.lifted[n - 1] * (-k * y).exp();
            }
        }

        if n_alg > 0 {
            // second derivatives of the data at the full-window nodes, shared
            // by every n whose window reaches t = 0
            let half = 0.5 * y;
            let full: Vec<(f64, f64)> = self
                .gl
                .nodes
                .iter()
                .map(|s| {
                    let t = half + half * s;
                    Ok((
                        eval_ctx(&self.ddphi0, "phi0''", t)?,
                        eval_ctx(&self.ddphi1, "phi1''", t)?,
                    ))
                })
                .collect::<Result<_>>()?;
            for n in 1..=n_alg {
                let pn = PI * n as f64;
                let k = pn * pn;
                let sign = alt(n);
                let integral = if y - WINDOW_EXPONENT / k <= 0.0 {
                    let mut acc = 0.0;
                    for ((s, w), (d0, d1)) in self.gl.nodes.iter().zip(&self.gl.weights).zip(&full)
                    {
                        let t = half + half * s;
                        acc += w * (-k * (y - t)).exp() * (d0 - sign * d1);
                    }
                    acc * half
                } else {
                    self.windowed(k, y, |t| {
                        Ok(eval_ctx(&self.ddphi0, "phi0''", t)?
                            - sign * eval_ctx(&self.ddphi1, "phi1''", t)?)
                    })?
                };
                u += (pn * x).sin() * 2.0 / pn * integral / k;
            }
        }
        Ok(u)
    }
}

/// One-shot evaluation; builds a [`ParabolicSolver`] per call. Prefer the
/// solver for repeated evaluation.
pub fn eval_parabolic(
    p: &ProblemSpec,
    d: &InterfaceData,
    x: f64,
    y: f64,
    cfg: &SeriesConfig,
) -> Result<f64> {
    ParabolicSolver::new(p, d, cfg)?.eval(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interface::solve_interface;
    use crate::quadrature::QuadratureConfig;

    fn data(a: f64, b: f64, phi0: &str, phi1: &str, psi: &str) -> (ProblemSpec, InterfaceData) {
        let p = ProblemSpec::new(a, b, phi0, phi1, psi).unwrap();
        let d = solve_interface(&p, &QuadratureConfig::default()).unwrap();
        (p, d)
    }

    #[test]
    fn kernels_vanish_on_the_wall() {
        let cfg = SeriesConfig::default();
        assert_eq!(green_spectral(0.0, 0.3, 0.4, 0.0, &cfg).unwrap(), 0.0);
        assert_eq!(green_spectral(0.4, 0.3, 0.0, 0.0, &cfg).unwrap(), 0.0);
        assert_eq!(
            green_wall_flux(0.0, 0.3, Wall::Left, 0.1, &cfg).unwrap(),
            0.0
        );
        assert_eq!(
            green_wall_flux(0.0, 0.3, Wall::Right, 0.1, &cfg).unwrap(),
            0.0
        );
        assert_eq!(green_images(0.3, 0.2, 0.0, 0.0, 8).unwrap(), 0.0);
    }

    #[test]
    fn causality_is_enforced() {
        let cfg = SeriesConfig::default();
        assert!(matches!(
            green_spectral(0.5, 0.1, 0.5, 0.1, &cfg),
            Err(Error::Causality(_))
        ));
        assert!(green_wall_flux(0.5, 0.1, Wall::Left, 0.2, &cfg).is_err());
        assert!(green_images(0.5, 0.1, 0.5, 0.3, 8).is_err());
    }

    #[test]
    fn spectral_kernel_reference_value() {
        // 2 Σ_{n odd} e^{−n²π²} to 40 digits (mpmath): 1.034463724076246e-4
        let v = green_spectral(0.5, 1.0, 0.5, 0.0, &SeriesConfig::default()).unwrap();
        assert!((v - 1.034_463_724_076_246e-4).abs() <= 1e-12);
    }

    #[test]
    fn wall_flux_reference_value() {
        // 2 Σ πn sin(πn/2) e^{−n²π²/10} (mpmath): 2.339176537265802
        let v = green_wall_flux(0.5, 0.1, Wall::Left, 0.0, &SeriesConfig::default()).unwrap();
        assert!((v - 2.339_176_537_265_802).abs() <= 1e-5);
        assert!((v - 2.339_176_537_265_802).abs() <= 1e-10);
    }

    #[test]
    fn image_kernel_normalization_at_short_times() {
        let t = 1e-8;
        let v = green_images(0.5, t, 0.5, 0.0, 8).unwrap();
        assert!((v * (4.0 * PI * t).sqrt() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn sine_coefficients_of_simple_traces() {
        // a = −b and ψ = −π cos(πx) give τ'' = −π² sin(πx), so τ = sin(πξ)
        let (_, d) = data(1.0, -1.0, "0", "0", "-pi*cos(pi*x)");
        let c = sine_coefficients(&d, 10).unwrap();
        assert!((c[0] - 0.5).abs() <= 1e-12, "{}", c[0]);
        for cn in &c[1..] {
            assert!(cn.abs() <= 1e-12);
        }
        // τ(ξ) = ξ
        let (_, d) = data(1.0, -1.0, "0", "1", "0");
        let c = sine_coefficients(&d, 200).unwrap();
        for (i, cn) in c.iter().enumerate() {
            let n = (i + 1) as f64;
            let want = -alt(i + 1) / (PI * n);
            let tol = if i < 20 { 1e-10 } else { 1e-8 };
            assert!((cn - want).abs() <= tol, "n = {n}: {cn} vs {want}");
        }
        let (_, d) = data(2.0, -1.0, "0", "0", "0");
        assert!(sine_coefficients(&d, 50).unwrap().iter().all(|c| *c == 0.0));
        assert!(matches!(
            sine_coefficients(&d, 205),
            Err(Error::Unresolvable { .. })
        ));
    }

    #[test]
    fn eigenmode_decays_exactly() {
        let (p, d) = data(1.0, -1.0, "0", "0", "-pi*cos(pi*x)");
        let u = eval_parabolic(&p, &d, 0.5, 0.1, &SeriesConfig::default()).unwrap();
        // e^{−π²/10} (mpmath): 0.3727078388534379
        assert!((u - 0.372_707_838_853_437_9).abs() <= 1e-9);
    }

    #[test]
    fn homogeneous_problem_is_zero() {
        let (p, d) = data(2.0, -1.0, "0", "0", "0");
        let s = ParabolicSolver::new(&p, &d, &SeriesConfig::default()).unwrap();
        for (x, y) in [(0.5, 0.5), (0.1, 0.01), (0.9, 1.0), (0.0, 0.3)] {
            assert_eq!(s.eval(x, y).unwrap(), 0.0);
        }
    }

    #[test]
    fn refuses_below_y_min_unless_images_requested() {
        let (p, d) = data(2.0, -1.0, "1 - y", "y", "x");
        let s = ParabolicSolver::new(&p, &d, &SeriesConfig::default()).unwrap();
        assert!(matches!(s.eval(0.5, 1e-4), Err(Error::Reliability { .. })));
        assert!(matches!(
            s.eval(0.5, -0.1),
            Err(Error::OutsideDomain { .. })
        ));
        let cfg = SeriesConfig {
            small_time_images: true,
            ..SeriesConfig::default()
        };
        let s = ParabolicSolver::new(&p, &d, &cfg).unwrap();
        let u = s.eval(0.5, 1e-4).unwrap();
        assert!((u - d.tau(0.5).unwrap()).abs() < 1e-3);
    }

    #[test]
    fn exact_exponential_solution() {
        // u = e^{x+y} solves the heat equation with these data; τ = e^x.
        let (p, d) = data(2.0, -1.0, "exp(y)", "exp(1 + y)", "2 - exp(x)");
        let s = ParabolicSolver::new(&p, &d, &SeriesConfig::default()).unwrap();
        for (x, y) in [
            (0.5, 0.5),
            (0.1, 0.01),
            (0.9, 0.9),
            (0.3, 0.002),
            (0.7, 0.2),
        ] {
            let u = s.eval(x, y).unwrap();
            assert!((u - (x + y).exp()).abs() <= 1e-9, "({x},{y}): {u}");
        }
    }
}
