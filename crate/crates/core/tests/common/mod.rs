//! Closed forms of the worked example (a = 2, b = −1, φ₀ = 1 − y, φ₁ = y,
//! ψ = x), coded independently of the solver.
#![allow(dead_code)]

use std::f64::consts::PI;

pub fn cube_root_e() -> f64 {
    (1.0f64 / 3.0).exp()
}

pub fn tau(x: f64) -> f64 {
    let s = cube_root_e();
    (2.0 * (s - 1.0) * x - 3.0 * (x / 3.0).exp() + s + 2.0) / (s - 1.0)
}

pub fn nu(x: f64) -> f64 {
    (x / 3.0).exp() / (3.0 * (1.0 - cube_root_e()))
}

/// u below the interface.
pub fn u_hyperbolic(x: f64, y: f64) -> f64 {
    let s = cube_root_e();
    (-((x - y) / 3.0).exp() - 2.0 * ((x + y) / 3.0).exp() - 2.0 * x + s * (2.0 * x + 1.0) + 2.0)
        / (s - 1.0)
}

/// ∫₀¹ sin(πnξ) τ(ξ) dξ in closed form for the example's τ.
pub fn tau_sine_coefficient(n: u32) -> f64 {
    let s = cube_root_e();
    let beta = PI * n as f64;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let lin = -2.0 * sign / beta; // ∫ 2ξ sin
    let constant = (s + 2.0) / (s - 1.0) * (1.0 - sign) / beta;
    // ∫₀¹ e^{ξ/3} sin(βξ) dξ = β(1 − (−1)ⁿ e^{1/3}) / (1/9 + β²)
    let exp_part = beta * (1.0 - sign * s) / (1.0 / 9.0 + beta * beta);
    lin + constant - 3.0 / (s - 1.0) * exp_part
}

/// The three-series expression for u above the interface with the time
/// integrals done in closed form, truncated at `n_terms`:
///
/// 2Σ sin(πnx)/(π³n³)·(1 − k(y−1) − e^{−ky}(k+1))
/// − 2Σ (−1)ⁿ sin(πnx)/(π³n³)·(ky − 1 + e^{−ky})
/// + 2Σ sin(πnx) e^{−ky} c_n,          k = π²n².
pub fn u_parabolic_series(x: f64, y: f64, n_terms: u32) -> f64 {
    let mut acc = 0.0;
    for n in 1..=n_terms {
        let pn = PI * n as f64;
        let k = pn * pn;
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let decay = (-k * y).exp();
        let left = (1.0 - k * (y - 1.0) - decay * (k + 1.0)) / pn.powi(3);
        let right = sign * (k * y - 1.0 + decay) / pn.powi(3);
        acc += (pn * x).sin() * (left - right + decay * tau_sine_coefficient(n));
    }
    2.0 * acc
}

/// The same display exactly as printed: no −1 in the second series and
/// ∫ sin(πnξ) ξ dξ in place of the coefficients of τ.
pub fn u_parabolic_series_as_printed(x: f64, y: f64, n_terms: u32) -> f64 {
    let mut acc = 0.0;
    for n in 1..=n_terms {
        let pn = PI * n as f64;
        let k = pn * pn;
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let decay = (-k * y).exp();
        let left = (1.0 - k * (y - 1.0) - decay * (k + 1.0)) / pn.powi(3);
        let right = sign * (k * y + decay) / pn.powi(3);
        acc += (pn * x).sin() * (left - right) - sign / pn * (pn * x).sin() * decay;
    }
    2.0 * acc
}

/// Deterministic pseudo-random points in (lo, hi).
pub fn halton(i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let mut k = i + 1;
    while k > 0 {
        f /= base as f64;
        r += f * (k % base) as f64;
        k /= base;
    }
    r
}
