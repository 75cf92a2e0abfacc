//! Quadrature and interpolation on uniform grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid used to build the interface traces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Number of grid nodes on [0, 1]; must be 2^k + 1.
    pub nodes: usize,
    /// Largest allowed difference between the solve on `nodes` and the solve
    /// on the half-resolution grid.
    pub richardson_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes: 4097,
            richardson_tol: 1e-9,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let intervals = self.nodes.wrapping_sub(1);
        if self.nodes < 17 || !intervals.is_power_of_two() {
            return Err(Error::Config(format!(
                "quadrature node count must be 2^k + 1 with k >= 4, got {}",
                self.nodes
            )));
        }
        if !(self.richardson_tol > 0.0) {
            return Err(Error::Config("richardson_tol must be positive".into()));
        }
        Ok(())
    }

    /// The half-resolution configuration used for the Richardson check.
    pub fn coarsened(&self) -> QuadratureConfig {
        QuadratureConfig {
            nodes: (self.nodes - 1) / 2 + 1,
            ..*self
        }
    }
}

/// Composite Simpson rule over uniformly spaced samples (odd length).
pub fn simpson(f: &[f64], h: f64) -> f64 {
    debug_assert!(f.len() % 2 == 1 && f.len() >= 3);
    let n = f.len() - 1;
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in f.iter().enumerate().take(n).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[n])
}

/// Running integral `out[i] = ∫_{x_0}^{x_i} f` from uniformly spaced samples
/// of odd length. Even nodes accumulate Simpson panels; odd nodes add one
/// interval of the quadratic through the neighbouring three samples.
pub fn cumulative_simpson(f: &[f64], h: f64) -> Vec<f64> {
    let m = f.len();
    assert!(
        m >= 3 && m % 2 == 1,
        "cumulative_simpson needs an odd sample count"
    );
    let mut out = vec![0.0; m];
    let mut i = 2;
    while i < m {
        out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        i += 2;
    }
    let mut i = 1;
    while i < m {
        out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
        i += 2;
    }
    out
}

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> GaussLegendre {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrate `f` over [lo, hi].
    pub fn integrate<F: FnMut(f64) -> Result<f64>>(
        &self,
        lo: f64,
        hi: f64,
        mut f: F,
    ) -> Result<f64> {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x)?;
        }
        Ok(acc * half)
    }
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Piecewise cubic Hermite interpolant on a uniform grid over [0, 1] with
/// prescribed nodal slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteTable {
    values: Vec<f64>,
    slopes: Vec<f64>,
    h: f64,
}

impl HermiteTable {
    pub fn new(values: Vec<f64>, slopes: Vec<f64>) -> HermiteTable {
        assert_eq!(values.len(), slopes.len());
        assert!(values.len() >= 2);
        let h = 1.0 / (values.len() - 1) as f64;
        HermiteTable { values, slopes, h }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    /// Node abscissa `i·h`.
    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    /// Evaluate at `x ∈ [0, 1]` (callers clamp). Exact at nodes.
    pub fn eval(&self, x: f64) -> f64 {
        let last = self.values.len() - 1;
        let mut i = (x / self.h).floor() as usize;
        if i >= last {
            i = last - 1;
        }
        let t = (x - self.node(i)) / self.h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.values[i]
            + h10 * self.h * self.slopes[i]
            + h01 * self.values[i + 1]
            + h11 * self.h * self.slopes[i + 1]
    }

    pub(crate) fn perturbed(&self, delta: impl Fn(f64) -> (f64, f64)) -> HermiteTable {
        let mut out = self.clone();
        for i in 0..out.values.len() {
            let (dv, ds) = delta(self.node(i));
            out.values[i] += dv;
            out.slopes[i] += ds;
        }
        out
    }
}
