//! Rectilinear sampling of the closed domain for export and plotting.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{classify_point, Region, DEFAULT_EPS_GEO};
use crate::solution::Solution;

/// Grid layout: `nx` columns on [0, 1]; `ny_top` rows at y = j/ny_top,
/// j = ny_top..1 (rows below y_min are skipped); the interface row y = 0;
/// `ny_bot` rows at y = −k/(2·ny_bot), k = 1..ny_bot. Points outside the
/// domain are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny_top: usize,
    pub ny_bot: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            nx: 101,
            ny_top: 50,
            ny_bot: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    pub region: Region,
    pub u: f64,
}

impl GridSpec {
    /// Sample coordinates in row-major order: y descending, x ascending.
    pub fn points(&self, y_min: f64) -> Result<Vec<(f64, f64)>> {
        if self.nx < 2 {
            return Err(Error::Config("nx must be at least 2".into()));
        }
        let xs: Vec<f64> = (0..self.nx)
            .map(|i| i as f64 / (self.nx - 1) as f64)
            .collect();
        let mut rows = Vec::new();
        for j in (1..=self.ny_top).rev() {
            let y = j as f64 / self.ny_top as f64;
            if y >= y_min {
                rows.push(y);
            }
        }
        rows.push(0.0);
        for k in 1..=self.ny_bot {
            rows.push(-(k as f64) / (2 * self.ny_bot) as f64);
        }
        let mut pts = Vec::new();
        for y in rows {
            for &x in &xs {
                if classify_point(x, y, DEFAULT_EPS_GEO) != Region::Outside {
                    pts.push((x, y));
                }
            }
        }
        Ok(pts)
    }
}

/// Evaluate the solution on the grid. Output order is deterministic.
pub fn sample_grid(sol: &Solution, grid: &GridSpec) -> Result<Vec<Sample>> {
    let pts = grid.points(sol.series().y_min)?;
    pts.par_iter()
        .map(|&(x, y)| {
            let (region, u) = sol.eval(x, y)?;
            Ok(Sample { x, y, region, u })
        })
        .collect()
}
