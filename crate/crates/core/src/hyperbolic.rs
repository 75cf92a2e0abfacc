//! d'Alembert evaluation in the characteristic triangle below the interface.

use crate::error::{Error, Result};
use crate::interface::InterfaceData;
use crate::problem::{classify_point, Region, DEFAULT_EPS_GEO};

/// u(x, y) for y ≤ 0:
/// `(τ(x+y) + τ(x−y))/2 − (N(x−y) − N(x+y))/2` with N the antiderivative of ν.
pub fn eval_hyperbolic(d: &InterfaceData, x: f64, y: f64) -> Result<f64> {
    match classify_point(x, y, DEFAULT_EPS_GEO) {
        Region::HyperbolicInterior | Region::HyperbolicBoundary | Region::Interface => {}
        _ => {
            return Err(Error::OutsideDomain {
                x,
                y,
                domain: "closed characteristic triangle",
            })
        }
    }
    let lo = x + y.min(0.0);
    let hi = x - y.min(0.0);
    let mean = 0.5 * (d.tau(lo)? + d.tau(hi)?);
    Ok(mean - 0.5 * (d.nu_antider(hi)? - d.nu_antider(lo)?))
}
