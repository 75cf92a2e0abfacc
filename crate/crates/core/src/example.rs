//! The worked example: a = 2, b = −1, φ₀ = 1 − y, φ₁ = y.
//!
//! The characteristic condition is printed with right-hand side 4x, which
//! satisfies the corner compatibility relation. The printed interface
//! equation τ'' − τ'/3 = −2/3 and the closed forms of τ, ν and u all follow
//! from ψ = x instead, which violates compatibility (defect 3) and must be
//! forced through.

use crate::problem::ProblemSpec;

/// Example data with ψ = x, the right-hand side behind the closed forms.
pub fn example_forced() -> ProblemSpec {
    ProblemSpec::new(2.0, -1.0, "1 - y", "y", "x").expect("example parses")
}

/// Example data with ψ = 4x, as printed in the characteristic condition.
pub fn example_printed() -> ProblemSpec {
    ProblemSpec::new(2.0, -1.0, "1 - y", "y", "4*x").expect("example parses")
}
