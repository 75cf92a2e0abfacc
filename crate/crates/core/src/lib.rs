//! Solver for the mixed parabolic–hyperbolic problem
//!
//! ```text
//! u_xx − u_y  = 0   in the square 0 < x < 1, 0 < y < 1,
//! u_yy − u_xx = 0   in the triangle bounded by x + y = 0 and x − y = 1,
//! u(0,y) = φ₀(y),  u(1,y) = φ₁(y),
//! a·u(x/2, −x/2) + b·u((x+1)/2, (x−1)/2) = ψ(x),
//! ```
//!
//! with u continuous across y = 0. The pipeline reduces the problem to the
//! interface traces τ = u(·,0), ν = u_y(·,0) ([`interface`]), evaluates u
//! below the interface by d'Alembert's formula ([`hyperbolic`]) and above
//! it by the Green's function of the strip ([`parabolic`]), and certifies
//! the result numerically ([`verify`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod example;
pub mod expr;
pub mod hyperbolic;
pub mod interface;
pub mod parabolic;
pub mod problem;
pub mod quadrature;
pub mod sampling;
pub mod solution;
pub mod verify;

pub use error::{Error, Result};
pub use expr::Expr;
pub use hyperbolic::eval_hyperbolic;
pub use interface::{solve_interface, InterfaceData};
pub use parabolic::{
    eval_parabolic, green_images, green_spectral, green_wall_flux, sine_coefficients,
    ParabolicSolver, SeriesConfig, Wall,
};
pub use problem::{classify_point, validate, ProblemSpec, Region, ValidationReport};
pub use quadrature::QuadratureConfig;
pub use sampling::{sample_grid, GridSpec, Sample};
pub use solution::{Solution, SolveOptions};
pub use verify::{fd_bvp_oracle, verify_solution, GridConfig, Tolerances, VerificationReport};
