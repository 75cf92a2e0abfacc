mod common;

use common::halton;
use parhyp_core::example::example_forced;
use parhyp_core::{
    green_images, green_spectral, green_wall_flux, solve_interface, ParabolicSolver, ProblemSpec,
    QuadratureConfig, SeriesConfig, Wall,
};

fn log_uniform(u: f64, lo: f64, hi: f64) -> f64 {
    (lo.ln() + u * (hi.ln() - lo.ln())).exp()
}

fn example_solver(cfg: &SeriesConfig) -> (ProblemSpec, ParabolicSolver) {
    let p = example_forced();
    let d = solve_interface(&p, &QuadratureConfig::default()).unwrap();
    let s = ParabolicSolver::new(&p, &d, cfg).unwrap();
    (p, s)
}

#[test]
fn kernel_duality_on_overlap() {
    let cfg = SeriesConfig::default();
    for i in 0..100 {
        let x = halton(i, 2);
        let xi = halton(i, 3);
        let t = log_uniform(halton(i, 5), 1e-3, 1e-1);
        let s = green_spectral(x, t, xi, 0.0, &cfg).unwrap();
        let g = green_images(x, t, xi, 0.0, 8).unwrap();
        assert!((s - g).abs() <= 1e-10, "x={x} xi={xi} t={t}: {s} vs {g}");
    }
}

#[test]
fn kernel_duality_full_range_with_enough_terms() {
    let cfg = SeriesConfig {
        n_cap: 5000,
        ..SeriesConfig::default()
    };
    for i in 0..100 {
        let x = halton(i, 2);
        let xi = halton(i, 3);
        let t = log_uniform(halton(i, 5), 1e-6, 1.0);
        let s = green_spectral(x, t, xi, 0.0, &cfg).unwrap();
        let g = green_images(x, t, xi, 0.0, 8).unwrap();
        assert!((s - g).abs() <= 1e-10, "x={x} xi={xi} t={t}: {s} vs {g}");
    }
}

#[test]
fn wall_kernels_reflect() {
    let cfg = SeriesConfig::default();
    for i in 0..50 {
        let x = halton(i, 2);
        let s = log_uniform(halton(i, 3), 1e-3, 1.0);
        let right = green_wall_flux(x, s, Wall::Right, 0.0, &cfg).unwrap();
        let left = green_wall_flux(1.0 - x, s, Wall::Left, 0.0, &cfg).unwrap();
        assert!((right + left).abs() <= 1e-12, "{right} {left}");
    }
}

#[test]
fn hundred_terms_match_closed_form_series() {
    let (_, s) = example_solver(&SeriesConfig::with_terms(100));
    for i in 0..100 {
        let x = 0.01 + 0.98 * halton(i, 2);
        let y = 0.01 + 0.99 * halton(i, 3);
        let u = s.eval(x, y).unwrap();
        let want = common::u_parabolic_series(x, y, 100);
        assert!((u - want).abs() <= 1e-9, "({x}, {y}): {u} vs {want}");
    }
}

#[test]
fn adaptive_and_fixed_modes_converge_together() {
    // the partial sums converge like 1/N away from the walls
    let (_, adaptive) = example_solver(&SeriesConfig::default());
    let (_, fixed) = example_solver(&SeriesConfig::with_terms(200));
    for (x, y) in [(0.5, 0.5), (0.25, 0.1), (0.75, 0.9)] {
        let a = adaptive.eval(x, y).unwrap();
        let f = fixed.eval(x, y).unwrap();
        assert!((a - f).abs() < 5e-3, "({x}, {y}): {a} vs {f}");
        // and the converged series agrees with the closed form at many terms
        let long = common::u_parabolic_series(x, y, 20000);
        assert!((a - long).abs() < 1e-4, "({x}, {y}): {a} vs {long}");
    }
}

#[test]
fn heat_residual_is_small() {
    let (_, s) = example_solver(&SeriesConfig::default());
    let (hx, hy) = (1e-3, 1e-4);
    let mut sup: f64 = 0.0;
    for i in 0..200 {
        let x = 0.02 + 0.96 * halton(i, 2);
        let y = 0.05 + 0.93 * halton(i, 3);
        let u = |x, y| s.eval(x, y).unwrap();
        let c = u(x, y);
        let uxx = (u(x + hx, y) - 2.0 * c + u(x - hx, y)) / (hx * hx);
        let uy = (u(x, y + hy) - u(x, y - hy)) / (2.0 * hy);
        sup = sup.max((uxx - uy).abs());
    }
    assert!(sup <= 1e-4, "sup {sup:e}");
}

#[test]
fn wall_data_are_attained() {
    let (p, s) = example_solver(&SeriesConfig::default());
    let delta = 1e-3;
    for i in 0..=80 {
        let y = 0.1 + 0.8 * i as f64 / 80.0;
        assert!((s.eval(delta, y).unwrap() - p.phi0_at(y).unwrap()).abs() <= 1e-2);
        assert!((s.eval(1.0 - delta, y).unwrap() - p.phi1_at(y).unwrap()).abs() <= 1e-2);
        assert_eq!(s.eval(0.0, y).unwrap(), p.phi0_at(y).unwrap());
    }
}

#[test]
fn interface_trace_is_attained_from_above() {
    let (_, s) = example_solver(&SeriesConfig::default());
    for i in 0..=80 {
        let x = 0.1 + 0.8 * i as f64 / 80.0;
        let u = s.eval(x, 1e-3).unwrap();
        assert!((u - common::tau(x)).abs() <= 1e-2, "x = {x}");
    }
}

#[test]
fn image_mode_below_y_min_matches_exact_solution() {
    // u = e^{x+y} with τ = e^x
    let p = ProblemSpec::new(2.0, -1.0, "exp(y)", "exp(1 + y)", "2 - exp(x)").unwrap();
    let d = solve_interface(&p, &QuadratureConfig::default()).unwrap();
    let cfg = SeriesConfig {
        small_time_images: true,
        ..SeriesConfig::default()
    };
    let s = ParabolicSolver::new(&p, &d, &cfg).unwrap();
    for (x, y) in [(0.5, 1e-4), (0.2, 5e-4), (0.9, 2e-5)] {
        let u = s.eval(x, y).unwrap();
        assert!((u - (x + y).exp()).abs() <= 1e-8, "({x}, {y}): {u}");
    }
}

#[test]
fn nonlinear_wall_data_exact_solution() {
    // u = x² + 2y + e^{x+y}: φ₀ = 2y + e^y, φ₁ = 1 + 2y + e^{1+y}, τ = x² + e^x.
    // With a = 1, b = −1: τ'' = 2 + e^x = −ψ', ψ = C − 2x − e^x.
    let p = ProblemSpec::new(
        1.0,
        -1.0,
        "2*y + exp(y)",
        "1 + 2*y + exp(1 + y)",
        "-2*x - exp(x)",
    )
    .unwrap();
    let d = solve_interface(&p, &QuadratureConfig::default()).unwrap();
    let s = ParabolicSolver::new(&p, &d, &SeriesConfig::default()).unwrap();
    for i in 0..50 {
        let x = halton(i, 2);
        let y = 0.001 + 0.999 * halton(i, 3);
        let want = x * x + 2.0 * y + (x + y).exp();
        assert!((s.eval(x, y).unwrap() - want).abs() <= 1e-9, "({x}, {y})");
    }
}
