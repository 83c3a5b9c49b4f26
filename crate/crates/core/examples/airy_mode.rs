//! With α = β = 0 the equation is linear: a grid mode e^{iκx} rotates exactly as
//! e^{i(κx + κ³t)}, and a Gaussian keeps its complex mass while it disperses.

use cmkdv::conservation::quantities::{quantity_quadrature, QuantityId};
use cmkdv::evolution::{evolve, SolverOptions};
use cmkdv::grid::{Grid, GridState};
use cmkdv::model::Coefficients;
use num_complex::Complex64;

fn main() {
    let coeffs = Coefficients::real(0, 0);
    let grid = Grid::new(std::f64::consts::PI * 8.0, 256).unwrap();
    let kappa = 3.0 * std::f64::consts::PI / grid.half_width;
    let mode = GridState::new(grid, 0.0, grid.nodes().iter().map(|&x| Complex64::from_polar(1.0, kappa * x)).collect()).unwrap();
    let traj = evolve(&mode, &coeffs, &SolverOptions { dt: 1e-2, t_end: 1.0, ..SolverOptions::default() }).unwrap();
    let last = traj.last().unwrap();
    let err = grid.nodes().iter().zip(&last.samples).fold(0.0f64, |m, (&x, u)| m.max((u - Complex64::from_polar(1.0, kappa * x + kappa.powi(3))).norm()));
    println!("mode κ = {kappa:.4}: error at t = 1 {err:.1e}");

    let wide = Grid::new(120.0, 2048).unwrap();
    let bump = GridState::new(wide, 0.0, wide.nodes().iter().map(|&x| Complex64::new(1.0, 0.5) * (-x * x / 4.0).exp()).collect()).unwrap();
    let traj = evolve(&bump, &coeffs, &SolverOptions { dt: 1e-2, t_end: 1.0, record_every: 25, ..SolverOptions::default() }).unwrap();
    for s in &traj {
        let m = quantity_quadrature(QuantityId::CovMass, s, &coeffs).unwrap();
        println!("t = {:.2}: ∫u = {:.15}{:+.15}i, max|u| = {:.6}", s.t, m.re, m.im, s.max_abs());
    }
}
