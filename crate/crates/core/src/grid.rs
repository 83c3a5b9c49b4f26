//! Uniform periodic grids and sampled states.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid needs N ≥ 16 and a power of two, got {0}")]
    BadPoints(usize),
    #[error("half-width must be positive and finite, got {0}")]
    BadWidth(f64),
    #[error("state has {got} samples, grid has {want}")]
    SampleCount { got: usize, want: usize },
    #[error("non-finite sample at node {0}")]
    NonFinite(usize),
}

/// Nodes `x_j = −L + j h`, `h = 2L/N`, with `x = −L` identified with `x = L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub half_width: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(half_width: f64, points: usize) -> Result<Self, GridError> {
        if points < 16 || !points.is_power_of_two() {
            return Err(GridError::BadPoints(points));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(GridError::BadWidth(half_width));
        }
        Ok(Self { half_width, points })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.node(j)).collect()
    }

    /// Angular wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.points as i64;
        let base = std::f64::consts::PI / self.half_width;
        (0..n).map(|j| if j < n / 2 { j } else if j == n / 2 { 0 } else { j - n }).map(|m| m as f64 * base).collect()
    }

    /// Trapezoid rule on the periodic grid: `h Σ f_j`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        self.spacing() * f.iter().sum::<f64>()
    }

    pub fn integrate_complex(&self, f: &[Complex64]) -> Complex64 {
        f.iter().sum::<Complex64>() * self.spacing()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridState {
    pub grid: Grid,
    pub t: f64,
    pub samples: Vec<Complex64>,
}

impl GridState {
    pub fn new(grid: Grid, t: f64, samples: Vec<Complex64>) -> Result<Self, GridError> {
        if samples.len() != grid.points {
            return Err(GridError::SampleCount { got: samples.len(), want: grid.points });
        }
        if let Some(j) = samples.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GridError::NonFinite(j));
        }
        Ok(Self { grid, t, samples })
    }

    /// `[u, u_x, …, u^(order)]` by FFT differentiation.
    pub fn spectral_derivatives(&self, order: usize) -> Vec<Vec<Complex64>> {
        let n = self.grid.points;
        let mut planner = rustfft::FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let mut hat = self.samples.clone();
        fwd.process(&mut hat);
        let ks = self.grid.wavenumbers();
        let mut out = vec![self.samples.clone()];
        for k in 1..=order {
            let mut d: Vec<Complex64> = hat.iter().zip(&ks).map(|(h, &w)| h * Complex64::new(0.0, w).powu(k as u32) / n as f64).collect();
            inv.process(&mut d);
            out.push(d);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Columns `x, re, im, abs, arg`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "re", "im", "abs", "arg"])?;
        for (j, z) in self.samples.iter().enumerate() {
            w.write_record([self.grid.node(j), z.re, z.im, z.norm(), z.arg()].map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Columns `x, re, im`, as used for trajectory snapshots.
    pub fn write_snapshot_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "re", "im"])?;
        for (j, z) in self.samples.iter().enumerate() {
            w.write_record([self.grid.node(j), z.re, z.im].map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_derivative_of_periodic_wave() {
        let g = Grid::new(std::f64::consts::PI, 32).unwrap();
        let st = GridState::new(g, 0.0, g.nodes().iter().map(|&x| Complex64::new((3.0 * x).sin(), 0.0)).collect()).unwrap();
        let d = st.spectral_derivatives(2);
        for (j, x) in g.nodes().into_iter().enumerate() {
            assert!((d[1][j].re - 3.0 * (3.0 * x).cos()).abs() < 1e-12);
            assert!((d[2][j].re + 9.0 * (3.0 * x).sin()).abs() < 1e-11);
        }
    }

    #[test]
    fn grid_shape() {
        let g = Grid::new(40.0, 1024).unwrap();
        assert_eq!(g.spacing(), 80.0 / 1024.0);
        assert_eq!(g.node(0), -40.0);
        assert!((g.node(1023) + g.spacing() - 40.0).abs() < 1e-12);
        assert!(Grid::new(40.0, 1000).is_err());
        assert!(Grid::new(40.0, 8).is_err());
        let k = g.wavenumbers();
        assert_eq!(k[1], std::f64::consts::PI / 40.0);
        assert_eq!(k[1023], -std::f64::consts::PI / 40.0);
        assert_eq!(k[512], 0.0);
    }

    #[test]
    fn trapezoid_is_spectral_for_periodic_data() {
        let g = Grid::new(std::f64::consts::PI, 32).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|x| x.cos().exp()).collect();
        // ∫_{−π}^{π} e^{cos x} dx = 2π I0(1)
        let exact = 2.0 * std::f64::consts::PI * 1.266_065_877_752_008_4;
        assert!((g.integrate(&f) - exact).abs() < 1e-13);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let g = Grid::new(1.0, 16).unwrap();
        let s = GridState::new(g, 0.0, vec![Complex64::new(1.0, -1.0); 16]).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,re,im,abs,arg\n"));
        assert_eq!(text.lines().count(), 17);
    }
}
