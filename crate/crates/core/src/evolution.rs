//! Pseudospectral time evolution on a periodic grid: the `u_xxx` term is
//! integrated exactly by per-mode phase factors (Lawson integrating factor) and the
//! nonlinear terms by classical RK4.

use std::collections::BTreeMap;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::closed_form::{ClosedFormError, Solution, SolutionSpec};
use crate::conservation::quantities::{quantity_quadrature, QuantityError, QuantityId};
use crate::grid::{Grid, GridError, GridState};
use crate::model::Coefficients;

/// `dt ≤ CFL_FACTOR · h / (max|u|² (|α| + |β|))`.
pub const CFL_FACTOR: f64 = 0.5;
/// Amplitude growth that counts as a blow-up.
pub const MAX_GROWTH: f64 = 1e3;
/// Largest relative spectral amplitude allowed in the top eighth of the modes.
pub const TAIL_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum EvolutionError {
    #[error("amplitude grew {growth:e}× by t = {t}")]
    Instability { t: f64, growth: f64 },
    #[error("initial data is not resolved as periodic (spectral tail {tail:e})")]
    NonPeriodicInput { tail: f64 },
    #[error("dt = {dt} exceeds the nonlinear CFL bound {bound}")]
    Cfl { dt: f64, bound: f64 },
    #[error("bad solver options: {0}")]
    Options(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Quantity(#[from] QuantityError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolverOptions {
    pub dt: f64,
    pub t_end: f64,
    /// 2/3-rule truncation of the nonlinear term.
    pub dealias: bool,
    /// Record a snapshot every this many steps (the final state is always recorded).
    pub record_every: usize,
    /// Reference advection speed `s`: the splitting integrates `−u_xxx − s u_x` exactly and
    /// adds `s u_x` back into the nonlinear stage. The solution is unchanged; a wave moving
    /// near speed `s` becomes slowly varying for the RK4 stages.
    pub frame_speed: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { dt: 1e-3, t_end: 1.0, dealias: true, record_every: 100, frame_speed: 0.0 }
    }
}

impl SolverOptions {
    fn check(&self) -> Result<(), EvolutionError> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(EvolutionError::Options(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(EvolutionError::Options(format!("t_end must be non-negative, got {}", self.t_end)));
        }
        if !self.frame_speed.is_finite() {
            return Err(EvolutionError::Options(format!("frame speed must be finite, got {}", self.frame_speed)));
        }
        if self.record_every == 0 {
            return Err(EvolutionError::Options("record_every must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn cfl_bound(state: &GridState, coeffs: &Coefficients) -> f64 {
    let amp = state.max_abs().powi(2) * (coeffs.alpha_c64().norm() + coeffs.beta_c64().norm());
    if amp == 0.0 {
        f64::INFINITY
    } else {
        CFL_FACTOR * state.grid.spacing() / amp
    }
}

/// Largest `|û_m|` with `|m| > 7N/16`, relative to the largest mode.
pub fn spectral_tail(state: &GridState) -> f64 {
    let n = state.grid.points;
    let mut hat = state.samples.clone();
    FftPlanner::new().plan_fft_forward(n).process(&mut hat);
    let peak = hat.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if peak == 0.0 {
        return 0.0;
    }
    let cut = 7 * n / 16;
    let tail = hat
        .iter()
        .enumerate()
        .filter(|(j, _)| (*j).min(n - *j) > cut)
        .fold(0.0f64, |m, (_, z)| m.max(z.norm()));
    tail / peak
}

struct Stepper {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    ik: Vec<Complex64>,
    mask: Vec<f64>,
    half_phase: Vec<Complex64>,
    alpha: Complex64,
    beta: Complex64,
    speed: f64,
}

impl Stepper {
    fn new(grid: Grid, coeffs: &Coefficients, dt: f64, dealias: bool, speed: f64) -> Self {
        let n = grid.points;
        let mut planner = FftPlanner::new();
        let ks = grid.wavenumbers();
        let mask = (0..n).map(|j| if dealias && 3 * j.min(n - j) > n { 0.0 } else { 1.0 }).collect();
        Self {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
            ik: ks.iter().map(|&k| Complex64::new(0.0, k)).collect(),
            mask,
            // û_t = i(k³ − s k) û for u_t = −u_xxx − s u_x
            half_phase: ks.iter().map(|&k| Complex64::new(0.0, (k.powi(3) - speed * k) * dt / 2.0).exp()).collect(),
            alpha: coeffs.alpha_c64(),
            beta: coeffs.beta_c64(),
            speed,
        }
    }

    fn to_physical(&self, hat: &[Complex64]) -> Vec<Complex64> {
        let mut v = hat.to_vec();
        self.inv.process(&mut v);
        let s = 1.0 / self.n as f64;
        v.iter_mut().for_each(|z| *z *= s);
        v
    }

    /// Fourier transform of `s u_x − (αūuu_x + βu²ū_x)`, truncated by the mask.
    fn nonlinear(&self, hat: &[Complex64]) -> Vec<Complex64> {
        let u = self.to_physical(hat);
        let dx: Vec<Complex64> = hat.iter().zip(&self.ik).map(|(h, k)| h * k).collect();
        let ux = self.to_physical(&dx);
        let mut nl: Vec<Complex64> = u
            .iter()
            .zip(&ux)
            .map(|(u, ux)| self.speed * ux - (self.alpha * u.conj() * u * ux + self.beta * u * u * ux.conj()))
            .collect();
        self.fwd.process(&mut nl);
        nl.iter_mut().zip(&self.mask).for_each(|(z, m)| *z *= *m);
        nl
    }

    fn step(&self, hat: &mut [Complex64], dt: f64) {
        let e = &self.half_phase;
        let lin = |v: &[Complex64]| -> Vec<Complex64> { v.iter().zip(e).map(|(a, p)| a * p).collect() };
        let comb = |a: &[Complex64], b: &[Complex64], s: f64| -> Vec<Complex64> { a.iter().zip(b).map(|(x, y)| x + y * s).collect() };
        let k1: Vec<Complex64> = self.nonlinear(hat).iter().map(|z| z * dt).collect();
        let eu = lin(hat);
        let k2: Vec<Complex64> = self.nonlinear(&lin(&comb(hat, &k1, 0.5))).iter().map(|z| z * dt).collect();
        let k3: Vec<Complex64> = self.nonlinear(&comb(&eu, &k2, 0.5)).iter().map(|z| z * dt).collect();
        let e2u = lin(&eu);
        let k4: Vec<Complex64> = self.nonlinear(&comb(&e2u, &lin(&k3), 1.0)).iter().map(|z| z * dt).collect();
        let e2k1 = lin(&lin(&k1));
        let ek23 = lin(&comb(&k2, &k3, 1.0));
        for j in 0..self.n {
            hat[j] = e2u[j] + (e2k1[j] + ek23[j] * 2.0 + k4[j]) / 6.0;
        }
    }
}

/// Integrates from `initial.t` to `initial.t + t_end`, recording snapshots.
pub fn evolve(initial: &GridState, coeffs: &Coefficients, opts: &SolverOptions) -> Result<Vec<GridState>, EvolutionError> {
    opts.check()?;
    let tail = spectral_tail(initial);
    if tail > TAIL_TOL {
        return Err(EvolutionError::NonPeriodicInput { tail });
    }
    let bound = cfl_bound(initial, coeffs);
    if opts.dt > bound {
        return Err(EvolutionError::Cfl { dt: opts.dt, bound });
    }
    let steps = ((opts.t_end / opts.dt) - 1e-9).ceil().max(0.0) as usize;
    let dt = if steps == 0 { 0.0 } else { opts.t_end / steps as f64 };
    let grid = initial.grid;
    let stepper = Stepper::new(grid, coeffs, dt, opts.dealias, opts.frame_speed);
    let mut hat = initial.samples.clone();
    stepper.fwd.process(&mut hat);
    let amp0 = initial.max_abs().max(f64::MIN_POSITIVE);
    let mut out = vec![initial.clone()];
    for s in 1..=steps {
        stepper.step(&mut hat, dt);
        if s % opts.record_every == 0 || s == steps {
            let t = initial.t + s as f64 * dt;
            let samples = stepper.to_physical(&hat);
            let amp = samples.iter().fold(0.0f64, |m, z| if z.is_finite() { m.max(z.norm()) } else { f64::INFINITY });
            if amp > MAX_GROWTH * amp0 {
                return Err(EvolutionError::Instability { t, growth: amp / amp0 });
            }
            out.push(GridState::new(grid, t, samples)?);
        } else if !hat[0].is_finite() {
            return Err(EvolutionError::Instability { t: initial.t + s as f64 * dt, growth: f64::INFINITY });
        }
    }
    Ok(out)
}

/// `(L∞, L²)` distance between a state and the closed form at the state's time.
pub fn wave_error(spec: &SolutionSpec, coeffs: &Coefficients, state: &GridState) -> Result<(f64, f64), EvolutionError> {
    let sol = Solution::new(*spec, coeffs)?;
    let mut linf = 0.0f64;
    let mut l2 = 0.0;
    for (x, u) in state.grid.nodes().into_iter().zip(&state.samples) {
        let e = (u - sol.evaluate(state.t, x)).norm();
        linf = linf.max(e);
        l2 += e * e;
    }
    Ok((linf, (l2 * state.grid.spacing()).sqrt()))
}

/// `u_t + αūuu_x + βu²ū_x + u_xxx` of the closed form at `(t, x)`.
pub fn pde_pointwise_residual(spec: &SolutionSpec, coeffs: &Coefficients, t: f64, x: f64) -> Result<Complex64, EvolutionError> {
    Ok(Solution::new(*spec, coeffs)?.pde_residual(t, x, None)?)
}

/// Drift of one quantity along a trajectory.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Drift {
    pub initial: Complex64,
    /// `max_t |C(t) − C(0)| / max(1, |C(0)|)`.
    pub relative: f64,
}

pub fn drift_report(trajectory: &[GridState], ids: &[QuantityId], coeffs: &Coefficients) -> Result<BTreeMap<QuantityId, Drift>, EvolutionError> {
    let mut out = BTreeMap::new();
    for &id in ids {
        let values = trajectory.iter().map(|s| quantity_quadrature(id, s, coeffs)).collect::<Result<Vec<_>, _>>()?;
        let c0 = values.first().copied().unwrap_or_default();
        let rel = values.iter().fold(0.0f64, |m, v| m.max((v - c0).norm())) / c0.norm().max(1.0);
        out.insert(id, Drift { initial: c0, relative: rel });
    }
    Ok(out)
}

fn c64_json(z: Complex64) -> Value {
    json!({ "re": format!("{:.16e}", z.re), "im": format!("{:.16e}", z.im) })
}

/// Manifest `{grid, dt, dealias, frame_speed, times, files, drift}` for a trajectory.
pub fn manifest(trajectory: &[GridState], opts: &SolverOptions, drift: &BTreeMap<QuantityId, Drift>, files: &[String]) -> Value {
    let grid = trajectory.first().map(|s| s.grid);
    let drift: serde_json::Map<String, Value> = drift
        .iter()
        .map(|(k, d)| (k.name().to_string(), json!({ "initial": c64_json(d.initial), "relative": format!("{:.16e}", d.relative) })))
        .collect();
    json!({
        "grid": grid.map(|g| json!({ "L": format!("{:.16e}", g.half_width), "N": g.points })),
        "dt": format!("{:.16e}", opts.dt),
        "t_end": format!("{:.16e}", opts.t_end),
        "dealias": opts.dealias,
        "record_every": opts.record_every,
        "frame_speed": format!("{:.16e}", opts.frame_speed),
        "times": trajectory.iter().map(|s| format!("{:.16e}", s.t)).collect::<Vec<_>>(),
        "files": files,
        "drift": drift,
    })
}

/// Writes `snapshot_NNNN.csv` per state and `manifest.json` into `dir`.
pub fn write_trajectory(
    dir: &Path,
    trajectory: &[GridState],
    opts: &SolverOptions,
    drift: &BTreeMap<QuantityId, Drift>,
) -> Result<PathBuf, EvolutionError> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for (i, s) in trajectory.iter().enumerate() {
        let name = format!("snapshot_{i:04}.csv");
        s.write_snapshot_csv(BufWriter::new(fs::File::create(dir.join(&name))?))?;
        files.push(name);
    }
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest(trajectory, opts, drift, &files)).expect("manifest serializes");
    fs::write(&path, text + "\n")?;
    Ok(path)
}
