//! Command-line front end: flag parsing, fully resolved run configurations and one
//! `cmd_*` function per subcommand. Every command returns a self-describing report
//! (resolved config plus coefficient case flags) and an exit code: 0 when every
//! expected identity or criterion holds, 1 when one fails, 2 for unusable input.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::closed_form::{representative, Family, Params, Side, Solution, SolutionSpec};
use crate::conservation::quantities::{analytic_quantity, center_of_momentum, closed_form_quantity, quantity_quadrature, QuantityId};
use crate::conservation::{scoped_report, Scope};
use crate::evolution::{drift_report, evolve, wave_error, write_trajectory, EvolutionError, SolverOptions};
use crate::exact::{format_rational, ComplexRational};
use crate::grid::{Grid, GridState};
use crate::model::{CaseFlags, Coefficients};
use crate::report::{complex, render};
use crate::table1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Pointwise PDE residual accepted by `residual`.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Parser, Debug, Clone)]
#[command(name = "cmkdv", version, about = "Travelling waves, conservation laws and evolution for u_t + αūuu_x + βu²ū_x + u_xxx = 0")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Coefficient case flags with exact witnesses.
    Classify(Flags),
    /// Exact identity checks for the admissible catalog.
    VerifySymbolic {
        #[command(flatten)]
        flags: Flags,
        #[arg(long, default_value = "all")]
        scope: String,
    },
    /// Closed-form value, jet and PDE residual at one point.
    Eval(Flags),
    /// Closed form sampled on the grid.
    Sample(Flags),
    /// Pseudospectral evolution with trajectory files and a drift report.
    Evolve(Flags),
    /// Quadrature vs tabulated values of the integrated densities.
    Quantities(Flags),
    /// Verdict matrix of conserved and finite integrated densities.
    Table1(Flags),
    /// PDE residuals of the closed form at random points.
    Residual(Flags),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// α as `p/q`, decimal, `a+bi` or `a,b`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Solution family, or `airy-mode` / `gaussian` initial data for `evolve`.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long = "Theta", allow_hyphen_values = true)]
    pub big_theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub amplitude: Option<f64>,
    /// Grid half-width (also the quadrature window half-width).
    #[arg(long = "L")]
    pub half_width: Option<f64>,
    /// Grid points (power of two).
    #[arg(long = "N")]
    pub points: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// Reference advection speed of the splitting; defaults to `c` for closed-form data.
    #[arg(long = "frame-speed", allow_hyphen_values = true)]
    pub frame_speed: Option<f64>,
    #[arg(long = "record-every")]
    pub record_every: Option<usize>,
    #[arg(long = "no-dealias")]
    pub no_dealias: bool,
    /// Evaluation time for `eval` and `sample`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Evaluation point for `eval`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Jet order for `eval`.
    #[arg(long)]
    pub order: Option<usize>,
    /// Branch at a cusp for `eval`: `left` or `right`.
    #[arg(long)]
    pub side: Option<String>,
    /// Number of random points for `residual`.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Output file, or the trajectory directory for `evolve`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Initial data: a closed-form family or one of the linear test states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Initial {
    Family(Family),
    /// `e^{iκx}` for the grid mode `κ` nearest `k`.
    AiryMode,
    /// `A e^{−x²}`.
    Gaussian,
}

impl Initial {
    fn parse(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "airy-mode" | "airy" => Ok(Initial::AiryMode),
            "gaussian" => Ok(Initial::Gaussian),
            other => other.parse::<Family>().map(Initial::Family).map_err(|e| e.to_string()),
        }
    }

    fn name(self) -> String {
        match self {
            Initial::Family(f) => f.name().to_string(),
            Initial::AiryMode => "airy-mode".into(),
            Initial::Gaussian => "gaussian".into(),
        }
    }
}

/// A fully resolved run configuration; every report echoes it.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub coefficients: Coefficients,
    /// Decimal inputs and the exact rationals they became.
    pub conversions: Vec<String>,
    pub initial: Option<Initial>,
    pub params: Params,
    pub grid: Grid,
    pub solver: SolverOptions,
    pub t: f64,
    pub x: f64,
    pub order: usize,
    pub side: Option<Side>,
    pub samples: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn parse_coefficient(name: &str, raw: &str, conversions: &mut Vec<String>) -> Result<ComplexRational, String> {
    let v: ComplexRational = raw.parse().map_err(|e| format!("--{name}: {e}"))?;
    if raw.contains('.') || raw.contains(['e', 'E']) {
        conversions.push(format!("{name}: {raw} -> {v}"));
    }
    Ok(v)
}

impl RunConfig {
    /// Resolves flags against defaults. A family supplies its representative
    /// coefficients and parameters; explicit flags override them. Without a family the
    /// coefficients default to α = 1, β = 0.
    pub fn resolve(f: &Flags, seed: u64) -> Result<Self, String> {
        let initial = f.family.as_deref().map(Initial::parse).transpose()?;
        let (base_spec, base_coeffs) = match initial {
            Some(Initial::Family(fam)) => {
                let (s, c) = representative(fam);
                (Some(s), Some(c))
            }
            Some(_) => (None, Some(Coefficients::real(0, 0))),
            None => (None, None),
        };
        let mut conversions = Vec::new();
        let coefficients = match (&f.alpha, &f.beta) {
            (None, None) => base_coeffs.unwrap_or_else(|| Coefficients::real(1, 0)),
            (a, b) => Coefficients::new(
                parse_coefficient("alpha", a.as_deref().unwrap_or("0"), &mut conversions)?,
                parse_coefficient("beta", b.as_deref().unwrap_or("0"), &mut conversions)?,
            ),
        };
        let mut params = base_spec.map(|s| s.params).unwrap_or_default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut params.c, f.c);
        set(&mut params.phi, f.phi);
        set(&mut params.theta, f.theta);
        set(&mut params.big_theta, f.big_theta);
        set(&mut params.k, f.k);
        set(&mut params.amplitude, f.amplitude);
        let grid = Grid::new(f.half_width.unwrap_or(40.0), f.points.unwrap_or(1024)).map_err(|e| e.to_string())?;
        let default_speed = if matches!(initial, Some(Initial::Family(_))) { params.c } else { 0.0 };
        let solver = SolverOptions {
            dt: f.dt.unwrap_or(1e-3),
            t_end: f.t_end.unwrap_or(1.0),
            dealias: !f.no_dealias,
            record_every: f.record_every.unwrap_or(100),
            frame_speed: f.frame_speed.unwrap_or(default_speed),
        };
        let side = match f.side.as_deref().map(str::to_ascii_lowercase).as_deref() {
            None => None,
            Some("left") => Some(Side::Left),
            Some("right") => Some(Side::Right),
            Some(other) => return Err(format!("--side must be left or right, got `{other}`")),
        };
        Ok(Self {
            coefficients,
            conversions,
            initial,
            params,
            grid,
            solver,
            t: f.t.unwrap_or(0.0),
            x: f.x.unwrap_or(0.5),
            order: f.order.unwrap_or(3),
            side,
            samples: f.samples.unwrap_or(100),
            seed,
            out: f.out.clone(),
            format: f.format,
        })
    }

    pub fn spec(&self) -> Result<SolutionSpec, String> {
        match self.initial {
            Some(Initial::Family(family)) => Ok(SolutionSpec { family, params: self.params }),
            Some(other) => Err(format!("`{}` is initial data, not a closed-form family", other.name())),
            None => Err("--family is required".into()),
        }
    }

    pub fn solution(&self) -> Result<Solution, String> {
        Solution::new(self.spec()?, &self.coefficients).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> Value {
        let c = &self.coefficients;
        let exact = |z: &ComplexRational| json!({ "re": format_rational(&z.re), "im": format_rational(&z.im) });
        json!({
            "alpha": exact(&c.alpha),
            "beta": exact(&c.beta),
            "alpha_f64": complex(c.alpha_c64()),
            "beta_f64": complex(c.beta_c64()),
            "conversions": self.conversions,
            "family": self.initial.map(Initial::name),
            "params": self.params,
            "grid": { "L": self.grid.half_width, "N": self.grid.points },
            "solver": self.solver,
            "t": self.t,
            "x": self.x,
            "order": self.order,
            "side": self.side,
            "samples": self.samples,
            "seed": self.seed,
            "out": self.out.as_ref().map(|p| p.display().to_string()),
            "format": self.format,
        })
    }
}

/// A command's report, optional CSV rendering and exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub csv: Option<String>,
    pub exit: i32,
}

impl Outcome {
    fn new(command: &str, cfg: Option<&RunConfig>, result: Value, exit: i32) -> Self {
        let mut report = json!({ "command": command, "result": result, "exit_code": exit });
        if let Some(cfg) = cfg {
            report["config"] = cfg.to_json();
            report["case_flags"] = case_flags_json(&cfg.coefficients);
        }
        Self { report, csv: None, exit }
    }

    fn usage(command: &str, cfg: Option<&RunConfig>, msg: impl Into<String>) -> Self {
        Self::new(command, cfg, json!({ "error": msg.into() }), EXIT_USAGE)
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    /// The text to emit for `format`; commands without a table fall back to JSON.
    pub fn render(&self, format: Format) -> String {
        match (format, &self.csv) {
            (Format::Csv, Some(csv)) => csv.clone(),
            _ => render(&self.report),
        }
    }
}

fn case_flags_json(c: &Coefficients) -> Value {
    let flags = CaseFlags::of(c);
    let mut v = serde_json::to_value(&flags).expect("flags serialize");
    v["predicates"] = flags.to_json();
    v
}

pub fn cmd_classify(cfg: &RunConfig) -> Outcome {
    let sigma = match cfg.coefficients.sigma() {
        Ok(s) => json!({ "value": format_rational(&s) }),
        Err(e) => json!({ "undefined": e.to_string() }),
    };
    Outcome::new("classify", Some(cfg), json!({ "sigma": sigma }), EXIT_OK)
}

pub fn cmd_verify_symbolic(cfg: &RunConfig, scope: Scope) -> Outcome {
    match scoped_report(&cfg.coefficients, scope) {
        Ok((report, ok)) => Outcome::new("verify-symbolic", Some(cfg), report, if ok { EXIT_OK } else { EXIT_FAILED }),
        Err(e) => Outcome::new("verify-symbolic", Some(cfg), json!({ "error": e.to_string() }), EXIT_FAILED),
    }
}

pub fn cmd_eval(cfg: &RunConfig) -> Outcome {
    let sol = match cfg.solution() {
        Ok(s) => s,
        Err(e) => return Outcome::usage("eval", Some(cfg), e),
    };
    let jet = match sol.jet(cfg.t, cfg.x, cfg.order, cfg.side) {
        Ok(j) => j,
        Err(e) => return Outcome::usage("eval", Some(cfg), e.to_string()),
    };
    let residual = sol.pde_residual(cfg.t, cfg.x, cfg.side).ok();
    let csv = jet.iter().enumerate().fold(String::from("order,re,im\n"), |mut s, (k, z)| {
        let _ = writeln!(s, "{k},{:.16e},{:.16e}", z.re, z.im);
        s
    });
    let result = json!({
        "value": complex(jet[0]),
        "jet": jet.iter().copied().map(complex).collect::<Vec<_>>(),
        "pde_residual": residual.map(complex),
        "asymptotics": sol.asymptotics(),
    });
    Outcome::new("eval", Some(cfg), result, EXIT_OK).with_csv(csv)
}

fn initial_state(cfg: &RunConfig) -> Result<(GridState, Option<f64>), String> {
    let g = cfg.grid;
    match cfg.initial {
        Some(Initial::Family(_)) => Ok((cfg.solution()?.sample_grid(g, 0.0), None)),
        Some(Initial::AiryMode) => {
            let kappa = airy_wavenumber(g, cfg.params.k);
            let s = g.nodes().iter().map(|&x| Complex64::from_polar(cfg.params.amplitude, kappa * x)).collect();
            Ok((GridState::new(g, 0.0, s).map_err(|e| e.to_string())?, Some(kappa)))
        }
        Some(Initial::Gaussian) => {
            let s = g.nodes().iter().map(|&x| Complex64::new(cfg.params.amplitude * (-x * x).exp(), 0.0)).collect();
            Ok((GridState::new(g, 0.0, s).map_err(|e| e.to_string())?, None))
        }
        None => Err("--family is required".into()),
    }
}

/// The grid mode nearest `k` (the first mode when `k = 0`).
fn airy_wavenumber(g: Grid, k: f64) -> f64 {
    let unit = PI / g.half_width;
    let m = (k / unit).round();
    (if m == 0.0 { 1.0 } else { m }) * unit
}

pub fn cmd_sample(cfg: &RunConfig) -> Outcome {
    let state = match cfg.initial {
        Some(Initial::Family(_)) => cfg.solution().map(|s| s.sample_grid(cfg.grid, cfg.t)),
        _ => initial_state(cfg).map(|(s, _)| s),
    };
    let state = match state {
        Ok(s) => s,
        Err(e) => return Outcome::usage("sample", Some(cfg), e),
    };
    let mut csv = Vec::new();
    if let Err(e) = state.write_csv(&mut csv) {
        return Outcome::usage("sample", Some(cfg), e.to_string());
    }
    let nodes = state.grid.nodes();
    let result = json!({
        "t": state.t,
        "x": nodes,
        "re": state.samples.iter().map(|z| z.re).collect::<Vec<_>>(),
        "im": state.samples.iter().map(|z| z.im).collect::<Vec<_>>(),
    });
    Outcome::new("sample", Some(cfg), result, EXIT_OK).with_csv(String::from_utf8(csv).expect("csv is UTF-8"))
}

pub fn cmd_evolve(cfg: &RunConfig) -> Outcome {
    let (initial, kappa) = match initial_state(cfg) {
        Ok(s) => s,
        Err(e) => return Outcome::usage("evolve", Some(cfg), e),
    };
    if let Some(Initial::Family(f)) = cfg.initial {
        if f.is_kink() || f.has_cusp() || f == Family::Peakon {
            return Outcome::usage("evolve", Some(cfg), format!("{f} is not evolved: kinks have unequal boundary values and cusped data is nonsmooth"));
        }
    }
    let coeffs = &cfg.coefficients;
    let traj = match evolve(&initial, coeffs, &cfg.solver) {
        Ok(t) => t,
        Err(e @ EvolutionError::Instability { .. }) => {
            return Outcome::new("evolve", Some(cfg), json!({ "error": e.to_string() }), EXIT_FAILED);
        }
        Err(e) => return Outcome::usage("evolve", Some(cfg), e.to_string()),
    };
    let ids: Vec<QuantityId> = QuantityId::LOW_ORDER
        .into_iter()
        .filter(|q| q.is_admissible(coeffs) && quantity_quadrature(*q, &initial, coeffs).is_ok())
        .collect();
    let drift = match drift_report(&traj, &ids, coeffs) {
        Ok(d) => d,
        Err(e) => return Outcome::new("evolve", Some(cfg), json!({ "error": e.to_string() }), EXIT_FAILED),
    };
    let last = traj.last().expect("trajectory records the initial state");
    let error = match (cfg.initial, kappa) {
        (Some(Initial::Family(_)), _) => cfg.spec().ok().and_then(|s| wave_error(&s, coeffs, last).ok()),
        (_, Some(kappa)) => {
            let exact = |x: f64| Complex64::from_polar(cfg.params.amplitude, kappa * x + kappa.powi(3) * last.t);
            let linf = last.grid.nodes().iter().zip(&last.samples).fold(0.0f64, |m, (&x, u)| m.max((u - exact(x)).norm()));
            Some((linf, f64::NAN))
        }
        _ => None,
    };
    let chi = center_of_momentum(&traj).ok().map(|v| v.into_iter().map(|(t, x)| json!([t, x])).collect::<Vec<_>>());
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("cmkdv-trajectory"));
    let manifest = match write_trajectory(&dir, &traj, &cfg.solver, &drift) {
        Ok(p) => p.display().to_string(),
        Err(e) => return Outcome::usage("evolve", Some(cfg), e.to_string()),
    };
    let drift_json: serde_json::Map<String, Value> = drift
        .iter()
        .map(|(k, d)| (k.name().to_string(), json!({ "initial": complex(d.initial), "relative": d.relative })))
        .collect();
    let result = json!({
        "manifest": manifest,
        "snapshots": traj.len(),
        "t_final": last.t,
        "wave_error": error.map(|(linf, l2)| json!({ "linf": linf, "l2": if l2.is_nan() { Value::Null } else { json!(l2) } })),
        "drift": drift_json,
        "center_of_momentum": chi,
    });
    Outcome::new("evolve", Some(cfg), result, EXIT_OK)
}

pub fn cmd_quantities(cfg: &RunConfig) -> Outcome {
    let sol = match cfg.solution() {
        Ok(s) => s,
        Err(e) => return Outcome::usage("quantities", Some(cfg), e),
    };
    let l = cfg.grid.half_width;
    let panels = (8.0 * l).ceil() as usize;
    let mut rows = Vec::new();
    let mut csv = String::from("quantity,admissible,quadrature_re,quadrature_im,analytic_re,analytic_im,ratio_re,ratio_im,note\n");
    for q in QuantityId::ALL {
        let admissible = q.is_admissible(&cfg.coefficients);
        let quad = closed_form_quantity(q, &sol, cfg.t, l, panels);
        let analytic = analytic_quantity(q, sol.spec(), &cfg.coefficients);
        let ratio = match (&quad, &analytic) {
            (Ok(a), Ok(b)) if b.norm() > 1e-14 => Some(a / b),
            _ => None,
        };
        let note = match (&quad, &analytic) {
            (Err(e), _) => e.to_string(),
            (_, Err(e)) => e.to_string(),
            _ => String::new(),
        };
        let part = |z: Option<Complex64>| z.map(|z| (format!("{:.16e}", z.re), format!("{:.16e}", z.im))).unwrap_or_default();
        let (qr, qi) = part(quad.as_ref().ok().copied());
        let (ar, ai) = part(analytic.as_ref().ok().copied());
        let (rr, ri) = part(ratio);
        let _ = writeln!(csv, "{},{admissible},{qr},{qi},{ar},{ai},{rr},{ri},\"{}\"", q.name(), note.replace('"', "'"));
        rows.push(json!({
            "quantity": q.name(),
            "admissible": admissible,
            "quadrature": quad.as_ref().ok().copied().map(complex),
            "analytic": analytic.as_ref().ok().copied().map(complex),
            "ratio": ratio.map(complex),
            "note": if note.is_empty() { Value::Null } else { json!(note) },
        }));
    }
    Outcome::new("quantities", Some(cfg), json!({ "window_half_width": l, "rows": rows }), EXIT_OK).with_csv(csv)
}

pub fn cmd_table1() -> Outcome {
    let report = table1::reproduce();
    let mut csv = String::from("family,quantity,reference,probes,matches\n");
    for c in &report.cells {
        let _ = writeln!(csv, "{},{},\"{}\",{},{}", c.family.name(), c.quantity.name(), c.reference, c.probes.len(), c.matches);
    }
    let exit = if report.all_match { EXIT_OK } else { EXIT_FAILED };
    let value = serde_json::to_value(&report).expect("table report serializes");
    Outcome::new("table1", None, value, exit).with_csv(csv)
}

/// Random points `ξ ∈ [−W, W]` around the wave center, `W = min(L, 12/√|c|)`,
/// skipping `|ξ| < 10⁻³` so cusps are approached one-sidedly.
pub fn residual_points(cfg: &RunConfig) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let w = cfg.grid.half_width.min(12.0 / cfg.params.c.abs().max(1e-12).sqrt());
    let mut out = Vec::with_capacity(cfg.samples);
    while out.len() < cfg.samples {
        let xi: f64 = rng.gen_range(-w..w);
        if xi.abs() >= 1e-3 {
            out.push(xi);
        }
    }
    out
}

pub fn cmd_residual(cfg: &RunConfig) -> Outcome {
    let sol = match cfg.solution() {
        Ok(s) => s,
        Err(e) => return Outcome::usage("residual", Some(cfg), e),
    };
    let center = cfg.params.xi0 + cfg.params.c * cfg.t;
    let cusp = sol.family().has_cusp();
    let mut max = 0.0f64;
    let mut rows = Vec::new();
    let mut csv = String::from("x,residual_abs\n");
    for xi in residual_points(cfg) {
        let side = cusp.then_some(if xi < 0.0 { Side::Left } else { Side::Right });
        let x = center + xi;
        match sol.pde_residual(cfg.t, x, side) {
            Ok(r) => {
                max = max.max(r.norm());
                let _ = writeln!(csv, "{x:.16e},{:.16e}", r.norm());
                rows.push(json!({ "x": x, "residual": complex(r) }));
            }
            Err(e) => return Outcome::usage("residual", Some(cfg), e.to_string()),
        }
    }
    let exit = if max < RESIDUAL_TOL { EXIT_OK } else { EXIT_FAILED };
    let result = json!({ "tolerance": RESIDUAL_TOL, "max_residual": max, "points": rows });
    Outcome::new("residual", Some(cfg), result, exit).with_csv(csv)
}

/// Runs a parsed command line. `seed` fixes the random sample points.
pub fn run(cli: &Cli, seed: u64) -> Outcome {
    let resolve = |name: &str, f: &Flags| RunConfig::resolve(f, seed).map_err(|e| Outcome::usage(name, None, e));
    let out = match &cli.command {
        Command::Classify(f) => resolve("classify", f).map(|c| cmd_classify(&c)),
        Command::VerifySymbolic { flags, scope } => resolve("verify-symbolic", flags).map(|c| match scope.parse::<Scope>() {
            Ok(s) => cmd_verify_symbolic(&c, s),
            Err(e) => Outcome::usage("verify-symbolic", Some(&c), e),
        }),
        Command::Eval(f) => resolve("eval", f).map(|c| cmd_eval(&c)),
        Command::Sample(f) => resolve("sample", f).map(|c| cmd_sample(&c)),
        Command::Evolve(f) => resolve("evolve", f).map(|c| cmd_evolve(&c)),
        Command::Quantities(f) => resolve("quantities", f).map(|c| cmd_quantities(&c)),
        Command::Table1(_) => Ok(cmd_table1()),
        Command::Residual(f) => resolve("residual", f).map(|c| cmd_residual(&c)),
    };
    out.unwrap_or_else(|e| e)
}

/// Format and output path of a command line, for the binary's emit step.
pub fn output_target(cli: &Cli) -> (Format, Option<PathBuf>) {
    let f = match &cli.command {
        Command::Classify(f) | Command::Eval(f) | Command::Sample(f) | Command::Quantities(f) | Command::Table1(f) | Command::Residual(f) => f,
        Command::VerifySymbolic { flags, .. } => flags,
        // the trajectory directory is the evolve output; the report goes to stdout
        Command::Evolve(f) => return (f.format, None),
    };
    (f.format, f.out.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> (Cli, RunConfig) {
        let cli = Cli::try_parse_from(std::iter::once("cmkdv").chain(args.iter().copied())).unwrap();
        let flags = match &cli.command {
            Command::Classify(f) | Command::Eval(f) | Command::Sample(f) | Command::Evolve(f) | Command::Quantities(f) | Command::Table1(f) | Command::Residual(f) => f.clone(),
            Command::VerifySymbolic { flags, .. } => flags.clone(),
        };
        let c = RunConfig::resolve(&flags, 7).unwrap();
        (cli, c)
    }

    #[test]
    fn classify_examples() {
        for (a, b, on, off) in [
            ("2", "1", vec!["momentum_ok", "energy_ok", "sech_case", "covmass_ok"], vec!["covmom_ok", "twist_ok"]),
            ("1", "0", vec!["hirota", "twist_ok", "momentum_ok", "energy_ok", "sech_case"], vec![]),
            ("3", "1", vec!["sasa_satsuma", "covmom_ok", "momentum_ok", "energy_ok"], vec![]),
        ] {
            let (cli, _) = cfg(&["classify", "--alpha", a, "--beta", b]);
            let o = run(&cli, 0);
            assert_eq!(o.exit, EXIT_OK);
            for k in on {
                assert_eq!(o.report["case_flags"][k], true, "{a},{b}: {k}");
            }
            for k in off {
                assert_eq!(o.report["case_flags"][k], false, "{a},{b}: {k}");
            }
        }
    }

    #[test]
    fn decimals_are_recorded() {
        let (_, c) = cfg(&["classify", "--alpha", "0.5", "--beta", "1/4"]);
        assert_eq!(c.conversions, vec!["alpha: 0.5 -> 1/2".to_string()]);
        assert_eq!(c.to_json()["alpha"]["re"], "1/2");
    }

    #[test]
    fn family_defaults_and_overrides() {
        let (_, c) = cfg(&["eval", "--family", "sech", "--c", "4"]);
        assert_eq!(c.coefficients, Coefficients::real(2, 1));
        assert_eq!(c.params.c, 4.0);
        assert_eq!(c.solver.frame_speed, 4.0);
        let (_, c) = cfg(&["eval", "--family", "sech", "--alpha", "3+i", "--beta", "-1-i", "--Theta", "-0.5"]);
        assert_eq!(c.coefficients, Coefficients::parse("3+i", "-1-i").unwrap());
        assert_eq!(c.params.big_theta, -0.5);
    }

    #[test]
    fn verify_symbolic_scopes() {
        let (cli, _) = cfg(&["verify-symbolic", "--alpha", "3", "--beta", "1", "--scope", "higher"]);
        let o = run(&cli, 0);
        assert_eq!(o.exit, EXIT_OK);
        let rows = o.report["result"]["entries"].as_array().unwrap();
        assert!(rows.iter().any(|r| r["id"] == "H3" && r["status"] == "verified"));
        let (cli, _) = cfg(&["verify-symbolic", "--scope", "nonsense"]);
        assert_eq!(run(&cli, 0).exit, EXIT_USAGE);
    }

    #[test]
    fn residual_is_seeded() {
        let (_, a) = cfg(&["residual", "--family", "peakon"]);
        let mut b = a.clone();
        assert_eq!(residual_points(&a), residual_points(&b));
        b.seed = 8;
        assert_ne!(residual_points(&a), residual_points(&b));
        let o = cmd_residual(&a);
        assert_eq!(o.exit, EXIT_OK, "{}", o.report["result"]["max_residual"]);
    }

    #[test]
    fn reports_are_deterministic() {
        let (cli, _) = cfg(&["quantities", "--family", "kink2", "--L", "60"]);
        let a = run(&cli, 0).render(Format::Json);
        assert_eq!(a, run(&cli, 0).render(Format::Json));
        assert!(a.contains("\"twist\""));
    }

    #[test]
    fn bad_input_is_a_usage_error() {
        let (cli, _) = cfg(&["eval", "--family", "sech", "--c", "-1"]);
        assert_eq!(run(&cli, 0).exit, EXIT_USAGE);
        let (cli, _) = cfg(&["evolve", "--family", "kink2"]);
        assert_eq!(run(&cli, 0).exit, EXIT_USAGE);
        assert!(RunConfig::resolve(&Flags { family: Some("nope".into()), ..Default::default() }, 0).is_err());
    }
}
