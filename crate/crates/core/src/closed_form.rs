//! Exact travelling-wave families: solitary waves, the cusp wave, kinks, and
//! the linear-phase soliton, peakon and kink.
//!
//! Every family is written once as a formula over [`Series`], so values, x-jets
//! and the time derivative all come from the same expression.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::to_f64;
use crate::grid::{Grid, GridState};
use crate::jet::{JetError, JetPoint};
use crate::model::{sigma, Coefficients};
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Solitary1,
    Solitary2,
    Solitary3,
    Solitary4,
    Cusp,
    Sech,
    Kink1,
    Kink2,
    LPSoliton,
    Peakon,
    LPKink,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Solitary1,
        Family::Solitary2,
        Family::Solitary3,
        Family::Solitary4,
        Family::Cusp,
        Family::Sech,
        Family::Kink1,
        Family::Kink2,
        Family::LPSoliton,
        Family::Peakon,
        Family::LPKink,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Solitary1 => "solitary1",
            Family::Solitary2 => "solitary2",
            Family::Solitary3 => "solitary3",
            Family::Solitary4 => "solitary4",
            Family::Cusp => "cusp",
            Family::Sech => "sech",
            Family::Kink1 => "kink1",
            Family::Kink2 => "kink2",
            Family::LPSoliton => "lp-soliton",
            Family::Peakon => "peakon",
            Family::LPKink => "lp-kink",
        }
    }

    /// Families whose profile is not smooth at `x = ct`.
    pub fn has_cusp(self) -> bool {
        matches!(self, Family::Cusp | Family::Peakon)
    }

    pub fn is_kink(self) -> bool {
        matches!(self, Family::Kink1 | Family::Kink2 | Family::LPKink)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ClosedFormError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name().replace('-', "") == key)
            .ok_or_else(|| ClosedFormError::UnknownFamily(s.to_string()))
    }
}

/// Parameters shared by the families; each family reads the subset it needs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub c: f64,
    pub phi: f64,
    pub theta: f64,
    #[serde(rename = "Theta")]
    pub big_theta: f64,
    pub k: f64,
    #[serde(rename = "A")]
    pub amplitude: f64,
    pub xi0: f64,
}

impl Default for Params {
    fn default() -> Self {
        Self { c: 1.0, phi: 0.0, theta: 0.0, big_theta: 0.0, k: 0.0, amplitude: 1.0, xi0: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionSpec {
    pub family: Family,
    pub params: Params,
}

impl SolutionSpec {
    pub fn new(family: Family) -> Self {
        Self { family, params: Params::default() }
    }

    pub fn c(mut self, c: f64) -> Self {
        self.params.c = c;
        self
    }

    pub fn phi(mut self, phi: f64) -> Self {
        self.params.phi = phi;
        self
    }

    pub fn theta(mut self, theta: f64) -> Self {
        self.params.theta = theta;
        self
    }

    pub fn big_theta(mut self, v: f64) -> Self {
        self.params.big_theta = v;
        self
    }

    pub fn k(mut self, k: f64) -> Self {
        self.params.k = k;
        self
    }

    pub fn amplitude(mut self, a: f64) -> Self {
        self.params.amplitude = a;
        self
    }

    pub fn xi0(mut self, xi0: f64) -> Self {
        self.params.xi0 = xi0;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("invalid solution spec: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("two-sided jet requested at the cusp x = ct; pass a side")]
    JetAtCusp,
    #[error("jet order {0} exceeds the supported maximum {MAX_JET_ORDER}")]
    JetOrder(usize),
    #[error("unknown solution family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Which branch of a cusp family to follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

pub const MAX_JET_ORDER: usize = 7;
const JET_LEN: usize = MAX_JET_ORDER + 1;

/// How the profile approaches its limits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Decay {
    Exponential(f64),
    /// `O(|x|^{-p})`.
    Algebraic(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticPair {
    pub u_minus: Complex64,
    pub u_plus: Complex64,
    pub decay: Decay,
    /// False when only `|u|` has a limit (the phase keeps winding).
    pub phase_converges: bool,
}

/// A validated solution bound to its coefficients.
#[derive(Clone, Debug)]
pub struct Solution {
    spec: SolutionSpec,
    coeffs: Coefficients,
    alpha: Complex64,
    beta: Complex64,
    /// σ for the peakon, unused elsewhere.
    sigma: f64,
}

fn real_positive(v: f64) -> f64 {
    debug_assert!(v > 0.0, "radicand {v} must be positive after validation");
    v.sqrt()
}

impl Solution {
    pub fn new(spec: SolutionSpec, coeffs: &Coefficients) -> Result<Self, ClosedFormError> {
        validate(&spec, coeffs).map_err(ClosedFormError::Invalid)?;
        let sig = if spec.family == Family::Peakon { to_f64(&sigma(coeffs).expect("validated")) } else { 0.0 };
        Ok(Self { spec, coeffs: coeffs.clone(), alpha: coeffs.alpha_c64(), beta: coeffs.beta_c64(), sigma: sig })
    }

    pub fn spec(&self) -> &SolutionSpec {
        &self.spec
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `ξ = x − ct − ξ0`.
    pub fn xi(&self, t: f64, x: f64) -> f64 {
        x - self.spec.params.c * t - self.spec.params.xi0
    }

    fn branch(&self, t: f64, x: f64, side: Option<Side>) -> Result<f64, ClosedFormError> {
        if !self.spec.family.has_cusp() {
            return Ok(0.0);
        }
        if let Some(s) = side {
            return Ok(s.sign());
        }
        let xi = self.xi(t, x);
        if xi == 0.0 {
            Err(ClosedFormError::JetAtCusp)
        } else {
            Ok(xi.signum())
        }
    }

    /// Peakon constants `(κ, s, v)`: decay rate, phase slope and phase speed.
    pub fn peakon_constants(&self) -> (f64, f64, f64) {
        let p = &self.spec.params;
        let s2 = self.sigma * self.sigma;
        let kappa = real_positive(p.c * s2 / (s2 - 3.0));
        let slope = real_positive(p.c / (s2 - 3.0));
        let v = (3.0 * s2 - 1.0) / (s2 - 3.0) * p.c;
        (kappa, slope, v)
    }

    fn formula<const N: usize>(&self, t: Series<N>, x: Series<N>, branch: f64) -> Series<N> {
        let p = &self.spec.params;
        let c = p.c;
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let e_phi = Complex64::from_polar(1.0, p.phi);
        let xs = x.add_const(-Complex64::new(p.xi0, 0.0));
        let xi = xs - t.scale_re(c);
        let a = self.alpha.re;
        let ab = (self.alpha + self.beta).re;
        let (sh, ch) = (p.big_theta.sinh(), p.big_theta.cosh());
        let (th, se) = (sh / ch, 1.0 / ch);
        match self.spec.family {
            Family::Solitary1 | Family::Solitary3 => {
                let (amp, cos_t, e_theta) = if self.spec.family == Family::Solitary1 {
                    (real_positive(c / a), p.theta.cos(), Complex64::from_polar(1.0, p.theta))
                } else {
                    (real_positive(c / ab), 1.0, one)
                };
                let rad = (6.0 + 4.0 * cos_t * cos_t * sh * sh).sqrt();
                let den = xi.scale_re(c.sqrt() * se).cosh().scale_re(rad).add_const(Complex64::new(2.0 * cos_t * sh, 0.0));
                (Series::real(6.0 * se) / den).add_const(e_theta * th).scale(e_phi * amp)
            }
            Family::Solitary2 | Family::Solitary4 => {
                let (amp, cos_t, e_theta) = if self.spec.family == Family::Solitary2 {
                    (real_positive(c / a), p.theta.cos(), Complex64::from_polar(1.0, p.theta))
                } else {
                    (real_positive(c / ab), 1.0, one)
                };
                let den = (xi * xi).scale_re(2.0 * c * cos_t * cos_t).add_const(Complex64::new(3.0, 0.0));
                (-(Series::real(12.0 * cos_t) / den)).add_const(e_theta).scale(e_phi * amp)
            }
            Family::Cusp => xi.scale_re(-c.sqrt() * branch).exp().add_const(Complex64::new(sh, 0.0)).scale(e_phi),
            Family::Sech => xi.scale_re(c.sqrt()).sech().scale(e_phi * real_positive(6.0 * c / ab)),
            Family::Kink1 => xi.scale_re(real_positive(-c / 2.0)).tanh().scale(e_phi * real_positive(3.0 * c / ab)),
            Family::Kink2 => {
                let inner = xi.scale_re(real_positive(-c / 2.0) * se).tanh().scale_re(3f64.sqrt() * se);
                inner.add_const(i * th).scale(e_phi * real_positive(c / a))
            }
            Family::LPSoliton | Family::LPKink => {
                let q = c + 3.0 * p.k * p.k;
                let phase = (xs - t.scale_re(3.0 * c + 8.0 * p.k * p.k)).scale(i * p.k).exp();
                let profile = if self.spec.family == Family::LPSoliton {
                    xi.scale_re(real_positive(q)).sech().scale_re(real_positive(6.0 * q / a))
                } else {
                    xi.scale_re(real_positive(-q / 2.0)).tanh().scale_re(real_positive(3.0 * q / a))
                };
                (phase * profile).scale(e_phi)
            }
            Family::Peakon => {
                let (kappa, slope, v) = self.peakon_constants();
                let eps = self.sigma.signum() * branch;
                let phase = (xs - t.scale_re(v)).scale(i * eps * slope).exp();
                let envelope = xi.scale_re(-kappa * branch).exp();
                (phase * envelope).scale(e_phi * p.amplitude)
            }
        }
    }

    /// `u(t, x)`. At the cusp of the peakon the phase factor is taken with ε = 0.
    pub fn evaluate(&self, t: f64, x: f64) -> Complex64 {
        let branch = if self.spec.family.has_cusp() { self.xi(t, x).signum() * (self.xi(t, x) != 0.0) as i32 as f64 } else { 0.0 };
        self.formula::<1>(Series::real(t), Series::real(x), branch).value()
    }

    /// `[u, u_x, ..., ∂_x^order u]`.
    pub fn jet(&self, t: f64, x: f64, order: usize, side: Option<Side>) -> Result<Vec<Complex64>, ClosedFormError> {
        if order > MAX_JET_ORDER {
            return Err(ClosedFormError::JetOrder(order));
        }
        let branch = self.branch(t, x, side)?;
        let s = self.formula::<JET_LEN>(Series::real(t), Series::variable(x), branch);
        Ok(s.derivatives()[..=order].to_vec())
    }

    /// `u_t(t, x)` from the same formula, expanded in `t`.
    pub fn time_derivative(&self, t: f64, x: f64, side: Option<Side>) -> Result<Complex64, ClosedFormError> {
        let branch = self.branch(t, x, side)?;
        Ok(self.formula::<2>(Series::variable(t), Series::real(x), branch).derivative(1))
    }

    pub fn evaluate_jet(&self, t: f64, x: f64, order: usize, side: Option<Side>) -> Result<JetPoint, ClosedFormError> {
        Ok(JetPoint::from_complex(t, x, &self.jet(t, x, order, side)?)?)
    }

    /// `u_t + α ū u u_x + β u² ū_x + u_xxx` from analytic jets.
    pub fn pde_residual(&self, t: f64, x: f64, side: Option<Side>) -> Result<Complex64, ClosedFormError> {
        let j = self.jet(t, x, 3, side)?;
        let ut = self.time_derivative(t, x, side)?;
        let (u, ux, uxxx) = (j[0], j[1], j[3]);
        Ok(ut + self.alpha * u.conj() * u * ux + self.beta * u * u * ux.conj() + uxxx)
    }

    pub fn asymptotics(&self) -> AsymptoticPair {
        let p = &self.spec.params;
        let c = p.c;
        let a = self.alpha.re;
        let ab = (self.alpha + self.beta).re;
        let e_phi = Complex64::from_polar(1.0, p.phi);
        let e_pt = Complex64::from_polar(1.0, p.phi + p.theta);
        let (th, se) = (p.big_theta.tanh(), 1.0 / p.big_theta.cosh());
        let same = |v: Complex64, decay: Decay| AsymptoticPair { u_minus: v, u_plus: v, decay, phase_converges: true };
        let zero = Complex64::new(0.0, 0.0);
        match self.spec.family {
            Family::Solitary1 => same(e_pt * (c / a).sqrt() * th, Decay::Exponential(c.sqrt() * se)),
            Family::Solitary2 => same(e_pt * (c / a).sqrt(), Decay::Algebraic(2)),
            Family::Solitary3 => same(e_phi * (c / ab).sqrt() * th, Decay::Exponential(c.sqrt() * se)),
            Family::Solitary4 => same(e_phi * (c / ab).sqrt(), Decay::Algebraic(2)),
            Family::Cusp => same(e_phi * p.big_theta.sinh(), Decay::Exponential(c.sqrt())),
            Family::Sech => same(zero, Decay::Exponential(c.sqrt())),
            Family::LPSoliton => same(zero, Decay::Exponential((c + 3.0 * p.k * p.k).sqrt())),
            Family::Peakon => same(zero, Decay::Exponential(self.peakon_constants().0)),
            Family::Kink1 => {
                let f0 = e_phi * (3.0 * c / ab).sqrt();
                AsymptoticPair { u_minus: -f0, u_plus: f0, decay: Decay::Exponential((-2.0 * c).sqrt()), phase_converges: true }
            }
            Family::Kink2 => {
                let base = e_phi * (c / a).sqrt();
                let i = Complex64::new(0.0, 1.0);
                AsymptoticPair {
                    u_minus: base * (i * th - 3f64.sqrt() * se),
                    u_plus: base * (i * th + 3f64.sqrt() * se),
                    decay: Decay::Exponential((-2.0 * c).sqrt() * se),
                    phase_converges: true,
                }
            }
            Family::LPKink => {
                let q = c + 3.0 * p.k * p.k;
                let f0 = e_phi * (3.0 * q / a).sqrt();
                AsymptoticPair { u_minus: -f0, u_plus: f0, decay: Decay::Exponential((-2.0 * q).sqrt()), phase_converges: false }
            }
        }
    }

    pub fn sample_grid(&self, grid: Grid, t: f64) -> GridState {
        let samples = grid.nodes().into_iter().map(|x| self.evaluate(t, x)).collect();
        GridState::new(grid, t, samples).expect("closed forms are finite on the grid")
    }
}

/// Checks the coefficient case and sign constraints of the family.
pub fn validate(spec: &SolutionSpec, coeffs: &Coefficients) -> Result<(), Vec<String>> {
    let mut errs = Vec::new();
    let p = &spec.params;
    let (a, b) = (&coeffs.alpha, &coeffs.beta);
    let s = coeffs.sum();
    let mut need = |ok: bool, what: &str| {
        if !ok {
            errs.push(format!("{what} violated"));
        }
    };
    for (name, v) in [("c", p.c), ("phi", p.phi), ("theta", p.theta), ("Theta", p.big_theta), ("k", p.k), ("A", p.amplitude), ("xi0", p.xi0)] {
        need(v.is_finite(), &format!("{name} finite"));
    }
    let hirota_case = |need: &mut dyn FnMut(bool, &str)| {
        need(a.im.is_zero(), "Im α = 0");
        need(b.is_zero(), "β = 0");
    };
    match spec.family {
        Family::Solitary1 | Family::Solitary2 => {
            hirota_case(&mut need);
            need(p.c > 0.0, "c>0");
            need(a.re.is_positive(), "α>0");
        }
        Family::Solitary3 | Family::Solitary4 | Family::Sech => {
            need(s.im.is_zero(), "Im(α+β) = 0");
            need(p.c > 0.0, "c>0");
            need(s.re.is_positive(), "α+β>0");
        }
        Family::Cusp => {
            need(s.is_zero(), "α+β = 0");
            need(p.c > 0.0, "c>0");
        }
        Family::Kink1 => {
            need(s.im.is_zero(), "Im(α+β) = 0");
            need(p.c < 0.0, "c<0");
            need(s.re.is_negative(), "α+β<0");
        }
        Family::Kink2 => {
            hirota_case(&mut need);
            need(p.c < 0.0, "c<0");
            need(a.re.is_negative(), "α<0");
        }
        Family::LPSoliton => {
            hirota_case(&mut need);
            need(p.c + 3.0 * p.k * p.k > 0.0, "c+3k²>0");
            need(a.re.is_positive(), "α>0");
        }
        Family::LPKink => {
            hirota_case(&mut need);
            need(p.c + 3.0 * p.k * p.k < 0.0, "c+3k²<0");
            need(a.re.is_negative(), "α<0");
        }
        Family::Peakon => match sigma(coeffs) {
            Ok(sig) if !sig.is_zero() => {
                let s2 = to_f64(&sig).powi(2);
                need((p.c > 0.0 && s2 > 3.0) || (p.c < 0.0 && s2 < 3.0), "(c>0 and σ²>3) or (c<0 and σ²<3)");
                need(p.amplitude > 0.0, "A>0");
            }
            Ok(_) => need(false, "σ ≠ 0"),
            Err(e) => need(false, &format!("|α| = |β| with σ well-defined ({e})")),
        },
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

pub fn evaluate(spec: &SolutionSpec, coeffs: &Coefficients, t: f64, x: f64) -> Result<Complex64, ClosedFormError> {
    Ok(Solution::new(*spec, coeffs)?.evaluate(t, x))
}

pub fn evaluate_jet(
    spec: &SolutionSpec,
    coeffs: &Coefficients,
    t: f64,
    x: f64,
    order: usize,
    side: Option<Side>,
) -> Result<JetPoint, ClosedFormError> {
    Solution::new(*spec, coeffs)?.evaluate_jet(t, x, order, side)
}

pub fn asymptotics(spec: &SolutionSpec, coeffs: &Coefficients) -> Result<AsymptoticPair, ClosedFormError> {
    Ok(Solution::new(*spec, coeffs)?.asymptotics())
}

pub fn sample_grid(spec: &SolutionSpec, coeffs: &Coefficients, grid: Grid, t: f64) -> Result<GridState, ClosedFormError> {
    Ok(Solution::new(*spec, coeffs)?.sample_grid(grid, t))
}

/// Representative admissible coefficients and parameters for each family.
pub fn representative(family: Family) -> (SolutionSpec, Coefficients) {
    let cx = |a: &str, b: &str| Coefficients::parse(a, b).expect("literal coefficients");
    let s = SolutionSpec::new(family);
    match family {
        Family::Solitary1 => (s.c(1.3).theta(0.7).big_theta(0.4).phi(0.3), cx("2", "0")),
        Family::Solitary2 => (s.c(0.8).theta(0.5).phi(1.1), cx("3/2", "0")),
        Family::Solitary3 => (s.c(1.1).big_theta(-0.6).phi(0.2), cx("2+i", "1-i")),
        Family::Solitary4 => (s.c(0.9).phi(2.0), cx("2+i", "1-i")),
        Family::Cusp => (s.c(1.2).big_theta(0.3).phi(0.4), cx("1+2i", "-1-2i")),
        Family::Sech => (s.c(1.0).phi(0.5), cx("2", "1")),
        Family::Kink1 => (s.c(-2.0).phi(0.6), cx("-2+i", "-1-i")),
        Family::Kink2 => (s.c(-1.0).big_theta(1.0).phi(0.1), cx("-1", "0")),
        Family::LPSoliton => (s.c(1.0).k(0.5).phi(0.2), cx("1", "0")),
        Family::Peakon => (s.c(1.0).amplitude(1.5).phi(0.3), cx("-3/5-4/5i", "1")),
        Family::LPKink => (s.c(-2.0).k(0.4).phi(0.7), cx("-2", "0")),
    }
}

/// Unwraps the asymptotic phase rotation `φ± − φ` into `(−π, π]`.
pub fn relative_phase(u: Complex64, phi: f64) -> f64 {
    let mut d = u.arg() - phi;
    while d <= -PI {
        d += 2.0 * PI;
    }
    while d > PI {
        d -= 2.0 * PI;
    }
    d
}
