//! Travelling-wave reduction `U = a + b f(x − ct)` and the linear-phase
//! reduction `u = e^{i(kx + wt + φ)} f(x − ct)`.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rat, Rational};
use crate::jet::JetPoly;
use crate::model::Coefficients;
use crate::series::Series;

const REL_TOL: f64 = 1e-12;

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * (1.0 + a.abs().max(b.abs()))
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("profile branch outside its domain: {0}")]
    BranchDomain(String),
    #[error("no linear-phase branch applies: {0}")]
    NoBranch(String),
}

/// Coefficients of `0 = (A + Bf + Cf²)f′ + f‴` after rotating `b` to `|b|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Abc {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl Abc {
    pub fn is_real(&self) -> bool {
        [self.a, self.b, self.c].iter().all(|z| z.im.abs() <= REL_TOL * (1.0 + z.re.abs()))
    }

    pub fn real_parts(&self) -> (f64, f64, f64) {
        (self.a.re, self.b.re, self.c.re)
    }
}

/// `A = α|a|² + βa² − c`, `B = (α(a+ā) + 2βa)|b|`, `C = (α+β)|b|²`.
pub fn abc(coeffs: &Coefficients, a: Complex64, bmag: f64, c: f64) -> Abc {
    let (al, be) = (coeffs.alpha_c64(), coeffs.beta_c64());
    Abc {
        a: al * a.norm_sqr() + be * a * a - c,
        b: (al * (a + a.conj()) + be * a * 2.0) * bmag,
        c: (al + be) * bmag * bmag,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolitaryCase {
    /// `a2 ≠ 0, β1 = α2 = β2 = 0`.
    ImaginaryOffset,
    /// `a2 = 0, α2 + β2 = 0`.
    RealOffset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KinkCase {
    /// `a1 = 0, a2 ≠ 0, β1 = α2 = β2 = 0`.
    ImaginaryOffset,
    /// `a1 = a2 = 0, α2 + β2 = 0`.
    ZeroOffset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealnessCases {
    pub solitary: Option<SolitaryCase>,
    pub kink: Option<KinkCase>,
}

/// Which realness case of `Im A = Im B = Im C = 0` the offset `a` falls in.
pub fn realness_cases(coeffs: &Coefficients, a: Complex64) -> RealnessCases {
    let hirota_like = coeffs.beta.re.is_zero() && coeffs.alpha.im.is_zero() && coeffs.beta.im.is_zero();
    let sum_real = coeffs.sum().im.is_zero();
    let solitary = if a.im != 0.0 && hirota_like {
        Some(SolitaryCase::ImaginaryOffset)
    } else if a.im == 0.0 && sum_real {
        Some(SolitaryCase::RealOffset)
    } else {
        None
    };
    let kink = if a.re == 0.0 && a.im != 0.0 && hirota_like {
        Some(KinkCase::ImaginaryOffset)
    } else if a == Complex64::new(0.0, 0.0) && sum_real {
        Some(KinkCase::ZeroOffset)
    } else {
        None
    };
    RealnessCases { solitary, kink }
}

/// The four solitary branches, chosen by exact zero flags rather than float tests.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SolitaryBranch {
    /// `A ≠ 0` with `B` or `C` nonzero: `−6A / (√(B²−6AC) cosh(√−A ξ) + B)`.
    Sech,
    /// `A ≠ 0, B = C = 0`: `exp(sign·√−A ξ)`.
    Exponential { sign: f64 },
    /// `A = 0, B ≠ 0`: `−2B / ((B²/6)ξ² + C)`.
    Rational,
    /// `A = B = 0, C ≠ 0`: `sign·√(−6/C)/ξ`, singular at the origin.
    Pole { sign: f64 },
}

impl SolitaryBranch {
    pub fn select(a_zero: bool, b_zero: bool, c_zero: bool, sign: f64) -> Option<Self> {
        match (a_zero, b_zero, c_zero) {
            (false, true, true) => Some(SolitaryBranch::Exponential { sign }),
            (false, _, _) => Some(SolitaryBranch::Sech),
            (true, false, _) => Some(SolitaryBranch::Rational),
            (true, true, false) => Some(SolitaryBranch::Pole { sign }),
            (true, true, true) => None,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, SolitaryBranch::Pole { .. })
    }
}

fn solitary_series<const N: usize>(branch: SolitaryBranch, a: f64, b: f64, c: f64, xi: Series<N>) -> Result<Series<N>, ReductionError> {
    match branch {
        SolitaryBranch::Sech => {
            if a >= 0.0 {
                return Err(ReductionError::BranchDomain(format!("sech branch needs A<0, got A={a}")));
            }
            let disc = b * b - 6.0 * a * c;
            if disc < 0.0 {
                return Err(ReductionError::BranchDomain(format!("sech branch needs B²−6AC ≥ 0, got {disc}")));
            }
            let den = xi.scale_re((-a).sqrt()).cosh().scale_re(disc.sqrt()).add_const(Complex64::new(b, 0.0));
            Ok(Series::real(-6.0 * a) / den)
        }
        SolitaryBranch::Exponential { sign } => {
            if a >= 0.0 {
                return Err(ReductionError::BranchDomain(format!("exponential branch needs A<0, got A={a}")));
            }
            Ok(xi.scale_re(sign * (-a).sqrt()).exp())
        }
        SolitaryBranch::Rational => {
            let den = (xi * xi).scale_re(b * b / 6.0).add_const(Complex64::new(c, 0.0));
            Ok(Series::real(-2.0 * b) / den)
        }
        SolitaryBranch::Pole { sign } => {
            if c >= 0.0 {
                return Err(ReductionError::BranchDomain(format!("pole branch needs C<0, got C={c}")));
            }
            Ok(Series::real(sign * (-6.0 / c).sqrt()) / xi)
        }
    }
}

fn real4(s: Series<4>) -> [f64; 4] {
    s.derivatives().map(|z| z.re)
}

/// `[f, f′, f″, f‴]` of the solitary profile at `ξ` (with `ξ0 = 0`).
pub fn profile_solitary_jet(a: f64, b: f64, c: f64, branch: SolitaryBranch, xi: f64) -> Result<[f64; 4], ReductionError> {
    Ok(real4(solitary_series(branch, a, b, c, Series::variable(xi))?))
}

pub fn profile_solitary(a: f64, b: f64, c: f64, branch: SolitaryBranch, xi: f64) -> Result<f64, ReductionError> {
    Ok(profile_solitary_jet(a, b, c, branch, xi)?[0])
}

/// `[f, f′, f″, f‴]` of `√(−3A/C) tanh(√(A/2) ξ)`.
pub fn profile_kink_jet(a: f64, c: f64, xi: f64) -> Result<[f64; 4], ReductionError> {
    if !(a > 0.0 && c < 0.0) {
        return Err(ReductionError::BranchDomain(format!("kink needs A>0 and C<0, got A={a}, C={c}")));
    }
    let s = Series::<4>::variable(xi).scale_re((a / 2.0).sqrt()).tanh().scale_re((-3.0 * a / c).sqrt());
    Ok(real4(s))
}

pub fn profile_kink(a: f64, c: f64, xi: f64) -> Result<f64, ReductionError> {
    Ok(profile_kink_jet(a, c, xi)?[0])
}

/// Residuals of the third-order ODE, its once-integrated form and the first integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OdeResiduals {
    pub third_order: f64,
    pub once_integrated: f64,
    pub first_integral: f64,
}

impl OdeResiduals {
    pub fn max_abs(&self) -> f64 {
        self.third_order.abs().max(self.once_integrated.abs()).max(self.first_integral.abs())
    }
}

/// `f = [f, f′, f″, f‴]`; `(A, B, C)` real; `D, E` the first-integral constants.
pub fn ode_residuals(f: [f64; 4], a: f64, b: f64, c: f64, d: f64, e: f64) -> OdeResiduals {
    let [f0, f1, f2, f3] = f;
    OdeResiduals {
        third_order: (a + b * f0 + c * f0 * f0) * f1 + f3,
        once_integrated: a * f0 + 0.5 * b * f0 * f0 + c * f0.powi(3) / 3.0 + f2,
        first_integral: d + e * f0 + a * f0 * f0 + b * f0.powi(3) / 3.0 + c * f0.powi(4) / 6.0 + f1 * f1,
    }
}

/// Checks `B = E = 0`, `D = (3/2)A²/C` and returns `f0 = √(−3A/C)`.
pub fn kink_conditions(abc: (f64, f64, f64), d: f64, e: f64) -> Result<f64, Vec<String>> {
    let (a, b, c) = abc;
    let mut errs = Vec::new();
    if b != 0.0 && !near(b, 0.0) {
        errs.push(format!("B = 0 violated (B = {b})"));
    }
    if e != 0.0 && !near(e, 0.0) {
        errs.push(format!("E = 0 violated (E = {e})"));
    }
    if c == 0.0 {
        errs.push("C ≠ 0 needed for D = (3/2)A²/C".into());
    } else {
        let want = 1.5 * a * a / c;
        if !near(d, want) {
            errs.push(format!("D = (3/2)A²/C violated (D = {d}, expected {want})"));
        }
        if -3.0 * a / c <= 0.0 {
            errs.push(format!("−3A/C > 0 violated ({})", -3.0 * a / c));
        }
    }
    if errs.is_empty() {
        Ok((-3.0 * a / c).sqrt())
    } else {
        Err(errs)
    }
}

/// `(6/C)(D + A f² + C f⁴/6) − (f² − f0²)²` with `D = (3/2)A²/C`, `f0² = −3A/C`,
/// as a polynomial in `f` (carried by the generator `u1`).
pub fn kink_quartic_defect(a: &Rational, c: &Rational) -> JetPoly {
    let f = JetPoly::u1(0);
    let d = rat(3, 2) * a * a / c;
    let f0sq = rat(-3, 1) * a / c;
    let quartic = &JetPoly::constant(d) + &(&f.pow(2).scale(a) + &f.pow(4).scale(&(c / rat(6, 1))));
    let lhs = quartic.scale(&(rat(6, 1) / c));
    let rhs = (&f.pow(2) - &JetPoly::constant(f0sq)).pow(2);
    &lhs - &rhs
}

/// Residuals of the real pair split from the linear-phase ODE for `U = f(ξ)` real.
pub fn linear_phase_residuals(f: [f64; 4], coeffs: &Coefficients, c: f64, k: f64, w: f64) -> (f64, f64) {
    let (al, be) = (coeffs.alpha_c64(), coeffs.beta_c64());
    let [f0, f1, f2, f3] = f;
    let r1 = f3 + ((al.re + be.re) * f0 * f0 - c - 3.0 * k * k) * f1 + (be.im - al.im) * k * f0.powi(3);
    let r2 = 3.0 * k * f2 + (al.im + be.im) * f0 * f0 * f1 + (w - k.powi(3)) * f0 + (al.re - be.re) * k * f0.powi(3);
    (r1, r2)
}

/// `w = −(3c + 8k²)k`.
pub fn linear_phase_frequency(c: f64, k: f64) -> f64 {
    -(3.0 * c + 8.0 * k * k) * k
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LinearPhaseBranch {
    /// `f″ − (c+3k²)f + (α1/3) f³ = 0` with `α2 = β1 = β2 = 0, α1 ≠ 0`.
    Cubic { w: f64 },
    /// `f′ = s f` with `|α| = |β|` and the two linear constraints; `s` lists the admissible slopes.
    Exponential { w: f64, slopes: Vec<f64>, decay_rate: f64, sigma: Option<f64> },
}

/// Decides which branch of the overdetermined pair applies at `(c, k)`.
pub fn linear_phase_branch(coeffs: &Coefficients, c: f64, k: f64) -> Result<LinearPhaseBranch, ReductionError> {
    let (a, b) = (&coeffs.alpha, &coeffs.beta);
    let w = linear_phase_frequency(c, k);
    if a.im.is_zero() && b.is_zero() && !a.re.is_zero() {
        return Ok(LinearPhaseBranch::Cubic { w });
    }
    if a.norm_sqr() != b.norm_sqr() || a.is_zero() {
        return Err(ReductionError::NoBranch("needs α2 = β1 = β2 = 0 or |α| = |β| ≠ 0".into()));
    }
    let q = c + 3.0 * k * k;
    if q <= 0.0 {
        return Err(ReductionError::NoBranch(format!("c+3k² = {q} must be positive")));
    }
    let (al, be) = (coeffs.alpha_c64(), coeffs.beta_c64());
    let root = q.sqrt();
    let mut slopes = Vec::new();
    for sign in [1.0, -1.0] {
        // f′ = s f, with s = sign·√(c+3k²)
        let s = sign * root;
        let e1 = s * (al.re + be.re) - (al.im - be.im) * k;
        let e2 = s * (al.im + be.im) + (al.re - be.re) * k;
        if near(e1, 0.0) && near(e2, 0.0) {
            slopes.push(s);
        }
    }
    if slopes.is_empty() {
        return Err(ReductionError::NoBranch(format!("linear constraints fail at c = {c}, k = {k}")));
    }
    let sigma = coeffs.sigma().ok().map(|s| crate::exact::to_f64(&s));
    Ok(LinearPhaseBranch::Exponential { w, slopes, decay_rate: root, sigma })
}

/// The reduced profiles `f(ξ)` with the offset `a` and modulus `|b|` they come with.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ReducedProfile {
    /// `−(12a/|b|)/(2cξ² + 3)`, `a = √(c/(α1+β1))`.
    Rational,
    /// sech-type, `a = √(c/(α1+β1)) tanh Θ`.
    SechOffset { big_theta: f64 },
    /// `exp(−√c|ξ|)/|b|`, `a = sinh Θ`.
    Cusp { big_theta: f64 },
    /// `−(12 Re a/|b|)/(2c cos²θ ξ² + 3)`, `a = √(c/α1) e^{iθ}`.
    RationalAngle { theta: f64 },
    /// sech-type, `a = √(c/α1) tanh Θ e^{iθ}`.
    SechOffsetAngle { big_theta: f64, theta: f64 },
    /// `±(|a|/|b|)/(√(−c/6) ξ)`, `a = i√(c/α1)`; needs `c < 0`, `α1 < 0`.
    Pole { sign: f64 },
    /// `√(3c/α) sech Θ tanh(sech Θ √(−c/2) ξ)/|b|`, `a = i√(c/α) tanh Θ`.
    KinkOffset { big_theta: f64 },
    /// `√(3c/(α+β)) tanh(√(−c/2) ξ)/|b|`, `a = 0`.
    Kink,
}

impl ReducedProfile {
    pub fn is_kink(&self) -> bool {
        matches!(self, ReducedProfile::KinkOffset { .. } | ReducedProfile::Kink)
    }

    /// The offset `a` for speed `c`.
    pub fn offset(&self, coeffs: &Coefficients, c: f64) -> Complex64 {
        let a1 = coeffs.alpha.re.clone();
        let s1 = coeffs.sum().re;
        let (a1, s1) = (crate::exact::to_f64(&a1), crate::exact::to_f64(&s1));
        let i = Complex64::new(0.0, 1.0);
        match *self {
            ReducedProfile::Rational => Complex64::new((c / s1).sqrt(), 0.0),
            ReducedProfile::SechOffset { big_theta } => Complex64::new((c / s1).sqrt() * big_theta.tanh(), 0.0),
            ReducedProfile::Cusp { big_theta } => Complex64::new(big_theta.sinh(), 0.0),
            ReducedProfile::RationalAngle { theta } => Complex64::from_polar((c / a1).sqrt(), theta),
            ReducedProfile::SechOffsetAngle { big_theta, theta } => Complex64::from_polar((c / a1).sqrt() * big_theta.tanh(), theta),
            ReducedProfile::Pole { .. } => i * (c / a1).sqrt(),
            ReducedProfile::KinkOffset { big_theta } => i * (c / a1).sqrt() * big_theta.tanh(),
            ReducedProfile::Kink => Complex64::new(0.0, 0.0),
        }
    }

    /// `[f, f′, f″, f‴]`. At `ξ = 0` the cusp profile uses its right branch.
    pub fn jet(&self, coeffs: &Coefficients, c: f64, bmag: f64, xi: f64) -> [f64; 4] {
        let a1 = crate::exact::to_f64(&coeffs.alpha.re);
        let s1 = crate::exact::to_f64(&coeffs.sum().re);
        let x = Series::<4>::variable(xi);
        let sech_type = |mag: f64, cos_t: f64, th: f64| {
            let (sh, se) = (th.sinh(), 1.0 / th.cosh());
            let rad = (6.0 + 4.0 * cos_t * cos_t * sh * sh).sqrt();
            let den = x.scale_re(se * c.sqrt()).cosh().scale_re(rad).add_const(Complex64::new(2.0 * cos_t * sh, 0.0));
            // 6 csch Θ · a/|b| with a ∝ tanh Θ, written without the csch factor
            Series::real(6.0 * mag * se / bmag) / den
        };
        let s = match *self {
            ReducedProfile::Rational => {
                let a = (c / s1).sqrt();
                Series::real(-12.0 * a / bmag) / (x * x).scale_re(2.0 * c).add_const(Complex64::new(3.0, 0.0))
            }
            ReducedProfile::SechOffset { big_theta } => sech_type((c / s1).sqrt(), 1.0, big_theta),
            ReducedProfile::Cusp { .. } => {
                let side = if xi < 0.0 { -1.0 } else { 1.0 };
                x.scale_re(-c.sqrt() * side).exp().scale_re(1.0 / bmag)
            }
            ReducedProfile::RationalAngle { theta } => {
                let re_a = (c / a1).sqrt() * theta.cos();
                let den = (x * x).scale_re(2.0 * c * theta.cos().powi(2)).add_const(Complex64::new(3.0, 0.0));
                Series::real(-12.0 * re_a / bmag) / den
            }
            ReducedProfile::SechOffsetAngle { big_theta, theta } => sech_type((c / a1).sqrt(), theta.cos(), big_theta),
            ReducedProfile::Pole { sign } => {
                let a = (c / a1).sqrt();
                Series::real(sign * a / (bmag * (-c / 6.0).sqrt())) / x
            }
            ReducedProfile::KinkOffset { big_theta } => {
                let se = 1.0 / big_theta.cosh();
                x.scale_re(se * (-c / 2.0).sqrt()).tanh().scale_re((3.0 * c / a1).sqrt() * se / bmag)
            }
            ReducedProfile::Kink => x.scale_re((-c / 2.0).sqrt()).tanh().scale_re((3.0 * c / s1).sqrt() / bmag),
        };
        real4(s)
    }

    /// ODE residuals at `ξ`, with `D, E` set by the boundary conditions of the profile type.
    pub fn residuals(&self, coeffs: &Coefficients, c: f64, bmag: f64, xi: f64) -> (Abc, OdeResiduals) {
        let abc = abc(coeffs, self.offset(coeffs, c), bmag, c);
        let (a, b, cc) = abc.real_parts();
        let (d, e) = if self.is_kink() { (1.5 * a * a / cc, 0.0) } else { (0.0, 0.0) };
        (abc, ode_residuals(self.jet(coeffs, c, bmag, xi), a, b, cc, d, e))
    }
}

/// Chebyshev-clustered sample points on `[−h, h]`, skipping `|ξ| < 1e−3`.
pub fn sample_points(n: usize, half_width: f64) -> Vec<f64> {
    (0..n)
        .map(|j| half_width * (std::f64::consts::PI * (j as f64 + 0.5) / n as f64).cos())
        .filter(|x| x.abs() >= 1e-3)
        .collect()
}
