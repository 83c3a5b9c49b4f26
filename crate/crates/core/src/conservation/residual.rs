//! Conservation, adjoint-symmetry and Helmholtz residuals.

use crate::exact::{rat, ComplexRational};
use crate::jet::{ComplexJetPoly, JetError, JetPoly};
use crate::model::Coefficients;

use super::ConservationError;

/// `D_t T + D_x X` with `u_t` eliminated on solutions.
pub fn conservation_residual(density: &ComplexJetPoly, flux: &ComplexJetPoly, coeffs: &Coefficients) -> Result<ComplexJetPoly, JetError> {
    Ok(&density.dt(&coeffs.rhs())? + &flux.dx()?)
}

/// `X` with `D_t T + D_x X = 0`, obtained by inverting `D_x` on `−D_t T`.
pub fn flux_from_density(density: &JetPoly, coeffs: &Coefficients) -> Result<JetPoly, ConservationError> {
    let r = -density.dt(&coeffs.rhs())?;
    r.integrate_x().map_err(|e| match e {
        JetError::NotExact { order } => ConservationError::NotConserved(format!("−D_t T is not a total x-derivative (order {order})")),
        other => other.into(),
    })
}

pub fn flux_from_complex_density(density: &ComplexJetPoly, coeffs: &Coefficients) -> Result<ComplexJetPoly, ConservationError> {
    let re = flux_from_density(&density.re, coeffs)?;
    let im = flux_from_density(&density.im, coeffs)?;
    Ok(ComplexJetPoly::new(re, im))
}

/// `D_tQ + (2β−α)uu_x Q̄ + (ᾱ−2β̄)ūu_x Q + ᾱūu D_xQ + βu² D_xQ̄ + D_x³Q`.
pub fn determining_residual(q: &ComplexJetPoly, coeffs: &Coefficients) -> Result<ComplexJetPoly, JetError> {
    let (a, b) = (&coeffs.alpha, &coeffs.beta);
    let k = |c: &ComplexRational| ComplexJetPoly::constant(c);
    let two = rat(2, 1);
    let (u, ub, ux) = (ComplexJetPoly::u(0), ComplexJetPoly::ubar(0), ComplexJetPoly::u(1));
    let qb = q.conj();
    let qx = q.dx()?;
    let terms = [
        q.dt(&coeffs.rhs())?,
        &(&(&k(&(&b.scale(&two) - a)) * &u) * &ux) * &qb,
        &(&(&k(&(&a.conj() - &b.conj().scale(&two))) * &ub) * &ux) * q,
        &(&(&k(&a.conj()) * &ub) * &u) * &qx,
        &(&(&k(b) * &u) * &u) * &qx.conj(),
        q.dx_n(3)?,
    ];
    Ok(terms.iter().fold(ComplexJetPoly::zero(), |acc, t| &acc + t))
}

/// Order of the Helmholtz system: 2 for multipliers up to `u_xx`, 4 up to `u_xxxx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HelmholtzOrder {
    Two,
    Four,
}

impl HelmholtzOrder {
    pub fn from_order(n: usize) -> Option<Self> {
        match n {
            0..=2 => Some(Self::Two),
            3 | 4 => Some(Self::Four),
            _ => None,
        }
    }

    pub fn max_order(self) -> usize {
        match self {
            Self::Two => 2,
            Self::Four => 4,
        }
    }
}

/// Each Helmholtz condition as `(label, residual)`; `Q` is variational iff all vanish.
pub fn helmholtz_residuals(q: &ComplexJetPoly, order: HelmholtzOrder) -> Result<Vec<(&'static str, JetPoly)>, ConservationError> {
    if let Some(n) = q.order() {
        if n > order.max_order() {
            return Err(ConservationError::OrderMismatch { order: n, system: order.max_order() });
        }
    }
    let a: Vec<ComplexJetPoly> = (0..=4).map(|k| q.partial_u(k)).collect();
    let b: Vec<ComplexJetPoly> = (0..=4).map(|k| q.partial_ubar(k)).collect();
    let d = |p: &JetPoly, n: usize| p.dx_n(n);
    let s = |n: i64| rat(n, 1);
    let mut out = Vec::new();
    match order {
        HelmholtzOrder::Two => {
            out.push(("D_x Re Q_ūxx = Re Q_ūx", &d(&b[2].re, 1)? - &b[1].re));
            out.push(("D_x Im Q_ūxx = Im Q_ūx", &d(&b[2].im, 1)? - &b[1].im));
            out.push(("Im Q_uxx = 0", a[2].im.clone()));
            out.push(("D_x Re Q_uxx = Re Q_ux", &d(&a[2].re, 1)? - &a[1].re));
            out.push(("D_x Im Q_ux = 2 Im Q_u", &d(&a[1].im, 1)? - &a[0].im.scale(&s(2))));
        }
        HelmholtzOrder::Four => {
            out.push(("2D_x Re Q_ūxxxx = Re Q_ūxxx", &d(&b[4].re, 1)?.scale(&s(2)) - &b[3].re));
            out.push(("2D_x Im Q_ūxxxx = Im Q_ūxxx", &d(&b[4].im, 1)?.scale(&s(2)) - &b[3].im));
            out.push((
                "D_x² Re Q_ūxxx − 2D_x Re Q_ūxx = −2 Re Q_ūx",
                &(&d(&b[3].re, 2)? - &d(&b[2].re, 1)?.scale(&s(2))) + &b[1].re.scale(&s(2)),
            ));
            out.push((
                "D_x² Im Q_ūxxx − 2D_x Im Q_ūxx = −2 Im Q_ūx",
                &(&d(&b[3].im, 2)? - &d(&b[2].im, 1)?.scale(&s(2))) + &b[1].im.scale(&s(2)),
            ));
            out.push(("Im Q_uxxxx = 0", a[4].im.clone()));
            out.push(("2D_x Re Q_uxxxx = Re Q_uxxx", &d(&a[4].re, 1)?.scale(&s(2)) - &a[3].re));
            out.push(("3D_x Im Q_uxxx = 2 Im Q_uxx", &d(&a[3].im, 1)?.scale(&s(3)) - &a[2].im.scale(&s(2))));
            out.push((
                "D_x² Re Q_uxxx − 2D_x Re Q_uxx = −2 Re Q_ux",
                &(&d(&a[3].re, 2)? - &d(&a[2].re, 1)?.scale(&s(2))) + &a[1].re.scale(&s(2)),
            ));
            out.push((
                "D_x² Im Q_uxx − 3D_x Im Q_ux = −6 Im Q_u",
                &(&d(&a[2].im, 2)? - &d(&a[1].im, 1)?.scale(&s(3))) + &a[0].im.scale(&s(6)),
            ));
        }
    }
    Ok(out)
}

pub fn is_variational(q: &ComplexJetPoly) -> Result<bool, ConservationError> {
    let order = q.order().and_then(HelmholtzOrder::from_order).unwrap_or(HelmholtzOrder::Two);
    Ok(helmholtz_residuals(q, order)?.iter().all(|(_, r)| r.is_zero()))
}
