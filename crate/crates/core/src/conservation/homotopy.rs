//! Densities from multipliers: the variational link and its homotopy inverse.

use crate::exact::{int, Rational};
use crate::jet::{inverse_degree, Component, ComplexJetPoly, Generator, JetError, JetPoly};

use super::ConservationError;

/// `Q = δT/δu1 + i δT/δu2`.
pub fn variational_link(density: &JetPoly) -> Result<ComplexJetPoly, JetError> {
    let (q1, q2) = density.euler_pair()?;
    Ok(ComplexJetPoly::new(q1, q2))
}

/// `∫₀¹ (u1 Q1 + u2 Q2)[λu] dλ`, before any order reduction.
pub fn homotopy_raw(q: &ComplexJetPoly) -> Result<JetPoly, JetError> {
    let pairing = &(&JetPoly::u1(0) * &q.re) + &(&JetPoly::u2(0) * &q.im);
    pairing.scale_substitute(inverse_degree)
}

fn antiderivative(p: &JetPoly, g: Generator) -> JetPoly {
    p.map_terms(|m, c| Some((m.raise(g), c / int(m.exponent(g) as i64 + 1))))
}

/// Splits `T = T_low + D_x Υ` by integrating the top-order terms by parts while that
/// lowers the order. Returns `(T_low, Υ)`.
pub fn reduce_order(density: &JetPoly) -> Result<(JetPoly, JetPoly), JetError> {
    let mut t = density.clone();
    let mut upsilon = JetPoly::zero();
    while let Some(n) = t.order().filter(|&n| n > 0) {
        let tops = [Generator::U(Component::U1, n), Generator::U(Component::U2, n)];
        let linear = t.terms().all(|(m, _)| tops.iter().map(|&g| m.exponent(g) as u32).sum::<u32>() <= 1);
        if !linear {
            break;
        }
        let (y1, y2) = (Generator::U(Component::U1, n - 1), Generator::U(Component::U2, n - 1));
        let p1 = antiderivative(&t.coeff_of_power(tops[0], 1), y1);
        let rest = &t.coeff_of_power(tops[1], 1) - &p1.partial(y2);
        let p = &p1 + &antiderivative(&rest, y2);
        let next = &t - &p.dx()?;
        if next.order().is_some_and(|k| k >= n) {
            break;
        }
        t = next;
        upsilon += &p;
    }
    Ok((t, upsilon))
}

/// A lowest-order density `T` with `variational_link(T) = Q`.
pub fn homotopy_density(q: &ComplexJetPoly) -> Result<JetPoly, ConservationError> {
    let (t, _) = reduce_order(&homotopy_raw(q)?)?;
    match variational_link(&t) {
        Ok(back) if back == *q => Ok(t),
        Ok(_) => Err(ConservationError::NotVariational("δT/δu of the homotopy density differs from Q".into())),
        Err(JetError::CapOverflow { .. }) => {
            Err(ConservationError::NotVariational(format!("homotopy density stays at order {:?}", t.order())))
        }
        Err(e) => Err(e.into()),
    }
}

/// Whether two densities differ by a total x-derivative.
pub fn equivalent(a: &JetPoly, b: &JetPoly) -> Result<bool, JetError> {
    (a - b).euler_pair().map(|(p, q)| p.is_zero() && q.is_zero())
}

/// `T` scaled so that its link equals `Q` exactly when they differ by `factor`.
pub fn link_factor(density: &JetPoly, q: &ComplexJetPoly) -> Result<Option<Rational>, JetError> {
    let link = variational_link(density)?;
    let lead = q.re.terms().next().map(|(m, c)| (*m, c.clone(), true)).or_else(|| q.im.terms().next().map(|(m, c)| (*m, c.clone(), false)));
    let Some((m, c, real)) = lead else { return Ok(None) };
    let f = if real { link.re.coeff(&m) } else { link.im.coeff(&m) } / c;
    Ok((link == q.scale_real(&f)).then_some(f))
}
