use super::monomial::{Component, Generator, MAX_ORDER};
use super::{JetError, JetPoly};
use crate::exact::to_f64;

/// A point of the jet space: `(t, x)` plus values `[u1, u2, u1_x, u2_x, ...]`.
///
/// Points may be truncated at an order below the cap; evaluating a polynomial
/// that needs a higher order reports the missing generator.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoint {
    pub t: f64,
    pub x: f64,
    pub values: Vec<f64>,
}

impl JetPoint {
    pub fn new(t: f64, x: f64, values: Vec<f64>) -> Result<Self, JetError> {
        if values.len() % 2 != 0 || values.len() > 2 * (MAX_ORDER + 1) {
            return Err(JetError::BadPoint(format!("expected an even length up to {}, got {}", 2 * (MAX_ORDER + 1), values.len())));
        }
        if !t.is_finite() || !x.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(JetError::BadPoint("non-finite entry".into()));
        }
        Ok(Self { t, x, values })
    }

    /// Builds a point from complex jet values `[u, u_x, u_xx, ...]`.
    pub fn from_complex(t: f64, x: f64, jet: &[num_complex::Complex64]) -> Result<Self, JetError> {
        Self::new(t, x, jet.iter().flat_map(|z| [z.re, z.im]).collect())
    }

    pub fn max_order(&self) -> Option<usize> {
        (self.values.len() / 2).checked_sub(1)
    }

    pub fn get(&self, g: Generator) -> Option<f64> {
        match g {
            Generator::T => Some(self.t),
            Generator::X => Some(self.x),
            Generator::U(c, k) => self.values.get(2 * k + c.index()).copied(),
        }
    }

    pub fn u(&self, comp: Component, k: usize) -> Option<f64> {
        self.get(Generator::U(comp, k))
    }
}

/// Float evaluation of a polynomial.
pub fn eval(p: &JetPoly, pt: &JetPoint) -> Result<f64, JetError> {
    let mut total = 0.0;
    for (m, c) in p.terms() {
        let mut v = to_f64(c);
        for (g, e) in m.factors() {
            let gv = pt.get(g).ok_or(JetError::MissingGenerator(g.name()))?;
            v *= gv.powi(e as i32);
        }
        total += v;
    }
    Ok(total)
}

/// A polynomial flattened for repeated float evaluation on grids.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
    needs_order: Option<usize>,
}

const T_SLOT: usize = usize::MAX;
const X_SLOT: usize = usize::MAX - 1;

impl CompiledPoly {
    pub fn new(p: &JetPoly) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let factors = m
                    .factors()
                    .map(|(g, e)| {
                        let slot = match g {
                            Generator::T => T_SLOT,
                            Generator::X => X_SLOT,
                            Generator::U(comp, k) => 2 * k + comp.index(),
                        };
                        (slot, e as i32)
                    })
                    .collect();
                (to_f64(c), factors)
            })
            .collect();
        Self { terms, needs_order: p.order() }
    }

    /// Highest jet order the value slice must cover.
    pub fn needs_order(&self) -> Option<usize> {
        self.needs_order
    }

    /// `values` uses the [`JetPoint`] layout; it must cover [`Self::needs_order`].
    pub fn eval(&self, t: f64, x: f64, values: &[f64]) -> f64 {
        let mut total = 0.0;
        for (c, factors) in &self.terms {
            let mut v = *c;
            for &(slot, e) in factors {
                let base = match slot {
                    T_SLOT => t,
                    X_SLOT => x,
                    s => values[s],
                };
                v *= if e == 1 { base } else { base.powi(e) };
            }
            total += v;
        }
        total
    }

    pub fn eval_point(&self, pt: &JetPoint) -> Result<f64, JetError> {
        if let Some(k) = self.needs_order {
            if pt.max_order().map_or(true, |m| m < k) {
                return Err(JetError::MissingGenerator(Generator::U(Component::U1, k).name()));
            }
        }
        Ok(self.eval(pt.t, pt.x, &pt.values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let pt = JetPoint::new(0.0, 2.0, vec![3.0, 0.0]).unwrap();
        assert_eq!(eval(&JetPoly::u1(0).pow(2), &pt).unwrap(), 9.0);
        let pt = JetPoint::new(0.0, 2.0, vec![-1.0, 0.0]).unwrap();
        assert_eq!(eval(&(JetPoly::x() * JetPoly::u1(0)), &pt).unwrap(), -2.0);
        assert!(matches!(eval(&JetPoly::u1(1), &pt), Err(JetError::MissingGenerator(_))));
        assert_eq!(eval(&JetPoly::zero(), &pt).unwrap(), 0.0);
    }

    #[test]
    fn compiled_matches_direct() {
        let p = JetPoly::u1(0).pow(3) * JetPoly::u2(1) + JetPoly::t() * JetPoly::x() - JetPoly::int(4);
        let pt = JetPoint::new(0.5, -1.5, vec![1.25, 0.5, -0.75, 2.0]).unwrap();
        let c = CompiledPoly::new(&p);
        assert_eq!(c.eval_point(&pt).unwrap(), eval(&p, &pt).unwrap());
    }

    #[test]
    fn non_finite_rejected() {
        assert!(JetPoint::new(0.0, f64::NAN, vec![]).is_err());
        assert!(JetPoint::new(0.0, 0.0, vec![1.0]).is_err());
    }
}
