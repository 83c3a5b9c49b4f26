//! Exact polynomial algebra on the jet space of `(u1, u2)`.
//!
//! Generators are `t`, `x` and `u_i^(k)` for `k ≤ MAX_ORDER`. All calculus
//! (total derivatives, Euler operators, inversion of `D_x`) is exact and fails
//! loudly when a result would need a derivative above the cap.

mod complex;
mod monomial;
mod point;
mod poly;

pub use complex::ComplexJetPoly;
pub use monomial::{Component, Generator, Monomial, MAX_ORDER, NUM_GENERATORS};
pub use point::{eval, CompiledPoly, JetPoint};
pub use poly::{inverse_degree, JetPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("result needs derivative order {needed}, above the cap {cap}")]
    CapOverflow { needed: usize, cap: usize },
    #[error("not a total x-derivative (obstruction at order {order})")]
    NotExact { order: usize },
    #[error("jet point has no value for `{0}`")]
    MissingGenerator(String),
    #[error("weight undefined for jet degree {degree}")]
    WeightUndefined { degree: u32 },
    #[error("invalid jet point: {0}")]
    BadPoint(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Right-hand sides `u_{it} = rhs_i` together with their x-derivatives,
/// which `D_t` substitutes for `u_i^(k)_t`.
#[derive(Clone, Debug)]
pub struct PdeRhs {
    lifts: [Vec<JetPoly>; 2],
}

impl PdeRhs {
    /// `rhs1, rhs2` must be at most third order.
    pub fn new(rhs1: JetPoly, rhs2: JetPoly) -> Result<Self, JetError> {
        let order = rhs1.order().max(rhs2.order()).unwrap_or(0);
        let max_lift = MAX_ORDER.saturating_sub(order.max(3));
        let lift = |p: JetPoly| -> Result<Vec<JetPoly>, JetError> {
            let mut v = vec![p];
            for _ in 0..max_lift {
                let next = v.last().unwrap().dx()?;
                v.push(next);
            }
            Ok(v)
        };
        Ok(Self { lifts: [lift(rhs1)?, lift(rhs2)?] })
    }

    pub fn rhs(&self, comp: Component) -> &JetPoly {
        &self.lifts[comp.index()][0]
    }

    /// `D_x^k rhs_i`.
    pub fn lifted(&self, comp: Component, k: usize) -> &JetPoly {
        &self.lifts[comp.index()][k]
    }

    /// Largest jet order a polynomial may carry and still be differentiated in `t`.
    pub fn max_lift(&self) -> usize {
        self.lifts[0].len() - 1
    }
}
