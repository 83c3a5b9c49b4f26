use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::monomial::{Component, Generator};
use super::{JetError, JetPoly, PdeRhs};
use crate::exact::{ComplexRational, Rational};

/// `re + i·im` with both parts jet polynomials in the real components `u1, u2`.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct ComplexJetPoly {
    pub re: JetPoly,
    pub im: JetPoly,
}

impl ComplexJetPoly {
    pub fn new(re: JetPoly, im: JetPoly) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn real(re: JetPoly) -> Self {
        Self { re, im: JetPoly::zero() }
    }

    pub fn imag(im: JetPoly) -> Self {
        Self { re: JetPoly::zero(), im }
    }

    pub fn constant(c: &ComplexRational) -> Self {
        Self::new(JetPoly::constant(c.re.clone()), JetPoly::constant(c.im.clone()))
    }

    pub fn int(n: i64) -> Self {
        Self::real(JetPoly::int(n))
    }

    pub fn i() -> Self {
        Self::imag(JetPoly::one())
    }

    /// `u^(k) = u1^(k) + i u2^(k)`.
    pub fn u(k: usize) -> Self {
        Self::new(JetPoly::u1(k), JetPoly::u2(k))
    }

    /// `ū^(k)`.
    pub fn ubar(k: usize) -> Self {
        Self::u(k).conj()
    }

    pub fn t() -> Self {
        Self::real(JetPoly::t())
    }

    pub fn x() -> Self {
        Self::real(JetPoly::x())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn term_count(&self) -> usize {
        self.re.term_count() + self.im.term_count()
    }

    pub fn order(&self) -> Option<usize> {
        self.re.order().max(self.im.order())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn times_i(&self) -> Self {
        Self::new(-&self.im, self.re.clone())
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self::new(
            &self.re.scale(&c.re) - &self.im.scale(&c.im),
            &self.re.scale(&c.im) + &self.im.scale(&c.re),
        )
    }

    pub fn scale_real(&self, r: &Rational) -> Self {
        Self::new(self.re.scale(r), self.im.scale(r))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::int(1);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn dx(&self) -> Result<Self, JetError> {
        Ok(Self::new(self.re.dx()?, self.im.dx()?))
    }

    pub fn dx_n(&self, n: usize) -> Result<Self, JetError> {
        Ok(Self::new(self.re.dx_n(n)?, self.im.dx_n(n)?))
    }

    pub fn dt(&self, rhs: &PdeRhs) -> Result<Self, JetError> {
        Ok(Self::new(self.re.dt(rhs)?, self.im.dt(rhs)?))
    }

    pub fn partial_real(&self, g: Generator) -> Self {
        Self::new(self.re.partial(g), self.im.partial(g))
    }

    /// Wirtinger derivative ∂/∂u^(k) = ½(∂/∂u1^(k) − i ∂/∂u2^(k)).
    pub fn partial_u(&self, k: usize) -> Self {
        let d1 = self.partial_real(Generator::U(Component::U1, k));
        let d2 = self.partial_real(Generator::U(Component::U2, k));
        half(&(&d1 - &d2.times_i()))
    }

    /// Wirtinger derivative ∂/∂ū^(k) = ½(∂/∂u1^(k) + i ∂/∂u2^(k)).
    pub fn partial_ubar(&self, k: usize) -> Self {
        let d1 = self.partial_real(Generator::U(Component::U1, k));
        let d2 = self.partial_real(Generator::U(Component::U2, k));
        half(&(&d1 + &d2.times_i()))
    }

    pub fn to_json(&self) -> Value {
        json!({ "re": self.re.to_json(), "im": self.im.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self, JetError> {
        let part = |key: &str| {
            v.get(key).ok_or_else(|| JetError::Json(format!("missing `{key}`"))).and_then(JetPoly::from_json)
        };
        Ok(Self::new(part("re")?, part("im")?))
    }
}

fn half(p: &ComplexJetPoly) -> ComplexJetPoly {
    p.scale_real(&crate::exact::rat(1, 2))
}

impl fmt::Display for ComplexJetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "i*({})", self.im),
            (false, false) => write!(f, "({}) + i*({})", self.re, self.im),
        }
    }
}

impl fmt::Debug for ComplexJetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexJetPoly({self})")
    }
}

impl Add for &ComplexJetPoly {
    type Output = ComplexJetPoly;
    fn add(self, rhs: &ComplexJetPoly) -> ComplexJetPoly {
        ComplexJetPoly::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexJetPoly {
    type Output = ComplexJetPoly;
    fn sub(self, rhs: &ComplexJetPoly) -> ComplexJetPoly {
        ComplexJetPoly::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexJetPoly {
    type Output = ComplexJetPoly;
    fn mul(self, rhs: &ComplexJetPoly) -> ComplexJetPoly {
        ComplexJetPoly::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &ComplexJetPoly {
    type Output = ComplexJetPoly;
    fn neg(self) -> ComplexJetPoly {
        ComplexJetPoly::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ComplexJetPoly {
            type Output = ComplexJetPoly;
            fn $f(self, rhs: ComplexJetPoly) -> ComplexJetPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ComplexJetPoly> for ComplexJetPoly {
            type Output = ComplexJetPoly;
            fn $f(self, rhs: &ComplexJetPoly) -> ComplexJetPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<ComplexJetPoly> for &ComplexJetPoly {
            type Output = ComplexJetPoly;
            fn $f(self, rhs: ComplexJetPoly) -> ComplexJetPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ComplexJetPoly {
    type Output = ComplexJetPoly;
    fn neg(self) -> ComplexJetPoly {
        -&self
    }
}

impl From<JetPoly> for ComplexJetPoly {
    fn from(p: JetPoly) -> Self {
        Self::real(p)
    }
}

impl From<&ComplexRational> for ComplexJetPoly {
    fn from(c: &ComplexRational) -> Self {
        Self::constant(c)
    }
}
