use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use super::monomial::{Component, Generator, Monomial, MAX_ORDER};
use super::{JetError, PdeRhs};
use crate::exact::{format_rational, int, parse_rational, Rational};

/// Sparse polynomial over the jet generators with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct JetPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl JetPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(g: Generator) -> Self {
        Self::term(Monomial::var(g), Rational::one())
    }

    pub fn t() -> Self {
        Self::var(Generator::T)
    }

    pub fn x() -> Self {
        Self::var(Generator::X)
    }

    /// `u_i^(k)`.
    pub fn u(comp: Component, k: usize) -> Self {
        Self::var(Generator::U(comp, k))
    }

    pub fn u1(k: usize) -> Self {
        Self::u(Component::U1, k)
    }

    pub fn u2(k: usize) -> Self {
        Self::u(Component::U2, k)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest `u` derivative order present; `None` for polynomials in `t, x` only.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.order()).max()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.terms.keys().any(|m| m.exponent(g) > 0)
    }

    pub fn scale(&self, c: &Rational) -> JetPoly {
        if c.is_zero() {
            return Self::zero();
        }
        JetPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> JetPoly {
        JetPoly { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> JetPoly {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &Rational) -> Option<(Monomial, Rational)>) -> JetPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                out.add_term(m2, c2);
            }
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> JetPoly {
        JetPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// ∂p/∂g.
    pub fn partial(&self, g: Generator) -> JetPoly {
        let i = g.index();
        self.map_terms(|m, c| {
            let e = m.0[i];
            m.lower(g).map(|m2| (m2, c * int(e as i64)))
        })
    }

    /// Substitutes `g = 0`.
    pub fn set_zero(&self, g: Generator) -> JetPoly {
        self.filter(|m| m.exponent(g) == 0)
    }

    /// Coefficient of `g^e` viewing `p` as a polynomial in `g`.
    pub fn coeff_of_power(&self, g: Generator, e: u8) -> JetPoly {
        self.map_terms(|m, c| (m.exponent(g) == e).then(|| (m.with(g, 0), c.clone())))
    }

    /// Total x-derivative D_x. Fails if `p` already carries order-K variables.
    pub fn dx(&self) -> Result<JetPoly, JetError> {
        if let Some(k) = self.order() {
            if k >= MAX_ORDER {
                return Err(JetError::CapOverflow { needed: k + 1, cap: MAX_ORDER });
            }
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let ex = m.exponent(Generator::X);
            if ex > 0 {
                out.add_term(m.lower(Generator::X).unwrap(), c * int(ex as i64));
            }
            for comp in Component::BOTH {
                for k in 0..MAX_ORDER {
                    let g = Generator::U(comp, k);
                    let e = m.exponent(g);
                    if e > 0 {
                        let m2 = m.lower(g).unwrap().raise(Generator::U(comp, k + 1));
                        out.add_term(m2, c * int(e as i64));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn dx_n(&self, n: usize) -> Result<JetPoly, JetError> {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.dx()?;
        }
        Ok(p)
    }

    /// Total t-derivative with `u_t` eliminated through the equation.
    pub fn dt(&self, rhs: &PdeRhs) -> Result<JetPoly, JetError> {
        let mut out = self.partial(Generator::T);
        if let Some(k) = self.order() {
            if k > rhs.max_lift() {
                return Err(JetError::CapOverflow { needed: k + 3, cap: MAX_ORDER });
            }
        }
        for comp in Component::BOTH {
            for k in 0..=rhs.max_lift() {
                let d = self.partial(Generator::U(comp, k));
                if !d.is_zero() {
                    out += &(&d * rhs.lifted(comp, k));
                }
            }
        }
        Ok(out)
    }

    /// Euler operator Σ_k (−D_x)^k ∂p/∂u_i^(k), evaluated Horner style.
    pub fn euler(&self, comp: Component) -> Result<JetPoly, JetError> {
        let Some(n) = self.order() else {
            return Ok(Self::zero());
        };
        if 2 * n > MAX_ORDER {
            return Err(JetError::CapOverflow { needed: 2 * n, cap: MAX_ORDER });
        }
        let mut r = self.partial(Generator::U(comp, n));
        for k in (0..n).rev() {
            r = &self.partial(Generator::U(comp, k)) - &r.dx()?;
        }
        Ok(r)
    }

    /// Both Euler components `(E_u1, E_u2)`.
    pub fn euler_pair(&self) -> Result<(JetPoly, JetPoly), JetError> {
        Ok((self.euler(Component::U1)?, self.euler(Component::U2)?))
    }

    /// Decides whether `p = D_x q` for some polynomial `q`.
    ///
    /// Uses the Euler test when it fits under the cap and falls back on
    /// constructive inversion otherwise.
    pub fn is_total_x_derivative(&self) -> bool {
        match self.order() {
            Some(n) if 2 * n <= MAX_ORDER => {
                matches!(self.euler_pair(), Ok((a, b)) if a.is_zero() && b.is_zero())
            }
            _ => self.integrate_x().is_ok(),
        }
    }

    /// Returns `q` with `D_x q = p`, peeling off the top derivative order at each step.
    pub fn integrate_x(&self) -> Result<JetPoly, JetError> {
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(n) = rem.order() {
            if n == 0 {
                return Err(JetError::NotExact { order: 0 });
            }
            let tops = [Generator::U(Component::U1, n), Generator::U(Component::U2, n)];
            let mut step = Self::zero();
            for (m, c) in rem.terms() {
                let top_deg: u32 = tops.iter().map(|&g| m.exponent(g) as u32).sum();
                if top_deg > 1 {
                    return Err(JetError::NotExact { order: n });
                }
                if top_deg == 0 {
                    continue;
                }
                let (comp, g) = if m.exponent(tops[0]) == 1 { (Component::U1, tops[0]) } else { (Component::U2, tops[1]) };
                let y = Generator::U(comp, n - 1);
                let base = m.lower(g).unwrap();
                let ydeg = base.exponent(Generator::U(Component::U1, n - 1)) as i64
                    + base.exponent(Generator::U(Component::U2, n - 1)) as i64;
                step.add_term(base.raise(y), c / int(ydeg + 1));
            }
            rem -= &step.dx()?;
            if rem.order().is_some_and(|k| k >= n) {
                return Err(JetError::NotExact { order: n });
            }
            q += &step;
        }
        // what is left depends on (t, x) only
        for (m, c) in rem.terms() {
            let ex = m.exponent(Generator::X);
            q.add_term(m.raise(Generator::X), c / int(ex as i64 + 1));
        }
        Ok(q)
    }

    /// Rescales each monomial of jet degree `d` by `weight(d)`.
    pub fn scale_substitute(&self, weight: impl Fn(u32) -> Option<Rational>) -> Result<JetPoly, JetError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let d = m.jet_degree();
            let w = weight(d).ok_or(JetError::WeightUndefined { degree: d })?;
            out.add_term(*m, c * w);
        }
        Ok(out)
    }

    /// Exact evaluation at rational values of the generators.
    pub fn eval_exact(&self, value: impl Fn(Generator) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (g, e) in m.factors() {
                v *= num_traits::pow(value(g), e as usize);
            }
            total += v;
        }
        total
    }

    /// Canonical JSON form: terms in monomial order, coefficients as `"p/q"`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Map<String, Value> = m.factors().map(|(g, e)| (g.name(), json!(e))).collect();
                json!({ "monomial": mono, "coeff": format_rational(c) })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<JetPoly, JetError> {
        let bad = |why: &str| JetError::Json(why.to_string());
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing `terms` array"))?;
        let mut out = Self::zero();
        for t in terms {
            let mono = t.get("monomial").and_then(Value::as_object).ok_or_else(|| bad("missing `monomial`"))?;
            let mut m = Monomial::one();
            for (name, e) in mono {
                let g = Generator::parse(name).ok_or_else(|| bad(&format!("unknown generator `{name}`")))?;
                let e = e.as_u64().filter(|&e| e > 0 && e < 256).ok_or_else(|| bad("bad exponent"))?;
                m = m.with(g, e as u8);
            }
            let c = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing `coeff`"))?;
            out.add_term(m, parse_rational(c).map_err(|e| bad(&e.to_string()))?);
        }
        Ok(out)
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_one = m.degree() == 0;
            if a.is_one() && !is_one {
                write!(f, "{m}")?;
            } else if is_one {
                write!(f, "{}", format_rational(&a))?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JetPoly({self})")
    }
}

impl AddAssign<&JetPoly> for JetPoly {
    fn add_assign(&mut self, rhs: &JetPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&JetPoly> for JetPoly {
    fn sub_assign(&mut self, rhs: &JetPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: &JetPoly) -> JetPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        JetPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Mul for &JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: &JetPoly) -> JetPoly {
        let mut out = JetPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for JetPoly {
            type Output = JetPoly;
            fn $f(self, rhs: JetPoly) -> JetPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&JetPoly> for JetPoly {
            type Output = JetPoly;
            fn $f(self, rhs: &JetPoly) -> JetPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<JetPoly> for &JetPoly {
            type Output = JetPoly;
            fn $f(self, rhs: JetPoly) -> JetPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for JetPoly {
    type Output = JetPoly;
    fn neg(self) -> JetPoly {
        -&self
    }
}

/// Weight `1/d` used by the homotopy density integral.
pub fn inverse_degree(d: u32) -> Option<Rational> {
    (d > 0).then(|| Rational::new(BigInt::one(), BigInt::from(d)))
}
