use std::cmp::Ordering;
use std::fmt;

/// Highest x-derivative order carried by the jet space.
pub const MAX_ORDER: usize = 7;

/// `t`, `x`, then `u1^(0..=K)`, then `u2^(0..=K)`.
pub const NUM_GENERATORS: usize = 2 + 2 * (MAX_ORDER + 1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    U1,
    U2,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::U1, Component::U2];

    pub fn index(self) -> usize {
        match self {
            Component::U1 => 0,
            Component::U2 => 1,
        }
    }

    pub fn other(self) -> Component {
        match self {
            Component::U1 => Component::U2,
            Component::U2 => Component::U1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    T,
    X,
    U(Component, usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::T => 0,
            Generator::X => 1,
            Generator::U(c, k) => {
                assert!(k <= MAX_ORDER, "derivative order {k} exceeds cap {MAX_ORDER}");
                2 + c.index() * (MAX_ORDER + 1) + k
            }
        }
    }

    pub fn from_index(idx: usize) -> Generator {
        match idx {
            0 => Generator::T,
            1 => Generator::X,
            i if i < NUM_GENERATORS => {
                let j = i - 2;
                let comp = if j <= MAX_ORDER { Component::U1 } else { Component::U2 };
                Generator::U(comp, j % (MAX_ORDER + 1))
            }
            _ => panic!("generator index {idx} out of range"),
        }
    }

    pub fn all() -> impl Iterator<Item = Generator> {
        (0..NUM_GENERATORS).map(Generator::from_index)
    }

    /// `t`, `x`, `u1`, `u1_x`, `u2_xxx`, ...
    pub fn name(self) -> String {
        match self {
            Generator::T => "t".into(),
            Generator::X => "x".into(),
            Generator::U(c, k) => {
                let base = match c {
                    Component::U1 => "u1",
                    Component::U2 => "u2",
                };
                if k == 0 {
                    base.into()
                } else {
                    format!("{base}_{}", "x".repeat(k))
                }
            }
        }
    }

    pub fn parse(name: &str) -> Option<Generator> {
        match name {
            "t" => return Some(Generator::T),
            "x" => return Some(Generator::X),
            _ => {}
        }
        let (base, suffix) = match name.split_once('_') {
            Some((b, s)) => (b, s),
            None => (name, ""),
        };
        let comp = match base {
            "u1" => Component::U1,
            "u2" => Component::U2,
            _ => return None,
        };
        if !suffix.chars().all(|c| c == 'x') || (name.contains('_') && suffix.is_empty()) {
            return None;
        }
        let k = suffix.len();
        (k <= MAX_ORDER).then_some(Generator::U(comp, k))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent record over the fixed generator list.
///
/// Ordered graded-lexicographically: total degree first, then exponents read
/// in generator order with a larger exponent ranking higher.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) [u8; NUM_GENERATORS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NUM_GENERATORS])
    }

    pub fn var(g: Generator) -> Self {
        Self::one().with(g, 1)
    }

    pub fn from_pairs(pairs: &[(Generator, u8)]) -> Self {
        let mut m = Self::one();
        for &(g, e) in pairs {
            m.0[g.index()] += e;
        }
        m
    }

    pub fn with(mut self, g: Generator, e: u8) -> Self {
        self.0[g.index()] = e;
        self
    }

    pub fn exponent(&self, g: Generator) -> u8 {
        self.0[g.index()]
    }

    pub fn exponents(&self) -> &[u8; NUM_GENERATORS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree counted over the `u` jet variables only.
    pub fn jet_degree(&self) -> u32 {
        self.0[2..].iter().map(|&e| e as u32).sum()
    }

    pub fn is_pure_tx(&self) -> bool {
        self.jet_degree() == 0
    }

    /// Highest derivative order of any `u` variable present, if any.
    pub fn order(&self) -> Option<usize> {
        (0..=MAX_ORDER).rev().find(|&k| {
            self.0[Generator::U(Component::U1, k).index()] > 0
                || self.0[Generator::U(Component::U2, k).index()] > 0
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("monomial exponent overflow");
        }
        out
    }

    /// Lowers the exponent of `g` by one; `None` when `g` is absent.
    pub fn lower(&self, g: Generator) -> Option<Monomial> {
        let i = g.index();
        if self.0[i] == 0 {
            return None;
        }
        let mut out = *self;
        out.0[i] -= 1;
        Some(out)
    }

    pub fn raise(&self, g: Generator) -> Monomial {
        let mut out = *self;
        out.0[g.index()] += 1;
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Generator, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Generator::from_index(i), e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
