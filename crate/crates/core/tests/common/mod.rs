#![allow(dead_code)]

use cmkdv::exact::{rat, ComplexRational};
use cmkdv::jet::{Component, Generator, JetPoly, Monomial};
use cmkdv::model::Coefficients;
use proptest::prelude::*;

/// One term: coefficient `n/d` and exponents of `u1, u2` and their derivatives up to `order`.
fn term(order: usize, with_tx: bool) -> impl Strategy<Value = (i64, i64, Vec<u8>)> {
    let n_gen = 2 * (order + 1) + if with_tx { 2 } else { 0 };
    (-6i64..=6, 1i64..=4, prop::collection::vec(prop_oneof![6 => Just(0u8), 3 => Just(1u8), 1 => Just(2u8)], n_gen))
}

fn build(order: usize, with_tx: bool, terms: Vec<(i64, i64, Vec<u8>)>) -> JetPoly {
    let mut gens = Vec::new();
    for k in 0..=order {
        gens.push(Generator::U(Component::U1, k));
        gens.push(Generator::U(Component::U2, k));
    }
    if with_tx {
        gens.push(Generator::T);
        gens.push(Generator::X);
    }
    let mut p = JetPoly::zero();
    for (n, d, exps) in terms {
        let pairs: Vec<(Generator, u8)> = gens.iter().copied().zip(exps).filter(|(_, e)| *e > 0).collect();
        p.add_term(Monomial::from_pairs(&pairs), rat(n, d));
    }
    p
}

/// Sparse polynomials of jet order at most `order`.
pub fn poly(order: usize, max_terms: usize) -> impl Strategy<Value = JetPoly> {
    prop::collection::vec(term(order, false), 0..=max_terms).prop_map(move |t| build(order, false, t))
}

/// As [`poly`], with explicit `t` and `x` allowed.
pub fn poly_tx(order: usize, max_terms: usize) -> impl Strategy<Value = JetPoly> {
    prop::collection::vec(term(order, true), 0..=max_terms).prop_map(move |t| build(order, true, t))
}

pub fn small_rational() -> impl Strategy<Value = cmkdv::exact::Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn coefficients() -> impl Strategy<Value = Coefficients> {
    (small_rational(), small_rational(), small_rational(), small_rational())
        .prop_map(|(a1, a2, b1, b2)| Coefficients::new(ComplexRational::new(a1, a2), ComplexRational::new(b1, b2)))
}
