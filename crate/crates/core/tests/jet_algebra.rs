mod common;

use cmkdv::exact::rat;
use cmkdv::jet::{eval, CompiledPoly, Component, Generator, JetPoint, JetPoly};
use common::{coefficients, poly, poly_tx, small_rational};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = JetPoint> {
    (-1.5f64..1.5, -1.5f64..1.5, prop::collection::vec(-1.2f64..1.2, 16)).prop_map(|(t, x, v)| JetPoint::new(t, x, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn total_x_derivative_is_linear(p in poly_tx(3, 5), q in poly_tx(3, 5), a in small_rational()) {
        let lhs = (&p.scale(&a) + &q).dx().unwrap();
        let rhs = &p.dx().unwrap().scale(&a) + &q.dx().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn total_x_derivative_obeys_leibniz(p in poly_tx(2, 4), q in poly_tx(2, 4)) {
        let lhs = (&p * &q).dx().unwrap();
        let rhs = &(&p.dx().unwrap() * &q) + &(&p * &q.dx().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_operator_annihilates_total_derivatives(p in poly_tx(2, 5)) {
        let (e1, e2) = p.dx().unwrap().euler_pair().unwrap();
        prop_assert!(e1.is_zero(), "E_u1 left {} terms", e1.term_count());
        prop_assert!(e2.is_zero(), "E_u2 left {} terms", e2.term_count());
    }

    #[test]
    fn euler_operator_is_linear(p in poly(2, 5), q in poly(2, 5), a in small_rational()) {
        let (l1, l2) = (&p.scale(&a) + &q).euler_pair().unwrap();
        let (p1, p2) = p.euler_pair().unwrap();
        let (q1, q2) = q.euler_pair().unwrap();
        prop_assert_eq!(l1, &p1.scale(&a) + &q1);
        prop_assert_eq!(l2, &p2.scale(&a) + &q2);
    }

    #[test]
    fn x_integration_inverts_total_derivative(p in poly(3, 5)) {
        let dp = p.dx().unwrap();
        prop_assert!(dp.is_total_x_derivative());
        let back = dp.integrate_x().unwrap();
        // the antiderivative is fixed up to a constant
        prop_assert_eq!(back.dx().unwrap(), dp.clone());
        let c = &back - &p;
        prop_assert!(c.terms().all(|(m, _)| m.is_pure_tx()), "difference {c}");
    }

    #[test]
    fn time_and_space_derivatives_commute(p in poly(2, 3), c in coefficients()) {
        let rhs = c.rhs();
        let a = p.dx().unwrap().dt(&rhs).unwrap();
        let b = p.dt(&rhs).unwrap().dx().unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn evaluation_is_a_ring_morphism(p in poly_tx(3, 4), q in poly_tx(3, 4), pt in point()) {
        let (vp, vq) = (eval(&p, &pt).unwrap(), eval(&q, &pt).unwrap());
        let sum = eval(&(&p + &q), &pt).unwrap();
        let prod = eval(&(&p * &q), &pt).unwrap();
        let scale = 1.0 + vp.abs() * vq.abs() + vp.abs() + vq.abs();
        prop_assert!((sum - (vp + vq)).abs() < 1e-12 * scale);
        prop_assert!((prod - vp * vq).abs() < 1e-12 * scale);
        let compiled = CompiledPoly::new(&p).eval_point(&pt).unwrap();
        prop_assert!((compiled - vp).abs() < 1e-12 * (1.0 + vp.abs()));
    }
}

#[test]
fn derivative_cap_is_reported() {
    let top = JetPoly::u1(cmkdv::jet::MAX_ORDER);
    assert!(top.dx().is_err());
    assert!(JetPoly::u1(cmkdv::jet::MAX_ORDER - 1).dx().is_ok());
}

#[test]
fn non_exact_polynomials_are_rejected() {
    // u1 u2_x is not a total derivative: its Euler operator is nonzero
    let p = &JetPoly::u1(0) * &JetPoly::u2(1);
    assert!(!p.is_total_x_derivative());
    assert!(p.integrate_x().is_err());
    let (e1, e2) = p.euler_pair().unwrap();
    assert_eq!(e1, JetPoly::u2(1));
    assert_eq!(e2, JetPoly::u1(1).scale(&rat(-1, 1)));
}

#[test]
fn evaluation_reports_missing_orders() {
    let pt = JetPoint::new(0.0, 0.0, vec![1.0, 2.0]).unwrap();
    assert!(eval(&JetPoly::var(Generator::U(Component::U2, 2)), &pt).is_err());
    assert_eq!(eval(&JetPoly::u2(0), &pt).unwrap(), 2.0);
}
