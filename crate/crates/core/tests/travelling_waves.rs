use cmkdv::closed_form::{representative, validate, Decay, Family, Side, Solution, SolutionSpec};
use cmkdv::model::Coefficients;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Finite-difference residual `u_t + αūuu_x + βu²ū_x + u_xxx` of a field given pointwise.
fn fd_residual(u: impl Fn(f64, f64) -> Complex64, alpha: Complex64, beta: Complex64, t: f64, x: f64) -> Complex64 {
    let h = 2e-3;
    let st = |k: f64| u(t + k * h, x);
    let ut = (st(-2.0) - st(2.0) + (st(1.0) - st(-1.0)) * 8.0) / (12.0 * h);
    let s = |k: f64| u(t, x + k * h);
    let ux = (s(-2.0) - s(2.0) + (s(1.0) - s(-1.0)) * 8.0) / (12.0 * h);
    let uxxx = (s(2.0) - s(-2.0) - (s(1.0) - s(-1.0)) * 2.0) / (2.0 * h * h * h);
    let u0 = u(t, x);
    ut + alpha * u0.conj() * u0 * ux + beta * u0 * u0 * ux.conj() + uxxx
}

fn window(sol: &Solution) -> f64 {
    (12.0 / sol.spec().params.c.abs().sqrt()).min(20.0)
}

#[test]
fn every_family_solves_the_equation_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in Family::ALL {
        let (spec, coeffs) = representative(f);
        let sol = Solution::new(spec, &coeffs).unwrap();
        let w = window(&sol);
        for _ in 0..100 {
            let t = rng.gen_range(0.0..2.0);
            let xi: f64 = rng.gen_range(-w..w);
            if xi.abs() < 1e-3 {
                continue;
            }
            let side = f.has_cusp().then_some(if xi < 0.0 { Side::Left } else { Side::Right });
            let r = sol.pde_residual(t, spec.params.xi0 + spec.params.c * t + xi, side).unwrap();
            assert!(r.norm() < 1e-9, "{f} at t={t}, ξ={xi}: {r}");
        }
    }
}

#[test]
fn finite_differences_agree_with_the_analytic_jets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in Family::ALL {
        let (spec, coeffs) = representative(f);
        let sol = Solution::new(spec, &coeffs).unwrap();
        let (a, b) = (coeffs.alpha_c64(), coeffs.beta_c64());
        let w = window(&sol).min(6.0);
        for _ in 0..20 {
            let t = rng.gen_range(0.0..1.0);
            let xi: f64 = rng.gen_range(-w..w);
            // stay clear of the cusp so the stencil sees one branch
            if xi.abs() < 0.05 {
                continue;
            }
            let x = spec.params.xi0 + spec.params.c * t + xi;
            let r = fd_residual(|t, x| sol.evaluate(t, x), a, b, t, x);
            let scale = 1.0 + sol.evaluate(t, x).norm().powi(3);
            assert!(r.norm() < 1e-4 * scale, "{f} at ξ={xi}: finite-difference residual {r}");
            let side = f.has_cusp().then_some(if xi < 0.0 { Side::Left } else { Side::Right });
            let jet = sol.jet(t, x, 1, side).unwrap();
            let h = 1e-5;
            let ux = (sol.evaluate(t, x + h) - sol.evaluate(t, x - h)) / (2.0 * h);
            assert!((jet[1] - ux).norm() < 1e-6 * (1.0 + ux.norm()), "{f}: u_x {} vs {ux}", jet[1]);
        }
    }
}

#[test]
fn flipped_peakon_phase_fails_the_equation() {
    let (spec, coeffs) = representative(Family::Peakon);
    let sol = Solution::new(spec, &coeffs).unwrap();
    let (kappa, slope, v) = sol.peakon_constants();
    let p = spec.params;
    let peakon = |eps_sign: f64| {
        let sigma = sol.sigma();
        move |t: f64, x: f64| {
            let xi = x - p.xi0 - p.c * t;
            let eps = eps_sign * sigma.signum() * xi.signum();
            Complex64::from_polar(p.amplitude, p.phi + eps * slope * (x - p.xi0 - v * t)) * (-kappa * xi.abs()).exp()
        }
    };
    let (a, b) = (coeffs.alpha_c64(), coeffs.beta_c64());
    let (mut kept, mut flipped) = (0.0f64, 0.0f64);
    for xi in [-2.0, -0.7, -0.3, 0.4, 1.1, 2.5] {
        let x = p.xi0 + xi;
        assert!((peakon(1.0)(0.0, x) - sol.evaluate(0.0, x)).norm() < 1e-14);
        kept = kept.max(fd_residual(peakon(1.0), a, b, 0.0, x).norm());
        flipped = flipped.max(fd_residual(peakon(-1.0), a, b, 0.0, x).norm());
    }
    assert!(kept < 1e-3, "{kept} {flipped}");
    assert!(flipped > 1e-1, "{kept} {flipped}");
}

#[test]
fn profiles_approach_their_asymptotic_states() {
    for f in Family::ALL {
        let (spec, coeffs) = representative(f);
        let sol = Solution::new(spec, &coeffs).unwrap();
        let a = sol.asymptotics();
        let center = spec.params.xi0;
        for (sign, limit) in [(-1.0, a.u_minus), (1.0, a.u_plus)] {
            match a.decay {
                Decay::Exponential(rate) => {
                    let xi = 30.0 / rate;
                    let u = sol.evaluate(0.0, center + sign * xi);
                    let gap = if a.phase_converges { (u - limit).norm() } else { (u.norm() - limit.norm()).abs() };
                    assert!(gap < 1e-8 * (1.0 + limit.norm()), "{f} at {}: {u} vs {limit}", sign * xi);
                }
                Decay::Algebraic(p) => {
                    let (near, far) = (sol.evaluate(0.0, center + sign * 100.0), sol.evaluate(0.0, center + sign * 200.0));
                    let ratio = (near - limit).norm() / (far - limit).norm();
                    assert!((ratio - 2f64.powi(p as i32)).abs() < 0.01, "{f}: decay ratio {ratio}");
                }
            }
        }
    }
}

#[test]
fn kink2_asymptotic_phase_rotation() {
    let coeffs = Coefficients::real(-1, 0);
    for th in [-1.0, 0.5, 1.0, 2.0] {
        for phi in [0.0, 0.4, -1.2] {
            let spec = SolutionSpec::new(Family::Kink2).c(-1.0).big_theta(th).phi(phi);
            let a = Solution::new(spec, &coeffs).unwrap().asymptotics();
            let want = f64::sinh(th) / 3f64.sqrt();
            let rot = |u: Complex64| (u * Complex64::from_polar(1.0, -phi)).arg().tan();
            assert!((rot(a.u_plus) - want).abs() < 1e-10);
            assert!((rot(a.u_minus) + want).abs() < 1e-10);
        }
    }
}

#[test]
fn admissibility_is_enforced() {
    let real = Coefficients::real(2, 1);
    assert!(validate(&SolutionSpec::new(Family::Sech).c(-1.0), &real).is_err());
    assert!(validate(&SolutionSpec::new(Family::Kink1).c(1.0), &real).is_err());
    assert!(validate(&SolutionSpec::new(Family::Peakon).c(1.0), &real).is_err());
    assert!(validate(&SolutionSpec::new(Family::Kink2).c(-1.0), &Coefficients::real(1, 0)).is_err());
    let (spec, coeffs) = representative(Family::Peakon);
    assert!(validate(&spec, &coeffs).is_ok());
    let sol = Solution::new(spec, &coeffs).unwrap();
    assert!(sol.jet(0.0, spec.params.xi0, 1, None).is_err());
    assert!(sol.jet(0.0, spec.params.xi0, 1, Some(Side::Left)).is_ok());
}
