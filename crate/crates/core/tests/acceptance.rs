//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use cmkdv::closed_form::{representative, relative_phase, Family, Side, Solution, SolutionSpec};
use cmkdv::conservation::quantities::{analytic_quantity, center_of_momentum, closed_form_quantity, quantity_quadrature, QuantityId};
use cmkdv::conservation::{catalog_all, equivalent, homotopy_density, link_factor, links, variational_link, verify_entry, EntryKind};
use cmkdv::evolution::{drift_report, evolve, wave_error, SolverOptions};
use cmkdv::grid::Grid;
use cmkdv::model::Coefficients;
use cmkdv::reduction::{sample_points, ReducedProfile};
use cmkdv::table1;

type Outcome = Result<String, String>;

/// Exact coefficient sets covering every case condition at least once.
fn symbolic_sets() -> Vec<Coefficients> {
    [
        ("3-4/3i", "3/2-2/3i"),
        ("3-3i", "1-i"),
        ("2+i", "-1/2+i"),
        ("2", "1"),
        ("3/2", "0"),
        ("3", "1"),
        ("-7/5", "0"),
        ("-6/5", "9/4"),
    ]
    .iter()
    .map(|(a, b)| Coefficients::parse(a, b).expect("literal coefficients"))
    .collect()
}

/// Verifies every entry of `kind` at each set where it is admissible; each entry must be covered.
fn verify_kind(kind: EntryKind) -> Outcome {
    let sets = symbolic_sets();
    let ids: Vec<&str> = catalog_all(&sets[0]).iter().filter(|e| e.kind == kind).map(|e| e.id).collect();
    let mut runs = 0;
    for id in &ids {
        let mut covered = false;
        for c in &sets {
            let e = catalog_all(c).into_iter().find(|e| e.id == *id).expect("fixed catalog");
            if !e.admissible {
                continue;
            }
            covered = true;
            runs += 1;
            let checks = verify_entry(&e, c).map_err(|err| format!("{id}: {err}"))?;
            if let Some(bad) = checks.iter().find(|k| !k.holds) {
                return Err(format!("{id} at α={} β={}: {} leaves {} terms", c.alpha, c.beta, bad.name, bad.residual_terms));
            }
        }
        if !covered {
            return Err(format!("{id} has no admissible coefficient set"));
        }
    }
    Ok(format!("{} entries, {runs} exact verifications", ids.len()))
}

fn multiplier_suite() -> Outcome {
    verify_kind(EntryKind::Multiplier)
}

fn density_suite() -> Outcome {
    verify_kind(EntryKind::Density)
}

fn variational_correspondence() -> Outcome {
    let sets = symbolic_sets();
    let mut n_links = 0;
    for l in links() {
        let c = sets
            .iter()
            .find(|c| {
                let all = catalog_all(c);
                all.iter().any(|e| e.id == l.density && e.admissible) && all.iter().any(|e| e.id == l.multiplier && e.admissible)
            })
            .ok_or_else(|| format!("no set admits both {} and {}", l.density, l.multiplier))?;
        let all = catalog_all(c);
        let d = all.iter().find(|e| e.id == l.density).expect("fixed catalog");
        let m = all.iter().find(|e| e.id == l.multiplier).expect("fixed catalog");
        let got = link_factor(&d.body.re, &m.body).map_err(|e| e.to_string())?;
        if got.as_ref() != Some(&l.factor) {
            return Err(format!("{} -> {}: factor {got:?}, expected {}", l.density, l.multiplier, l.factor));
        }
        n_links += 1;
    }
    let mut n_round = 0;
    for c in &sets {
        for e in catalog_all(c).into_iter().filter(|e| e.admissible && e.kind == EntryKind::Density && e.body.im.is_zero()) {
            let q = variational_link(&e.body.re).map_err(|err| err.to_string())?;
            let back = homotopy_density(&q).map_err(|err| format!("{}: {err}", e.id))?;
            if !equivalent(&back, &e.body.re).map_err(|err| err.to_string())? {
                return Err(format!("{} does not round-trip at α={} β={}", e.id, c.alpha, c.beta));
            }
            n_round += 1;
        }
    }
    Ok(format!("{n_links} links with exact factors, {n_round} density round trips"))
}

fn pde_residuals(sol: &Solution, t: f64) -> Result<f64, String> {
    let p = sol.spec().params;
    let w = (12.0 / p.c.abs().sqrt()).min(20.0);
    let cusp = sol.family().has_cusp();
    let mut max = 0.0f64;
    for xi in sample_points(100, w) {
        let side = cusp.then_some(if xi < 0.0 { Side::Left } else { Side::Right });
        let r = sol.pde_residual(t, p.xi0 + p.c * t + xi, side).map_err(|e| e.to_string())?;
        max = max.max(r.norm());
    }
    Ok(max)
}

fn residual_suite() -> Outcome {
    let mut worst = 0.0f64;
    for f in Family::ALL {
        let (spec, coeffs) = representative(f);
        for t in [0.0, 0.7] {
            let sol = Solution::new(spec, &coeffs).map_err(|e| e.to_string())?;
            let r = pde_residuals(&sol, t)?;
            if !(r < 1e-9) {
                return Err(format!("{f} at t={t}: PDE residual {r:e}"));
            }
            worst = worst.max(r);
        }
    }
    let mixed = Coefficients::parse("2+i", "1-i").expect("literal");
    let hirota = Coefficients::real(2, 0);
    let negative = Coefficients::real(-2, 0);
    let profiles = [
        (ReducedProfile::Rational, mixed.clone(), 1.0),
        (ReducedProfile::SechOffset { big_theta: 0.7 }, mixed.clone(), 1.0),
        (ReducedProfile::Cusp { big_theta: 0.4 }, Coefficients::parse("1+2i", "-1-2i").expect("literal"), 1.0),
        (ReducedProfile::RationalAngle { theta: 0.6 }, hirota.clone(), 1.0),
        (ReducedProfile::SechOffsetAngle { big_theta: 0.5, theta: 0.6 }, hirota, 1.0),
        (ReducedProfile::Pole { sign: 1.0 }, negative.clone(), -1.0),
        (ReducedProfile::KinkOffset { big_theta: 0.3 }, negative, -1.0),
        (ReducedProfile::Kink, Coefficients::parse("2+i", "-4-i").expect("literal"), -1.0),
    ];
    let mut worst_ode = 0.0f64;
    for (profile, coeffs, c) in &profiles {
        for xi in sample_points(100, 10.0) {
            let (abc, r) = profile.residuals(coeffs, *c, 1.0, xi);
            if !abc.is_real() {
                return Err(format!("{profile:?}: complex A, B, C"));
            }
            // the pole profile grows like 1/ξ, so its residual is measured against f⁴
            let scale = match profile {
                ReducedProfile::Pole { .. } => 1.0 + profile.jet(coeffs, *c, 1.0, xi).iter().fold(0.0f64, |m, v| m.max(v.abs())).powi(4),
                _ => 1.0,
            };
            let rel = r.max_abs() / scale;
            if !(rel < 1e-10) {
                return Err(format!("{profile:?} at ξ={xi}: ODE residual {:e}", r.max_abs()));
            }
            worst_ode = worst_ode.max(rel);
        }
    }
    Ok(format!("{} families, max PDE residual {worst:.1e}; {} profiles, max ODE residual {worst_ode:.1e}", Family::ALL.len(), profiles.len()))
}

struct EvolutionCheck {
    spec: SolutionSpec,
    coeffs: Coefficients,
    opts: SolverOptions,
    ids: Vec<QuantityId>,
    momentum: f64,
}

fn run_evolution(chk: &EvolutionCheck) -> Result<String, String> {
    let grid = Grid::new(40.0, 1024).map_err(|e| e.to_string())?;
    let sol = Solution::new(chk.spec, &chk.coeffs).map_err(|e| e.to_string())?;
    let traj = evolve(&sol.sample_grid(grid, 0.0), &chk.coeffs, &chk.opts).map_err(|e| e.to_string())?;
    let last = traj.last().expect("non-empty trajectory");
    let (linf, _) = wave_error(&chk.spec, &chk.coeffs, last).map_err(|e| e.to_string())?;
    if !(linf < 1e-6) {
        return Err(format!("L∞ error {linf:e} at t={}", last.t));
    }
    let drift = drift_report(&traj, &chk.ids, &chk.coeffs).map_err(|e| e.to_string())?;
    for (id, d) in &drift {
        if !(d.relative < 1e-9) {
            return Err(format!("{id} drift {:e}", d.relative));
        }
    }
    let c = chk.spec.params.c;
    for s in &traj {
        let p = quantity_quadrature(QuantityId::Momentum, s, &chk.coeffs).map_err(|e| e.to_string())?;
        let e = quantity_quadrature(QuantityId::Energy, s, &chk.coeffs).map_err(|e| e.to_string())?;
        if !((p.re - chk.momentum).abs() < 1e-8 && p.im.abs() < 1e-8) {
            return Err(format!("P = {p} at t={}, expected {}", s.t, chk.momentum));
        }
        if !((e.re - 0.5 * c * p.re).abs() < 1e-8) {
            return Err(format!("E = {} but cP/2 = {} at t={}", e.re, 0.5 * c * p.re, s.t));
        }
    }
    let chi = center_of_momentum(&traj).map_err(|e| e.to_string())?;
    let chi_err = chi.iter().fold(0.0f64, |m, (t, x)| m.max((x - chk.spec.params.xi0 - c * t).abs()));
    if !(chi_err < 1e-5) {
        return Err(format!("χ(t) departs from ct by {chi_err:e}"));
    }
    let worst = drift.values().fold(0.0f64, |m, d| m.max(d.relative));
    Ok(format!("t={} dt={:e}: L∞ {linf:.1e}, max drift {worst:.1e}, |χ−ct| {chi_err:.1e}", last.t, chk.opts.dt))
}

fn evolution_reproduction() -> Outcome {
    use QuantityId::*;
    let sech = EvolutionCheck {
        spec: SolutionSpec::new(Family::Sech).c(1.0),
        coeffs: Coefficients::real(2, 1),
        opts: SolverOptions { dt: 1e-3, t_end: 5.0, record_every: 250, ..SolverOptions::default() },
        ids: vec![Momentum, Energy, GalileanEnergy],
        momentum: 4.0,
    };
    // the linear-phase soliton carries a k⁵ dt⁴ phase error at the desk step, so it runs at
    // dt = 2.5e−4 with the splitting in the wave frame
    let lp = EvolutionCheck {
        spec: SolutionSpec::new(Family::LPSoliton).c(1.0).k(0.5),
        coeffs: Coefficients::real(1, 0),
        opts: SolverOptions { dt: 2.5e-4, t_end: 5.0, record_every: 1000, frame_speed: 1.0, ..SolverOptions::default() },
        ids: vec![Momentum, Energy, GalileanEnergy, Twist],
        momentum: 12.0 * (1.0f64 + 3.0 * 0.25).sqrt(),
    };
    let a = run_evolution(&sech).map_err(|e| format!("sech: {e}"))?;
    let b = run_evolution(&lp).map_err(|e| format!("lp-soliton: {e}"))?;
    Ok(format!("L=40 N=1024; sech {a}; lp-soliton {b}"))
}

fn kink_quantities() -> Outcome {
    let (k1, c1) = representative(Family::Kink1);
    let sol = Solution::new(k1, &c1).map_err(|e| e.to_string())?;
    let w1 = closed_form_quantity(QuantityId::Twist, &sol, 0.0, 60.0, 480).map_err(|e| e.to_string())?;
    if !(w1.norm() < 1e-8) {
        return Err(format!("kink1 twist {w1}"));
    }
    let coeffs = Coefficients::real(-1, 0);
    let mut ratios = Vec::new();
    for th in [-1.0, 0.5, 1.0, 2.0] {
        let spec = SolutionSpec::new(Family::Kink2).c(-1.0).big_theta(th);
        let sol = Solution::new(spec, &coeffs).map_err(|e| e.to_string())?;
        let w60 = closed_form_quantity(QuantityId::Twist, &sol, 0.0, 60.0, 480).map_err(|e| e.to_string())?;
        let w90 = closed_form_quantity(QuantityId::Twist, &sol, 0.0, 90.0, 720).map_err(|e| e.to_string())?;
        if !((w60 - w90).norm() < 1e-8) {
            return Err(format!("Θ={th}: window [−60,60] gives {w60}, [−90,90] gives {w90}"));
        }
        let reference = analytic_quantity(QuantityId::Twist, &spec, &coeffs).map_err(|e| e.to_string())?;
        ratios.push((th, (w60 / reference).re));
    }
    let r0 = ratios[0].1;
    if let Some((th, r)) = ratios.iter().find(|(_, r)| (r - r0).abs() > 1e-8) {
        return Err(format!("ratio not constant: {r} at Θ={th} vs {r0}"));
    }
    let list: Vec<String> = ratios.iter().map(|(th, r)| format!("Θ={th}: {r:.10}")).collect();
    Ok(format!("kink1 twist {:.1e}; kink2 window-stable, quadrature/tabulated ratio {}", w1.norm(), list.join(", ")))
}

fn table_reproduction() -> Outcome {
    let r = table1::reproduce();
    if r.all_match {
        Ok(format!("{} cells match", r.cells.len()))
    } else {
        Err(format!("mismatched cells: {:?}", r.mismatches))
    }
}

fn asymptotics() -> Outcome {
    let coeffs = Coefficients::real(-1, 0);
    let mut worst = 0.0f64;
    for th in [-1.0, 0.5, 1.0, 2.0] {
        let phi = 0.1;
        let spec = SolutionSpec::new(Family::Kink2).c(-1.0).big_theta(th).phi(phi);
        let a = Solution::new(spec, &coeffs).map_err(|e| e.to_string())?.asymptotics();
        let want = f64::sinh(th) / 3f64.sqrt();
        let plus = relative_phase(a.u_plus, phi).tan() - want;
        let minus = relative_phase(a.u_minus, phi).tan() + want;
        worst = worst.max(plus.abs()).max(minus.abs());
    }
    if !(worst < 1e-10) {
        return Err(format!("kink2 phase rotation off by {worst:e}"));
    }
    let coeffs = Coefficients::real(2, 1);
    let s3 = Solution::new(SolutionSpec::new(Family::Solitary3).c(1.3).big_theta(0.0).phi(0.5), &coeffs).map_err(|e| e.to_string())?;
    let sech = Solution::new(SolutionSpec::new(Family::Sech).c(1.3).phi(0.5), &coeffs).map_err(|e| e.to_string())?;
    let mut diff = 0.0f64;
    for t in [0.0, 1.5] {
        for x in sample_points(100, 15.0) {
            let (a, b): (Complex64, Complex64) = (s3.evaluate(t, x), sech.evaluate(t, x));
            diff = diff.max((a - b).norm());
        }
    }
    if !(diff < 1e-14) {
        return Err(format!("solitary3 at Θ=0 differs from sech by {diff:e}"));
    }
    Ok(format!("kink2 tan rotation error {worst:.1e}; solitary3(Θ=0) − sech {diff:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("multiplier suite", multiplier_suite, Duration::from_secs(10)),
        ("density/flux suite", density_suite, Duration::from_secs(30)),
        ("variational correspondence", variational_correspondence, Duration::MAX),
        ("travelling-wave residual suite", residual_suite, Duration::MAX),
        ("evolution reproduction", evolution_reproduction, Duration::MAX),
        ("kink quantities", kink_quantities, Duration::MAX),
        ("finite/conserved table reproduction", table_reproduction, Duration::MAX),
        ("asymptotics", asymptotics, Duration::MAX),
    ];
    let mut failed = 0;
    for (n, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let took = start.elapsed();
        if result.is_ok() && took > *budget {
            result = Err(format!("took {took:.1?}, budget {budget:?}"));
        }
        match result {
            Ok(detail) => println!("PASS {}. {name} [{took:.1?}]: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} [{took:.1?}]: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
