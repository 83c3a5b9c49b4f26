//! Every closed-form family at its representative parameters: value at the
//! centre, limits at ±∞ and the worst PDE residual over a sweep through the wave.

use cmkdv::closed_form::{representative, Family, Side, Solution};
use cmkdv::reduction::sample_points;

fn main() {
    println!("{:<11} {:>22} {:>22} {:>22} {:>10}", "family", "u(0, 0.3)", "u(−∞)", "u(+∞)", "residual");
    for f in Family::ALL {
        let (spec, coeffs) = representative(f);
        let sol = Solution::new(spec, &coeffs).expect("representatives are admissible");
        let a = sol.asymptotics();
        let w = (12.0 / spec.params.c.abs().sqrt()).min(20.0);
        let t = 0.4;
        let worst = sample_points(100, w)
            .into_iter()
            .map(|xi| {
                let side = f.has_cusp().then_some(if xi < 0.0 { Side::Left } else { Side::Right });
                sol.pde_residual(t, spec.params.xi0 + spec.params.c * t + xi, side).unwrap().norm()
            })
            .fold(0.0f64, f64::max);
        let z = |v: num_complex::Complex64| format!("{:+.5}{:+.5}i", v.re, v.im);
        println!("{:<11} {:>22} {:>22} {:>22} {:>10.1e}", f.name(), z(sol.evaluate(0.0, 0.3)), z(a.u_minus), z(a.u_plus), worst);
        if !a.phase_converges {
            println!("{:<11} only |u| has a limit; the phase keeps winding", "");
        }
    }
}
