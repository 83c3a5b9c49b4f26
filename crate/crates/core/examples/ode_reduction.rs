//! Travelling-wave reduction: the real constants (A, B, C) for an offset, the
//! realness cases, and residuals of every reduced profile in its three forms.

use cmkdv::model::Coefficients;
use cmkdv::reduction::{abc, kink_conditions, linear_phase_branch, realness_cases, sample_points, ReducedProfile};
use num_complex::Complex64;

fn main() {
    let mixed = Coefficients::parse("2+i", "1-i").unwrap();
    let a = Complex64::new(1.0, 0.0);
    let r = abc(&mixed, a, 1.0, 1.0);
    println!("α = 2+i, β = 1−i, a = 1, |b| = 1, c = 1: (A, B, C) = {:?}", r.real_parts());
    println!("realness: {:?}", realness_cases(&mixed, a));

    let profiles = [
        (ReducedProfile::Rational, mixed.clone(), 1.0),
        (ReducedProfile::SechOffset { big_theta: 0.7 }, mixed.clone(), 1.0),
        (ReducedProfile::Cusp { big_theta: 0.4 }, Coefficients::parse("1+2i", "-1-2i").unwrap(), 1.0),
        (ReducedProfile::RationalAngle { theta: 0.6 }, Coefficients::real(2, 0), 1.0),
        (ReducedProfile::SechOffsetAngle { big_theta: 0.5, theta: 0.6 }, Coefficients::real(2, 0), 1.0),
        (ReducedProfile::Pole { sign: 1.0 }, Coefficients::real(-2, 0), -1.0),
        (ReducedProfile::KinkOffset { big_theta: 0.3 }, Coefficients::real(-2, 0), -1.0),
        (ReducedProfile::Kink, Coefficients::parse("2+i", "-4-i").unwrap(), -1.0),
    ];
    println!("\n{:<52} {:>10} {:>10} {:>10}", "profile", "3rd order", "integrated", "first int");
    for (p, coeffs, c) in &profiles {
        let mut worst = [0.0f64; 3];
        for xi in sample_points(100, 10.0) {
            let (_, res) = p.residuals(coeffs, *c, 1.0, xi);
            // relative to f⁴ so the pole profile is measured on the same footing
            let scale = 1.0 + p.jet(coeffs, *c, 1.0, xi).iter().fold(0.0f64, |m, v| m.max(v.abs())).powi(4);
            for (w, r) in worst.iter_mut().zip([res.third_order, res.once_integrated, res.first_integral]) {
                *w = w.max(r.abs() / scale);
            }
        }
        println!("{:<52} {:>10.1e} {:>10.1e} {:>10.1e}", format!("{p:?}"), worst[0], worst[1], worst[2]);
        if p.is_kink() {
            let (aa, bb, cc) = abc(coeffs, p.offset(coeffs, *c), 1.0, *c).real_parts();
            let f0 = kink_conditions((aa, bb, cc), 1.5 * aa * aa / cc, 0.0).expect("kink conditions hold");
            println!("{:<52} f(±∞) = ±{f0:.6}", "");
        }
    }

    let hirota = Coefficients::real(1, 0);
    println!("\nlinear phase, α = 1, β = 0, c = 1, k = 1/2: {:?}", linear_phase_branch(&hirota, 1.0, 0.5).unwrap());
    let peakon = Coefficients::parse("-3/5-4/5i", "1").unwrap();
    println!("linear phase, α = −3/5−4/5i, β = 1, c = 1, k = 1: {:?}", linear_phase_branch(&peakon, 1.0, 1.0).unwrap());
}
