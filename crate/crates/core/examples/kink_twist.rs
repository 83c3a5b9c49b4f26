//! Twist of the kinks: zero for the untwisted kink, and for the twisted kink a
//! window-stable value at twice the tabulated 2√3 c sinhΘ sech²Θ/α. The limiting
//! phases satisfy tan(φ± − φ) = ±sinhΘ/√3.

use cmkdv::closed_form::{relative_phase, representative, Family, Solution, SolutionSpec};
use cmkdv::conservation::quantities::{analytic_quantity, closed_form_quantity, QuantityId};
use cmkdv::model::Coefficients;

fn main() {
    let (spec, coeffs) = representative(Family::Kink1);
    let k1 = Solution::new(spec, &coeffs).unwrap();
    println!("kink1 twist on [−60, 60]: {:.2e}", closed_form_quantity(QuantityId::Twist, &k1, 0.0, 60.0, 480).unwrap().norm());

    let coeffs = Coefficients::real(-1, 0);
    println!("\nkink2, c = −1, α = −1");
    println!("{:>5} {:>16} {:>16} {:>14} {:>8} {:>14}", "Θ", "[−60, 60]", "[−90, 90]", "tabulated", "ratio", "tan(φ+ − φ)√3");
    for th in [-1.0, 0.5, 1.0, 2.0] {
        let spec = SolutionSpec::new(Family::Kink2).c(-1.0).big_theta(th).phi(0.1);
        let sol = Solution::new(spec, &coeffs).unwrap();
        let w60 = closed_form_quantity(QuantityId::Twist, &sol, 0.0, 60.0, 480).unwrap().re;
        let w90 = closed_form_quantity(QuantityId::Twist, &sol, 0.0, 90.0, 720).unwrap().re;
        let tab = analytic_quantity(QuantityId::Twist, &spec, &coeffs).unwrap().re;
        let rot = relative_phase(sol.asymptotics().u_plus, 0.1).tan() * 3f64.sqrt();
        println!("{th:>5} {w60:>16.10} {w90:>16.10} {tab:>14.8} {:>8.5} {rot:>14.10}  (sinh Θ = {:.10})", w60 / tab, th.sinh());
    }
}
