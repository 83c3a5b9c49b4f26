//! Densities with their fluxes: D_tT + D_xX for the catalog pairs, fluxes rebuilt
//! by inverting D_x, and altered coefficient variants that break conservation.

use cmkdv::conservation::{catalog, conservation_residual, flux_from_complex_density, literal, EntryKind};
use cmkdv::model::Coefficients;

fn main() {
    for (a, b) in [("3-4/3i", "3/2-2/3i"), ("3-3i", "1-i"), ("2", "1"), ("3/2", "0"), ("3", "1")] {
        let c = Coefficients::parse(a, b).unwrap();
        println!("α = {}, β = {}", c.alpha, c.beta);
        for e in catalog(&c).into_iter().filter(|e| e.kind == EntryKind::Density) {
            let rebuilt = flux_from_complex_density(&e.body, &c).expect("admissible densities are conserved");
            let given = e.flux.as_ref().map(|x| conservation_residual(&e.body, x, &c).unwrap().term_count());
            let closes = conservation_residual(&e.body, &rebuilt, &c).unwrap().is_zero();
            match given {
                Some(n) => println!("  {:<7} T {:>3} terms, X {:>3} terms, residual {n} terms, rebuilt flux closes: {closes}", e.id, e.body.term_count(), rebuilt.term_count()),
                None => println!("  {:<7} T {:>3} terms, rebuilt X {:>3} terms, closes: {closes}", e.id, e.body.term_count(), rebuilt.term_count()),
            }
        }
    }

    println!("\naltered variants");
    let real = Coefficients::real(2, 1);
    let t2 = catalog(&real).into_iter().find(|e| e.id == "T2").unwrap();
    let r = conservation_residual(&t2.body, &literal::energy_flux(&real), &real).unwrap();
    println!("  energy flux with ½(α+2β): residual {} terms", r.term_count());
    let hirota = Coefficients::parse("3/2", "0").unwrap();
    println!("  H1 with quartic 6α: {}", flux_from_complex_density(&literal::h1_density(&hirota), &hirota).unwrap_err());
    let sasa = Coefficients::real(3, 1);
    println!("  H3 with sextic 4/3: {}", flux_from_complex_density(&literal::h3_density(&sasa), &sasa).unwrap_err());
}
