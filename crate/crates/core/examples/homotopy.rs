//! From multiplier to density and back: the homotopy inverse of the Euler operator,
//! checked against the stored density ↔ multiplier factors.

use cmkdv::conservation::{catalog_all, equivalent, homotopy_density, link_factor, links};
use cmkdv::exact::{format_rational, rat};
use cmkdv::model::Coefficients;

fn main() {
    let sets: Vec<Coefficients> = [("3-4/3i", "3/2-2/3i"), ("3-3i", "1-i"), ("2+i", "-1/2+i"), ("2", "1"), ("3/2", "0"), ("3", "1")]
        .iter()
        .map(|(a, b)| Coefficients::parse(a, b).unwrap())
        .collect();
    for l in links() {
        let Some(c) = sets.iter().find(|c| {
            let all = catalog_all(c);
            [l.density, l.multiplier].iter().all(|id| all.iter().any(|e| e.id == *id && e.admissible))
        }) else {
            continue;
        };
        let all = catalog_all(c);
        let t = &all.iter().find(|e| e.id == l.density).unwrap().body.re;
        let q = &all.iter().find(|e| e.id == l.multiplier).unwrap().body;
        let factor = link_factor(t, q).unwrap().map(|f| format_rational(&f)).unwrap_or_else(|| "none".into());
        let back = homotopy_density(q).unwrap();
        // the homotopy density of Q is T / factor up to a total x-derivative
        let scaled = t.scale(&(rat(1, 1) / &l.factor));
        println!(
            "{:<3} -> {:<4} factor {} (stored {}), homotopy density {} terms, matches T/factor: {}",
            l.density,
            l.multiplier,
            factor,
            format_rational(&l.factor),
            back.term_count(),
            equivalent(&back, &scaled).unwrap()
        );
    }
}
