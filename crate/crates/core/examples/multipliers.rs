//! Multipliers at exact coefficients: the determining equation and the Helmholtz
//! conditions, with the term count left by each. Inadmissible ones are shown failing.

use cmkdv::conservation::{catalog_all, determining_residual, helmholtz_residuals, EntryKind, HelmholtzOrder};
use cmkdv::model::Coefficients;

fn main() {
    for (a, b) in [("3-4/3i", "3/2-2/3i"), ("3", "1"), ("3/2", "0"), ("2+i", "1-3i")] {
        let c = Coefficients::parse(a, b).unwrap();
        println!("α = {}, β = {}", c.alpha, c.beta);
        for e in catalog_all(&c).into_iter().filter(|e| e.kind == EntryKind::Multiplier) {
            let det = determining_residual(&e.body, &c).unwrap().term_count();
            let order = if e.helmholtz_order == Some(4) { HelmholtzOrder::Four } else { HelmholtzOrder::Two };
            let helm: usize = helmholtz_residuals(&e.body, order).unwrap().iter().map(|(_, r)| r.term_count()).sum();
            let tag = if e.admissible { "admissible" } else { "-" };
            println!("  {:<4} {:<11} determining {:>4} terms, Helmholtz {:>3} terms   [{}]", e.id, tag, det, helm, e.condition);
        }
    }
}
