//! The verdict matrix "conserved and finite" for the integrated densities against
//! the travelling waves, each cell decided by its probes.

use cmkdv::conservation::quantities::QuantityId;
use cmkdv::table1::reproduce;

fn main() {
    let report = reproduce();
    let cols = QuantityId::LOW_ORDER;
    print!("{:<11}", "");
    for q in cols {
        print!(" {:>16}", q.name());
    }
    println!();
    let mut family = None;
    for cell in &report.cells {
        if family != Some(cell.family) {
            if family.is_some() {
                println!();
            }
            print!("{:<11}", cell.family.name());
            family = Some(cell.family);
        }
        let verdicts: String = cell.probes.iter().map(|p| if p.verdict { 'y' } else { 'n' }).collect();
        let mark = if cell.matches { "" } else { "!" };
        print!(" {:>16}", format!("{verdicts}{mark}"));
    }
    println!();
    println!("\n{} cells, all match the reference: {}", report.cells.len(), report.all_match);
    for m in &report.mismatches {
        println!("  mismatch: {m}");
    }
}
