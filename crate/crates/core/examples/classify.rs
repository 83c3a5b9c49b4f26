//! Case flags for a few coefficient pairs, with the exact witness behind each flag.
//!
//! `cargo run --example classify -- 2+i 1-i` classifies one pair from the command line.

use cmkdv::model::Coefficients;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs: Vec<(String, String)> = match args.as_slice() {
        [a, b] => vec![(a.clone(), b.clone())],
        _ => [("2", "1"), ("3", "1"), ("3/2", "0"), ("2+i", "1-i"), ("-3/5-4/5i", "1"), ("0", "0")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    for (a, b) in pairs {
        let c = match Coefficients::parse(&a, &b) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("{a}, {b}: {e}");
                std::process::exit(2);
            }
        };
        let flags = c.classify();
        println!("α = {}, β = {}", c.alpha, c.beta);
        for (name, p) in &flags.predicates {
            println!("  {:<16} {:<5}  {}", name, p.holds, p.witness);
        }
        match c.sigma() {
            Ok(s) => println!("  σ = {s}"),
            Err(e) => println!("  σ: {e}"),
        }
    }
}
