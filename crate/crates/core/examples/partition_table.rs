// Partition the d² functions f: {0,1} -> Z_d into d+1 families of d
// groups, then decide a few theorems from a single axiom.
//
// cargo run --example partition_table -- 5

use mubsim::cli::{partition_label, render_table};
use mubsim::logic::{decide, intersect};
use mubsim::{Dimension, Proposition};

pub fn run_example(d: usize) -> Result<(), Box<dyn std::error::Error>> {
    let d = Dimension::new(d)?;
    print!("{}", render_table(d)?);

    let axiom = Proposition::new(1, 1, d)?;
    println!("\naxiom {{1,1}}: {}", partition_label(1, d));
    for theorem in [(1, 1), (1, 2), (0, 1), (d.get(), 0)] {
        let theorem = Proposition::new(theorem.0, theorem.1, d)?;
        let common = intersect(&axiom, &theorem, d)?;
        println!(
            "  {{{},{}}} {:<22} {:?} ({} shared function{})",
            theorem.a(),
            theorem.b(),
            partition_label(theorem.a(), d),
            decide(&axiom, &theorem, d)?,
            common.len(),
            if common.len() == 1 { "" } else { "s" },
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    run_example(d)
}
