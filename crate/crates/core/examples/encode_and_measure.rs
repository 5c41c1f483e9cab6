// Encode an axiom {a,b} into a qudit and measure it in every basis.
//
// cargo run --example encode_and_measure -- 5 2 3

use mubsim::cli::partition_label;
use mubsim::devices::{born, prepare};
use mubsim::{Dimension, Proposition};

pub fn run_example(d: usize, a: usize, b: usize) -> Result<(), Box<dyn std::error::Error>> {
    let d = Dimension::new(d)?;
    let axiom = Proposition::new(a, b, d)?;
    let state = prepare(&axiom, d)?;
    println!("axiom {{{a},{b}}}: {} with b = {b}", partition_label(a, d));
    for m in 0..=d.get() {
        let dist = born(&state, m, d)?;
        let probs: Vec<String> = dist.probabilities.iter().map(|p| format!("{p:.4}")).collect();
        let note = if m == a { "  <- confirms the axiom" } else { "" };
        println!("  basis {m}: [{}]{note}", probs.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    match args.as_slice() {
        [d, a, b] => run_example(*d, *a, *b),
        _ => run_example(3, 1, 1),
    }
}
