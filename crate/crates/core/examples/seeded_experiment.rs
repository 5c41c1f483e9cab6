// Repeat the prepare-and-measure experiment with a seeded random stream
// and test the tallies for uniformity.
//
// cargo run --example seeded_experiment

use mubsim::experiment::{chi_square_uniform, run, ExperimentConfig};
use mubsim::{Dimension, Proposition};

pub fn run_example(trials: u64, seed: u64) -> Result<(), Box<dyn std::error::Error>> {
    let d = Dimension::new(3)?;
    let axiom = Proposition::new(0, 0, d)?;
    for m in 0..=d.get() {
        let tally = run(&ExperimentConfig::new(d, axiom, m, trials, seed)?)?;
        let test = chi_square_uniform(&tally)?;
        println!(
            "basis {m}: counts {:?}  chi2 = {:>10.3} (critical {})  {:?}",
            tally.counts, test.chi_square_statistic, test.critical_value, test.verdict
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(10_000, 42)
}
