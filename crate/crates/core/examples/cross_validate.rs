// For every axiom and every measurement basis, compare the outcome the
// decision procedure predicts with the Born distribution.
//
// cargo run --example cross_validate

use mubsim::experiment::{cross_validate, DEFAULT_CLASSIFY_TOL};
use mubsim::Dimension;

pub fn run_example(dims: &[usize]) -> Result<(), Box<dyn std::error::Error>> {
    for &d in dims {
        let report = cross_validate(Dimension::new(d)?, DEFAULT_CLASSIFY_TOL)?;
        println!(
            "d = {d:>2}: {:>5} cells, {} disagreements, max |p - count/d| = {:.2e}",
            report.cells.len(),
            report.disagreements,
            report.max_multiplicity_deviation
        );
        if !report.all_agree() {
            return Err(format!("disagreement at d = {d}").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(&[2, 3, 5, 7, 11])
}
