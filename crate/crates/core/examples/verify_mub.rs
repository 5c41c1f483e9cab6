// Build the d+1 mutually unbiased bases and report worst-case deviations.
//
// cargo run --example verify_mub -- 2 3 5 7 11 13

use mubsim::mub::verify;
use mubsim::Dimension;

pub fn run_example(dims: &[usize]) -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>12}  verdict",
        "d", "orthonormal", "unbiased", "eigen", "shift"
    );
    for &d in dims {
        let report = verify(Dimension::new(d)?, 1e-10);
        println!(
            "{:>3} {:>12.2e} {:>12.2e} {:>12.2e} {:>12.2e}  {}",
            d,
            report.max_orthonormality_deviation,
            report.max_unbiasedness_deviation,
            report.max_eigen_residual,
            report.max_shift_residual,
            if report.passed() { "pass" } else { "FAIL" }
        );
        if !report.passed() {
            return Err(format!("verification failed for d = {d}").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dims: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    if dims.is_empty() {
        run_example(&[2, 3, 5, 7, 11])
    } else {
        run_example(&dims)
    }
}
