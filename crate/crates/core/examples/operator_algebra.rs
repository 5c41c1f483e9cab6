// The generalized Pauli pair and the encoding unitary U = X^f(0) Z^f(1).
//
// cargo run --example operator_algebra

use mubsim::devices::encode_unitary;
use mubsim::logic::all_functions;
use mubsim::qlinalg::{compose, pauli_x, pauli_z, root_of_unity, Operator};
use mubsim::Dimension;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for d in [2, 3, 5, 7] {
        let d = Dimension::new(d)?;
        let (x, z) = (pauli_x(d), pauli_z(d));
        let id = Operator::identity(d);

        let zx = compose(&z, &x)?;
        let eta_xz = compose(&x, &z)?.scaled(root_of_unity(d, 1));
        println!("d = {d}");
        println!("  |ZX - eta XZ|_max    = {:.2e}", zx.max_deviation(&eta_xz)?);
        println!("  |X^d - I|_max        = {:.2e}", x.pow(d.get() as u64).max_deviation(&id)?);
        println!("  |Z^d - I|_max        = {:.2e}", z.pow(d.get() as u64).max_deviation(&id)?);

        // U for every f, compared up to phase with (X Z^a)^f(0) Z^b in every linear family
        let mut worst = 0.0f64;
        for a in 0..d.get() {
            let xza = compose(&x, &z.pow(a as u64))?;
            for f in all_functions(d) {
                let n = d.get();
                let b = (f.f1.value() + n * n - a * f.f0.value()) % n;
                let rhs = compose(&xza.pow(f.f0.value() as u64), &z.pow(b as u64))?;
                worst = worst.max(encode_unitary(&f, d)?.phase_free_distance(&rhs)?);
            }
        }
        println!("  max phase-free distance U vs (XZ^a)^f0 Z^b = {worst:.2e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
