//! The complete set of d+1 mutually unbiased bases for prime d.
//!
//! Basis `a < d` is the eigenbasis of `X·Zᵃ`, labelled so that
//! `Z|j⟩ₐ = |j−1⟩ₐ` holds exactly. Basis `a = d` is the computational
//! (Z) basis.
//!
//! For odd d the vectors follow the closed form
//!
//! ```text
//! |j⟩ₐ = d^{-1/2} Σ_κ η^{−jκ − a·s_κ} |κ⟩,   s_κ = κ + (κ+1) + … + (d−1)
//! ```
//!
//! For d = 2 that formula is not an eigenvector of `X·Z` (the wraparound
//! picks up a sign), so `|0⟩₁ = (|0⟩ + i|1⟩)/√2` is used instead and the
//! remaining label follows from the shift rule.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{Dimension, Residue};
use crate::qlinalg::{
    apply, compose, inner, pauli_x, pauli_z, root_of_unity, Complex64, Operator, StateVector,
};

/// `s_κ mod d` for κ = 0..d.
fn suffix_sums(d: Dimension) -> Vec<i64> {
    let n = d.get() as i64;
    let mut s = vec![0i64; d.get()];
    let mut acc = 0i64;
    for k in (0..n).rev() {
        acc = (acc + k) % n;
        s[k as usize] = acc;
    }
    s
}

fn check_partition(d: Dimension, a: usize) -> Result<()> {
    if a > d.get() {
        return Err(Error::OutOfRange {
            what: "partition index",
            value: a,
            max: d.get(),
        });
    }
    Ok(())
}

/// `|j⟩ₐ`, expressed in the computational basis.
pub fn basis_state(d: Dimension, a: usize, j: Residue) -> Result<StateVector> {
    check_partition(d, a)?;
    if j.dim() != d {
        return Err(Error::DimensionMismatch {
            left: j.dim().get(),
            right: d.get(),
        });
    }
    if a == d.get() {
        return StateVector::basis(d, j.value());
    }

    let n = d.get();
    let norm = 1.0 / (n as f64).sqrt();
    let j = j.value() as i64;
    let amplitudes = if n == 2 && a == 1 {
        let base = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        (0..n)
            .map(|k| base[k] * root_of_unity(d, -j * k as i64) * norm)
            .collect()
    } else {
        let s = suffix_sums(d);
        let a = a as i64;
        (0..n)
            .map(|k| root_of_unity(d, -j * k as i64 - a * s[k]) * norm)
            .collect()
    };
    StateVector::new(amplitudes, d)
}

/// The operator whose eigenbasis is basis `a`: `X·Zᵃ` for `a < d`, `Z` for `a = d`.
pub fn stabilizer(d: Dimension, a: usize) -> Result<Operator> {
    check_partition(d, a)?;
    let z = pauli_z(d);
    if a == d.get() {
        Ok(z)
    } else {
        compose(&pauli_x(d), &z.pow(a as u64))
    }
}

/// One orthonormal basis, `states[j] = |j⟩ₐ`.
#[derive(Debug, Clone)]
pub struct MubBasis {
    pub a: usize,
    pub states: Vec<StateVector>,
}

/// All d+1 bases, ordered by `a = 0..=d`.
pub fn full_set(d: Dimension) -> Vec<MubBasis> {
    (0..=d.get())
        .map(|a| MubBasis {
            a,
            states: d
                .residues()
                .map(|j| basis_state(d, a, j).expect("valid index"))
                .collect(),
        })
        .collect()
}

/// Worst-case deviations from the defining properties of the complete set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MubReport {
    pub d: Dimension,
    pub tol: f64,
    /// max |⟨jₐ|kₐ⟩ − δ_jk|
    pub max_orthonormality_deviation: f64,
    /// max ||⟨jₐ|k_m⟩|² − 1/d| over a ≠ m
    pub max_unbiasedness_deviation: f64,
    /// max ‖Sₐ|jₐ⟩ − λ|jₐ⟩‖ with λ the Rayleigh quotient
    pub max_eigen_residual: f64,
    /// max ‖Z|jₐ⟩ − |j−1⟩ₐ‖ over a < d
    pub max_shift_residual: f64,
}

impl MubReport {
    pub fn passed(&self) -> bool {
        self.max_orthonormality_deviation < self.tol
            && self.max_unbiasedness_deviation < self.tol
            && self.max_eigen_residual < self.tol
            && self.max_shift_residual < self.tol
    }
}

/// Check orthonormality, unbiasedness, the eigenvector property and the
/// shift rule over the full set.
pub fn verify(d: Dimension, tol: f64) -> MubReport {
    let set = full_set(d);
    let n = d.get();
    let uniform = 1.0 / n as f64;
    let z = pauli_z(d);

    let mut ortho = 0.0f64;
    let mut unbiased = 0.0f64;
    let mut eigen = 0.0f64;
    let mut shift = 0.0f64;

    for (ia, basis) in set.iter().enumerate() {
        for (im, other) in set.iter().enumerate().skip(ia) {
            for (j, sj) in basis.states.iter().enumerate() {
                for (k, sk) in other.states.iter().enumerate() {
                    let ov = inner(sj, sk).expect("same dimension");
                    if ia == im {
                        let want = if j == k { 1.0 } else { 0.0 };
                        ortho = ortho.max((ov - Complex64::new(want, 0.0)).norm());
                    } else {
                        unbiased = unbiased.max((ov.norm_sqr() - uniform).abs());
                    }
                }
            }
        }

        let op = stabilizer(d, basis.a).expect("valid partition");
        for (j, sj) in basis.states.iter().enumerate() {
            let image = apply(&op, sj).expect("same dimension");
            let lambda = inner(sj, &image).expect("same dimension");
            eigen = eigen.max(image.distance(&sj.scaled(lambda)).expect("same dimension"));

            if basis.a < n {
                let shifted = apply(&z, sj).expect("same dimension");
                let target = &basis.states[(j + n - 1) % n];
                shift = shift.max(shifted.distance(target).expect("same dimension"));
            }
        }
    }

    MubReport {
        d,
        tol,
        max_orthonormality_deviation: ortho,
        max_unbiasedness_deviation: unbiased,
        max_eigen_residual: eigen,
        max_shift_residual: shift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn assert_amps(s: &StateVector, want: &[Complex64]) {
        for (got, want) in s.amplitudes().iter().zip(want) {
            assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn computational_basis_state() {
        let d = dim(3);
        let s = basis_state(d, 3, d.residue(1).unwrap()).unwrap();
        assert_eq!(s, StateVector::basis(d, 1).unwrap());
    }

    #[test]
    fn qubit_fourier_state() {
        let d = dim(2);
        let s = basis_state(d, 0, d.residue(1).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_amps(&s, &[Complex64::new(h, 0.0), Complex64::new(-h, 0.0)]);
    }

    #[test]
    fn qubit_imaginary_basis() {
        let d = dim(2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s0 = basis_state(d, 1, d.residue(0).unwrap()).unwrap();
        let s1 = basis_state(d, 1, d.residue(1).unwrap()).unwrap();
        assert_amps(&s0, &[Complex64::new(h, 0.0), Complex64::new(0.0, h)]);
        assert_amps(&s1, &[Complex64::new(h, 0.0), Complex64::new(0.0, -h)]);
    }

    #[test]
    fn qutrit_closed_form() {
        let d = dim(3);
        assert_eq!(suffix_sums(d), [0, 0, 2]);
        let s = basis_state(d, 1, d.residue(0).unwrap()).unwrap();
        let c = 1.0 / 3f64.sqrt();
        let want = [0i64, 0, 2].map(|e| root_of_unity(d, -e) * c);
        assert_amps(&s, &want);

        let xz = stabilizer(d, 1).unwrap();
        let image = apply(&xz, &s).unwrap();
        let lambda = inner(&s, &image).unwrap();
        assert!(image.distance(&s.scaled(lambda)).unwrap() < 1e-12);
    }

    #[test]
    fn suffix_sums_match_direct_sum() {
        for d in [3usize, 5, 7, 11, 13] {
            let s = suffix_sums(dim(d));
            for (k, &got) in s.iter().enumerate() {
                let direct: usize = (k..d).sum();
                assert_eq!(got as usize, direct % d);
            }
        }
    }

    #[test]
    fn set_sizes() {
        assert_eq!(full_set(dim(2)).len(), 3);
        let set = full_set(dim(3));
        assert_eq!(set.len(), 4);
        assert_eq!(set.iter().map(|b| b.states.len()).sum::<usize>(), 12);
        assert_eq!(full_set(dim(5)).len(), 6);
    }

    #[test]
    fn verify_passes_for_small_primes() {
        for d in [2, 3, 5, 7, 11, 13] {
            let report = verify(dim(d), 1e-10);
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn shift_is_exact_for_every_label() {
        for d in [2, 3, 5, 7].map(dim) {
            let z = pauli_z(d);
            for a in 0..d.get() {
                for j in d.residues() {
                    let shifted = apply(&z, &basis_state(d, a, j).unwrap()).unwrap();
                    let prev = basis_state(d, a, d.reduce(j.value() as i64 - 1)).unwrap();
                    assert!(shifted.distance(&prev).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn invalid_arguments() {
        let d = dim(3);
        assert!(basis_state(d, 4, d.residue(0).unwrap()).is_err());
        assert!(basis_state(d, 0, dim(5).residue(4).unwrap()).is_err());
    }
}
