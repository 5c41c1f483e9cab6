//! Dense complex linear algebra for d×d problems: qudit states, operators
//! and the generalized Pauli pair.

use std::f64::consts::TAU;

pub use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modmath::Dimension;

/// Tolerance on Σ|amplitude|² accepted by [`StateVector::new`].
pub const NORM_TOL: f64 = 1e-12;

/// `exp(2πi·k/d)`, computed from `k mod d`.
pub fn root_of_unity(d: Dimension, k: i64) -> Complex64 {
    let n = d.get() as i64;
    let r = k.rem_euclid(n);
    if r == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, TAU * r as f64 / n as f64)
}

fn check(left: Dimension, right: Dimension) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: left.get(),
            right: right.get(),
        })
    }
}

/// A unit-norm vector in C^d.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    dim: Dimension,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>, dim: Dimension) -> Result<Self> {
        if amplitudes.len() != dim.get() {
            return Err(Error::DimensionMismatch {
                left: amplitudes.len(),
                right: dim.get(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(StateVector { amplitudes, dim })
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>, dim: Dimension) -> Self {
        debug_assert_eq!(amplitudes.len(), dim.get());
        StateVector { amplitudes, dim }
    }

    /// Computational basis vector |k⟩.
    pub fn basis(dim: Dimension, k: usize) -> Result<Self> {
        if k >= dim.get() {
            return Err(Error::OutOfRange {
                what: "basis index",
                value: k,
                max: dim.get() - 1,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim.get()];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amplitudes, dim })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Multiply by a scalar. Callers pass unit-modulus phases.
    pub fn scaled(&self, c: Complex64) -> Self {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
            dim: self.dim,
        }
    }

    /// Euclidean distance ‖self − other‖.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        check(self.dim, other.dim)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

/// A d×d complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    entries: Vec<Complex64>,
    dim: Dimension,
}

impl Operator {
    pub fn from_entries(entries: Vec<Complex64>, dim: Dimension) -> Result<Self> {
        let n = dim.get();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: n * n,
            });
        }
        Ok(Operator { entries, dim })
    }

    pub fn identity(dim: Dimension) -> Self {
        let n = dim.get();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Operator { entries, dim }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim.get() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim.get();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        Operator {
            entries,
            dim: self.dim,
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Operator {
            entries: self.entries.iter().map(|e| e * c).collect(),
            dim: self.dim,
        }
    }

    /// `self^k` by repeated squaring; `k = 0` is the identity.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Operator::identity(self.dim);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_raw(&base);
            }
        }
        acc
    }

    fn mul_raw(&self, other: &Operator) -> Operator {
        let n = self.dim.get();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for k in 0..n {
                let lhs = self.entries[r * n + k];
                if lhs == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    entries[r * n + c] += lhs * other.entries[k * n + c];
                }
            }
        }
        Operator {
            entries,
            dim: self.dim,
        }
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_deviation(&self, other: &Operator) -> Result<f64> {
        check(self.dim, other.dim)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise deviation of `self·self†` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        self.mul_raw(&self.adjoint())
            .max_deviation(&Operator::identity(self.dim))
            .expect("same dimension")
    }

    /// `1 − |tr(self†·other)| / d`. Zero iff the two unitaries agree up to a
    /// global phase.
    pub fn phase_free_distance(&self, other: &Operator) -> Result<f64> {
        check(self.dim, other.dim)?;
        let overlap: Complex64 = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(1.0 - overlap.norm() / self.dim.get() as f64)
    }
}

/// Generalized phase operator: `Z|κ⟩ = η^κ|κ⟩`.
pub fn pauli_z(d: Dimension) -> Operator {
    let n = d.get();
    let mut op = Operator::identity(d);
    for k in 0..n {
        op.entries[k * n + k] = root_of_unity(d, k as i64);
    }
    op
}

/// Generalized shift operator: `X|κ⟩ = |κ+1 mod d⟩`.
pub fn pauli_x(d: Dimension) -> Operator {
    let n = d.get();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        entries[((k + 1) % n) * n + k] = Complex64::new(1.0, 0.0);
    }
    Operator { entries, dim: d }
}

/// Matrix product `a·b`.
pub fn compose(a: &Operator, b: &Operator) -> Result<Operator> {
    check(a.dim, b.dim)?;
    Ok(a.mul_raw(b))
}

/// Matrix-vector product. No renormalization is applied.
pub fn apply(op: &Operator, s: &StateVector) -> Result<StateVector> {
    check(op.dim, s.dim)?;
    let n = op.dim.get();
    let amplitudes = (0..n)
        .map(|r| {
            op.entries[r * n..(r + 1) * n]
                .iter()
                .zip(&s.amplitudes)
                .map(|(m, v)| m * v)
                .sum()
        })
        .collect();
    Ok(StateVector::from_raw(amplitudes, s.dim))
}

/// `⟨s|t⟩ = Σ conj(sᵢ)·tᵢ`.
pub fn inner(s: &StateVector, t: &StateVector) -> Result<Complex64> {
    check(s.dim, t.dim)?;
    Ok(s.amplitudes
        .iter()
        .zip(&t.amplitudes)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Equality up to a global phase: `|⟨s|t⟩| ≥ 1 − tol`.
pub fn phase_free_equal(s: &StateVector, t: &StateVector, tol: f64) -> Result<bool> {
    Ok(inner(s, t)?.norm() >= 1.0 - tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PRIMES: [usize; 5] = [2, 3, 5, 7, 11];

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(root_of_unity(dim(2), 0), Complex64::new(1.0, 0.0));
        assert!(close(root_of_unity(dim(2), 1), Complex64::new(-1.0, 0.0), 1e-15));
        let w = root_of_unity(dim(3), 1);
        assert!(close(w, Complex64::new(-0.5, 3f64.sqrt() / 2.0), 1e-15));
        // exponent is reduced before evaluation
        assert_eq!(root_of_unity(dim(3), 1_000_000_000_000), w);
        assert_eq!(root_of_unity(dim(3), -2), w);
    }

    #[test]
    fn pauli_examples() {
        let z2 = pauli_z(dim(2));
        assert!(close(z2.get(0, 0), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(z2.get(1, 1), Complex64::new(-1.0, 0.0), 1e-15));
        assert_eq!(z2.get(0, 1), Complex64::new(0.0, 0.0));

        let z3 = pauli_z(dim(3));
        for k in 0..3 {
            assert_eq!(z3.get(k, k), root_of_unity(dim(3), k as i64));
        }

        let x2 = pauli_x(dim(2));
        assert_eq!(x2.get(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(x2.get(0, 1), Complex64::new(1.0, 0.0));

        let d3 = dim(3);
        let moved = apply(&pauli_x(d3), &StateVector::basis(d3, 2).unwrap()).unwrap();
        assert_eq!(moved, StateVector::basis(d3, 0).unwrap());
        let moved = apply(&pauli_x(d3), &StateVector::basis(d3, 0).unwrap()).unwrap();
        assert_eq!(moved, StateVector::basis(d3, 1).unwrap());
    }

    #[test]
    fn weyl_commutation_and_order() {
        for d in PRIMES.map(dim) {
            let (x, z) = (pauli_x(d), pauli_z(d));
            let zx = compose(&z, &x).unwrap();
            let xz = compose(&x, &z).unwrap().scaled(root_of_unity(d, 1));
            assert!(zx.max_deviation(&xz).unwrap() < 1e-12, "d = {d}");

            let id = Operator::identity(d);
            assert!(x.pow(d.get() as u64).max_deviation(&id).unwrap() < 1e-12);
            assert!(z.pow(d.get() as u64).max_deviation(&id).unwrap() < 1e-12);

            assert!(x.unitarity_deviation() < 1e-10);
            assert!(z.unitarity_deviation() < 1e-10);
            assert!(compose(&x, &x.adjoint()).unwrap().max_deviation(&id).unwrap() < 1e-12);
            assert_eq!(compose(&id, &z).unwrap(), z);
        }
    }

    #[test]
    fn inner_examples() {
        let d = dim(5);
        let e0 = StateVector::basis(d, 0).unwrap();
        let e1 = StateVector::basis(d, 1).unwrap();
        assert_eq!(inner(&e0, &e0).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(inner(&e0, &e1).unwrap(), Complex64::new(0.0, 0.0));
        assert!(!phase_free_equal(&e0, &e1, 1e-10).unwrap());
        let rotated = e1.scaled(root_of_unity(d, 3));
        assert!(phase_free_equal(&e1, &rotated, 1e-12).unwrap());
        assert_eq!(apply(&Operator::identity(d), &e1).unwrap(), e1);
    }

    #[test]
    fn dimension_mismatch() {
        let (d3, d5) = (dim(3), dim(5));
        assert!(compose(&pauli_x(d3), &pauli_x(d5)).is_err());
        assert!(apply(&pauli_x(d3), &StateVector::basis(d5, 0).unwrap()).is_err());
        assert!(inner(&StateVector::basis(d3, 0).unwrap(), &StateVector::basis(d5, 0).unwrap()).is_err());
        assert!(StateVector::new(vec![Complex64::new(1.0, 0.0); 2], d3).is_err());
        assert!(matches!(
            StateVector::new(vec![Complex64::new(1.0, 0.0); 3], d3),
            Err(Error::NotNormalized(_))
        ));
    }

    proptest! {
        #[test]
        fn products_of_paulis_preserve_norm(
            d in prop::sample::select(PRIMES.to_vec()),
            word in prop::collection::vec((0u64..12, 0u64..12), 1..8),
            amps in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 11),
        ) {
            let d = dim(d);
            let raw: Vec<Complex64> = amps[..d.get()].iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-3);
            let s = StateVector::new(raw.iter().map(|c| c / norm).collect(), d).unwrap();

            let mut op = Operator::identity(d);
            for &(px, pz) in &word {
                let step = compose(&pauli_x(d).pow(px), &pauli_z(d).pow(pz)).unwrap();
                op = compose(&op, &step).unwrap();
            }
            prop_assert!(op.unitarity_deviation() < 1e-10);
            let out = apply(&op, &s).unwrap();
            prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
