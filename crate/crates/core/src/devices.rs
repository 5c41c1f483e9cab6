//! Preparation and measurement devices.
//!
//! The preparation device encodes an axiom `{a, b}` by taking `|0⟩ₐ` and
//! applying `U = X^{f(0)}·Z^{f(1)}` for a function `f` in the axiom's group.
//! The measurement device measures in basis `m` and reports outcome labels
//! `n` so that `m = a` always returns `n = b`.
//!
//! # Random streams
//!
//! Single-shot outcomes are drawn by inverse-CDF sampling from a
//! `ChaCha8Rng` (from `rand_chacha`). Trial `i` of an experiment with seed
//! `s` uses `ChaCha8Rng::seed_from_u64(s ^ i.wrapping_mul(TRIAL_MIX))`
//! and consumes exactly one `f64` (53 random bits). Both ChaCha and
//! `seed_from_u64` are portable, so tallies are reproducible across
//! platforms and independent of how trials are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{BinaryFunction, Proposition};
use crate::modmath::Dimension;
use crate::mub::basis_state;
use crate::qlinalg::{apply, compose, inner, pauli_x, pauli_z, Operator, StateVector};

/// Odd 64-bit constant (2⁶⁴/φ) used to spread trial indices over seeds.
pub const TRIAL_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// `X^{f(0)} · Z^{f(1)}`.
pub fn encode_unitary(f: &BinaryFunction, d: Dimension) -> Result<Operator> {
    if f.dim() != d {
        return Err(Error::DimensionMismatch {
            left: f.dim().get(),
            right: d.get(),
        });
    }
    compose(
        &pauli_x(d).pow(f.f0.value() as u64),
        &pauli_z(d).pow(f.f1.value() as u64),
    )
}

/// The fixed group member used by [`prepare`]: `(0, b)` for linear
/// partitions, `(b, 0)` for the `f(0) = b` partition.
pub fn canonical_representative(axiom: &Proposition) -> BinaryFunction {
    let d = axiom.dim();
    let zero = d.reduce(0);
    if axiom.is_value_partition() {
        BinaryFunction {
            f0: axiom.b(),
            f1: zero,
        }
    } else {
        BinaryFunction {
            f0: zero,
            f1: axiom.b(),
        }
    }
}

/// Encode `axiom` into a qudit state.
pub fn prepare(axiom: &Proposition, d: Dimension) -> Result<StateVector> {
    prepare_with(&canonical_representative(axiom), axiom.a(), d)
}

/// Encode with an arbitrary function `f`, starting from `|0⟩ₐ`.
pub fn prepare_with(f: &BinaryFunction, a: usize, d: Dimension) -> Result<StateVector> {
    let start = basis_state(d, a, d.reduce(0))?;
    apply(&encode_unitary(f, d)?, &start)
}

/// Born probabilities over outcome labels `n` for a measurement in basis `m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    pub d: Dimension,
    pub m: usize,
    pub probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    /// Outcome with the largest probability (smallest label on ties).
    pub fn mode(&self) -> usize {
        let mut best = 0;
        for (n, &p) in self.probabilities.iter().enumerate() {
            if p > self.probabilities[best] {
                best = n;
            }
        }
        best
    }
}

/// Outcome label for basis vector `j` of basis `m`: `−j mod d` for `m < d`,
/// `j` for the computational basis.
pub fn outcome_label(j: usize, m: usize, d: Dimension) -> usize {
    let n = d.get();
    if m == n {
        j
    } else {
        (n - j) % n
    }
}

/// Measure `state` in basis `m`.
pub fn born(state: &StateVector, m: usize, d: Dimension) -> Result<OutcomeDistribution> {
    if state.dim() != d {
        return Err(Error::DimensionMismatch {
            left: state.dim().get(),
            right: d.get(),
        });
    }
    if m > d.get() {
        return Err(Error::OutOfRange {
            what: "measurement index",
            value: m,
            max: d.get(),
        });
    }
    let mut probabilities = vec![0.0; d.get()];
    for j in d.residues() {
        let q = inner(&basis_state(d, m, j)?, state)?.norm_sqr();
        probabilities[outcome_label(j.value(), m, d)] = q;
    }
    Ok(OutcomeDistribution { d, m, probabilities })
}

/// Draw one outcome by inverse CDF over `n = 0..d`.
///
/// Consumes one `f64` from `rng`. A draw landing exactly on a cumulative
/// boundary goes to the smaller label; zero-probability outcomes are never
/// returned.
pub fn sample<R: Rng + ?Sized>(dist: &OutcomeDistribution, rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut cumulative = 0.0;
    let mut last_positive = 0;
    for (n, &p) in dist.probabilities.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        cumulative += p;
        last_positive = n;
        if u <= cumulative {
            return n;
        }
    }
    // rounding left the total just under u
    last_positive
}

/// Independent stream for trial `trial` of an experiment seeded with `seed`.
pub fn trial_stream(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(TRIAL_MIX))
}
