//! Qudit simulation of logical (in)determinacy.
//!
//! A function `f: {0,1} → Z_d` (d prime) can be described by d+1
//! complementary families of propositions: `f(1) = a·f(0) + b` for
//! `a = 0..d` and `f(0) = b` for `a = d`. Fixing one proposition as an
//! axiom pins down exactly one dit, which decides every other proposition
//! of the same family and leaves every proposition of the other families
//! undecidable.
//!
//! This crate encodes such an axiom into a qudit state with the generalized
//! Pauli operators, measures it in the d+1 mutually unbiased bases, and
//! checks that decidable propositions give deterministic outcomes while
//! undecidable ones give exactly uniform outcomes.
//!
//! ```
//! use mubsim::{devices, logic, Dimension, Proposition};
//!
//! let d = Dimension::new(3)?;
//! let axiom = Proposition::new(1, 1, d)?;
//! let state = devices::prepare(&axiom, d)?;
//!
//! // Same family: confirms the axiom.
//! let same = devices::born(&state, 1, d)?;
//! assert!((same.probabilities[1] - 1.0).abs() < 1e-12);
//!
//! // Another family: undecidable, and the outcome is uniformly random.
//! let theorem = Proposition::new(2, 0, d)?;
//! assert_eq!(logic::decide(&axiom, &theorem, d)?, logic::Decidability::Undecidable);
//! let other = devices::born(&state, 2, d)?;
//! assert!(other.probabilities.iter().all(|p| (p - 1.0 / 3.0).abs() < 1e-12));
//! # Ok::<(), mubsim::Error>(())
//! ```

pub mod cli;
pub mod devices;
mod error;
pub mod experiment;
pub mod logic;
pub mod modmath;
pub mod mub;
pub mod qlinalg;

pub use error::{Error, Result};
pub use logic::{BinaryFunction, Decidability, Proposition};
pub use modmath::{Dimension, Residue};
pub use qlinalg::{Operator, StateVector};
