//! Arithmetic in the residue ring Z_d for prime d.
//!
//! Every [`Residue`] carries its modulus. Mixing residues of different
//! moduli is rejected with [`Error::DimensionMismatch`].

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut k = 3u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// A prime qudit dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if is_prime(d as u64) {
            Ok(Dimension(d))
        } else {
            Err(Error::NotPrime(d))
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Residue `value mod d`. Accepts any integer, including negatives.
    pub fn reduce(self, value: i64) -> Residue {
        let d = self.0 as i64;
        Residue {
            value: value.rem_euclid(d) as usize,
            dim: self,
        }
    }

    /// Checked residue constructor: `value` must already lie in `0..d`.
    pub fn residue(self, value: usize) -> Result<Residue> {
        if value < self.0 {
            Ok(Residue { value, dim: self })
        } else {
            Err(Error::OutOfRange {
                what: "residue",
                value,
                max: self.0 - 1,
            })
        }
    }

    /// All residues `0..d` in ascending order.
    pub fn residues(self) -> impl Iterator<Item = Residue> + Clone {
        (0..self.0).map(move |value| Residue { value, dim: self })
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0 as u64)
    }
}

/// An element of Z_d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: usize,
    dim: Dimension,
}

impl Residue {
    #[inline]
    pub fn value(self) -> usize {
        self.value
    }

    #[inline]
    pub fn dim(self) -> Dimension {
        self.dim
    }

    fn check(self, d: Dimension) -> Result<()> {
        if self.dim == d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim.0,
                right: d.0,
            })
        }
    }

    // Unchecked helpers for callers that have already established a shared modulus.
    pub(crate) fn add_raw(self, other: Residue) -> Residue {
        debug_assert_eq!(self.dim, other.dim);
        Residue {
            value: (self.value + other.value) % self.dim.0,
            dim: self.dim,
        }
    }

    pub(crate) fn mul_raw(self, other: Residue) -> Residue {
        debug_assert_eq!(self.dim, other.dim);
        Residue {
            value: (self.value * other.value) % self.dim.0,
            dim: self.dim,
        }
    }

    pub(crate) fn neg_raw(self) -> Residue {
        Residue {
            value: (self.dim.0 - self.value) % self.dim.0,
            dim: self.dim,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl Serialize for Residue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.value as u64)
    }
}

/// `(x + y) mod d`.
pub fn mod_add(x: Residue, y: Residue, d: Dimension) -> Result<Residue> {
    x.check(d)?;
    y.check(d)?;
    Ok(x.add_raw(y))
}

/// `(x · y) mod d`.
pub fn mod_mul(x: Residue, y: Residue, d: Dimension) -> Result<Residue> {
    x.check(d)?;
    y.check(d)?;
    Ok(x.mul_raw(y))
}

/// `(d − x) mod d`.
pub fn mod_neg(x: Residue, d: Dimension) -> Result<Residue> {
    x.check(d)?;
    Ok(x.neg_raw())
}
