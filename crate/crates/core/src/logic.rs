//! The combinatorial side: d-valent functions of one binary argument, the
//! d+1 partitions of those functions into groups, and brute-force
//! decidability of one proposition given another as the sole axiom.
//!
//! Partition `a < d` groups functions by the linear relation
//! `f(1) = a·f(0) + b (mod d)`; partition `a = d` groups them by `f(0) = b`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modmath::{Dimension, Residue};

/// A function `f: {0,1} -> Z_d`, stored as its two values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BinaryFunction {
    pub f0: Residue,
    pub f1: Residue,
}

impl BinaryFunction {
    pub fn new(f0: Residue, f1: Residue) -> Result<Self> {
        if f0.dim() != f1.dim() {
            return Err(Error::DimensionMismatch {
                left: f0.dim().get(),
                right: f1.dim().get(),
            });
        }
        Ok(BinaryFunction { f0, f1 })
    }

    /// Build from raw values; both must lie in `0..d`.
    pub fn from_values(f0: usize, f1: usize, d: Dimension) -> Result<Self> {
        Ok(BinaryFunction {
            f0: d.residue(f0)?,
            f1: d.residue(f1)?,
        })
    }

    pub fn dim(&self) -> Dimension {
        self.f0.dim()
    }
}

/// All d² functions, ordered by `(f0, f1)`.
pub fn all_functions(d: Dimension) -> impl Iterator<Item = BinaryFunction> {
    d.residues()
        .flat_map(move |f0| d.residues().map(move |f1| BinaryFunction { f0, f1 }))
}

/// A proposition `{a, b}`: partition index `a ∈ 0..=d`, group index `b ∈ 0..d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposition {
    a: usize,
    b: Residue,
}

impl Proposition {
    pub fn new(a: usize, b: usize, d: Dimension) -> Result<Self> {
        if a > d.get() {
            return Err(Error::OutOfRange {
                what: "partition index",
                value: a,
                max: d.get(),
            });
        }
        Ok(Proposition {
            a,
            b: d.residue(b)?,
        })
    }

    #[inline]
    pub fn a(&self) -> usize {
        self.a
    }

    #[inline]
    pub fn b(&self) -> Residue {
        self.b
    }

    pub fn dim(&self) -> Dimension {
        self.b.dim()
    }

    /// True for the `f(0) = b` partition.
    pub fn is_value_partition(&self) -> bool {
        self.a == self.dim().get()
    }
}

impl Serialize for Proposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Proposition", 2)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.end()
    }
}

/// Every proposition for dimension d, ordered by `(a, b)`.
pub fn all_propositions(d: Dimension) -> impl Iterator<Item = Proposition> {
    (0..=d.get()).flat_map(move |a| d.residues().map(move |b| Proposition { a, b }))
}

/// Truth value of a proposition about a single function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Decidability {
    ProvablyTrue,
    ProvablyFalse,
    Undecidable,
}

fn check_dim(d: Dimension, other: Dimension) -> Result<()> {
    if d == other {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: d.get(),
            right: other.get(),
        })
    }
}

/// Whether `f` satisfies `p`.
pub fn holds(f: &BinaryFunction, p: &Proposition, d: Dimension) -> bool {
    debug_assert!(f.dim() == d && p.dim() == d);
    if p.a == d.get() {
        f.f0 == p.b
    } else {
        let a = d.reduce(p.a as i64);
        f.f1 == a.mul_raw(f.f0).add_raw(p.b)
    }
}

/// The d functions satisfying `p`, in construction order: ascending `f(0)`
/// for linear partitions, ascending `f(1)` for the `f(0) = b` partition.
pub fn group(p: &Proposition, d: Dimension) -> Result<Vec<BinaryFunction>> {
    check_dim(d, p.dim())?;
    let cell = if p.is_value_partition() {
        d.residues()
            .map(|f1| BinaryFunction { f0: p.b, f1 })
            .collect()
    } else {
        let a = d.reduce(p.a as i64);
        d.residues()
            .map(|f0| BinaryFunction {
                f0,
                f1: a.mul_raw(f0).add_raw(p.b),
            })
            .collect()
    };
    Ok(cell)
}

/// `table[a][b] == group({a, b})` for `a ∈ 0..=d`, `b ∈ 0..d`.
pub type PartitionTable = Vec<Vec<Vec<BinaryFunction>>>;

pub fn partition_table(d: Dimension) -> PartitionTable {
    (0..=d.get())
        .map(|a| {
            d.residues()
                .map(|b| group(&Proposition { a, b }, d).expect("dimension is shared"))
                .collect()
        })
        .collect()
}

/// Functions satisfying both propositions, in the construction order of `p`.
pub fn intersect(p: &Proposition, q: &Proposition, d: Dimension) -> Result<Vec<BinaryFunction>> {
    check_dim(d, q.dim())?;
    Ok(group(p, d)?
        .into_iter()
        .filter(|f| holds(f, q, d))
        .collect())
}

/// Decide `theorem` by enumerating every function compatible with `axiom`.
pub fn decide(axiom: &Proposition, theorem: &Proposition, d: Dimension) -> Result<Decidability> {
    check_dim(d, theorem.dim())?;
    let members = group(axiom, d)?;
    let satisfied = members.iter().filter(|f| holds(f, theorem, d)).count();
    Ok(if satisfied == members.len() {
        Decidability::ProvablyTrue
    } else if satisfied == 0 {
        Decidability::ProvablyFalse
    } else {
        Decidability::Undecidable
    })
}

/// For measurement partition `m`, `counts[n]` is the number of functions
/// compatible with `axiom` that also satisfy `{m, n}`. Sums to d.
pub fn outcome_multiplicities(axiom: &Proposition, m: usize, d: Dimension) -> Result<Vec<usize>> {
    let members = group(axiom, d)?;
    let mut counts = vec![0usize; d.get()];
    for n in d.residues() {
        let theorem = Proposition::new(m, n.value(), d)?;
        counts[n.value()] = members.iter().filter(|f| holds(f, &theorem, d)).count();
    }
    Ok(counts)
}
