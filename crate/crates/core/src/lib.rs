//! Exact symmetric-function arithmetic with k-Schur functions at `t = 1`,
//! Schur P/Q functions, and the canonical morphism from a cocommutative
//! combinatorial Hopf algebra into quasisymmetric functions.
//!
//! Everything is computed over exact rationals; integrality and positivity
//! are reported as properties of results, never assumed.

pub mod cores;
pub mod hopf;
pub mod kschur;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod schur_pq;
pub mod symfunc;
pub mod verify;

pub use num::BigInt;
pub use num::BigRational as Rat;

pub use partition::{Composition, Partition, StrictPartition};
pub use symfunc::{Basis, Expansion, SymFunc, Tensor};

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}
