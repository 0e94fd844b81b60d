//! Exact lattice-path machinery for the integers `(j/n)·C(kn, n+j)`.
//!
//! A path in the family `P(n,k,j)` has `kn` diagonal steps, `n+j` of them
//! up. Pairing a path with a mark `m ∈ 1..=j` selects one of `j` parallel
//! baselines; the statistic [`geometry::statistic_x`] counts interior
//! `k`-divisible points strictly above it and is uniform over `0..n`.
//!
//! Everything here is integer arithmetic: heights are `i64`, side tests are
//! sign tests of integer cross products, and counts are [`BigCount`]s. The
//! crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod counting;
mod error;
pub mod geometry;
pub mod ne;
pub mod path;
pub mod rotation;
mod word;

pub use counting::{BigCount, GeneralParams};
pub use error::{Error, Result};
pub use geometry::{Baseline, OriginLine, Side};
pub use ne::{MarkedNePath, NeParams, NePath, NeStep};
pub use path::{DiagonalPath, FamilyParams, MarkedPath, Step};
pub use rotation::{LabeledClass, PrimitiveDecomposition, RotationClass};

/// Longest path (in steps) any path type can hold.
pub const MAX_STEPS: usize = word::MAX_LEN;
