//! Orthogonal arrays and correlation-immune Boolean functions.
//!
//! An `OA(N, k, s, t)` is an `N x k` array over `{0, .., s-1}` in which every
//! choice of `t` columns contains each `t`-tuple exactly `N / s^t` times. For
//! `s = 2` the simple arrays (no repeated row) are exactly the supports of
//! correlation-immune Boolean functions of order `t`, so the minimum row count
//! of a simple array is the minimum weight of such a function.
//!
//! The crate is organized around that correspondence:
//!
//! - [`array`]: the [`SymbolArray`] data model, the text format, strength
//!   verification by counting and by character sums, the character matrix and
//!   its Gram test, multiplicity census, weight enumerators and elementary
//!   transforms.
//! - [`boolean`]: truth tables, the 0/1 Fourier transform and the bridge to
//!   simple binary arrays.
//! - [`bounds`]: Rao, Friedman-Bierbrauer and Khalyavin bounds and the
//!   simplicity verdicts that follow from the Rao bound.
//! - [`lp`]: the Delsarte linear programming bound, solved exactly over the
//!   rationals, with a primal/dual certificate.
//! - [`constructions`]: Sylvester, even-weight, doubling, shortening, duals of
//!   linear codes and the Nordstrom-Robinson / Kerdock codes.
//! - [`search`]: exhaustive backtracking for existence and minimality at small
//!   parameters.
//! - [`table`] and [`report`]: assembling certified intervals for the minimum
//!   row count and the machine-readable report model used by the CLI.

pub mod array;
pub mod boolean;
pub mod bounds;
pub mod constructions;
mod cyclotomic;
pub mod error;
pub mod lp;
pub mod report;
pub mod search;
pub mod table;

pub use array::{
    CharacterMatrix, MultiplicityCensus, StrengthReport, StrengthWitness, SymbolArray,
};
pub use boolean::BooleanFunction;
pub use bounds::{BoundReport, SimplicityCase, SimplicityVerdict};
pub use constructions::LinearCode;
pub use error::{Error, Result};
pub use lp::{LpCertificate, Rational};
pub use search::{SearchOptions, SearchOutcome};
