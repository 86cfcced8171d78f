//! Exact computer algebra for MacMahon's partition-multiplicity q-series
//! `U_a(q)` and `U_a*(q)`.
//!
//! The crate computes their coefficients by several independent routes,
//! realizes their Eisenstein-series expansions, evaluates hook-length
//! formulas for the first coefficients, and certifies coefficient
//! congruences modulo primes with Sturm-bound checks.
//!
//! Everything is exact: coefficients live in `Q` or `Z/mZ`.

pub mod congruence;
pub mod eisenstein;
pub mod error;
pub mod macmahon;
pub mod partitions;
pub mod report;
pub mod ring;
pub mod series;

pub use error::{Error, Result, SeriesError};
pub use report::Report;
pub use ring::{Coefficient, CoefficientRing, ModInt};
pub use series::{BivariateSeries, ModSeries, QSeries, Series};
