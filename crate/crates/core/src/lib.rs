//! Exact-arithmetic library for curve-counting invariants of local P2
//! (the total space of the canonical bundle of the projective plane).
//!
//! The crate computes Gopakumar-Vafa and stable-pair invariants for curve
//! classes `dH`, verifies the degree-2 monodromy-ring identities, and
//! cross-checks the product formulas that tie the two families of invariants
//! together. All arithmetic is exact; there is no floating point anywhere.
//!
//! Module map:
//! - [`series`]: sparse Laurent polynomials / truncated series over `BigInt`,
//!   the substrate for everything else.
//! - [`symprod`]: symmetric and alternating products of graded spaces and
//!   of formal power series, with their closed-form generating series.
//! - [`monodromy`]: the commutative ring `Z[l,t]/(t^2=1)` and the degree-2
//!   verification that the two sides of the correspondence agree.
//! - [`invariants`]: PT invariants from the relative-Hilbert-scheme fibration,
//!   reducible-curve corrections, the triangular GV solve, and the BPS /
//!   refined-BPS basis changes.
//! - [`correspond`]: generating-function expanders and coefficient-level
//!   cross-checks of the unrefined and refined product formulas.

pub mod correspond;
pub mod error;
pub mod invariants;
pub mod monodromy;
pub mod series;
pub mod symprod;

pub use error::{Error, Result};
pub use series::{binomial, LaurentSeries};
