//! Exact algebra for two-channel lifting filter banks.
//!
//! This crate represents perfect-reconstruction two-channel FIR filter banks
//! as 2x2 Laurent-polynomial matrices over exact rationals and works with
//! their *lifting* factorizations: products of unit-diagonal triangular
//! matrices (each updating one polyphase channel from the other) around a
//! diagonal gain and a base matrix. Everything is exact — no floating point
//! anywhere — so equality assertions are bit-exact and the uniqueness
//! theorems for linear-phase factorizations become testable contracts.
//!
//! # Module map
//!
//! * [`laurent`] — Laurent polynomials over arbitrary-precision rationals:
//!   support intervals, orders, support radii, linear-phase symmetry
//!   classification, dyadic predicates.
//! * [`polyphase`] — the polyphase-with-advance split `F(z) = F0(z^2) + z F1(z^2)`,
//!   polyphase vectors/matrices, determinants, scalar-filter round trips.
//! * [`lifting`] — lifting steps, cascades, intermediate traces,
//!   irreducibility and order growth, exact signal analysis/synthesis.
//! * [`structures`] — the four symmetry-constrained cascade families
//!   (whole-sample and half-sample symmetric, each in a general and a
//!   reversible flavor), membership reports, support-radius predictions, and
//!   the support-covering / sufficient-condition checkers.
//! * [`factor`] — the unique-factorization engines for whole-sample and
//!   half-sample symmetric banks, rescaling normalization, and round-trip
//!   verification.
//! * [`json`] — the JSON interchange formats (rationals as decimal strings).
//! * [`testkit`] — seeded random generators and the randomized property
//!   suites behind `selftest` and the acceptance tests.
//! * [`cli`] — the command-line front-end (`eval`, `factor`, `verify`,
//!   `transform`, `selftest`).
//!
//! # Example
//!
//! ```
//! use lifting_forge::laurent::{rat, LaurentPoly};
//! use lifting_forge::lifting::{Cascade, LiftingStep};
//!
//! // Two integer lifting steps build a 9-tap/7-tap symmetric bank.
//! let ones = |range: std::ops::RangeInclusive<i64>| {
//!     LaurentPoly::from_terms(range.map(|n| (n, rat(1))))
//! };
//! let cascade = Cascade::from_steps(
//!     rat(1),
//!     vec![
//!         LiftingStep::lower(ones(-2..=1)).unwrap(),
//!         LiftingStep::upper(ones(0..=1)).unwrap(),
//!     ],
//! )
//! .unwrap();
//! let (h0, h1) = cascade.evaluate().scalar_filters();
//! assert_eq!(h0.to_string(), "z^4 + 2 z^2 + z + 3 + z^-1 + 2 z^-2 + z^-4");
//! assert_eq!(h1.to_string(), "z^4 + z^2 + z + 1 + z^-2");
//! ```

pub mod cli;
pub mod error;
pub mod factor;
pub mod json;
pub mod laurent;
pub mod lifting;
pub mod polyphase;
pub mod structures;
pub mod testkit;

pub use error::{Error, Result};
