//! Exact verification toolkit for additive phenomena over the polynomial ring
//! `F_p[t]` and its finite quotients `F_p[t]/(Q)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`ffield`] — arithmetic in `F_p` and `F_p[t]`: division, gcd, squarefree
//!   decomposition, distinct-degree factorization, the least-prime-factor
//!   statistic `lpf`, and monic enumeration.
//! * [`quotient`] — the residue ring `F_p[t]/(Q)` with its additive character
//!   pairing, exact root-of-unity accumulators, and a fast radix-`p` Fourier
//!   transform.
//! * [`ypoly`] — polynomials in an outer variable `y` with `F_p[t]`
//!   coefficients, their separable decomposition into additive pieces, and
//!   the derivational degree.
//! * [`addpoly`] — additive (`F_p`-linear) polynomials, composition, and the
//!   Euclidean-style reduction that decides equidistribution quality, with
//!   witness certificates.
//! * [`subgroup`] — `F_p`-subspaces of a quotient ring: spans, image
//!   subgroups, annihilators under the character pairing, coset averages.
//! * [`ergodic`] — character sums, multiplier norms, L² discrepancies, the
//!   total-ergodicity dichotomy, van der Corput and root-counting
//!   inequalities.
//! * [`combinat`] — intersectivity, difference-pattern counting, maximal
//!   pattern-free sets, three-term solution counts, and monochromatic
//!   solution counts under colorings.
//! * [`verify`] — the self-contained acceptance suite run by the CLI's
//!   `verify-all` and by the `acceptance` integration test.
//!
//! Everything that feeds a pass/fail decision is computed exactly: character
//! sums are tallied as integer counts per root of unity and only converted to
//! floating point at the final comparison.

pub mod addpoly;
pub mod combinat;
pub mod ergodic;
pub mod error;
pub mod ffield;
pub mod naive;
pub(crate) mod par;
pub mod quotient;
pub mod subgroup;
pub mod text;
pub mod verify;
pub mod ypoly;

pub use error::{Error, Result};

/// Absolute tolerance used when comparing floating-point quantities that are
/// exact in principle (transform round-trips, multiplier identities).
pub const FLOAT_TOLERANCE: f64 = 1e-9;
