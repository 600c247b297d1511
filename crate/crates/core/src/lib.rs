//! Recurrence polynomials and constant-term rank criteria for the curve
//! families `E_p: y^2 = x^3 + p x` and `A_p: x^3 + y^3 = p`.
//!
//! The crate has three layers:
//!
//! * exact algebra: [`polyring`] (dense univariate polynomials over Z, Q and
//!   Z/pZ), [`recurrences`] (the five families `f, a, x, y, z`) and
//!   [`symbolic`] (the Ramanujan–Serre derivation on `Q[θ₂, θ₄]`, used to
//!   re-derive the `f` recurrence from scratch);
//! * the verdicts themselves: [`criteria`];
//! * two independent numerical oracles: [`lseries`] (L(E_p, 1) from point
//!   counts) and [`maass`] (iterated Maass–Shimura derivatives of theta and
//!   eta series at the CM points `i` and `ω`).

pub mod criteria;
mod error;
pub mod lseries;
pub mod maass;
pub mod polyring;
pub mod primes;
pub mod recurrences;
pub mod symbolic;

pub use criteria::{admissible, scan, verdict_ap, verdict_ep, Admissibility, ApVerdict, CriterionVerdict, CurveFamily};
pub use error::{Error, Result};
pub use lseries::{CurveSpec, LValueReport};
pub use maass::{MsDerivativeReport, Precision};
pub use polyring::{Coefficient, CoefficientRing, Integers, Polynomial, Rationals, Residue, Residues};
pub use recurrences::Family;
pub use symbolic::ThetaPolynomial;

