//! Extended-precision Maass–Shimura derivatives at the CM points `i` and
//! `ω`, checked against the recurrence constants.

mod precision;
mod series;
mod special;
mod verify;

pub use precision::{omega_a, omega_e, pi, Precision, GUARD_BITS};
pub use series::{e2star, evaluate, ms_derivative, ExpSeries, HalfPlanePoint, Term};
pub use special::{hermite, hermite_by_sum, laguerre, laguerre_by_sum};
pub use verify::{
    algebraic_part_a, algebraic_part_e, ff_sides, partial_theta, thm5_reports, thm6_reports, verify_thm5,
    verify_thm6, MsDerivativeReport, Thm6Case,
};
