//! Modified q-Genocchi numbers and polynomials.
//!
//! Exact symbolic values live in [`exactalg`] types: the polynomials are
//! computed in `x` over the field of rational functions in `q`. Numeric
//! evaluation for real `0 < q < 1` goes through the alternating series in
//! [`qgenocchi`], the finite fermionic sums in [`fermint`] and the zeta-type
//! functions in [`qzeta`]. [`verify`] runs every identity check as a report.

pub mod classical;
pub mod error;
pub mod exactalg;
pub mod fermint;
pub mod numeric;
pub mod qgenocchi;
pub mod qzeta;
pub mod verify;

pub use error::{Error, Result};
pub use exactalg::{PolyQ, QXPoly, RatFuncQ, Rational};
pub use numeric::{Estimate, SeriesConfig};
