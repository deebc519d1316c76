//! Zeta-regularized trigonometric products over the nontrivial zeros of the
//! Riemann zeta function.
//!
//! The crate evaluates Cramér's `V` and `φ` functions from a table of zero
//! ordinates, the zeta-Pochhammer symbol, the regularization polynomials `F`
//! and `F̃`, the regularized products `S` and `S̃` and their discrepancies.
//! Every closed form is paired with an independent truncated-sum oracle
//! (`lt_extract`, the order-swapped series, direct products) so the formulas
//! can be checked numerically; [`verify`] runs the whole battery.
//!
//! All sums run over an immutable [`ZeroTable`] and return a [`BoundedValue`]:
//! the compensated partial sum plus a rigorous bound on the omitted tail.

pub mod cli;
pub mod cmath;
pub mod cramer;
pub mod error;
pub mod pochhammer;
pub mod regprod;
pub mod richardson;
pub mod scan;
pub mod summation;
pub mod verify;
pub mod zeros;

pub use cramer::{Constants, LaurentCoeffs};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use pochhammer::{zeta_pochhammer, PochhammerArgs};
pub use regprod::{C1Mode, C1Table, ExpParams, Family, SignC0, SineParams};
pub use summation::BoundedValue;
pub use zeros::{load_zero_table, validate, ValidationReport, ZeroTable};
