//! Zeta-regularized products over the zeros for the sine family
//! `∏ₖ sin(αₖρ − zₖ)` and the exponential family `∏ₖ (e^{−i(αₖρ−zₖ)} − ωₖ)`.
//!
//! The closed forms are `S = e^{−F}·∏ₖ (e^{−2izₖ}; e^{−2iαₖ})_ζ` and
//! `S̃ = e^{−F̃}·∏ₖ (ωₖe^{−izₖ}; e^{−iαₖ})_ζ`, with quadratic polynomials
//! `F`, `F̃` built from the Laurent coefficients of `φ(αs)`. This module
//! evaluates them and the independent routes used to check them.

mod factors;
mod linear_term;
mod params;
mod poly;
mod products;

pub use factors::{f_product, f_series, f_tilde_product, f_tilde_series, SERIES_TAIL_TARGET};
pub use linear_term::{
    adjudicate_sign, d_function, default_lt_grid, direct_lt_difference, l_direct, l_tilde_direct,
    lt_extract, Adjudication, AdjudicationPair, LtEstimate, PairOutcome, LT_CONVERGENCE_TOLERANCE,
};
pub use params::{ExpParams, Family, FamilyParams, SignC0, SineParams};
pub use poly::{
    exp_argument, f_polynomial, kw_coefficients, poly_f, poly_f_tilde, sine_argument, C1Entry,
    C1Mode, C1Table,
};
pub use products::{
    discrepancy_exp, discrepancy_sine, s_exp, s_sine, DiscrepancyReport, ProductValue,
};
