//! Cramér's functions
//!
//! `V(s) = Σ_{Im ρ>0} e^{sρ}` (for `Im s > 0`) and `φ(s) = Σ e^{−sτ}`
//! (for `Re s > 0`), linked by `V(iz) = e^{iz/2}·φ(z)`. Near `s = 0`,
//! `V(s) − (1/2πi)·(log s/(1 − e^{−s}) + (γ + log 2π − iπ/2)/s)` is
//! holomorphic. Subtracting the `log s` part of that model from `φ(αs)`
//! leaves the meromorphic part `c₋₁/s + c₀ + c₁s + …`, whose coefficients
//! [`extract_laurent_coeffs`] fits on a small-`s` grid.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::cmath::{self, rotate_neg_i};
use crate::error::{Error, Result};
use crate::summation::{exp_sum, BoundedValue};
use crate::zeros::ZeroTable;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const LOG_TWO_PI: f64 = 1.837_877_066_409_345_5;

/// Smallest admissible `α·s·τ_max` on a fit grid: below it the truncated
/// tail of `φ(αs)` is no longer negligible (`e^{−35} ≈ 6e−16`).
pub const MIN_TRUNCATION_PRODUCT: f64 = 35.0;

/// Condition number above which a Laurent fit is rejected.
pub const MAX_FIT_CONDITION: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub euler_gamma: f64,
    pub log_two_pi: f64,
    /// `γ + log 2π − iπ/2`
    #[serde(with = "cmath::json")]
    pub cramer_c: Complex64,
}

impl Constants {
    pub const fn standard() -> Self {
        Self {
            euler_gamma: EULER_GAMMA,
            log_two_pi: LOG_TWO_PI,
            cramer_c: Complex64::new(EULER_GAMMA + LOG_TWO_PI, -PI / 2.0),
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::standard()
    }
}

/// Closed-form `c₋₁(α) = −(γ + log 2πα)/(2πα)`.
pub fn c_minus1_closed_form(alpha: f64) -> f64 {
    -(EULER_GAMMA + (2.0 * PI * alpha).ln()) / (2.0 * PI * alpha)
}

/// `φ(s) = Σ e^{−sτ}` for `Re s > 0`.
pub fn phi(table: &ZeroTable, s: Complex64) -> Result<BoundedValue> {
    if !(s.re > 0.0) {
        return Err(Error::domain(format!("φ(s) needs Re(s) > 0, got {s}")));
    }
    exp_sum(table, s)
}

/// `V(s) = e^{s/2}·φ(−is)` for `Im s > 0`.
pub fn v_func(table: &ZeroTable, s: Complex64) -> Result<BoundedValue> {
    if !(s.im > 0.0) {
        return Err(Error::domain(format!("V(s) needs Im(s) > 0, got {s}")));
    }
    let z = rotate_neg_i(s);
    Ok(phi(table, z)?.scale((s / 2.0).exp()))
}

/// Cramér's singular model `(1/2πi)·(log s/(1 − e^{−s}) + (γ + log 2π − iπ/2)/s)`,
/// principal logarithm.
pub fn cramer_singular(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(0.0, 0.0) || !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Pole(format!("singular model undefined at s = {s}")));
    }
    if s.im == 0.0 && s.re < 0.0 {
        return Err(Error::Pole(format!(
            "s = {s} lies on the branch cut of log"
        )));
    }
    let one_minus = -cmath::exp_m1(-s);
    if one_minus.norm() <= 1e-14 * s.norm().max(1.0) {
        return Err(Error::Pole(format!("s = {s} is a pole of 1/(1 − e^(−s))")));
    }
    let c = Constants::standard().cramer_c;
    Ok((s.ln() / one_minus + c / s) / Complex64::new(0.0, 2.0 * PI))
}

/// `V(s)` minus [`cramer_singular`]; holomorphic near `s = 0`.
pub fn cramer_remainder(table: &ZeroTable, s: Complex64) -> Result<BoundedValue> {
    let v = v_func(table, s)?;
    Ok(BoundedValue::new(
        v.value - cramer_singular(s)?,
        v.tail_bound,
    ))
}

/// Remainder values along the ray `s = r·e^{iθ}`.
pub fn remainder_scan(
    table: &ZeroTable,
    angle: f64,
    radii: &[f64],
) -> Result<Vec<(f64, BoundedValue)>> {
    radii
        .iter()
        .map(|&r| Ok((r, cramer_remainder(table, Complex64::from_polar(r, angle))?)))
        .collect()
}

/// Least-squares slope of `|remainder|` against `log r`.
pub fn holomorphy_slope(scan: &[(f64, BoundedValue)]) -> f64 {
    let n = scan.len() as f64;
    let xs: Vec<f64> = scan.iter().map(|(r, _)| r.ln()).collect();
    let ys: Vec<f64> = scan.iter().map(|(_, v)| v.value.norm()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Singular structure of `φ(αs)` for real `s > 0`:
/// `φ(αs) = log_part·log s + mero_singular + (holomorphic)`.
///
/// Both parts come from `φ(αs) = e^{−iαs/2}·V(iαs)` and the singular model
/// with `log(iαs) = log s + log(iα)`. With `x = αs`,
/// `e^{−ix/2}/(1 − e^{−ix}) = 1/(2i·sin(x/2))`, which is how they are evaluated.
pub fn phi_singular_model(alpha: f64, s: f64) -> Result<(Complex64, Complex64)> {
    if !(alpha > 0.0) || !(s > 0.0) || !alpha.is_finite() || !s.is_finite() {
        return Err(Error::domain(format!(
            "need α > 0 and s > 0, got α = {alpha}, s = {s}"
        )));
    }
    let x = alpha * s;
    if !(x < 2.0 * PI) {
        return Err(Error::domain(format!("α·s = {x} reaches the pole at 2π")));
    }
    let half_sin = Complex64::new(0.0, 2.0 * (0.5 * x).sin());
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let log_part = 1.0 / (two_pi_i * half_sin);
    let log_i_alpha = Complex64::new(alpha.ln(), PI / 2.0);
    let c = Constants::standard().cramer_c;
    let shift = Complex64::new(0.0, -0.5 * x).exp();
    let mero = (log_i_alpha / half_sin + shift * c / Complex64::new(0.0, x)) / two_pi_i;
    Ok((log_part, mero))
}

/// Fitted coefficients of the meromorphic part of `φ(αs)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentCoeffs {
    pub alpha: f64,
    #[serde(with = "cmath::json")]
    pub c_minus1: Complex64,
    #[serde(with = "cmath::json")]
    pub c_0: Complex64,
    #[serde(with = "cmath::json")]
    pub c_1: Complex64,
    /// One-sigma estimate for `c_1` from the fit residual.
    pub c1_uncertainty: f64,
    pub residual_norm: f64,
    pub condition: f64,
    /// Grid in strictly decreasing order.
    pub s_grid: Vec<f64>,
}

/// Geometric grid `s_min·2^k`, `k = 0..points`, returned largest first, with
/// `s_min = 35/(α·τ_max)`.
pub fn default_laurent_grid(table: &ZeroTable, alpha: f64, points: usize) -> Vec<f64> {
    let s_min = MIN_TRUNCATION_PRODUCT / (alpha * table.max_ordinate()) * (1.0 + 1e-12);
    (0..points)
        .rev()
        .map(|k| s_min * 2f64.powi(k as i32))
        .collect()
}

/// Fixed grid `5e−4·2^k/α`, used by the verification suite. With 10⁵ zeros
/// `α·s_min·τ_max ≈ 37.5`.
pub fn standard_laurent_grid(alpha: f64, points: usize) -> Vec<f64> {
    (0..points)
        .rev()
        .map(|k| 5e-4 * 2f64.powi(k as i32) / alpha)
        .collect()
}

/// Check that every grid point keeps the truncated tail negligible.
pub(crate) fn check_truncation_range(table: &ZeroTable, alpha: f64, s_min: f64) -> Result<()> {
    let actual = alpha * s_min * table.max_ordinate();
    if actual < MIN_TRUNCATION_PRODUCT * (1.0 - 1e-9) {
        return Err(Error::InsufficientRange {
            required: MIN_TRUNCATION_PRODUCT,
            actual,
        });
    }
    Ok(())
}

/// Fit `P(s) = φ(αs) − log_part(s)·log s` by `c₋₁/s + c₀ + c₁s + c₂s²`
/// (least squares, `c₂` discarded).
pub fn extract_laurent_coeffs(
    table: &ZeroTable,
    alpha: f64,
    grid: &[f64],
) -> Result<LaurentCoeffs> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!("α must be positive, got {alpha}")));
    }
    if grid.len() < 6 {
        return Err(Error::domain(format!(
            "Laurent fit needs ≥ 6 grid points, got {}",
            grid.len()
        )));
    }
    let mut s_grid = grid.to_vec();
    if s_grid.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
        return Err(Error::domain("grid points must be positive"));
    }
    s_grid.sort_by(|a, b| b.total_cmp(a));
    if s_grid.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::domain("grid points must be distinct"));
    }
    check_truncation_range(table, alpha, *s_grid.last().expect("non-empty"))?;

    let samples = s_grid
        .iter()
        .map(|&s| {
            let (log_part, _) = phi_singular_model(alpha, s)?;
            let p = phi(table, Complex64::new(alpha * s, 0.0))?;
            Ok(p.value - log_part * s.ln())
        })
        .collect::<Result<Vec<_>>>()?;

    let fit = fit_real_basis(&s_grid, &samples, &[-1, 0, 1, 2])?;
    Ok(LaurentCoeffs {
        alpha,
        c_minus1: fit.coeffs[0],
        c_0: fit.coeffs[1],
        c_1: fit.coeffs[2],
        c1_uncertainty: fit.std_errors[2],
        residual_norm: fit.residual_norm,
        condition: fit.condition,
        s_grid,
    })
}

pub(crate) struct PowerFit {
    pub coeffs: Vec<Complex64>,
    pub std_errors: Vec<f64>,
    pub residual_norm: f64,
    pub condition: f64,
}

/// Complex least squares against the real basis `s^p`, `p ∈ powers`.
/// The basis is real, so real and imaginary parts are fitted separately
/// with the same (column-scaled) design matrix.
pub(crate) fn fit_real_basis(s: &[f64], y: &[Complex64], powers: &[i32]) -> Result<PowerFit> {
    let m = s.len();
    let k = powers.len();
    let mut design = DMatrix::from_fn(m, k, |i, j| s[i].powi(powers[j]));
    let scales: Vec<f64> = (0..k)
        .map(|j| {
            design
                .column(j)
                .iter()
                .fold(0.0f64, |acc, v| acc.max(v.abs()))
        })
        .collect();
    for (j, sc) in scales.iter().enumerate() {
        design.column_mut(j).scale_mut(1.0 / sc);
    }
    let svd = design.clone().svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = smax / smin;
    if !(condition < MAX_FIT_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let re = DVector::from_iterator(m, y.iter().map(|z| z.re));
    let im = DVector::from_iterator(m, y.iter().map(|z| z.im));
    let x_re = svd
        .solve(&re, 0.0)
        .map_err(|e| Error::Domain(e.to_string()))?;
    let x_im = svd
        .solve(&im, 0.0)
        .map_err(|e| Error::Domain(e.to_string()))?;
    let r_re = &design * &x_re - &re;
    let r_im = &design * &x_im - &im;
    let residual_sq = r_re.norm_squared() + r_im.norm_squared();
    let dof = m.saturating_sub(k).max(1) as f64;
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let coeffs = (0..k)
        .map(|j| Complex64::new(x_re[j], x_im[j]) / scales[j])
        .collect();
    let std_errors = (0..k)
        .map(|j| {
            let var: f64 = (0..sv.len()).map(|i| (v_t[(i, j)] / sv[i]).powi(2)).sum();
            (residual_sq / dof * var).sqrt() / scales[j]
        })
        .collect();
    Ok(PowerFit {
        coeffs,
        std_errors,
        residual_norm: residual_sq.sqrt(),
        condition,
    })
}
