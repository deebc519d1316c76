//! Direct evaluation of `L(s)` and `L̃(s)`, and numeric extraction of the
//! linear term that the closed forms predict.
//!
//! Both families share the shape
//! `L(s) = e^{sA'}·Σ_ρ e^{iαsρ}·∏ₖ (1 − uₖ(τ))^{−s}` with `uₖ = cₖ·e^{−aₖτ}`.
//! Writing `ℓ(τ) = Σₖ log(1 − uₖ(τ))`, the difference
//! `D(s) = e^{−sA'}·L(s) − V(iαs) = e^{iαs/2}·Σ_τ e^{−αsτ}·(e^{−sℓ(τ)} − 1)`
//! is summed in that form, so no cancellation between `L` and `V` occurs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::factors::f_product;
use super::params::{ExpParams, Family, FamilyParams, Perturbation, SignC0, SineParams};
use super::poly::{f_polynomial, sine_argument};
use crate::cmath::{self, exp_m1, ln_1p};
use crate::cramer::{
    check_truncation_range, default_laurent_grid, fit_real_basis, phi_singular_model,
    LaurentCoeffs, MIN_TRUNCATION_PRODUCT,
};
use crate::error::{Error, Result};
use crate::richardson::extrapolate;
use crate::summation::{density_tail, sum_map, BoundedValue};
use crate::zeros::ZeroTable;

/// Relative Richardson error above which an extraction is reported as not
/// converged.
pub const LT_CONVERGENCE_TOLERANCE: f64 = 1e-4;

fn log_factor(perts: &[Perturbation], tau: f64) -> Complex64 {
    perts.iter().fold(Complex64::new(0.0, 0.0), |acc, p| {
        acc + ln_1p(-(p.c * (-p.a * tau).exp()))
    })
}

/// Upper bound for `|ℓ(τ)|` over `τ ≥ t`.
fn log_factor_bound(perts: &[Perturbation], t: f64) -> f64 {
    perts
        .iter()
        .map(|p| {
            let u = p.magnitude(t);
            u / (1.0 - u)
        })
        .sum()
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::domain(format!("s must be positive, got {s}")));
    }
    Ok(())
}

fn l_series(table: &ZeroTable, params: &FamilyParams, s: f64) -> Result<BoundedValue> {
    check_s(s)?;
    let perts = params.perturbations();
    let alpha = params.alpha();
    let shift = s * (params.prefactor_exponent() + Complex64::new(0.0, 0.5 * alpha));
    let value = sum_map(table.ordinates(), |tau| {
        (shift - alpha * s * tau - s * log_factor(&perts, tau)).exp()
    })?;
    let t_max = table.max_ordinate();
    let bound = shift.exp().norm() * (s * log_factor_bound(&perts, t_max)).exp();
    Ok(BoundedValue::new(
        value,
        bound * density_tail(alpha * s, t_max)?,
    ))
}

/// `L(s) = Σ_ρ ∏ₖ sin(αₖρ − zₖ)^{−s}`, where each power means
/// `(−2i)^s·e^{is(αₖρ−zₖ)}·(1 − e^{2i(αₖρ−zₖ)})^{−s}` with principal logs.
pub fn l_direct(table: &ZeroTable, p: &SineParams, s: f64) -> Result<BoundedValue> {
    l_series(table, &FamilyParams::Sine(p.clone()), s)
}

/// `L̃(s) = Σ_ρ ∏ₖ (e^{−i(αₖρ−zₖ)} − ωₖ)^{−s}`, each power meaning
/// `e^{is(αₖρ−zₖ)}·(1 − ωₖe^{i(αₖρ−zₖ)})^{−s}`.
pub fn l_tilde_direct(table: &ZeroTable, p: &ExpParams, s: f64) -> Result<BoundedValue> {
    l_series(table, &FamilyParams::Exp(p.clone()), s)
}

/// `D(s) = e^{−sA'}·L(s) − V(iαs)`.
pub fn d_function(table: &ZeroTable, params: &FamilyParams, s: f64) -> Result<BoundedValue> {
    check_s(s)?;
    let perts = params.perturbations();
    if perts.iter().all(|p| p.c == Complex64::new(0.0, 0.0)) {
        return Ok(BoundedValue::exact(Complex64::new(0.0, 0.0)));
    }
    let alpha = params.alpha();
    let sum = sum_map(table.ordinates(), |tau| {
        (-alpha * s * tau).exp() * exp_m1(-s * log_factor(&perts, tau))
    })?;
    let t_max = table.max_ordinate();
    // |e^{−sℓ} − 1| ≤ s|ℓ|e^{s|ℓ|} and |ℓ| ≤ Σₖ |cₖ|e^{−aₖτ}/(1 − |uₖ(T)|)
    let growth = s * (s * log_factor_bound(&perts, t_max)).exp();
    let mut tail = 0.0;
    for p in &perts {
        if p.c.norm() > 0.0 {
            tail += growth * p.c.norm() / (1.0 - p.magnitude(t_max))
                * density_tail(alpha * s + p.a, t_max)?;
        }
    }
    let phase = Complex64::new(0.0, 0.5 * alpha * s).exp();
    Ok(BoundedValue::new(phase * sum, tail))
}

/// Result of [`lt_extract`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LtEstimate {
    pub family: Family,
    /// `Φ = lim_{s→0} D(s)/s`
    #[serde(with = "cmath::json")]
    pub phi_estimate: Complex64,
    pub error_estimate: f64,
    /// Largest truncation bound on `D(s)/s` over the grid.
    pub tail_bound: f64,
    pub s_grid: Vec<f64>,
    #[serde(with = "cmath::json::vec")]
    pub d_over_s: Vec<Complex64>,
    pub converged: bool,
}

/// `s_min·2^k`, `k = 0..points`, largest first, with `s_min = 35/(α·τ_max)`.
pub fn default_lt_grid(table: &ZeroTable, alpha: f64, points: usize) -> Vec<f64> {
    let s_min = MIN_TRUNCATION_PRODUCT / (alpha * table.max_ordinate()) * (1.0 + 1e-12);
    (0..points)
        .rev()
        .map(|k| s_min * 2f64.powi(k as i32))
        .collect()
}

/// Estimate `Φ` in `e^{−sA'}·L(s) = V(iαs) + s·Φ + O(s²)` by Richardson
/// extrapolation of `D(s)/s` on a ratio-2 grid.
pub fn lt_extract(table: &ZeroTable, params: &FamilyParams, s_grid: &[f64]) -> Result<LtEstimate> {
    if s_grid.len() < 3 {
        return Err(Error::domain(format!(
            "need at least 3 grid points, got {}",
            s_grid.len()
        )));
    }
    let mut grid = s_grid.to_vec();
    if grid.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
        return Err(Error::domain("grid points must be positive"));
    }
    grid.sort_by(|a, b| b.total_cmp(a));
    if grid.windows(2).any(|w| (w[0] / w[1] - 2.0).abs() > 1e-9) {
        return Err(Error::domain("grid must be geometric with ratio 2"));
    }
    let alpha = params.alpha();
    check_truncation_range(table, alpha, *grid.last().expect("non-empty"))?;
    let mut d_over_s = Vec::with_capacity(grid.len());
    let mut tail_bound: f64 = 0.0;
    for &s in &grid {
        let d = d_function(table, params, s)?;
        d_over_s.push(d.value / s);
        tail_bound = tail_bound.max(d.tail_bound / s);
    }
    let ex = extrapolate(&d_over_s, 2.0)
        .ok_or_else(|| Error::domain("extrapolation needs two or more points"))?;
    Ok(LtEstimate {
        family: params.family(),
        phi_estimate: ex.estimate,
        error_estimate: ex.error_estimate,
        tail_bound,
        converged: ex.error_estimate <= LT_CONVERGENCE_TOLERANCE * ex.estimate.norm(),
        s_grid: grid,
        d_over_s,
    })
}

/// Two single-factor sine problems sharing `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjudicationPair {
    pub alpha: f64,
    #[serde(with = "cmath::json")]
    pub z1: Complex64,
    #[serde(with = "cmath::json")]
    pub z2: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub pair: AdjudicationPair,
    /// `LT(z₁) − LT(z₂)` from fitted Laurent coefficients and `lt_extract`.
    #[serde(with = "cmath::json")]
    pub delta_lt: Complex64,
    /// `|ΔLT − ΔF − Δf|` for sign `+1` and `−1`.
    pub residual_plus: f64,
    pub residual_minus: f64,
    /// `ΔLT` from a direct fit of `L(s; z₁) − L(s; z₂)`, when the table allows it.
    #[serde(with = "cmath::json::option")]
    pub direct_delta_lt: Option<Complex64>,
    pub direct_residual_plus: Option<f64>,
    pub direct_residual_minus: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Adjudication {
    pub outcomes: Vec<PairOutcome>,
    pub tolerance: f64,
    /// Signs that reconcile every pair.
    pub reconciling: Vec<SignC0>,
    /// The sign, when exactly one reconciles.
    pub winner: Option<SignC0>,
    /// Signs that reconcile every pair on the direct-fit route.
    pub direct_reconciling: Vec<SignC0>,
}

/// `ΔLT` from a least-squares fit of the meromorphic part of
/// `L(s; z₁) − L(s; z₂)` (`log s` part removed, basis `s⁻¹ … s³`).
pub fn direct_lt_difference(table: &ZeroTable, pair: &AdjudicationPair) -> Result<Complex64> {
    let p1 = SineParams::single(pair.alpha, pair.z1)?;
    let p2 = SineParams::single(pair.alpha, pair.z2)?;
    let a1 = sine_argument(1, pair.alpha, pair.z1);
    let a2 = sine_argument(1, pair.alpha, pair.z2);
    let grid = default_laurent_grid(table, pair.alpha, 8);
    let samples = grid
        .iter()
        .map(|&s| {
            let (log_part, _) = phi_singular_model(pair.alpha, s)?;
            let dl = l_direct(table, &p1, s)?.value - l_direct(table, &p2, s)?.value;
            Ok(dl - ((s * a1).exp() - (s * a2).exp()) * log_part * s.ln())
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_real_basis(&grid, &samples, &[-1, 0, 1, 2, 3])?;
    Ok(fit.coeffs[2])
}

/// Decide which `sign_c0` makes `F` differences agree with numerically
/// extracted linear-term differences.
///
/// `LT = c₋₁A²/2 + c₀A + c₁ + Φ` for a single sine factor; `c₁` cancels in
/// differences at fixed `α`. `laurent` must hold a fit for every pair's `α`.
pub fn adjudicate_sign(
    table: &ZeroTable,
    pairs: &[AdjudicationPair],
    laurent: &[LaurentCoeffs],
    tolerance: f64,
) -> Result<Adjudication> {
    let signs = [SignC0::Plus, SignC0::Minus];
    let mut outcomes = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let coeffs = laurent
            .iter()
            .find(|c| (c.alpha - pair.alpha).abs() <= 1e-12 * pair.alpha)
            .ok_or_else(|| Error::domain(format!("no Laurent fit for α = {}", pair.alpha)))?;
        let grid = default_lt_grid(table, pair.alpha, 4);
        let lt = |z: Complex64| -> Result<Complex64> {
            let p = FamilyParams::Sine(SineParams::single(pair.alpha, z)?);
            Ok(lt_extract(table, &p, &grid)?.phi_estimate)
        };
        let a1 = sine_argument(1, pair.alpha, pair.z1);
        let a2 = sine_argument(1, pair.alpha, pair.z2);
        let delta_lt =
            coeffs.c_minus1 / 2.0 * (a1 * a1 - a2 * a2) + coeffs.c_0 * (a1 - a2) + lt(pair.z1)?
                - lt(pair.z2)?;
        let delta_f = f_product(table, pair.alpha, pair.z1)?.value
            - f_product(table, pair.alpha, pair.z2)?.value;
        let zero = Complex64::new(0.0, 0.0);
        let predicted = |sign: SignC0| {
            f_polynomial(pair.alpha, a1, sign, zero) - f_polynomial(pair.alpha, a2, sign, zero)
                + delta_f
        };
        let direct = direct_lt_difference(table, pair).ok();
        outcomes.push(PairOutcome {
            pair: *pair,
            delta_lt,
            residual_plus: (delta_lt - predicted(SignC0::Plus)).norm(),
            residual_minus: (delta_lt - predicted(SignC0::Minus)).norm(),
            direct_delta_lt: direct,
            direct_residual_plus: direct.map(|d| (d - predicted(SignC0::Plus)).norm()),
            direct_residual_minus: direct.map(|d| (d - predicted(SignC0::Minus)).norm()),
        });
    }
    let residual = |o: &PairOutcome, s: SignC0| match s {
        SignC0::Plus => o.residual_plus,
        SignC0::Minus => o.residual_minus,
    };
    let direct_residual = |o: &PairOutcome, s: SignC0| match s {
        SignC0::Plus => o.direct_residual_plus,
        SignC0::Minus => o.direct_residual_minus,
    };
    let reconciling: Vec<SignC0> = signs
        .into_iter()
        .filter(|&s| outcomes.iter().all(|o| residual(o, s) <= tolerance))
        .collect();
    let direct_reconciling = signs
        .into_iter()
        .filter(|&s| {
            outcomes
                .iter()
                .all(|o| direct_residual(o, s).is_some_and(|r| r <= tolerance))
        })
        .collect();
    let winner = match reconciling.as_slice() {
        [only] => Some(*only),
        _ => None,
    };
    Ok(Adjudication {
        outcomes,
        tolerance,
        reconciling,
        winner,
        direct_reconciling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ZeroTable {
        ZeroTable::new(
            vec![
                14.134725142,
                21.022039639,
                25.010857580,
                30.424876126,
                32.935061588,
            ],
            "t",
            9,
        )
        .unwrap()
    }

    #[test]
    fn s_one_is_sum_of_reciprocal_sines() {
        let t = table();
        let p = SineParams::single(1.0, Complex64::new(0.0, 0.0)).unwrap();
        let got = l_direct(&t, &p, 1.0).unwrap().value;
        let want: Complex64 = t
            .ordinates()
            .iter()
            .map(|&tau| 1.0 / Complex64::new(0.5, tau).sin())
            .sum();
        assert!((got - want).norm() < 1e-12 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn tilde_s_one_is_sum_of_reciprocals() {
        let t = table();
        let (a, z, w) = (0.8, Complex64::new(0.4, -0.3), Complex64::new(0.5, 0.5));
        let p = ExpParams::new(vec![a], vec![z], vec![w]).unwrap();
        let got = l_tilde_direct(&t, &p, 1.0).unwrap().value;
        let want: Complex64 = t
            .ordinates()
            .iter()
            .map(|&tau| 1.0 / ((-Complex64::i() * (a * Complex64::new(0.5, tau) - z)).exp() - w))
            .sum();
        assert!((got - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn factorized_branch_differs_from_principal_sine_power() {
        // Re(αρ − z) = 5 puts the factorized argument of sin beyond π
        let t = ZeroTable::new(vec![14.134725142], "t", 9).unwrap();
        let (a, s) = (10.0, 0.5);
        let p = SineParams::single(a, Complex64::new(0.0, 0.0)).unwrap();
        let factorized = l_direct(&t, &p, s).unwrap().value;
        let w = a * Complex64::new(0.5, 14.134725142);
        let principal = (-s * w.sin().ln()).exp();
        let rebuilt = (s
            * (cmath::LN_MINUS_2I + Complex64::i() * w - ln_1p(-(2.0 * Complex64::i() * w).exp())))
        .exp();
        assert!((factorized - rebuilt).norm() < 1e-12 * rebuilt.norm());
        assert!((factorized - principal).norm() > 0.1 * principal.norm());
    }

    #[test]
    fn zero_omega_gives_identically_zero_d() {
        let t = table();
        let zero = Complex64::new(0.0, 0.0);
        let p = FamilyParams::Exp(
            ExpParams::new(
                vec![1.0, 0.5],
                vec![Complex64::new(0.3, -0.1), zero],
                vec![zero, zero],
            )
            .unwrap(),
        );
        for s in [0.3, 0.1, 0.01] {
            let d = d_function(&t, &p, s).unwrap();
            assert_eq!(d.value, zero);
            assert_eq!(d.tail_bound, 0.0);
        }
    }

    #[test]
    fn d_matches_direct_difference_when_not_cancelling() {
        let t = table();
        let p = SineParams::single(0.05, Complex64::new(0.3, -0.1)).unwrap();
        let fp = FamilyParams::Sine(p.clone());
        let s = 0.5;
        let d = d_function(&t, &fp, s).unwrap().value;
        let l = l_direct(&t, &p, s).unwrap().value;
        let v: Complex64 = t
            .ordinates()
            .iter()
            .map(|&tau| (Complex64::i() * 0.05 * s * Complex64::new(0.5, tau)).exp())
            .sum();
        let want = (-s * fp.prefactor_exponent()).exp() * l - v;
        assert!(
            (d - want).norm() < 1e-12 * want.norm().max(1e-300),
            "{d} vs {want}"
        );
    }

    #[test]
    fn grid_validation() {
        let t = table();
        let p = FamilyParams::Sine(SineParams::single(1.0, Complex64::new(0.0, 0.0)).unwrap());
        assert!(lt_extract(&t, &p, &[0.4, 0.2]).is_err());
        assert!(lt_extract(&t, &p, &[0.4, 0.3, 0.2]).is_err());
        assert!(matches!(
            lt_extract(&t, &p, &[0.04, 0.02, 0.01]),
            Err(Error::InsufficientRange { .. })
        ));
        assert!(lt_extract(&t, &p, &default_lt_grid(&t, 1.0, 4)).is_ok());
    }
}
