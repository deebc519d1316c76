//! Regularized products `S`, `S̃` and their discrepancies.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::factors::{f_series, f_tilde_series};
use super::params::{ExpParams, SignC0, SineParams};
use super::poly::{poly_f, poly_f_tilde, C1Mode};
use crate::cmath::{self, fold_sum, rel_diff};
use crate::error::Result;
use crate::pochhammer::{zeta_pochhammer, PochhammerArgs};
use crate::summation::BoundedValue;
use crate::zeros::ZeroTable;

/// A regularized product evaluated by both assembly routes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductValue {
    /// `e^{−F}·∏ₖ (Pochhammer)ₖ`
    pub value: BoundedValue,
    /// `exp(−F − Σₖ f(k))` with `f(k)` from the `V` series.
    #[serde(with = "cmath::json")]
    pub via_series: Complex64,
    /// `F` (or `F̃`).
    #[serde(with = "cmath::json")]
    pub polynomial: Complex64,
    /// `∏ₖ (Pochhammer)ₖ`
    pub core: BoundedValue,
    /// Relative difference between the two routes.
    pub route_difference: f64,
    pub sign_c0: SignC0,
    pub c1_omitted: bool,
}

fn product_of(factors: &[BoundedValue]) -> BoundedValue {
    let value = factors
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, f| acc * f.value);
    // |∏(vₖ + eₖ) − ∏vₖ| ≤ ∏(|vₖ| + bₖ) − ∏|vₖ|
    let upper: f64 = factors
        .iter()
        .map(|f| f.value.norm() + f.tail_bound)
        .product();
    let exact: f64 = factors.iter().map(|f| f.value.norm()).product();
    BoundedValue::new(value, (upper - exact).max(0.0))
}

fn assemble(
    polynomial: Complex64,
    pochhammers: Vec<BoundedValue>,
    series: Vec<BoundedValue>,
    sign_c0: SignC0,
    c1: &C1Mode,
) -> ProductValue {
    let core = product_of(&pochhammers);
    let value = core.scale((-polynomial).exp());
    let f_sum = fold_sum(series.iter().map(|f| f.value));
    let via_series = (-polynomial - f_sum).exp();
    ProductValue {
        value,
        via_series,
        polynomial,
        core,
        route_difference: rel_diff(value.value, via_series),
        sign_c0,
        c1_omitted: c1.is_omit(),
    }
}

/// `S(z̲; α̲) = e^{−F}·∏ₖ (e^{−2izₖ}; e^{−2iαₖ})_ζ`.
pub fn s_sine(
    table: &ZeroTable,
    p: &SineParams,
    sign_c0: SignC0,
    c1: &C1Mode,
) -> Result<ProductValue> {
    let polynomial = poly_f(p, sign_c0, c1)?;
    let mut pochhammers = Vec::with_capacity(p.n());
    let mut series = Vec::with_capacity(p.n());
    for (&a, &z) in p.alphas().iter().zip(p.zs()) {
        let x = (Complex64::new(0.0, -2.0) * z).exp();
        pochhammers.push(zeta_pochhammer(table, PochhammerArgs::new(x, 2.0 * a))?);
        series.push(f_series(table, a, z, None)?);
    }
    Ok(assemble(polynomial, pochhammers, series, sign_c0, c1))
}

/// `S̃(z̲; α̲, ω̲) = e^{−F̃}·∏ₖ (ωₖe^{−izₖ}; e^{−iαₖ})_ζ`.
pub fn s_exp(
    table: &ZeroTable,
    p: &ExpParams,
    sign_c0: SignC0,
    c1: &C1Mode,
) -> Result<ProductValue> {
    let polynomial = poly_f_tilde(p, sign_c0, c1)?;
    let mut pochhammers = Vec::with_capacity(p.n());
    let mut series = Vec::with_capacity(p.n());
    for ((&a, &z), &w) in p.alphas().iter().zip(p.zs()).zip(p.omegas()) {
        let x = w * (Complex64::new(0.0, -1.0) * z).exp();
        pochhammers.push(zeta_pochhammer(table, PochhammerArgs::new(x, a))?);
        series.push(f_tilde_series(table, a, z, w, None)?);
    }
    Ok(assemble(polynomial, pochhammers, series, sign_c0, c1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    #[serde(with = "cmath::json::vec")]
    pub per_factor_f: Vec<Complex64>,
    #[serde(with = "cmath::json")]
    pub combined_f: Complex64,
    /// `Σ per_factor_f − combined_f`
    #[serde(with = "cmath::json")]
    pub discrepancy: Complex64,
    pub c1_mode: C1Mode,
    pub sign_c0: SignC0,
    /// Set when the value depends on `c₁` values that were omitted.
    pub flagged: bool,
    pub note: String,
}

fn discrepancy_report(
    per_factor_f: Vec<Complex64>,
    combined_f: Complex64,
    c1: &C1Mode,
    sign_c0: SignC0,
) -> DiscrepancyReport {
    let n = per_factor_f.len();
    let discrepancy = fold_sum(per_factor_f.iter().copied()) - combined_f;
    let flagged = c1.is_omit() && n >= 2;
    let note = if flagged {
        "c1 omitted: value is determined only up to sum_k c1(alpha_k) - c1(alpha)".to_string()
    } else if n == 1 {
        "single factor: discrepancy vanishes identically".to_string()
    } else {
        format!("c1 mode {}", c1.label())
    };
    DiscrepancyReport {
        per_factor_f,
        combined_f,
        discrepancy,
        c1_mode: c1.clone(),
        sign_c0,
        flagged,
        note,
    }
}

/// `Σₖ F(zₖ; αₖ) − F(z̲; α̲)`.
pub fn discrepancy_sine(p: &SineParams, sign_c0: SignC0, c1: &C1Mode) -> Result<DiscrepancyReport> {
    let per_factor = (0..p.n())
        .map(|k| poly_f(&p.factor(k), sign_c0, c1))
        .collect::<Result<Vec<_>>>()?;
    let combined = poly_f(p, sign_c0, c1)?;
    Ok(discrepancy_report(per_factor, combined, c1, sign_c0))
}

/// `Σₖ F̃(zₖ; αₖ) − F̃(z̲; α̲)`.
pub fn discrepancy_exp(p: &ExpParams, sign_c0: SignC0, c1: &C1Mode) -> Result<DiscrepancyReport> {
    let per_factor = (0..p.n())
        .map(|k| poly_f_tilde(&p.factor(k), sign_c0, c1))
        .collect::<Result<Vec<_>>>()?;
    let combined = poly_f_tilde(p, sign_c0, c1)?;
    Ok(discrepancy_report(per_factor, combined, c1, sign_c0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regprod::poly::{exp_argument, f_polynomial, sine_argument, C1Table};

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
    fn single_factor_discrepancy_is_exactly_zero() {
        for (a, z) in [
            (1.0, Complex64::new(0.3, -0.1)),
            (0.37, Complex64::new(6.0, -3.3)),
            (12.0, Complex64::new(0.0, 0.0)),
        ] {
            let p = SineParams::single(a, z).unwrap();
            for sign in [SignC0::Plus, SignC0::Minus] {
                let d = discrepancy_sine(&p, sign, &C1Mode::Omit).unwrap();
                assert_eq!(d.discrepancy, Complex64::new(0.0, 0.0));
                assert!(!d.flagged);
            }
            let q = ExpParams::new(vec![a], vec![z], vec![Complex64::new(0.2, 0.1)]).unwrap();
            assert_eq!(
                discrepancy_exp(&q, SignC0::Plus, &C1Mode::Omit)
                    .unwrap()
                    .discrepancy,
                Complex64::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn two_factor_discrepancy_direct_evaluation() {
        let c1 = C1Mode::numeric(C1Table::from_values([
            (1.0, Complex64::new(0.1, 0.02)),
            (2.0, Complex64::new(-0.05, 0.3)),
        ]));
        let zero = Complex64::new(0.0, 0.0);
        let p = SineParams::new(vec![1.0, 1.0], vec![zero, zero]).unwrap();
        let d = discrepancy_sine(&p, SignC0::Plus, &c1).unwrap();
        let f1 = f_polynomial(
            1.0,
            sine_argument(1, 1.0, zero),
            SignC0::Plus,
            c1.c1(1.0).unwrap(),
        );
        let f2 = f_polynomial(
            2.0,
            sine_argument(2, 2.0, zero),
            SignC0::Plus,
            c1.c1(2.0).unwrap(),
        );
        assert!((d.discrepancy - (2.0 * f1 - f2)).norm() < 1e-14);
        assert_eq!(d.per_factor_f[0], d.per_factor_f[1]);
        assert_eq!(
            d.discrepancy,
            d.per_factor_f[0] + d.per_factor_f[1] - d.combined_f
        );
        assert!(!d.flagged);
        assert!(
            discrepancy_sine(&p, SignC0::Plus, &C1Mode::Omit)
                .unwrap()
                .flagged
        );

        let q = ExpParams::new(vec![1.0, 1.0], vec![zero, zero], vec![zero, zero]).unwrap();
        let d = discrepancy_exp(&q, SignC0::Plus, &c1).unwrap();
        let g1 = f_polynomial(
            1.0,
            exp_argument(1.0, zero),
            SignC0::Plus,
            c1.c1(1.0).unwrap(),
        );
        let g2 = f_polynomial(
            2.0,
            exp_argument(2.0, zero),
            SignC0::Plus,
            c1.c1(2.0).unwrap(),
        );
        assert!((d.discrepancy - (2.0 * g1 - g2)).norm() < 1e-14);
    }

    #[test]
    fn zero_omega_gives_bare_exponential() {
        let t = table();
        let zero = Complex64::new(0.0, 0.0);
        let q = ExpParams::new(
            vec![1.0, 0.5],
            vec![Complex64::new(0.3, -0.1), zero],
            vec![zero, zero],
        )
        .unwrap();
        let s = s_exp(&t, &q, SignC0::Plus, &C1Mode::Omit).unwrap();
        assert_eq!(s.core.value, Complex64::new(1.0, 0.0));
        assert_eq!(s.value.value, (-s.polynomial).exp());
        assert_eq!(s.via_series, s.value.value);
    }

    #[test]
    fn assembly_routes_agree() {
        let t = table();
        let p = SineParams::new(
            vec![0.05, 0.08],
            vec![Complex64::new(0.3, -0.1), Complex64::new(1.0, -0.2)],
        )
        .unwrap();
        let s = s_sine(&t, &p, SignC0::Plus, &C1Mode::Omit).unwrap();
        assert!(s.route_difference < 1e-12, "{}", s.route_difference);
    }
}
