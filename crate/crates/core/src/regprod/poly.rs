use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::params::{ExpParams, SignC0, SineParams};
use crate::cmath::{self, LN_MINUS_2I};
use crate::cramer::{default_laurent_grid, extract_laurent_coeffs, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::zeros::ZeroTable;

/// Fitted `c₁(α)` values.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct C1Table {
    pub entries: Vec<C1Entry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C1Entry {
    pub alpha: f64,
    #[serde(with = "cmath::json")]
    pub c1: Complex64,
    pub uncertainty: f64,
}

impl C1Table {
    pub fn from_values(values: impl IntoIterator<Item = (f64, Complex64)>) -> Self {
        let mut table = C1Table::default();
        for (alpha, c1) in values {
            table.insert(C1Entry {
                alpha,
                c1,
                uncertainty: 0.0,
            });
        }
        table
    }

    /// Fit `c₁(α)` for each distinct `α` on the table-adapted default grid.
    pub fn extract(table: &ZeroTable, alphas: &[f64]) -> Result<Self> {
        let mut out = C1Table::default();
        for &alpha in alphas {
            if out.get(alpha).is_ok() {
                continue;
            }
            let fit = extract_laurent_coeffs(table, alpha, &default_laurent_grid(table, alpha, 8))?;
            out.insert(C1Entry {
                alpha,
                c1: fit.c_1,
                uncertainty: fit.c1_uncertainty,
            });
        }
        Ok(out)
    }

    pub fn insert(&mut self, entry: C1Entry) {
        match self
            .entries
            .iter_mut()
            .find(|e| same_alpha(e.alpha, entry.alpha))
        {
            Some(e) => *e = entry,
            None => self.entries.push(entry),
        }
    }

    pub fn get(&self, alpha: f64) -> Result<Complex64> {
        self.entries
            .iter()
            .find(|e| same_alpha(e.alpha, alpha))
            .map(|e| e.c1)
            .ok_or(Error::MissingC1 { alpha })
    }
}

fn same_alpha(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// How the unresolved constant `c₁(α)` enters `F` and `F̃`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum C1Mode {
    Numeric {
        table: C1Table,
    },
    /// `c₁` is set to zero; values are only meaningful up to an additive
    /// constant per distinct `α`.
    Omit,
}

impl C1Mode {
    pub fn numeric(table: C1Table) -> Self {
        C1Mode::Numeric { table }
    }

    pub fn c1(&self, alpha: f64) -> Result<Complex64> {
        match self {
            C1Mode::Numeric { table } => table.get(alpha),
            C1Mode::Omit => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn is_omit(&self) -> bool {
        matches!(self, C1Mode::Omit)
    }

    pub fn label(&self) -> &'static str {
        match self {
            C1Mode::Numeric { .. } => "numeric",
            C1Mode::Omit => "omit",
        }
    }
}

/// `(γ + log 2πα)/(4πα)`
fn quadratic_scale(alpha: f64) -> f64 {
    (EULER_GAMMA + (2.0 * PI * alpha).ln()) / (4.0 * PI * alpha)
}

/// `−((γ + log 2πα)/(4πα))·arg² + sign·(7/8)·arg + c₁`
pub fn f_polynomial(alpha: f64, arg: Complex64, sign: SignC0, c1: Complex64) -> Complex64 {
    -quadratic_scale(alpha) * arg * arg + sign.value() * 0.875 * arg + c1
}

/// `A = n·log(−2i) − iz + iα/2`
pub fn sine_argument(n: usize, alpha: f64, z: Complex64) -> Complex64 {
    LN_MINUS_2I * n as f64 + Complex64::new(z.im, -z.re) + Complex64::new(0.0, 0.5 * alpha)
}

/// `Ã = iα/2 − iz`
pub fn exp_argument(alpha: f64, z: Complex64) -> Complex64 {
    Complex64::new(z.im, 0.5 * alpha - z.re)
}

pub fn poly_f(p: &SineParams, sign: SignC0, c1: &C1Mode) -> Result<Complex64> {
    let alpha = p.alpha();
    Ok(f_polynomial(
        alpha,
        sine_argument(p.n(), alpha, p.z()),
        sign,
        c1.c1(alpha)?,
    ))
}

/// `F̃` does not depend on `ω̲`.
pub fn poly_f_tilde(p: &ExpParams, sign: SignC0, c1: &C1Mode) -> Result<Complex64> {
    let alpha = p.alpha();
    Ok(f_polynomial(
        alpha,
        exp_argument(alpha, p.z()),
        sign,
        c1.c1(alpha)?,
    ))
}

/// The quadratic and linear coefficients `(A_α, B_α)` of the single-factor
/// polynomial in `x` (with `z = αx`) as stated in the earlier literature:
/// `A_α = α(γ + log 2πα)/(4π)`,
/// `B_α = ((γ + log 2πα)/(2πi))·(iα/2 + log(−2i)) + 7iα/8`.
pub fn kw_coefficients(alpha: f64) -> (Complex64, Complex64) {
    let g = EULER_GAMMA + (2.0 * PI * alpha).ln();
    let a = Complex64::new(alpha * g / (4.0 * PI), 0.0);
    let b = g / Complex64::new(0.0, 2.0 * PI) * (Complex64::new(0.0, 0.5 * alpha) + LN_MINUS_2I)
        + Complex64::new(0.0, 7.0 * alpha / 8.0);
    (a, b)
}
