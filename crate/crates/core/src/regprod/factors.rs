//! The per-factor functions `f(k)` and `f̃(k)`, each computed two ways: as a
//! power series in Cramér's `V` and as a log-product over the zeros.

use num_complex::Complex64;

use super::params::Perturbation;
use crate::cramer::{phi, v_func};
use crate::error::{Error, Result};
use crate::summation::{log_one_minus_sum, BoundedValue};
use crate::zeros::ZeroTable;

/// Target for the geometric `m`-tail when the series order is chosen
/// automatically.
pub const SERIES_TAIL_TARGET: f64 = 1e-12;

const MAX_SERIES_ORDER: usize = 10_000;

fn check_factor(alpha: f64, z: Complex64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!("α_k must be positive, got {alpha}")));
    }
    if !(z.im <= 0.0) || !z.re.is_finite() {
        return Err(Error::domain(format!("z_k = {z} needs Im z <= 0")));
    }
    Ok(())
}

fn check_omega(omega: Complex64) -> Result<()> {
    if !(omega.norm() <= 1.0) {
        return Err(Error::domain(format!("|ω_k| = {} exceeds 1", omega.norm())));
    }
    Ok(())
}

/// `Σ_{m≥1} wᵐ·V(i·m·β)/m` for `|w| ≤ 1`, truncated at order `order`
/// (or where the geometric tail drops below [`SERIES_TAIL_TARGET`]).
///
/// `|V(imβ)| = φ(mβ) ≤ K·e^{−mβτ₁}` with `K = φ(β)·e^{βτ₁}` (plus its tail),
/// so the omitted terms are bounded by `K·qᴹ⁺¹/((M+1)(1 − q))`,
/// `q = |w|·e^{−βτ₁}`.
fn v_power_series(
    table: &ZeroTable,
    w: Complex64,
    beta: f64,
    order: Option<usize>,
) -> Result<BoundedValue> {
    if w == Complex64::new(0.0, 0.0) {
        return Ok(BoundedValue::exact(w));
    }
    let tau1 = table.min_ordinate();
    let first = phi(table, Complex64::new(beta, 0.0))?;
    let k = (first.value.re + first.tail_bound) * (beta * tau1).exp();
    let q = w.norm() * (-beta * tau1).exp();
    let m_tail = |m: usize| k * q.powi(m as i32 + 1) / ((m as f64 + 1.0) * (1.0 - q));
    let order = match order {
        Some(0) => return Err(Error::domain("series order must be at least 1")),
        Some(m) => m,
        None => (1..=MAX_SERIES_ORDER)
            .find(|&m| m_tail(m) < SERIES_TAIL_TARGET)
            .ok_or_else(|| Error::domain("series does not reach the tail target"))?,
    };
    let mut value = Complex64::new(0.0, 0.0);
    let mut tail = m_tail(order);
    let mut w_pow = Complex64::new(1.0, 0.0);
    for m in 1..=order {
        w_pow *= w;
        let v = v_func(table, Complex64::new(0.0, m as f64 * beta))?;
        value += w_pow * v.value / m as f64;
        tail += w_pow.norm() * v.tail_bound / m as f64;
    }
    Ok(BoundedValue::new(value, tail))
}

/// `f(k) = Σ_{m≥1} V(2imαₖ)·e^{−2imzₖ}/m`.
pub fn f_series(
    table: &ZeroTable,
    alpha_k: f64,
    z_k: Complex64,
    order: Option<usize>,
) -> Result<BoundedValue> {
    check_factor(alpha_k, z_k)?;
    let w = (Complex64::new(0.0, -2.0) * z_k).exp();
    v_power_series(table, w, 2.0 * alpha_k, order)
}

/// `f(k) = −Σ_ρ log(1 − e^{2i(αₖρ − zₖ)})`.
pub fn f_product(table: &ZeroTable, alpha_k: f64, z_k: Complex64) -> Result<BoundedValue> {
    check_factor(alpha_k, z_k)?;
    neg_log_sum(table, Perturbation::sine(alpha_k, z_k))
}

/// `f̃(k) = Σ_{m≥1} ωₖᵐ·e^{−imzₖ}·V(imαₖ)/m`.
pub fn f_tilde_series(
    table: &ZeroTable,
    alpha_k: f64,
    z_k: Complex64,
    omega_k: Complex64,
    order: Option<usize>,
) -> Result<BoundedValue> {
    check_factor(alpha_k, z_k)?;
    check_omega(omega_k)?;
    let w = omega_k * (Complex64::new(0.0, -1.0) * z_k).exp();
    v_power_series(table, w, alpha_k, order)
}

/// `f̃(k) = −Σ_ρ log(1 − ωₖ·e^{i(αₖρ − zₖ)})`.
pub fn f_tilde_product(
    table: &ZeroTable,
    alpha_k: f64,
    z_k: Complex64,
    omega_k: Complex64,
) -> Result<BoundedValue> {
    check_factor(alpha_k, z_k)?;
    check_omega(omega_k)?;
    neg_log_sum(table, Perturbation::exp(alpha_k, z_k, omega_k))
}

pub(crate) fn neg_log_sum(table: &ZeroTable, p: Perturbation) -> Result<BoundedValue> {
    Ok(log_one_minus_sum(table, p.c, p.a)?.neg())
}
