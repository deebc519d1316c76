//! The zeta-Pochhammer symbol `(x; q)_ζ = ∏_{Im ρ>0} (1 − x·q^{−ρ})` with
//! `q = e^{−iβ}`, so each factor is `1 − x·e^{iβ/2}·e^{−βτ}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmath;
use crate::error::{Error, Result};
use crate::summation::{log_one_minus_sum, BoundedValue};
use crate::zeros::ZeroTable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PochhammerArgs {
    #[serde(with = "cmath::json")]
    pub x: Complex64,
    pub beta: f64,
}

impl PochhammerArgs {
    pub fn new(x: Complex64, beta: f64) -> Self {
        Self { x, beta }
    }

    /// `x·e^{iβ/2}`, the coefficient of `e^{−βτ}` in each factor.
    pub fn coefficient(&self) -> Complex64 {
        self.x * Complex64::new(0.0, 0.5 * self.beta).exp()
    }

    fn check(&self, table: &ZeroTable) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::domain(format!(
                "β must be positive, got {}",
                self.beta
            )));
        }
        let lead = self.x.norm() * (-self.beta * table.min_ordinate()).exp();
        if !(lead < 1.0) {
            return Err(Error::precondition(format!(
                "|x|·e^(−β·τ₁) = {lead} must be < 1"
            )));
        }
        Ok(())
    }
}

/// `Σ log(1 − x·q^{−ρ})`, the logarithm of the symbol with principal factor logs.
pub fn pochhammer_log(table: &ZeroTable, args: PochhammerArgs) -> Result<BoundedValue> {
    args.check(table)?;
    log_one_minus_sum(table, args.coefficient(), args.beta)
}

pub fn zeta_pochhammer(table: &ZeroTable, args: PochhammerArgs) -> Result<BoundedValue> {
    let log = pochhammer_log(table, args)?;
    let value = log.value.exp();
    Ok(BoundedValue::new(
        value,
        value.norm() * log.tail_bound.exp_m1(),
    ))
}
