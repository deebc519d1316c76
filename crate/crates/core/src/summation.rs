//! Compensated sums over a zero table with truncation tail bounds.
//!
//! Terms are accumulated in table order with Neumaier's compensation. Large
//! tables are cut into fixed-width blocks that may be summed on different
//! threads; block results are always combined sequentially in block order,
//! so the result does not depend on the thread count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmath;
use crate::error::{Error, Result};
use crate::zeros::{ZeroTable, FIRST_ORDINATE};

/// Block width of the parallel reduction. Part of the determinism contract:
/// changing it changes low-order bits of every sum.
pub const BLOCK: usize = 4096;

/// A value together with an absolute bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundedValue {
    #[serde(with = "cmath::json")]
    pub value: Complex64,
    pub tail_bound: f64,
}

impl BoundedValue {
    pub fn new(value: Complex64, tail_bound: f64) -> Self {
        debug_assert!(
            tail_bound >= 0.0 && tail_bound.is_finite(),
            "bad tail bound {tail_bound}"
        );
        Self { value, tail_bound }
    }

    pub fn exact(value: Complex64) -> Self {
        Self::new(value, 0.0)
    }

    /// Multiply by a known factor; the bound scales with its modulus.
    pub fn scale(self, factor: Complex64) -> Self {
        Self::new(self.value * factor, self.tail_bound * factor.norm())
    }

    pub fn neg(self) -> Self {
        Self::new(-self.value, self.tail_bound)
    }

    /// Whether `other` lies within the combined bounds (plus `slack`).
    pub fn agrees_with(&self, other: &BoundedValue, slack: f64) -> bool {
        (self.value - other.value).norm() <= self.tail_bound + other.tail_bound + slack
    }
}

impl std::ops::Add for BoundedValue {
    type Output = BoundedValue;
    fn add(self, rhs: Self) -> Self {
        BoundedValue::new(self.value + rhs.value, self.tail_bound + rhs.tail_bound)
    }
}

impl std::ops::Sub for BoundedValue {
    type Output = BoundedValue;
    fn sub(self, rhs: Self) -> Self {
        BoundedValue::new(self.value - rhs.value, self.tail_bound + rhs.tail_bound)
    }
}

/// Neumaier-compensated f64 accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Fold another accumulator in, keeping its compensation term.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sum `term(τ)` over the ordinates in table order.
pub(crate) fn sum_map<F>(ordinates: &[f64], term: F) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let block_sum = |chunk: &[f64]| {
        let mut acc = ComplexSum::default();
        for &t in chunk {
            acc.add(term(t));
        }
        acc
    };
    let partials: Vec<ComplexSum> = if ordinates.len() > BLOCK {
        ordinates.par_chunks(BLOCK).map(block_sum).collect()
    } else {
        vec![block_sum(ordinates)]
    };
    let mut total = ComplexSum::default();
    for p in &partials {
        total.merge(p);
    }
    let v = total.value();
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow("sum over zeros is not finite".into()));
    }
    Ok(v)
}

/// Upper bound for `Σ_{τₙ > T} e^{−a·τₙ}` over the true zeros.
///
/// Leading term: the zero density `log(t/2π)/2π` with safety factor 2 gives
/// `(1/πa)·e^{−aT}·log T` (plus the `2/(πa²T)` correction of the integral).
/// Second term: the counting-function remainder,
/// `|N(T) − main(T)| ≤ 0.112 log T + 0.278 log log T + 2.51 + 0.2/T`
/// (Trudgian), which covers a zero sitting just above `T`.
pub fn density_tail(a: f64, t: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("density_tail needs a > 0, got {a}")));
    }
    if !(t >= FIRST_ORDINATE) || !t.is_finite() {
        return Err(Error::domain(format!("density_tail needs T ≥ τ₁, got {t}")));
    }
    let decay = (-a * t).exp();
    if decay == 0.0 {
        return Ok(0.0);
    }
    let ln_t = t.ln();
    let pi = std::f64::consts::PI;
    let main = ln_t / (pi * a) + 2.0 / (pi * a * a * t);
    let remainder = 0.112 * ln_t + 0.278 * ln_t.ln() + 2.51 + 0.2 / t;
    let remainder = 2.0 * (remainder + (0.112 + 0.278 / ln_t) / (a * t));
    Ok(decay * (main + remainder))
}

/// `Σₙ e^{−a·τₙ}` for `Re(a) > 0`; `φ(s)` is `exp_sum(table, s)`.
pub fn exp_sum(table: &ZeroTable, a: Complex64) -> Result<BoundedValue> {
    if !(a.re > 0.0) || !a.im.is_finite() {
        return Err(Error::domain(format!("exp_sum needs Re(a) > 0, got {a}")));
    }
    let value = sum_map(table.ordinates(), |t| (-a * t).exp())?;
    let tail = density_tail(a.re, table.max_ordinate())?;
    Ok(BoundedValue::new(value, tail))
}

/// `Σₙ log(1 − c·e^{−a·τₙ})`, principal logarithms, for `|c|·e^{−a·τ₁} < 1`.
pub fn log_one_minus_sum(table: &ZeroTable, c: Complex64, a: f64) -> Result<BoundedValue> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!(
            "log_one_minus_sum needs a > 0, got {a}"
        )));
    }
    let first = c.norm() * (-a * table.min_ordinate()).exp();
    if !(first < 1.0) {
        return Err(Error::precondition(format!(
            "|c|·e^(−a·τ₁) = {first} must be < 1"
        )));
    }
    if c == Complex64::new(0.0, 0.0) {
        return Ok(BoundedValue::exact(Complex64::new(0.0, 0.0)));
    }
    let value = sum_map(table.ordinates(), |t| cmath::ln_1p(-(c * (-a * t).exp())))?;
    // |log(1 − w)| ≤ |w| / (1 − |w|) and |w| ≤ first beyond the table
    let tail = density_tail(a, table.max_ordinate())? * c.norm() / (1.0 - first);
    Ok(BoundedValue::new(value, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(ords: &[f64]) -> ZeroTable {
        ZeroTable::new(ords.to_vec(), "test", 9).unwrap()
    }

    const FIRST: [f64; 5] = [
        14.134725142,
        21.022039639,
        25.010857580,
        30.424876126,
        32.935061588,
    ];

    #[test]
    fn compensation_recovers_lost_digits() {
        let mut acc = CompensatedSum::default();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-17);
        }
        assert!((acc.value() - (1.0 + 1e-13)).abs() < 1e-28 + f64::EPSILON * 1e-3);
        let naive: f64 = std::iter::once(1.0)
            .chain(std::iter::repeat(1e-17).take(10_000))
            .sum();
        assert_eq!(naive, 1.0);
    }

    #[test]
    fn exp_sum_first_zero_dominates() {
        let t = table(&FIRST);
        let v = exp_sum(&t, Complex64::new(10.0, 0.0)).unwrap();
        let lead = (-10.0 * FIRST[0]).exp();
        // e^{-10(τ₂-τ₁)} ≈ e^{-68.9}: the two-term oracle is lead to full precision
        let two_term = lead + (-10.0 * FIRST[1]).exp();
        assert_eq!(v.value.re, two_term);
        assert!((v.value.re / lead - 1.0).abs() < 1e-29);
        assert_eq!(v.value.im, 0.0);
    }

    #[test]
    fn exp_sum_domain() {
        let t = table(&FIRST);
        assert!(matches!(
            exp_sum(&t, Complex64::new(0.0, 1.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            exp_sum(&t, Complex64::new(-1.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn log_one_minus_sum_zero_and_boundary() {
        let t = table(&FIRST);
        let z = log_one_minus_sum(&t, Complex64::new(0.0, 0.0), 2.0).unwrap();
        assert_eq!(z.value, Complex64::new(0.0, 0.0));
        assert_eq!(z.tail_bound, 0.0);
        let c = Complex64::new((2.0 * FIRST[0]).exp(), 0.0);
        assert!(matches!(
            log_one_minus_sum(&t, c, 2.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn density_tail_monotone() {
        let mut prev = f64::INFINITY;
        for a in [0.01, 0.1, 0.5, 1.0, 2.0, 5.0] {
            let b = density_tail(a, 100.0).unwrap();
            assert!(b < prev);
            prev = b;
        }
        for t in [20.0, 40.0, 80.0, 160.0] {
            assert!(density_tail(0.5, 2.0 * t).unwrap() < density_tail(0.5, t).unwrap());
        }
        assert!(density_tail(0.0, 100.0).is_err());
        assert!(density_tail(1.0, 10.0).is_err());
    }

    #[test]
    fn block_reduction_is_deterministic() {
        let ords: Vec<f64> = (0..20_000).map(|i| 14.2 + i as f64 * 0.37).collect();
        let f = |t: f64| Complex64::new((-0.001 * t).exp(), (0.3 * t).sin());
        let a = sum_map(&ords, f).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap();
        let b = pool.install(|| sum_map(&ords, f).unwrap());
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
}
