//! Richardson extrapolation to `h → 0` on a geometric grid.

use num_complex::Complex64;

/// Result of [`extrapolate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    pub estimate: Complex64,
    /// Difference between the two highest-order estimates.
    pub error_estimate: f64,
}

/// Extrapolate samples `values[k] = g(h₀ / ratio^k)` of a function with an
/// expansion `g(h) = g(0) + a₁h + a₂h² + …` to `g(0)`, eliminating one power
/// of `h` per tableau column.
pub fn extrapolate(values: &[Complex64], ratio: f64) -> Option<Extrapolation> {
    if values.len() < 2 || !(ratio > 1.0) {
        return None;
    }
    let mut column = values.to_vec();
    let mut previous_best = column[column.len() - 1];
    let mut factor = 1.0;
    while column.len() > 1 {
        factor *= ratio;
        previous_best = column[column.len() - 1];
        column = column
            .windows(2)
            .map(|w| (w[1] * factor - w[0]) / (factor - 1.0))
            .collect();
    }
    let estimate = column[0];
    Some(Extrapolation {
        estimate,
        error_estimate: (estimate - previous_best).norm(),
    })
}
