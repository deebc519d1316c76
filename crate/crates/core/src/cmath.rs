//! Complex helpers that f64 `num-complex` lacks, and JSON encoding of complex
//! values as `{"re": .., "im": ..}`.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `ln(-2i) = ln 2 - iπ/2`, principal branch.
pub const LN_MINUS_2I: Complex64 = Complex64::new(std::f64::consts::LN_2, -PI / 2.0);

/// `ln(1 + z)`, principal branch, accurate for small `|z|`.
pub fn ln_1p(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if z.norm() < 0.5 {
        // |1+z|^2 - 1 = x(2+x) + y^2
        let re = 0.5 * (x * (2.0 + x) + y * y).ln_1p();
        Complex64::new(re, y.atan2(1.0 + x))
    } else {
        (Complex64::new(1.0, 0.0) + z).ln()
    }
}

/// `e^z - 1`, accurate for small `|z|`.
pub fn exp_m1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if x.abs() < 1.0 && y.abs() < 1.0 {
        let half = (0.5 * y).sin();
        let re = x.exp_m1() * y.cos() - 2.0 * half * half;
        Complex64::new(re, x.exp() * y.sin())
    } else {
        z.exp() - 1.0
    }
}

/// Multiply by `-i` without rounding.
#[inline]
pub fn rotate_neg_i(z: Complex64) -> Complex64 {
    Complex64::new(z.im, -z.re)
}

/// Multiply by `i` without rounding.
#[inline]
pub fn rotate_i(z: Complex64) -> Complex64 {
    Complex64::new(-z.im, z.re)
}

/// Sum a slice of complex numbers left to right, starting from the first
/// element (so a one-element sum returns that element bit for bit).
pub fn fold_sum(values: impl IntoIterator<Item = Complex64>) -> Complex64 {
    values
        .into_iter()
        .reduce(|a, b| a + b)
        .unwrap_or_else(|| Complex64::new(0.0, 0.0))
}

pub fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Serde adapter: `#[serde(with = "crate::cmath::json")]`.
pub mod json {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Repr { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(Complex64::new(r.re, r.im))
    }

    /// Same encoding for `Vec<Complex64>`.
    pub mod vec {
        use super::Repr;
        use num_complex::Complex64;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
            v.iter()
                .map(|z| Repr { re: z.re, im: z.im })
                .collect::<Vec<_>>()
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
            Ok(Vec::<Repr>::deserialize(d)?
                .into_iter()
                .map(|r| Complex64::new(r.re, r.im))
                .collect())
        }
    }

    /// Same encoding for `Option<Complex64>` (`null` when absent).
    pub mod option {
        use super::Repr;
        use num_complex::Complex64;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
            v.map(|z| Repr { re: z.re, im: z.im }).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
            Ok(Option::<Repr>::deserialize(d)?.map(|r| Complex64::new(r.re, r.im)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_1p_keeps_relative_precision_for_tiny_arguments() {
        let w = Complex64::new(-3.5e-13, 1.2e-13);
        let got = ln_1p(w);
        // series: w - w^2/2
        let series = w - w * w / 2.0;
        assert!((got - series).norm() <= 1e-15 * w.norm());
        let naive = (Complex64::new(1.0, 0.0) + w).ln();
        assert!((naive - series).norm() > 1e-6 * w.norm());
    }

    #[test]
    fn ln_1p_matches_principal_log_for_large_arguments() {
        for z in [
            Complex64::new(0.7, -0.4),
            Complex64::new(-0.3, 0.45),
            Complex64::new(-0.9, 0.0),
        ] {
            let want = (Complex64::new(1.0, 0.0) + z).ln();
            assert!((ln_1p(z) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn exp_m1_small_and_large() {
        let w = Complex64::new(2e-14, -7e-15);
        assert!((exp_m1(w) - (w + w * w / 2.0)).norm() <= 1e-15 * w.norm());
        let z = Complex64::new(0.3, 2.5);
        assert!((exp_m1(z) - (z.exp() - 1.0)).norm() < 1e-15);
        assert_eq!(exp_m1(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rotations_are_exact() {
        let z = Complex64::new(0.123456789, -9.87654321);
        assert_eq!(rotate_neg_i(rotate_i(z)), z);
        assert_eq!(rotate_i(z), Complex64::i() * z);
    }

    #[test]
    fn json_shape() {
        #[derive(serde::Serialize, serde::Deserialize, PartialEq, Debug)]
        struct W {
            #[serde(with = "json")]
            z: Complex64,
        }
        let w = W {
            z: Complex64::new(1.5, -0.25),
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"z":{"re":1.5,"im":-0.25}}"#);
        assert_eq!(serde_json::from_str::<W>(&s).unwrap(), w);
    }
}
