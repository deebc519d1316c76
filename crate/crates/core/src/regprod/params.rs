use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::cmath::{self, fold_sum};
use crate::error::{Error, Result};

/// Parameters `(α̲, z̲)` of the sine family `∏ₖ sin(αₖρ − zₖ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SineParams {
    alphas: Vec<f64>,
    #[serde(with = "cmath::json::vec")]
    zs: Vec<Complex64>,
}

/// Parameters `(α̲, z̲, ω̲)` of the exponential family
/// `∏ₖ (e^{−i(αₖρ − zₖ)} − ωₖ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpParams {
    alphas: Vec<f64>,
    #[serde(with = "cmath::json::vec")]
    zs: Vec<Complex64>,
    #[serde(with = "cmath::json::vec")]
    omegas: Vec<Complex64>,
}

fn check_common(alphas: &[f64], zs: &[Complex64]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::InvalidParams("need at least one factor".into()));
    }
    if alphas.len() != zs.len() {
        return Err(Error::InvalidParams(format!(
            "{} alphas but {} z values",
            alphas.len(),
            zs.len()
        )));
    }
    for (k, (&a, &z)) in alphas.iter().zip(zs).enumerate() {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParams(format!(
                "alpha_{} = {a} must be positive",
                k + 1
            )));
        }
        if !(z.re >= 0.0 && z.re < 2.0 * PI) || !(z.im <= 0.0) || !z.im.is_finite() {
            return Err(Error::InvalidParams(format!(
                "z_{} = {z} needs 0 <= Re z < 2π and Im z <= 0",
                k + 1
            )));
        }
    }
    Ok(())
}

impl SineParams {
    pub fn new(alphas: Vec<f64>, zs: Vec<Complex64>) -> Result<Self> {
        check_common(&alphas, &zs)?;
        Ok(Self { alphas, zs })
    }

    pub fn single(alpha: f64, z: Complex64) -> Result<Self> {
        Self::new(vec![alpha], vec![z])
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn zs(&self) -> &[Complex64] {
        &self.zs
    }

    pub fn alpha(&self) -> f64 {
        self.alphas.iter().sum()
    }

    pub fn z(&self) -> Complex64 {
        fold_sum(self.zs.iter().copied())
    }

    /// The `k`-th factor on its own.
    pub fn factor(&self, k: usize) -> SineParams {
        SineParams {
            alphas: vec![self.alphas[k]],
            zs: vec![self.zs[k]],
        }
    }

    /// `(2z̲, 2α̲, 1̲)`, the exponential-family problem sharing this
    /// problem's Pochhammer symbols.
    pub fn doubled_exp(&self) -> Result<ExpParams> {
        ExpParams::new(
            self.alphas.iter().map(|a| 2.0 * a).collect(),
            self.zs.iter().map(|z| 2.0 * z).collect(),
            vec![Complex64::new(1.0, 0.0); self.n()],
        )
    }

    pub(crate) fn perturbations(&self) -> Vec<Perturbation> {
        self.alphas
            .iter()
            .zip(&self.zs)
            .map(|(&a, &z)| Perturbation::sine(a, z))
            .collect()
    }
}

impl ExpParams {
    pub fn new(alphas: Vec<f64>, zs: Vec<Complex64>, omegas: Vec<Complex64>) -> Result<Self> {
        check_common(&alphas, &zs)?;
        if omegas.len() != alphas.len() {
            return Err(Error::InvalidParams(format!(
                "{} alphas but {} omegas",
                alphas.len(),
                omegas.len()
            )));
        }
        if let Some((k, w)) = omegas.iter().enumerate().find(|(_, w)| !(w.norm() <= 1.0)) {
            return Err(Error::InvalidParams(format!(
                "|omega_{}| = {} exceeds 1",
                k + 1,
                w.norm()
            )));
        }
        Ok(Self { alphas, zs, omegas })
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn zs(&self) -> &[Complex64] {
        &self.zs
    }

    pub fn omegas(&self) -> &[Complex64] {
        &self.omegas
    }

    pub fn alpha(&self) -> f64 {
        self.alphas.iter().sum()
    }

    pub fn z(&self) -> Complex64 {
        fold_sum(self.zs.iter().copied())
    }

    pub fn factor(&self, k: usize) -> ExpParams {
        ExpParams {
            alphas: vec![self.alphas[k]],
            zs: vec![self.zs[k]],
            omegas: vec![self.omegas[k]],
        }
    }

    pub(crate) fn perturbations(&self) -> Vec<Perturbation> {
        self.alphas
            .iter()
            .zip(&self.zs)
            .zip(&self.omegas)
            .map(|((&a, &z), &w)| Perturbation::exp(a, z, w))
            .collect()
    }
}

/// One factor's small quantity `u(τ) = c·e^{−aτ}`, so the factor's
/// binomial part is `(1 − u)^{−s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Perturbation {
    pub c: Complex64,
    pub a: f64,
}

impl Perturbation {
    /// `u = e^{2i(αρ − z)} = e^{iα − 2iz}·e^{−2ατ}`
    pub fn sine(alpha: f64, z: Complex64) -> Self {
        Self {
            c: Complex64::new(0.0, alpha).exp() * (Complex64::new(0.0, -2.0) * z).exp(),
            a: 2.0 * alpha,
        }
    }

    /// `u = ω·e^{i(αρ − z)} = ω·e^{iα/2 − iz}·e^{−ατ}`
    pub fn exp(alpha: f64, z: Complex64, omega: Complex64) -> Self {
        Self {
            c: omega
                * Complex64::new(0.0, 0.5 * alpha).exp()
                * (Complex64::new(0.0, -1.0) * z).exp(),
            a: alpha,
        }
    }

    /// `|u(τ)|`
    pub fn magnitude(&self, tau: f64) -> f64 {
        self.c.norm() * (-self.a * tau).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "sine")]
    Sine,
    #[serde(rename = "exp")]
    Exp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sine => "sine",
            Family::Exp => "exp",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sine" => Ok(Family::Sine),
            "exp" => Ok(Family::Exp),
            other => Err(Error::Usage(format!("unknown family {other:?} (sine|exp)"))),
        }
    }
}

/// Either family's parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilyParams {
    Sine(SineParams),
    Exp(ExpParams),
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Sine(_) => Family::Sine,
            FamilyParams::Exp(_) => Family::Exp,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            FamilyParams::Sine(p) => p.n(),
            FamilyParams::Exp(p) => p.n(),
        }
    }

    pub fn alpha(&self) -> f64 {
        match self {
            FamilyParams::Sine(p) => p.alpha(),
            FamilyParams::Exp(p) => p.alpha(),
        }
    }

    pub fn z(&self) -> Complex64 {
        match self {
            FamilyParams::Sine(p) => p.z(),
            FamilyParams::Exp(p) => p.z(),
        }
    }

    /// `A'` in `L(s) = e^{sA'}·Σ e^{iαsρ}·∏(1 − uₖ)^{−s}`.
    pub fn prefactor_exponent(&self) -> Complex64 {
        let minus_iz = Complex64::new(0.0, -1.0) * self.z();
        match self {
            FamilyParams::Sine(p) => cmath::LN_MINUS_2I * p.n() as f64 + minus_iz,
            FamilyParams::Exp(_) => minus_iz,
        }
    }

    pub(crate) fn perturbations(&self) -> Vec<Perturbation> {
        match self {
            FamilyParams::Sine(p) => p.perturbations(),
            FamilyParams::Exp(p) => p.perturbations(),
        }
    }
}

impl From<SineParams> for FamilyParams {
    fn from(p: SineParams) -> Self {
        FamilyParams::Sine(p)
    }
}

impl From<ExpParams> for FamilyParams {
    fn from(p: ExpParams) -> Self {
        FamilyParams::Exp(p)
    }
}

/// Sign of the `(7/8)·A` term in `F` and `F̃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum SignC0 {
    #[default]
    Plus,
    Minus,
}

impl SignC0 {
    pub fn value(self) -> f64 {
        match self {
            SignC0::Plus => 1.0,
            SignC0::Minus => -1.0,
        }
    }
}

impl From<SignC0> for i8 {
    fn from(s: SignC0) -> i8 {
        match s {
            SignC0::Plus => 1,
            SignC0::Minus => -1,
        }
    }
}

impl TryFrom<i8> for SignC0 {
    type Error = Error;
    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(SignC0::Plus),
            -1 => Ok(SignC0::Minus),
            other => Err(Error::Usage(format!(
                "sign_c0 must be +1 or -1, got {other}"
            ))),
        }
    }
}

impl fmt::Display for SignC0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignC0::Plus => "+1",
            SignC0::Minus => "-1",
        })
    }
}

impl FromStr for SignC0 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(SignC0::Plus),
            "-1" | "-" => Ok(SignC0::Minus),
            other => Err(Error::Usage(format!(
                "sign_c0 must be +1 or -1, got {other:?}"
            ))),
        }
    }
}
