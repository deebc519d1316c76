//! One-parameter scans of the regularized products and discrepancies,
//! written as CSV with columns `param,re,im,tail_bound,status`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::regprod::{
    discrepancy_exp, discrepancy_sine, s_exp, s_sine, C1Mode, C1Table, ExpParams, SignC0,
    SineParams,
};
use crate::summation::BoundedValue;
use crate::zeros::ZeroTable;

/// The quantity evaluated at every grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanTarget {
    SSine,
    SExp,
    DiscrepancySine,
    DiscrepancyExp,
}

impl FromStr for ScanTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s-sine" => Ok(ScanTarget::SSine),
            "s-exp" => Ok(ScanTarget::SExp),
            "discrepancy-sine" => Ok(ScanTarget::DiscrepancySine),
            "discrepancy-exp" => Ok(ScanTarget::DiscrepancyExp),
            other => Err(Error::Usage(format!(
                "unknown scan target {other:?} (s-sine|s-exp|discrepancy-sine|discrepancy-exp)"
            ))),
        }
    }
}

/// A single real degree of freedom; `k` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanParam {
    Alpha(usize),
    ReZ(usize),
    ImZ(usize),
    /// `|ωₖ|`, keeping the phase of the base value.
    AbsOmega(usize),
}

impl FromStr for ScanParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, index) = s.split_at(split);
        let k: usize =
            index.parse().ok().filter(|&k| k >= 1).ok_or_else(|| {
                Error::Usage(format!("scan parameter {s:?} needs a 1-based index"))
            })?;
        match name {
            "alpha" => Ok(ScanParam::Alpha(k)),
            "rez" | "re_z" => Ok(ScanParam::ReZ(k)),
            "imz" | "im_z" => Ok(ScanParam::ImZ(k)),
            "omega" | "absomega" | "abs_omega" => Ok(ScanParam::AbsOmega(k)),
            _ => Err(Error::Usage(format!(
                "unknown scan parameter {s:?} (alphaK, rezK, imzK, omegaK)"
            ))),
        }
    }
}

impl fmt::Display for ScanParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanParam::Alpha(k) => write!(f, "alpha{k}"),
            ScanParam::ReZ(k) => write!(f, "rez{k}"),
            ScanParam::ImZ(k) => write!(f, "imz{k}"),
            ScanParam::AbsOmega(k) => write!(f, "omega{k}"),
        }
    }
}

/// Whether `c₁` is measured per grid point or left out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum C1Choice {
    Numeric,
    #[default]
    Omit,
}

impl C1Choice {
    /// Build the `c₁` mode needed for the given `α` values.
    pub fn resolve(self, table: &ZeroTable, alphas: &[f64]) -> Result<C1Mode> {
        match self {
            C1Choice::Omit => Ok(C1Mode::Omit),
            C1Choice::Numeric => Ok(C1Mode::numeric(C1Table::extract(table, alphas)?)),
        }
    }
}

impl FromStr for C1Choice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "numeric" => Ok(C1Choice::Numeric),
            "omit" => Ok(C1Choice::Omit),
            other => Err(Error::Usage(format!(
                "c1 mode must be numeric or omit, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub target: ScanTarget,
    pub param: ScanParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub alphas: Vec<f64>,
    pub zs: Vec<Complex64>,
    /// Ignored by the sine targets.
    pub omegas: Vec<Complex64>,
    pub sign_c0: SignC0,
    pub c1: C1Choice,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub param: f64,
    pub outcome: std::result::Result<(BoundedValue, bool), String>,
}

impl ScanSpec {
    pub fn grid(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.from],
            n => (0..n)
                .map(|i| self.from + (self.to - self.from) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }

    fn check(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Usage("scan needs at least one step".into()));
        }
        if !self.from.is_finite() || !self.to.is_finite() {
            return Err(Error::Usage("scan range must be finite".into()));
        }
        let n = self.alphas.len();
        let k = match self.param {
            ScanParam::Alpha(k)
            | ScanParam::ReZ(k)
            | ScanParam::ImZ(k)
            | ScanParam::AbsOmega(k) => k,
        };
        if k > n {
            return Err(Error::Usage(format!(
                "scan parameter {} but only {n} factors",
                self.param
            )));
        }
        let sine = matches!(self.target, ScanTarget::SSine | ScanTarget::DiscrepancySine);
        if sine && matches!(self.param, ScanParam::AbsOmega(_)) {
            return Err(Error::Usage(
                "omega parameters only exist for the exp family".into(),
            ));
        }
        Ok(())
    }

    fn point(&self, x: f64) -> (Vec<f64>, Vec<Complex64>, Vec<Complex64>) {
        let (mut alphas, mut zs, mut omegas) =
            (self.alphas.clone(), self.zs.clone(), self.omegas.clone());
        match self.param {
            ScanParam::Alpha(k) => alphas[k - 1] = x,
            ScanParam::ReZ(k) => zs[k - 1].re = x,
            ScanParam::ImZ(k) => zs[k - 1].im = x,
            ScanParam::AbsOmega(k) => {
                let w = omegas[k - 1];
                let phase = if w.norm() > 0.0 { w.arg() } else { 0.0 };
                omegas[k - 1] = Complex64::from_polar(x, phase);
            }
        }
        (alphas, zs, omegas)
    }

    fn evaluate(&self, table: &ZeroTable, x: f64) -> Result<(BoundedValue, bool)> {
        let (alphas, zs, omegas) = self.point(x);
        let mut needed = alphas.clone();
        needed.push(alphas.iter().sum());
        let c1 = self.c1.resolve(table, &needed)?;
        match self.target {
            ScanTarget::SSine => {
                let p = SineParams::new(alphas, zs)?;
                Ok((s_sine(table, &p, self.sign_c0, &c1)?.value, c1.is_omit()))
            }
            ScanTarget::SExp => {
                let p = ExpParams::new(alphas, zs, omegas)?;
                Ok((s_exp(table, &p, self.sign_c0, &c1)?.value, c1.is_omit()))
            }
            ScanTarget::DiscrepancySine => {
                let d = discrepancy_sine(&SineParams::new(alphas, zs)?, self.sign_c0, &c1)?;
                Ok((BoundedValue::exact(d.discrepancy), d.flagged))
            }
            ScanTarget::DiscrepancyExp => {
                let d = discrepancy_exp(&ExpParams::new(alphas, zs, omegas)?, self.sign_c0, &c1)?;
                Ok((BoundedValue::exact(d.discrepancy), d.flagged))
            }
        }
    }
}

/// Evaluate every grid point (in parallel) and return rows in grid order.
/// Failures at individual points become error rows.
pub fn scan_rows(table: &ZeroTable, spec: &ScanSpec) -> Result<Vec<ScanRow>> {
    spec.check()?;
    Ok(spec
        .grid()
        .into_par_iter()
        .map(|x| ScanRow {
            param: x,
            outcome: spec.evaluate(table, x).map_err(|e| e.to_string()),
        })
        .collect())
}

pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Usage(format!("csv output failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["param", "re", "im", "tail_bound", "status"])
        .map_err(io)?;
    for row in rows {
        let record = match &row.outcome {
            Ok((v, flagged)) => [
                row.param.to_string(),
                v.value.re.to_string(),
                v.value.im.to_string(),
                v.tail_bound.to_string(),
                if *flagged { "flagged" } else { "ok" }.to_string(),
            ],
            Err(msg) => [
                row.param.to_string(),
                String::new(),
                String::new(),
                String::new(),
                format!("error: {msg}"),
            ],
        };
        w.write_record(&record).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Usage(format!("csv output failed: {e}")))?;
    Ok(())
}

/// Run a scan and render it as CSV.
pub fn run_scan(table: &ZeroTable, spec: &ScanSpec) -> Result<String> {
    let rows = scan_rows(table, spec)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
