//! The verification suite: every identity is checked against an independent
//! numerical route on the loaded zero table.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::cmath::rel_diff;
use crate::cramer::{
    c_minus1_closed_form, extract_laurent_coeffs, holomorphy_slope, remainder_scan,
    standard_laurent_grid, LaurentCoeffs,
};
use crate::error::{Error, Result};
use crate::regprod::{
    adjudicate_sign, d_function, discrepancy_exp, discrepancy_sine, f_product, f_series,
    f_tilde_product, f_tilde_series, lt_extract, poly_f, poly_f_tilde, s_exp, s_sine,
    AdjudicationPair, C1Entry, C1Mode, C1Table, ExpParams, FamilyParams, SignC0, SineParams,
};
use crate::zeros::{load_zero_table, validate, ZeroTable};

/// Seed of the property samples drawn by the suite.
pub const SAMPLE_SEED: u64 = 0x5eed_2e7a;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceProfile {
    #[default]
    Default,
    Strict,
}

impl FromStr for ToleranceProfile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(ToleranceProfile::Default),
            "strict" => Ok(ToleranceProfile::Strict),
            other => Err(Error::Usage(format!(
                "profile must be default or strict, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for ToleranceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ToleranceProfile::Default => "default",
            ToleranceProfile::Strict => "strict",
        })
    }
}

/// Every numeric threshold used by the suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub max_counting_deviation: f64,
    pub holomorphy_slope: f64,
    /// Largest remainder tail bound for which the decade scan is meaningful.
    pub remainder_tail: f64,
    pub laurent_c_minus1_rel: f64,
    pub laurent_c0_abs: f64,
    pub order_swap_max_bound: f64,
    /// Floating-point allowance, relative to `|f|`, added to the tail bounds.
    pub order_swap_rounding_rel: f64,
    pub assembly_rel: f64,
    pub linear_term_rel: f64,
    pub adjudication_abs: f64,
    pub cross_family_rel: f64,
}

impl Tolerances {
    pub fn for_profile(profile: ToleranceProfile) -> Self {
        let default = Tolerances {
            max_counting_deviation: 2.0,
            holomorphy_slope: 0.05,
            remainder_tail: 1e-10,
            laurent_c_minus1_rel: 1e-4,
            laurent_c0_abs: 1e-3,
            order_swap_max_bound: 1e-10,
            order_swap_rounding_rel: 1e3 * f64::EPSILON,
            assembly_rel: 1e-12,
            linear_term_rel: 1e-3,
            adjudication_abs: 1e-3,
            cross_family_rel: 1e-12,
        };
        match profile {
            ToleranceProfile::Default => default,
            ToleranceProfile::Strict => Tolerances {
                laurent_c_minus1_rel: 1e-6,
                laurent_c0_abs: 1e-4,
                order_swap_max_bound: 1e-12,
                assembly_rel: 1e-13,
                linear_term_rel: 1e-6,
                adjudication_abs: 1e-4,
                cross_family_rel: 1e-14,
                ..default
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Usage(format!(
                "format must be json, csv or text, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub zeros_path: PathBuf,
    pub zeros_limit: Option<usize>,
    pub tolerance_profile: ToleranceProfile,
    pub output_format: OutputFormat,
    /// 0 means one thread per core.
    pub parallelism: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Flagged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// NaN (JSON `null`) when the check did not run.
    #[serde(with = "nan_as_null")]
    pub measured_error: f64,
    #[serde(with = "nan_as_null")]
    pub bound_or_tolerance: f64,
    pub details: String,
}

mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        (!x.is_nan()).then_some(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub table_source: String,
    pub table_count: usize,
    pub profile: ToleranceProfile,
    pub tolerances: Tolerances,
    pub checks: Vec<Check>,
    /// Present only when the adjudication check passed.
    pub adjudicated_sign_c0: Option<SignC0>,
    pub c1_table: C1Table,
}

impl VerificationReport {
    /// Whether any check failed outright (flagged checks do not count).
    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "zero table: {} ({} ordinates), profile {}\n",
            self.table_source, self.table_count, self.profile
        );
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Flagged => "FLAG",
            };
            let num = |x: f64| {
                if x.is_nan() {
                    "-".to_string()
                } else {
                    format!("{x:.3e}")
                }
            };
            out.push_str(&format!(
                "{status} {:<32} measured {} vs {}  {}\n",
                c.name,
                num(c.measured_error),
                num(c.bound_or_tolerance),
                c.details
            ));
        }
        match self.adjudicated_sign_c0 {
            Some(s) => out.push_str(&format!("adjudicated sign_c0: {s}\n")),
            None => out.push_str("adjudicated sign_c0: none\n"),
        }
        out
    }
}

/// Fixed parameter sets used by the suite.
pub mod fixtures {
    use super::*;

    pub fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub fn holomorphy_radii() -> Vec<f64> {
        vec![1.0, 0.5, 0.25, 0.125, 0.0625, 0.05]
    }

    pub fn small_radii() -> Vec<f64> {
        (0..6).map(|k| 0.05 / 2f64.powi(k)).collect()
    }

    pub const LAURENT_ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];

    pub fn lt_cases() -> Vec<(&'static str, FamilyParams)> {
        let sine1 = SineParams::single(1.0, c(0.3, -0.1)).expect("valid");
        let sine2 =
            SineParams::new(vec![1.0, 2.0], vec![c(0.0, 0.0), c(0.5, -0.1)]).expect("valid");
        let exp1 = ExpParams::new(vec![1.0], vec![c(0.3, -0.1)], vec![c(0.5, 0.0)]).expect("valid");
        let exp2 = ExpParams::new(
            vec![1.0, 2.0],
            vec![c(0.3, -0.1), c(0.5, 0.0)],
            vec![c(0.5, 0.0), c(0.0, 0.8)],
        )
        .expect("valid");
        vec![
            ("linear_term_sine_n1", sine1.into()),
            ("linear_term_sine_n2", sine2.into()),
            ("linear_term_exp_n1", exp1.into()),
            ("linear_term_exp_n2", exp2.into()),
        ]
    }

    pub fn omega_zero_case() -> FamilyParams {
        ExpParams::new(
            vec![1.0, 2.0],
            vec![c(0.3, -0.1), c(0.5, 0.0)],
            vec![c(0.0, 0.0); 2],
        )
        .expect("valid")
        .into()
    }

    pub fn adjudication_pairs() -> Vec<AdjudicationPair> {
        vec![
            AdjudicationPair {
                alpha: 1.0,
                z1: c(0.3, -0.1),
                z2: c(1.0, -0.2),
            },
            AdjudicationPair {
                alpha: 0.5,
                z1: c(0.2, 0.0),
                z2: c(0.8, -0.3),
            },
            AdjudicationPair {
                alpha: 2.0,
                z1: c(0.1, -0.05),
                z2: c(0.6, 0.0),
            },
        ]
    }

    pub fn assembly_sine() -> SineParams {
        SineParams::new(vec![1.0, 2.0], vec![c(0.3, -0.1), c(1.0, -0.2)]).expect("valid")
    }

    pub fn assembly_exp() -> ExpParams {
        ExpParams::new(
            vec![1.0, 2.0],
            vec![c(0.3, -0.1), c(1.0, -0.2)],
            vec![c(0.5, 0.0), c(0.0, 0.8)],
        )
        .expect("valid")
    }

    /// `αₖ`, `zₖ` (and `ωₖ`) drawn from the valid region.
    pub fn factor_samples(
        rng: &mut ChaCha8Rng,
        count: usize,
        re_z_max: f64,
    ) -> Vec<(f64, Complex64, Complex64)> {
        (0..count)
            .map(|_| {
                let alpha = rng.gen_range(0.25..3.0);
                let z = c(rng.gen_range(0.0..re_z_max), -rng.gen_range(0.0..1.0));
                let omega = Complex64::from_polar(rng.gen_range(0.0..=1.0), rng.gen_range(-PI..PI));
                (alpha, z, omega)
            })
            .collect()
    }

    pub fn sine_samples(rng: &mut ChaCha8Rng, count: usize, re_z_max: f64) -> Vec<SineParams> {
        (0..count)
            .map(|_| {
                let n = rng.gen_range(1..=3);
                let f = factor_samples(rng, n, re_z_max);
                SineParams::new(
                    f.iter().map(|x| x.0).collect(),
                    f.iter().map(|x| x.1).collect(),
                )
                .expect("valid")
            })
            .collect()
    }
}

struct Outcome {
    status: CheckStatus,
    measured: f64,
    bound: f64,
    details: String,
}

impl Outcome {
    fn compare(measured: f64, bound: f64, details: impl Into<String>) -> Self {
        let status = if measured <= bound {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Outcome {
            status,
            measured,
            bound,
            details: details.into(),
        }
    }

    fn flagged(measured: f64, bound: f64, details: impl Into<String>) -> Self {
        Outcome {
            status: CheckStatus::Flagged,
            measured,
            bound,
            details: details.into(),
        }
    }
}

struct Suite<'a> {
    table: &'a ZeroTable,
    tol: Tolerances,
    checks: Vec<Check>,
    skip_reason: Option<String>,
}

impl Suite<'_> {
    fn run(&mut self, name: &str, f: impl FnOnce(&ZeroTable, &Tolerances) -> Result<Outcome>) {
        let outcome = match &self.skip_reason {
            Some(reason) => Ok(Outcome::flagged(
                f64::NAN,
                f64::NAN,
                format!("skipped: {reason}"),
            )),
            None => f(self.table, &self.tol),
        };
        let o = outcome.unwrap_or_else(|e| match e {
            Error::InsufficientRange { .. } => Outcome::flagged(f64::NAN, f64::NAN, e.to_string()),
            other => Outcome {
                status: CheckStatus::Fail,
                measured: f64::NAN,
                bound: f64::NAN,
                details: format!("error: {other}"),
            },
        });
        self.checks.push(Check {
            name: name.to_string(),
            status: o.status,
            measured_error: o.measured,
            bound_or_tolerance: o.bound,
            details: o.details,
        });
    }
}

/// Load the configured table and run the suite on it.
pub fn run_verify_suite(config: &Config) -> Result<VerificationReport> {
    let table = load_zero_table(&config.zeros_path, config.zeros_limit)?;
    Ok(verify_table(&table, config.tolerance_profile))
}

pub fn verify_table(table: &ZeroTable, profile: ToleranceProfile) -> VerificationReport {
    let mut suite = Suite {
        table,
        tol: Tolerances::for_profile(profile),
        checks: Vec::new(),
        skip_reason: None,
    };

    suite.run("table_validation", |t, tol| {
        let r = validate(t);
        let details = format!(
            "monotone {}, first zero {}, duplicates {}",
            r.monotone_ok, r.first_zero_ok, r.duplicate_count
        );
        Ok(
            if r.monotone_ok && r.first_zero_ok && r.duplicate_count == 0 {
                Outcome::compare(
                    r.max_counting_deviation,
                    tol.max_counting_deviation,
                    details,
                )
            } else {
                Outcome {
                    status: CheckStatus::Fail,
                    measured: r.max_counting_deviation,
                    bound: tol.max_counting_deviation,
                    details,
                }
            },
        )
    });
    if suite.checks[0].status != CheckStatus::Pass {
        suite.skip_reason = Some("table validation failed".into());
    }

    let holomorphy = |radii: Vec<f64>| {
        move |t: &ZeroTable, tol: &Tolerances| -> Result<Outcome> {
            let scan = remainder_scan(t, PI / 4.0, &radii)?;
            let worst_tail = scan.iter().map(|(_, v)| v.tail_bound).fold(0.0, f64::max);
            if worst_tail > tol.remainder_tail {
                return Ok(Outcome::flagged(
                    worst_tail,
                    tol.remainder_tail,
                    format!("insufficient truncation range: remainder tail bound {worst_tail:.3e} too large"),
                ));
            }
            let slope = holomorphy_slope(&scan);
            let values: Vec<String> = scan
                .iter()
                .map(|(r, v)| format!("r={r}: |R|={:.6}", v.value.norm()))
                .collect();
            Ok(Outcome::compare(
                slope.abs(),
                tol.holomorphy_slope,
                format!("slope {slope:.4}; {}", values.join(", ")),
            ))
        }
    };
    suite.run(
        "cramer_holomorphy",
        holomorphy(fixtures::holomorphy_radii()),
    );
    suite.run(
        "cramer_holomorphy_small_r",
        holomorphy(fixtures::small_radii()),
    );

    let mut laurent: Vec<LaurentCoeffs> = Vec::new();
    for alpha in fixtures::LAURENT_ALPHAS {
        let fit = extract_laurent_coeffs(table, alpha, &standard_laurent_grid(alpha, 8));
        if let Ok(f) = &fit {
            laurent.push(f.clone());
        }
        let fit_ref = &fit;
        suite.run(&format!("laurent_c_minus1_alpha_{alpha}"), |_, tol| {
            let f = fit_ref.as_ref().map_err(rebuild_error)?;
            let want = c_minus1_closed_form(alpha);
            let err = (f.c_minus1 - want).norm() / want.abs();
            Ok(Outcome::compare(
                err,
                tol.laurent_c_minus1_rel,
                format!("c_-1 = {} vs {want}", f.c_minus1),
            ))
        });
        suite.run(&format!("laurent_c0_alpha_{alpha}"), |_, tol| {
            let f = fit_ref.as_ref().map_err(rebuild_error)?;
            let err = (f.c_0 - 0.875).norm();
            Ok(Outcome::compare(
                err,
                tol.laurent_c0_abs,
                format!(
                    "c_0 = {}; c_1 = {} ± {:.1e}",
                    f.c_0, f.c_1, f.c1_uncertainty
                ),
            ))
        });
    }
    let c1_table = C1Table {
        entries: laurent
            .iter()
            .map(|f| C1Entry {
                alpha: f.alpha,
                c1: f.c_1,
                uncertainty: f.c1_uncertainty,
            })
            .collect(),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let swap_samples = fixtures::factor_samples(&mut rng, 20, 2.0 * PI);
    suite.run("order_swap_sine", |t, tol| {
        order_swap(
            tol,
            swap_samples
                .iter()
                .map(|&(a, z, _)| Ok((f_series(t, a, z, None)?, f_product(t, a, z)?))),
        )
    });
    suite.run("order_swap_exp", |t, tol| {
        order_swap(
            tol,
            swap_samples.iter().map(|&(a, z, w)| {
                Ok((
                    f_tilde_series(t, a, z, w, None)?,
                    f_tilde_product(t, a, z, w)?,
                ))
            }),
        )
    });

    suite.run("assembly_equivalence_sine", |t, tol| {
        let s = s_sine(t, &fixtures::assembly_sine(), SignC0::Plus, &C1Mode::Omit)?;
        Ok(Outcome::compare(
            s.route_difference,
            tol.assembly_rel,
            format!("S = {}", s.value.value),
        ))
    });
    suite.run("assembly_equivalence_exp", |t, tol| {
        let s = s_exp(t, &fixtures::assembly_exp(), SignC0::Plus, &C1Mode::Omit)?;
        Ok(Outcome::compare(
            s.route_difference,
            tol.assembly_rel,
            format!("S~ = {}", s.value.value),
        ))
    });

    for (name, params) in fixtures::lt_cases() {
        suite.run(name, |t, tol| {
            let grid = standard_laurent_grid(params.alpha(), 4);
            let est = lt_extract(t, &params, &grid)?;
            let want = factor_sum(t, &params)?;
            let err = rel_diff(est.phi_estimate, want);
            Ok(Outcome::compare(
                err,
                tol.linear_term_rel,
                format!(
                    "Phi = {:.12e} vs sum f = {:.12e}; richardson error {:.1e}{}",
                    est.phi_estimate,
                    want,
                    est.error_estimate,
                    if est.converged {
                        ""
                    } else {
                        " (not converged)"
                    }
                ),
            ))
        });
    }
    suite.run("linear_term_exp_omega_zero", |t, _| {
        let params = fixtures::omega_zero_case();
        let grid = standard_laurent_grid(params.alpha(), 4);
        crate::cramer::check_truncation_range(t, params.alpha(), grid[grid.len() - 1])?;
        let mut worst: f64 = 0.0;
        let mut bound: f64 = 0.0;
        for &s in &grid {
            let d = d_function(t, &params, s)?;
            worst = worst.max(d.value.norm());
            bound = bound.max(d.tail_bound);
        }
        Ok(Outcome::compare(worst, bound, "D(s) on the grid"))
    });

    let mut adjudicated = None;
    let laurent_ref = &laurent;
    suite.run("sign_adjudication", |t, tol| {
        if laurent_ref.len() < fixtures::LAURENT_ALPHAS.len() {
            return Err(Error::InsufficientRange { required: crate::cramer::MIN_TRUNCATION_PRODUCT, actual: 0.0 });
        }
        let adj = adjudicate_sign(t, &fixtures::adjudication_pairs(), laurent_ref, tol.adjudication_abs)?;
        let plus = adj.outcomes.iter().map(|o| o.residual_plus).fold(0.0, f64::max);
        let minus = adj.outcomes.iter().map(|o| o.residual_minus).fold(0.0, f64::max);
        let details = format!(
            "max residual +1: {plus:.3e}, -1: {minus:.3e}; reconciling {:?}; direct route reconciling {:?}",
            adj.reconciling.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            adj.direct_reconciling.iter().map(|s| s.to_string()).collect::<Vec<_>>()
        );
        Ok(match adj.winner {
            Some(w) => {
                adjudicated = Some(w);
                let measured = if w == SignC0::Plus { plus } else { minus };
                Outcome::compare(measured, tol.adjudication_abs, format!("winner {w}; {details}"))
            }
            None => Outcome {
                status: CheckStatus::Fail,
                measured: plus.min(minus),
                bound: tol.adjudication_abs,
                details: format!("no unique sign; {details}"),
            },
        })
    });

    let cross_samples = fixtures::sine_samples(&mut rng, 10, PI);
    suite.run("cross_family_identity", |t, tol| {
        let mut worst: f64 = 0.0;
        for p in &cross_samples {
            let q = p.doubled_exp()?;
            let s = s_sine(t, p, SignC0::Plus, &C1Mode::Omit)?;
            let st = s_exp(t, &q, SignC0::Plus, &C1Mode::Omit)?;
            let lhs = st.value.value * poly_f_tilde(&q, SignC0::Plus, &C1Mode::Omit)?.exp();
            let rhs = s.value.value * poly_f(p, SignC0::Plus, &C1Mode::Omit)?.exp();
            worst = worst.max(rel_diff(lhs, rhs));
        }
        Ok(Outcome::compare(
            worst,
            tol.cross_family_rel,
            format!("{} samples", cross_samples.len()),
        ))
    });

    let single_samples = fixtures::factor_samples(&mut rng, 10, 2.0 * PI);
    let c1_numeric = C1Mode::numeric(c1_table.clone());
    suite.run("discrepancy_n1_zero", |_, _| {
        let mut worst: f64 = 0.0;
        let mut evaluated = 0;
        let mut modes = vec![C1Mode::Omit];
        if !c1_table.entries.is_empty() {
            modes.push(c1_numeric.clone());
        }
        for &(a, z, w) in &single_samples {
            for mode in &modes {
                let alpha = match mode {
                    C1Mode::Omit => a,
                    C1Mode::Numeric { table } => {
                        table.entries[evaluated % table.entries.len()].alpha
                    }
                };
                for sign in [SignC0::Plus, SignC0::Minus] {
                    let d1 = discrepancy_sine(&SineParams::single(alpha, z)?, sign, mode)?;
                    let d2 = discrepancy_exp(
                        &ExpParams::new(vec![alpha], vec![z], vec![w])?,
                        sign,
                        mode,
                    )?;
                    worst = worst.max(d1.discrepancy.norm()).max(d2.discrepancy.norm());
                    evaluated += 1;
                }
            }
        }
        Ok(Outcome::compare(
            worst,
            0.0,
            format!("{evaluated} evaluations per family"),
        ))
    });

    let adjudicated_sign_c0 = match suite.check("sign_adjudication") {
        Some(c) if c.status == CheckStatus::Pass => adjudicated,
        _ => None,
    };
    VerificationReport {
        table_source: table.source().to_string(),
        table_count: table.count(),
        profile,
        tolerances: suite.tol,
        checks: suite.checks,
        adjudicated_sign_c0,
        c1_table,
    }
}

impl Suite<'_> {
    fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn order_swap(
    tol: &Tolerances,
    pairs: impl Iterator<Item = Result<(crate::BoundedValue, crate::BoundedValue)>>,
) -> Result<Outcome> {
    let mut worst_ratio: f64 = 0.0;
    let mut worst_bound: f64 = 0.0;
    for pair in pairs {
        let (series, product) = pair?;
        let bounds = series.tail_bound + product.tail_bound;
        let allowed =
            bounds + tol.order_swap_rounding_rel * series.value.norm().max(product.value.norm());
        let diff = (series.value - product.value).norm();
        worst_bound = worst_bound.max(bounds);
        worst_ratio = worst_ratio.max(if allowed > 0.0 {
            diff / allowed
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    let details = format!("largest |series - product| / allowance {worst_ratio:.3e}; largest tail bound {worst_bound:.3e}");
    if worst_bound > tol.order_swap_max_bound {
        return Ok(Outcome {
            status: CheckStatus::Fail,
            measured: worst_bound,
            bound: tol.order_swap_max_bound,
            details,
        });
    }
    Ok(Outcome::compare(worst_ratio, 1.0, details))
}

/// Errors are not `Clone`; keep the variant that drives flagging.
fn rebuild_error(e: &Error) -> Error {
    match e {
        Error::InsufficientRange { required, actual } => Error::InsufficientRange {
            required: *required,
            actual: *actual,
        },
        other => Error::Domain(other.to_string()),
    }
}

/// `Σₖ f(k)` (or `Σₖ f̃(k)`) from the direct log-products.
pub fn factor_sum(table: &ZeroTable, params: &FamilyParams) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    match params {
        FamilyParams::Sine(p) => {
            for (&a, &z) in p.alphas().iter().zip(p.zs()) {
                total += f_product(table, a, z)?.value;
            }
        }
        FamilyParams::Exp(p) => {
            for ((&a, &z), &w) in p.alphas().iter().zip(p.zs()).zip(p.omegas()) {
                total += f_tilde_product(table, a, z, w)?.value;
            }
        }
    }
    Ok(total)
}
