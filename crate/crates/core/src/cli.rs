//! Command-line interface of the `zetaprod` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::cmath;
use crate::cramer::{
    self, default_laurent_grid, extract_laurent_coeffs, holomorphy_slope, remainder_scan,
    LaurentCoeffs,
};
use crate::error::{Error, Result};
use crate::pochhammer::{zeta_pochhammer, PochhammerArgs};
use crate::regprod::{
    default_lt_grid, discrepancy_exp, discrepancy_sine, lt_extract, s_exp, s_sine, ExpParams,
    Family, FamilyParams, SignC0, SineParams,
};
use crate::scan::{run_scan, C1Choice, ScanParam, ScanSpec, ScanTarget};
use crate::summation::BoundedValue;
use crate::verify::{factor_sum, verify_table, OutputFormat, ToleranceProfile};
use crate::zeros::{encode_cache, fetch_zeros, load_zero_table, validate, ZeroTable};

pub const ZEROS_ENV: &str = "ZETAPROD_ZEROS";

#[derive(Debug, Parser)]
#[command(
    name = "zetaprod",
    version,
    about = "Zeta-regularized products over the zeros of the Riemann zeta function"
)]
pub struct Cli {
    /// Zero table (text or ZRT1 cache).
    #[arg(long, global = true, env = ZEROS_ENV, value_name = "FILE")]
    pub zeros: Option<PathBuf>,
    /// Use only the first N ordinates of the table.
    #[arg(long, global = true, value_name = "N")]
    pub limit: Option<usize>,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Output format: json, csv or text.
    #[arg(long, global = true, value_name = "FORMAT")]
    pub format: Option<OutputFormat>,
    /// Tolerance profile: default or strict.
    #[arg(long, global = true, default_value = "default", value_name = "PROFILE")]
    pub profile: ToleranceProfile,
    /// Worker threads for parallel sums (0 = one per core).
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zero-table management.
    #[command(subcommand)]
    Zeros(ZerosCommand),
    /// Cramér's functions.
    #[command(subcommand)]
    Cramer(CramerCommand),
    /// The zeta-Pochhammer symbol.
    #[command(subcommand)]
    Poch(PochCommand),
    /// Regularized products.
    #[command(subcommand)]
    Regprod(RegprodCommand),
    /// Verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
pub enum ZerosCommand {
    /// Download a published table to --out.
    Fetch {
        /// Source URL.
        #[arg(long)]
        url: String,
    },
    /// Check monotonicity, the first ordinate and the counting function.
    Validate {
        /// Table to validate (defaults to --zeros).
        #[arg(long, value_name = "FILE")]
        file: Option<PathBuf>,
    },
    /// Convert a text table to the binary ZRT1 cache at --out.
    Cache {
        /// Text table to convert (defaults to --zeros).
        #[arg(long, value_name = "FILE")]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CramerCommand {
    /// φ(s) = Σ e^(−sτ), Re s > 0.
    Phi {
        /// Complex argument RE,IM.
        #[arg(long, allow_hyphen_values = true, value_name = "RE,IM")]
        s: ComplexArg,
    },
    /// Cramér's V(s), Im s > 0.
    V {
        /// Complex argument RE,IM.
        #[arg(long, allow_hyphen_values = true, value_name = "RE,IM")]
        s: ComplexArg,
    },
    /// V minus its singular model along a ray, as CSV.
    RemainderScan {
        /// Ray angle in radians.
        #[arg(long, allow_hyphen_values = true, default_value_t = std::f64::consts::FRAC_PI_4)]
        ray_angle: f64,
        /// Number of binary decades below --r-max.
        #[arg(long, default_value_t = 5)]
        decades: u32,
        /// Largest radius.
        #[arg(long, default_value_t = 1.0)]
        r_max: f64,
    },
    /// Laurent coefficients c₋₁, c₀, c₁ of φ(αs).
    Coeffs {
        /// Scale α > 0.
        #[arg(long)]
        alpha: f64,
        /// Number of fit points.
        #[arg(long, default_value_t = 8)]
        points: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PochCommand {
    /// Evaluate (x; e^(−iβ))_ζ.
    Eval {
        /// Complex x as RE,IM.
        #[arg(long, allow_hyphen_values = true, value_name = "RE,IM")]
        x: ComplexArg,
        /// β > 0.
        #[arg(long)]
        beta: f64,
    },
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    /// Comma-separated α values.
    #[arg(long, allow_hyphen_values = true, value_name = "A1,A2,..")]
    pub alphas: RealList,
    /// Semicolon-separated z values, each RE,IM.
    #[arg(long, allow_hyphen_values = true, value_name = "RE,IM;..")]
    pub zs: ComplexList,
    /// Semicolon-separated ω values, each RE,IM (exp family).
    #[arg(long, allow_hyphen_values = true, value_name = "RE,IM;..")]
    pub omegas: Option<ComplexList>,
    /// Source of c₁: numeric or omit.
    #[arg(long, default_value = "omit")]
    pub c1: C1Choice,
    /// Sign of the 7/8 term: +1 or -1.
    #[arg(long, allow_hyphen_values = true, default_value = "+1")]
    pub sign_c0: SignC0,
}

#[derive(Debug, Subcommand)]
pub enum RegprodCommand {
    /// S(z; α) for the sine family.
    Sine(ProductArgs),
    /// S̃(z; α, ω) for the exp family.
    Exp(ProductArgs),
    /// Σₖ F(zₖ; αₖ) − F(z; α).
    Discrepancy {
        /// sine or exp.
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        product: ProductArgs,
    },
    /// Linear term by Richardson extrapolation against Σ f(k).
    VerifyLt {
        /// sine or exp.
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        product: ProductArgs,
        /// Comma-separated s values, each half the previous.
        #[arg(long, value_name = "S1,S2,..")]
        s_grid: Option<RealList>,
    },
    /// Evaluate on a grid of one parameter, as CSV.
    Scan {
        /// s-sine, s-exp, discrepancy-sine or discrepancy-exp.
        #[arg(long)]
        target: ScanTarget,
        /// alphaK, rezK, imzK or omegaK (K is 1-based).
        #[arg(long)]
        param: ScanParam,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        product: ProductArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Run every check; exits 1 if any check fails.
    All,
}

/// A complex number written `RE,IM`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let parse = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| Error::Usage(format!("bad number {t:?} in {s:?}")))
        };
        match parts.as_slice() {
            [re] => Ok(ComplexArg(Complex64::new(parse(re)?, 0.0))),
            [re, im] => Ok(ComplexArg(Complex64::new(parse(re)?, parse(im)?))),
            _ => Err(Error::Usage(format!("expected RE,IM, got {s:?}"))),
        }
    }
}

/// `A1,A2,..`
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

impl FromStr for RealList {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Usage(format!("bad number {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(RealList)
    }
}

/// `RE,IM;RE,IM;..`
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexList(pub Vec<Complex64>);

impl FromStr for ComplexList {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(';')
            .map(|t| ComplexArg::from_str(t).map(|c| c.0))
            .collect::<Result<Vec<_>>>()
            .map(ComplexList)
    }
}

impl ProductArgs {
    fn omegas(&self) -> Vec<Complex64> {
        match &self.omegas {
            Some(list) => list.0.clone(),
            None => vec![Complex64::new(0.0, 0.0); self.alphas.0.len()],
        }
    }

    fn sine(&self) -> Result<SineParams> {
        SineParams::new(self.alphas.0.clone(), self.zs.0.clone())
    }

    fn exp(&self) -> Result<ExpParams> {
        if self.omegas.is_none() {
            return Err(Error::Usage("the exp family needs --omegas".into()));
        }
        ExpParams::new(self.alphas.0.clone(), self.zs.0.clone(), self.omegas())
    }

    fn family(&self, family: Family) -> Result<FamilyParams> {
        Ok(match family {
            Family::Sine => self.sine()?.into(),
            Family::Exp => self.exp()?.into(),
        })
    }

    /// Every α whose `c₁` may be needed: each `αₖ` and their sum.
    fn c1_alphas(&self) -> Vec<f64> {
        let mut alphas = self.alphas.0.clone();
        alphas.push(alphas.iter().sum());
        alphas
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            exit_code: 0,
        }
    }
}

#[derive(Serialize)]
struct Evaluation<'a> {
    function: &'a str,
    #[serde(with = "cmath::json")]
    argument: Complex64,
    result: BoundedValue,
}

#[derive(Serialize)]
struct RemainderRow {
    r: f64,
    #[serde(with = "cmath::json")]
    s: Complex64,
    remainder: BoundedValue,
}

#[derive(Serialize)]
struct RemainderReport {
    ray_angle: f64,
    slope: f64,
    rows: Vec<RemainderRow>,
}

#[derive(Serialize)]
struct CoeffsReport {
    coefficients: LaurentCoeffs,
    c_minus1_closed_form: f64,
    c_0_expected: f64,
}

#[derive(Serialize)]
struct LtReport {
    estimate: crate::regprod::LtEstimate,
    #[serde(with = "cmath::json")]
    factor_sum: Complex64,
    relative_error: f64,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Usage(format!("json output failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn text_value(label: &str, v: &BoundedValue) -> String {
    format!(
        "{label} = {:e} {:+e}i  (tail bound {:e})\n",
        v.value.re, v.value.im, v.tail_bound
    )
}

impl Cli {
    fn table(&self) -> Result<ZeroTable> {
        let path = self.zeros_path(None)?;
        load_zero_table(path, self.limit)
    }

    fn zeros_path<'a>(&'a self, file: Option<&'a Path>) -> Result<&'a Path> {
        file.or(self.zeros.as_deref()).ok_or_else(|| {
            Error::Usage(format!(
                "no zero table given: pass --zeros FILE or set {ZEROS_ENV}"
            ))
        })
    }

    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }

    fn evaluation(
        &self,
        function: &str,
        argument: Complex64,
        result: BoundedValue,
    ) -> Result<String> {
        match self.format_or(OutputFormat::Json) {
            OutputFormat::Text => Ok(text_value(function, &result)),
            _ => to_json(&Evaluation {
                function,
                argument,
                result,
            }),
        }
    }

    fn pretty<T: Serialize>(&self, value: &T) -> Result<String> {
        to_json(value)
    }
}

/// Run a parsed command and return its output without writing it.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start thread pool: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Zeros(cmd) => zeros_command(cli, cmd),
        Command::Cramer(cmd) => cramer_command(cli, cmd),
        Command::Poch(PochCommand::Eval { x, beta }) => {
            let table = cli.table()?;
            let v = zeta_pochhammer(&table, PochhammerArgs::new(x.0, *beta))?;
            Ok(Outcome::ok(cli.evaluation("pochhammer", x.0, v)?))
        }
        Command::Regprod(cmd) => regprod_command(cli, cmd),
        Command::Verify(VerifyCommand::All) => {
            let table = cli.table()?;
            let report = verify_table(&table, cli.profile);
            let output = match cli.format_or(OutputFormat::Json) {
                OutputFormat::Text => report.to_text(),
                _ => cli.pretty(&report)?,
            };
            Ok(Outcome {
                output,
                exit_code: i32::from(report.has_failures()),
            })
        }
    }
}

fn zeros_command(cli: &Cli, cmd: &ZerosCommand) -> Result<Outcome> {
    match cmd {
        ZerosCommand::Fetch { url } => {
            let out = cli
                .out
                .as_ref()
                .ok_or_else(|| Error::Usage("zeros fetch needs --out FILE".into()))?;
            let bytes = fetch_zeros(url, out)?;
            let table = load_zero_table(out, cli.limit)?;
            #[derive(Serialize)]
            struct Fetched<'a> {
                url: &'a str,
                bytes: u64,
                count: usize,
            }
            Ok(Outcome::ok(to_json(&Fetched {
                url,
                bytes,
                count: table.count(),
            })?))
        }
        ZerosCommand::Validate { file } => {
            let table = load_zero_table(cli.zeros_path(file.as_deref())?, cli.limit)?;
            let report = validate(&table);
            #[derive(Serialize)]
            struct Validated<'a> {
                source: &'a str,
                count: usize,
                first_ordinate: f64,
                passed: bool,
                report: crate::ValidationReport,
            }
            let v = Validated {
                source: table.source(),
                count: table.count(),
                first_ordinate: table.min_ordinate(),
                passed: report.passed(),
                report,
            };
            Ok(Outcome {
                output: to_json(&v)?,
                exit_code: i32::from(!v.passed),
            })
        }
        ZerosCommand::Cache { file } => {
            let out = cli
                .out
                .as_ref()
                .ok_or_else(|| Error::Usage("zeros cache needs --out FILE".into()))?;
            let table = load_zero_table(cli.zeros_path(file.as_deref())?, cli.limit)?;
            crate::zeros::write_cache(&table, out)?;
            Ok(Outcome::ok(format!(
                "wrote {} ordinates ({} bytes) to {}\n",
                table.count(),
                encode_cache(&table).len(),
                out.display()
            )))
        }
    }
}

fn cramer_command(cli: &Cli, cmd: &CramerCommand) -> Result<Outcome> {
    let table = cli.table()?;
    match cmd {
        CramerCommand::Phi { s } => Ok(Outcome::ok(cli.evaluation(
            "phi",
            s.0,
            cramer::phi(&table, s.0)?,
        )?)),
        CramerCommand::V { s } => Ok(Outcome::ok(cli.evaluation(
            "V",
            s.0,
            cramer::v_func(&table, s.0)?,
        )?)),
        CramerCommand::RemainderScan {
            ray_angle,
            decades,
            r_max,
        } => {
            let radii: Vec<f64> = (0..=*decades)
                .map(|k| r_max / 2f64.powi(k as i32))
                .collect();
            let scan = remainder_scan(&table, *ray_angle, &radii)?;
            let slope = holomorphy_slope(&scan);
            let direction = Complex64::from_polar(1.0, *ray_angle);
            let rows: Vec<RemainderRow> = scan
                .into_iter()
                .map(|(r, remainder)| RemainderRow {
                    r,
                    s: direction * r,
                    remainder,
                })
                .collect();
            let output = match cli.format_or(OutputFormat::Csv) {
                OutputFormat::Csv | OutputFormat::Text => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let io = |e: csv::Error| Error::Usage(format!("csv output failed: {e}"));
                    w.write_record(["r", "re", "im", "abs", "tail_bound"])
                        .map_err(io)?;
                    for row in &rows {
                        let v = row.remainder;
                        w.write_record([
                            row.r.to_string(),
                            v.value.re.to_string(),
                            v.value.im.to_string(),
                            v.value.norm().to_string(),
                            v.tail_bound.to_string(),
                        ])
                        .map_err(io)?;
                    }
                    let bytes = w
                        .into_inner()
                        .map_err(|e| Error::Usage(format!("csv output failed: {e}")))?;
                    String::from_utf8(bytes).expect("csv output is utf-8")
                }
                OutputFormat::Json => to_json(&RemainderReport {
                    ray_angle: *ray_angle,
                    slope,
                    rows,
                })?,
            };
            Ok(Outcome::ok(output))
        }
        CramerCommand::Coeffs { alpha, points } => {
            let grid = default_laurent_grid(&table, *alpha, *points);
            let coefficients = extract_laurent_coeffs(&table, *alpha, &grid)?;
            let report = CoeffsReport {
                c_minus1_closed_form: cramer::c_minus1_closed_form(*alpha),
                c_0_expected: 7.0 / 8.0,
                coefficients,
            };
            Ok(Outcome::ok(to_json(&report)?))
        }
    }
}

fn regprod_command(cli: &Cli, cmd: &RegprodCommand) -> Result<Outcome> {
    let table = cli.table()?;
    match cmd {
        RegprodCommand::Sine(args) => {
            let c1 = args.c1.resolve(&table, &args.c1_alphas())?;
            let v = s_sine(&table, &args.sine()?, args.sign_c0, &c1)?;
            Ok(Outcome::ok(to_json(&v)?))
        }
        RegprodCommand::Exp(args) => {
            let c1 = args.c1.resolve(&table, &args.c1_alphas())?;
            let v = s_exp(&table, &args.exp()?, args.sign_c0, &c1)?;
            Ok(Outcome::ok(to_json(&v)?))
        }
        RegprodCommand::Discrepancy { family, product } => {
            let c1 = product.c1.resolve(&table, &product.c1_alphas())?;
            let report = match family {
                Family::Sine => discrepancy_sine(&product.sine()?, product.sign_c0, &c1)?,
                Family::Exp => discrepancy_exp(&product.exp()?, product.sign_c0, &c1)?,
            };
            Ok(Outcome::ok(to_json(&report)?))
        }
        RegprodCommand::VerifyLt {
            family,
            product,
            s_grid,
        } => {
            let params = product.family(*family)?;
            let grid = match s_grid {
                Some(list) => list.0.clone(),
                None => default_lt_grid(&table, params.alpha(), 4),
            };
            let estimate = lt_extract(&table, &params, &grid)?;
            let sum = factor_sum(&table, &params)?;
            let relative_error = cmath::rel_diff(estimate.phi_estimate, sum);
            Ok(Outcome::ok(to_json(&LtReport {
                estimate,
                factor_sum: sum,
                relative_error,
            })?))
        }
        RegprodCommand::Scan {
            target,
            param,
            from,
            to,
            steps,
            product,
        } => {
            let spec = ScanSpec {
                target: *target,
                param: *param,
                from: *from,
                to: *to,
                steps: *steps,
                alphas: product.alphas.0.clone(),
                zs: product.zs.0.clone(),
                omegas: product.omegas(),
                sign_c0: product.sign_c0,
                c1: product.c1,
            };
            Ok(Outcome::ok(run_scan(&table, &spec)?))
        }
    }
}

/// Parse arguments, run, and write the output; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli).and_then(|outcome| emit(&cli, &outcome).map(|_| outcome.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let destination = match cli.command {
        Command::Zeros(ZerosCommand::Fetch { .. }) | Command::Zeros(ZerosCommand::Cache { .. }) => {
            None
        }
        _ => cli.out.as_ref(),
    };
    match destination {
        Some(path) => fs::write(path, &outcome.output).map_err(|source| Error::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.output.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn parses_complex_lists() {
        let l: ComplexList = "0.3,-0.1; 1.0,-0.2".parse().unwrap();
        assert_eq!(
            l.0,
            vec![Complex64::new(0.3, -0.1), Complex64::new(1.0, -0.2)]
        );
        assert_eq!(
            "2".parse::<ComplexArg>().unwrap().0,
            Complex64::new(2.0, 0.0)
        );
        assert!("1,2,3".parse::<ComplexArg>().is_err());
        assert_eq!("1,2".parse::<RealList>().unwrap().0, vec![1.0, 2.0]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_arguments_parse() {
        let cli = Cli::try_parse_from([
            "zetaprod",
            "regprod",
            "sine",
            "--alphas",
            "1,2",
            "--zs",
            "-0.3,-0.1;1.0,-0.2",
            "--sign-c0",
            "-1",
        ])
        .unwrap();
        match cli.command {
            Command::Regprod(RegprodCommand::Sine(args)) => {
                assert_eq!(args.zs.0[0], Complex64::new(-0.3, -0.1));
                assert_eq!(args.sign_c0, SignC0::Minus);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
