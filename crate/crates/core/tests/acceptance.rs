//! Acceptance criteria on the first 10⁵ zeros. Runs every criterion, prints
//! one PASS/FAIL line each, and exits nonzero if any failed.

mod common;

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use common::{data_path, full_table};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use zetaprod::cramer::{
    c_minus1_closed_form, extract_laurent_coeffs, holomorphy_slope, remainder_scan,
    standard_laurent_grid,
};
use zetaprod::regprod::{
    adjudicate_sign, d_function, discrepancy_exp, discrepancy_sine, f_product, f_series,
    f_tilde_product, f_tilde_series, lt_extract, s_exp, s_sine, FamilyParams,
};
use zetaprod::verify::{factor_sum, fixtures, SAMPLE_SEED};
use zetaprod::zeros::write_cache;
use zetaprod::{load_zero_table, validate, C1Mode, ExpParams, SignC0, SineParams};

type Verdict = Result<String, String>;

fn judge(ok: bool, details: String) -> Verdict {
    if ok {
        Ok(details)
    } else {
        Err(details)
    }
}

fn laurent_recovery() -> Verdict {
    let t = full_table();
    let mut worst_rel: f64 = 0.0;
    let mut worst_abs: f64 = 0.0;
    for alpha in fixtures::LAURENT_ALPHAS {
        let f = extract_laurent_coeffs(t, alpha, &standard_laurent_grid(alpha, 8))
            .map_err(|e| e.to_string())?;
        let want = c_minus1_closed_form(alpha);
        worst_rel = worst_rel.max((f.c_minus1 - want).norm() / want.abs());
        worst_abs = worst_abs.max((f.c_0 - 0.875).norm());
    }
    judge(
        worst_rel <= 1e-4 && worst_abs <= 1e-3,
        format!("c_-1 rel err {worst_rel:.2e} (<= 1e-4), c_0 abs err {worst_abs:.2e} (<= 1e-3)"),
    )
}

fn cramer_holomorphy() -> Verdict {
    let scan = remainder_scan(full_table(), PI / 4.0, &fixtures::holomorphy_radii())
        .map_err(|e| e.to_string())?;
    let slope = holomorphy_slope(&scan);
    let tail = scan.iter().map(|(_, v)| v.tail_bound).fold(0.0, f64::max);
    judge(
        slope.abs() <= 0.05,
        format!(
            "|slope| {:.4} (<= 0.05), largest tail bound {tail:.1e}",
            slope.abs()
        ),
    )
}

fn linear_term(family_is_sine: bool) -> Result<f64, String> {
    let t = full_table();
    let mut worst: f64 = 0.0;
    for (_, params) in fixtures::lt_cases() {
        if matches!(params, FamilyParams::Sine(_)) != family_is_sine {
            continue;
        }
        let grid = standard_laurent_grid(params.alpha(), 4);
        let lt = lt_extract(t, &params, &grid).map_err(|e| e.to_string())?;
        let sum = factor_sum(t, &params).map_err(|e| e.to_string())?;
        worst = worst.max((lt.phi_estimate - sum).norm() / sum.norm());
    }
    Ok(worst)
}

fn linear_term_sine() -> Verdict {
    let worst = linear_term(true)?;
    judge(
        worst <= 1e-3,
        format!("n=1,2 rel err {worst:.2e} (<= 1e-3)"),
    )
}

fn linear_term_exp() -> Verdict {
    let worst = linear_term(false)?;
    let t = full_table();
    let params = fixtures::omega_zero_case();
    let mut zero = true;
    for s in standard_laurent_grid(params.alpha(), 4) {
        let d = d_function(t, &params, s).map_err(|e| e.to_string())?;
        zero &= d.value == Complex64::new(0.0, 0.0) && d.tail_bound == 0.0;
    }
    judge(
        worst <= 1e-3 && zero,
        format!("n=1,2 rel err {worst:.2e} (<= 1e-3), D(s) identically zero for omega=0: {zero}"),
    )
}

fn order_swap() -> Verdict {
    let t = full_table();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut worst_ratio: f64 = 0.0;
    let mut worst_bound: f64 = 0.0;
    for (a, z, w) in fixtures::factor_samples(&mut rng, 20, 2.0 * PI) {
        let pairs = [
            (f_series(t, a, z, None), f_product(t, a, z)),
            (
                f_tilde_series(t, a, z, w, None),
                f_tilde_product(t, a, z, w),
            ),
        ];
        for (series, product) in pairs {
            let (series, product) = (
                series.map_err(|e| e.to_string())?,
                product.map_err(|e| e.to_string())?,
            );
            let bounds = series.tail_bound + product.tail_bound;
            // rounding of the two summation orders
            let allowance = bounds + 1e3 * f64::EPSILON * product.value.norm();
            let diff = (series.value - product.value).norm();
            worst_ratio = worst_ratio.max(if allowance > 0.0 {
                diff / allowance
            } else {
                0.0
            });
            worst_bound = worst_bound.max(bounds);
        }
    }
    judge(
        worst_ratio <= 1.0 && worst_bound <= 1e-10,
        format!("20 samples, |diff|/allowance {worst_ratio:.4} (<= 1), largest bound {worst_bound:.1e} (<= 1e-10)"),
    )
}

#[derive(Deserialize)]
struct SignFixture {
    sign_c0: SignC0,
}

fn sign_adjudication() -> Verdict {
    let t = full_table();
    let laurent = fixtures::LAURENT_ALPHAS
        .iter()
        .map(|&a| extract_laurent_coeffs(t, a, &standard_laurent_grid(a, 8)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let adj = adjudicate_sign(t, &fixtures::adjudication_pairs(), &laurent, 1e-3)
        .map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/sign_c0.json"
    ))
    .map_err(|e| e.to_string())?;
    let pinned: SignFixture = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let names: Vec<String> = adj.reconciling.iter().map(|s| s.to_string()).collect();
    judge(
        adj.reconciling.len() == 1 && adj.winner == Some(pinned.sign_c0),
        format!(
            "reconciling {names:?} on 3 pairs (exactly one required), pinned {}",
            pinned.sign_c0
        ),
    )
}

fn cross_family() -> Verdict {
    let t = full_table();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 7);
    let mut worst: f64 = 0.0;
    for p in fixtures::sine_samples(&mut rng, 10, PI) {
        let q = p.doubled_exp().map_err(|e| e.to_string())?;
        let s = s_sine(t, &p, SignC0::Plus, &C1Mode::Omit).map_err(|e| e.to_string())?;
        let e = s_exp(t, &q, SignC0::Plus, &C1Mode::Omit).map_err(|e| e.to_string())?;
        let lhs = e.value.value * e.polynomial.exp();
        let rhs = s.value.value * s.polynomial.exp();
        worst = worst.max((lhs - rhs).norm() / rhs.norm());
    }
    judge(
        worst <= 1e-12,
        format!("10 samples, rel err {worst:.2e} (<= 1e-12)"),
    )
}

fn discrepancy_degeneracy() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 8);
    let mut nonzero = 0;
    let mut count = 0;
    for (a, z, w) in fixtures::factor_samples(&mut rng, 200, 2.0 * PI) {
        for sign in [SignC0::Plus, SignC0::Minus] {
            let d1 = discrepancy_sine(
                &SineParams::single(a, z).map_err(|e| e.to_string())?,
                sign,
                &C1Mode::Omit,
            )
            .map_err(|e| e.to_string())?;
            let q = ExpParams::new(vec![a], vec![z], vec![w]).map_err(|e| e.to_string())?;
            let d2 = discrepancy_exp(&q, sign, &C1Mode::Omit).map_err(|e| e.to_string())?;
            for d in [d1.discrepancy, d2.discrepancy] {
                count += 1;
                nonzero += usize::from(d != Complex64::new(0.0, 0.0));
            }
        }
    }
    judge(
        nonzero == 0,
        format!("{count} n=1 evaluations, {nonzero} nonzero"),
    )
}

fn table_integrity() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().join("zeros_100k.zrt");
    write_cache(full_table(), &cache).map_err(|e| e.to_string())?;
    let cached = load_zero_table(&cache, None).map_err(|e| e.to_string())?;
    let report = validate(&cached);
    let first = cached.min_ordinate();
    judge(
        cached.count() == 100_000
            && report.max_counting_deviation <= 2.0
            && first > 14.13
            && first < 14.14,
        format!(
            "{} cached ordinates, max counting deviation {:.3} (<= 2), first {first}",
            cached.count(),
            report.max_counting_deviation
        ),
    )
}

fn run_cli(threads: &str, args: &[&str]) -> Result<Vec<u8>, String> {
    let table = data_path();
    let out = Command::new(env!("CARGO_BIN_EXE_zetaprod"))
        .env_remove(zetaprod::cli::ZEROS_ENV)
        .args(["--zeros", table.to_str().unwrap(), "--threads", threads])
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    // `verify all` exits 1 while a criterion fails; only usage errors matter here
    if out.status.code() == Some(2) {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    Ok(out.stdout)
}

fn determinism() -> Verdict {
    let scan = [
        "regprod",
        "scan",
        "--target",
        "s-sine",
        "--param",
        "alpha1",
        "--from",
        "0.5",
        "--to",
        "2",
        "--steps",
        "40",
        "--alphas",
        "1,2",
        "--zs",
        "0.3,-0.1;1.0,-0.2",
    ];
    let verify = ["verify", "all"];
    let mut identical = true;
    let mut detail = Vec::new();
    for (name, args) in [("scan", &scan[..]), ("verify all", &verify[..])] {
        let a = run_cli("1", args)?;
        let b = run_cli("1", args)?;
        let c = run_cli("4", args)?;
        let same_threads = a == b;
        let across = if name == "scan" {
            a == c
        } else {
            serde_json::from_slice::<serde_json::Value>(&a).map_err(|e| e.to_string())?
                == serde_json::from_slice::<serde_json::Value>(&c).map_err(|e| e.to_string())?
        };
        identical &= same_threads && across && !a.is_empty();
        detail.push(format!(
            "{name}: repeat identical {same_threads}, threads 1 vs 4 identical {across}"
        ));
    }
    judge(identical, detail.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("laurent recovery", laurent_recovery),
        ("cramer holomorphy", cramer_holomorphy),
        ("linear term, sine", linear_term_sine),
        ("linear term, exp", linear_term_exp),
        ("order swap", order_swap),
        ("sign adjudication", sign_adjudication),
        ("cross-family identity", cross_family),
        ("discrepancy degeneracy", discrepancy_degeneracy),
        ("table integrity", table_integrity),
        ("determinism", determinism),
    ];
    let start = Instant::now();
    full_table();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let verdict = run();
        let secs = t0.elapsed().as_secs_f64();
        match verdict {
            Ok(details) => println!("PASS criterion {:>2} {name}: {details} [{secs:.2}s]", i + 1),
            Err(details) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {details} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
