//! Worked examples checked against independent oracles on the 10⁵-zero table.

mod common;

use std::f64::consts::PI;

use common::{full_table, prefix};
use num_complex::Complex64;
use zetaprod::cramer::{
    c_minus1_closed_form, cramer_remainder, default_laurent_grid, extract_laurent_coeffs, phi,
    phi_singular_model, v_func,
};
use zetaprod::regprod::{
    discrepancy_sine, f_polynomial, f_product, f_series, f_tilde_product, f_tilde_series, l_direct,
    l_tilde_direct, lt_extract, poly_f, poly_f_tilde, s_exp, s_sine, sine_argument, FamilyParams,
};
use zetaprod::summation::{density_tail, exp_sum, log_one_minus_sum};
use zetaprod::zeros::counting_estimate;
use zetaprod::{
    validate, zeta_pochhammer, C1Mode, C1Table, ExpParams, PochhammerArgs, SignC0, SineParams,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rho(tau: f64) -> Complex64 {
    c(0.5, tau)
}

#[test]
fn hundred_zero_prefix_validates() {
    let report = validate(&prefix(100));
    assert!(report.passed(), "{report:?}");
    assert!(report.max_counting_deviation <= 2.0);
}

#[test]
fn counting_estimate_near_true_count_at_100() {
    let t = full_table();
    assert_eq!(t.count_below(100.0), 29);
    assert!((counting_estimate(100.0).unwrap() - 29.0).abs() <= 2.0);
}

#[test]
fn exp_sum_refines_within_coarse_bound() {
    let coarse = exp_sum(&prefix(100), c(1.0, 0.0)).unwrap();
    let fine = exp_sum(full_table(), c(1.0, 0.0)).unwrap();
    assert!((coarse.value - fine.value).norm() <= coarse.tail_bound);
}

#[test]
fn density_tail_dominates_table_suffixes() {
    let taus = full_table().ordinates();
    for a in [0.5, 1.0, 2.0] {
        for k in [100, 1000, 10_000] {
            let suffix: f64 = taus[k..].iter().map(|t| (-a * t).exp()).sum();
            let bound = density_tail(a, taus[k - 1]).unwrap();
            assert!(suffix <= bound, "a={a} k={k}: {suffix} > {bound}");
        }
    }
}

#[test]
fn log_one_minus_sum_matches_power_series() {
    let t = full_table();
    let direct = log_one_minus_sum(t, c(1.0, 0.0), 2.0).unwrap();
    let mut series = Complex64::new(0.0, 0.0);
    let mut bounds = direct.tail_bound;
    for m in 1..=20 {
        let term = exp_sum(t, c(2.0 * m as f64, 0.0)).unwrap();
        series -= term.value / m as f64;
        bounds += term.tail_bound / m as f64;
    }
    // the first omitted term is below e^{−42τ₁}
    assert!((direct.value - series).norm() <= bounds + 1e-300);
    assert!(direct.value.re < 0.0);
}

#[test]
fn phi_refines_within_coarse_bound() {
    let coarse = phi(&prefix(1000), c(1.0, 0.0)).unwrap();
    let fine = phi(full_table(), c(1.0, 0.0)).unwrap();
    assert!((coarse.value - fine.value).norm() <= coarse.tail_bound);
}

#[test]
fn v_at_2i_matches_direct_sum() {
    let small = prefix(10_000);
    let direct: Complex64 = small
        .ordinates()
        .iter()
        .map(|&t| (c(0.0, 2.0) * rho(t)).exp())
        .sum();
    let coarse = v_func(&small, c(0.0, 2.0)).unwrap();
    let fine = v_func(full_table(), c(0.0, 2.0)).unwrap();
    assert!((direct - coarse.value).norm() <= 1e-15 * direct.norm().max(1e-300) + 1e-320);
    assert!((direct - fine.value).norm() <= coarse.tail_bound + 1e-15 * direct.norm());
}

#[test]
fn remainder_at_half_is_stable_under_refinement() {
    let s = Complex64::from_polar(0.5, PI / 4.0);
    let coarse = cramer_remainder(&prefix(10_000), s).unwrap();
    let fine = cramer_remainder(full_table(), s).unwrap();
    assert!((coarse.value - fine.value).norm() <= coarse.tail_bound);
}

#[test]
fn phi_minus_singular_model_is_stable_as_s_shrinks() {
    let t = full_table();
    let holomorphic = |s: f64| {
        let (log_part, mero) = phi_singular_model(1.0, s).unwrap();
        let value = phi(t, c(s, 0.0)).unwrap();
        value.value - log_part * s.ln() - mero
    };
    let r: Vec<Complex64> = [0.1, 0.05, 0.025, 0.0125]
        .iter()
        .map(|&s| holomorphic(s))
        .collect();
    for w in r.windows(3) {
        let (d1, d2) = ((w[0] - w[1]).norm(), (w[1] - w[2]).norm());
        assert!(d2 < 0.75 * d1, "{r:?}");
    }
    assert!(r.iter().all(|z| z.norm() < 1.0));
}

#[test]
fn laurent_coefficients_at_alpha_one_and_two() {
    let t = full_table();
    // mpmath, 30 digits
    let want = [
        (1.0, -0.384_373_946_213_432_9),
        (2.0, -0.247_345_873_144_879_36),
    ];
    let mut fitted = Vec::new();
    for (alpha, c_minus1) in want {
        assert!((c_minus1_closed_form(alpha) - c_minus1).abs() < 1e-15);
        let f = extract_laurent_coeffs(t, alpha, &default_laurent_grid(t, alpha, 8)).unwrap();
        assert!(
            (f.c_minus1.re - c_minus1).abs() / c_minus1.abs() < 1e-4,
            "{f:?}"
        );
        assert!(f.c_minus1.im.abs() < 1e-4 * c_minus1.abs());
        assert!((f.c_0 - c(0.875, 0.0)).norm() < 1e-3, "{f:?}");
        assert!(f.c1_uncertainty.is_finite() && f.c1_uncertainty > 0.0);
        fitted.push(f.c_minus1.re);
    }
    // c₋₁(2)/c₋₁(1) = (γ + log 4π)/(2(γ + log 2π))
    let ratio = want[1].1 / want[0].1;
    assert!(((fitted[1] / fitted[0]) - ratio).abs() / ratio < 1e-4);
}

#[test]
fn pochhammer_matches_factor_product() {
    let beta = 2.0;
    let x = c(0.0, -0.6).exp();
    let full = zeta_pochhammer(full_table(), PochhammerArgs::new(x, beta)).unwrap();
    let small = prefix(1000);
    // q^{−ρ} = e^{iβρ}
    let product: Complex64 = small
        .ordinates()
        .iter()
        .map(|&t| 1.0 - x * (c(0.0, beta) * rho(t)).exp())
        .product();
    let coarse = zeta_pochhammer(&small, PochhammerArgs::new(x, beta)).unwrap();
    assert!((product - full.value).norm() <= coarse.tail_bound + full.tail_bound + 1e-15);
}

#[test]
fn f_series_order_one_vs_thirty() {
    let t = full_table();
    let one = f_series(t, 1.0, c(0.0, 0.0), Some(1)).unwrap();
    let many = f_series(t, 1.0, c(0.0, 0.0), Some(30)).unwrap();
    // the first omitted term nearly saturates the bound; allow for rounding
    let rounding = 1e3 * f64::EPSILON * many.value.norm();
    assert!((one.value - many.value).norm() <= one.tail_bound + rounding);
}

#[test]
fn f_series_matches_log_sum_identity() {
    let t = full_table();
    let (a, z) = (1.0, c(0.3, -0.1));
    let series = f_series(t, a, z, None).unwrap();
    let coefficient = (c(0.0, -2.0) * z).exp() * c(0.0, a).exp();
    let direct = log_one_minus_sum(t, coefficient, 2.0 * a).unwrap();
    assert!(
        (series.value + direct.value).norm()
            <= series.tail_bound + direct.tail_bound + 1e-15 * direct.value.norm()
    );
    let product = f_product(t, a, z).unwrap();
    assert!(series.agrees_with(&product, 1e3 * f64::EPSILON * product.value.norm()));
}

#[test]
fn f_product_matches_sine_factors() {
    // sin(αρ − z) overflows once τ > 709
    let small = prefix(full_table().count_below(700.0));
    assert!(small.len() > 300);
    let (a, z) = (1.0, c(0.3, -0.1));
    let f = f_product(&small, a, z).unwrap();
    let product: Complex64 = small
        .ordinates()
        .iter()
        .map(|&t| {
            let w = a * rho(t) - z;
            c(0.0, -2.0) * (c(0.0, 1.0) * w).exp() * w.sin()
        })
        .product();
    assert!(((-f.value).exp() - product).norm() <= 1e-13 * product.norm() + f.tail_bound);
}

#[test]
fn f_product_is_finite_near_two_pi() {
    let f = f_product(full_table(), 1.0, c(2.0 * PI - 1e-9, 0.0)).unwrap();
    assert!(f.value.re.is_finite() && f.value.im.is_finite());
}

#[test]
fn f_tilde_series_matches_product() {
    let t = full_table();
    let (a, z, w) = (1.0, c(0.3, -0.1), c(0.5, 0.0));
    let series = f_tilde_series(t, a, z, w, None).unwrap();
    let product = f_tilde_product(t, a, z, w).unwrap();
    assert!(series.agrees_with(&product, 1e3 * f64::EPSILON * product.value.norm()));
}

#[test]
fn single_factor_s_has_pochhammer_shape() {
    let t = full_table();
    let (alpha, x) = (1.0, c(0.3, -0.1));
    let p = SineParams::single(alpha, alpha * x).unwrap();
    let s = s_sine(t, &p, SignC0::Plus, &C1Mode::Omit).unwrap();
    let f = poly_f(&p, SignC0::Plus, &C1Mode::Omit).unwrap();
    let q = (c(0.0, -2.0 * alpha) * x).exp();
    let poch = zeta_pochhammer(t, PochhammerArgs::new(q, 2.0 * alpha)).unwrap();
    assert_eq!(s.value.value, (-f).exp() * poch.value);
}

#[test]
fn assembly_routes_agree_on_standard_parameters() {
    let t = full_table();
    let p = SineParams::new(vec![1.0, 2.0], vec![c(0.3, -0.1), c(1.0, -0.2)]).unwrap();
    for sign in [SignC0::Plus, SignC0::Minus] {
        let s = s_sine(t, &p, sign, &C1Mode::Omit).unwrap();
        assert!(s.route_difference < 1e-12, "{}", s.route_difference);
    }
}

#[test]
fn zero_omega_exp_product_is_bare_exponential() {
    let t = full_table();
    let p = ExpParams::new(vec![1.0], vec![c(0.3, 0.0)], vec![c(0.0, 0.0)]).unwrap();
    let s = s_exp(t, &p, SignC0::Plus, &C1Mode::Omit).unwrap();
    let f = poly_f_tilde(&p, SignC0::Plus, &C1Mode::Omit).unwrap();
    assert_eq!(s.value.value, (-f).exp());
    assert_eq!(s.value.tail_bound, 0.0);
}

#[test]
fn cross_family_identity_on_fixture() {
    let t = full_table();
    let p = SineParams::new(vec![1.0, 2.0], vec![c(0.3, -0.1), c(1.0, -0.2)]).unwrap();
    let q = p.doubled_exp().unwrap();
    let s = s_sine(t, &p, SignC0::Plus, &C1Mode::Omit).unwrap();
    let e = s_exp(t, &q, SignC0::Plus, &C1Mode::Omit).unwrap();
    let lhs = e.value.value * e.polynomial.exp();
    let rhs = s.value.value * s.polynomial.exp();
    assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
}

#[test]
fn linear_term_matches_factor_sums() {
    let t = full_table();
    let cases: [(SineParams, Complex64); 2] = [
        {
            let p = SineParams::single(1.0, c(0.3, -0.1)).unwrap();
            let f = f_product(t, 1.0, c(0.3, -0.1)).unwrap().value;
            (p, f)
        },
        {
            let p = SineParams::new(vec![1.0, 2.0], vec![c(0.0, 0.0), c(0.5, -0.1)]).unwrap();
            let f = f_product(t, 1.0, c(0.0, 0.0)).unwrap().value
                + f_product(t, 2.0, c(0.5, -0.1)).unwrap().value;
            (p, f)
        },
    ];
    for (p, sum) in cases {
        let params = FamilyParams::from(p);
        let grid = zetaprod::regprod::default_lt_grid(t, params.alpha(), 4);
        let lt = lt_extract(t, &params, &grid).unwrap();
        assert!(
            (lt.phi_estimate - sum).norm() <= 1e-3 * sum.norm(),
            "{} vs {sum}",
            lt.phi_estimate
        );
        assert!(lt.converged);
    }
}

#[test]
fn l_at_large_s_is_first_zero_dominated() {
    let t = full_table();
    let p = SineParams::single(1.0, c(0.0, 0.0)).unwrap();
    let s = 5.0;
    let full = l_direct(t, &p, s).unwrap();
    let first = l_direct(&prefix(1), &p, s).unwrap();
    let taus = t.ordinates();
    let scale = (-s * (taus[1] - taus[0])).exp();
    assert!((full.value - first.value).norm() <= 2.0 * scale * first.value.norm());
}

#[test]
fn l_tilde_refines_within_coarse_bound() {
    let p = ExpParams::new(vec![1.0], vec![c(0.3, -0.1)], vec![c(0.5, 0.0)]).unwrap();
    let s = 0.01;
    let coarse = l_tilde_direct(&prefix(50_000), &p, s).unwrap();
    let fine = l_tilde_direct(full_table(), &p, s).unwrap();
    assert!((coarse.value - fine.value).norm() <= coarse.tail_bound);
}

#[test]
fn two_factor_discrepancy_with_fitted_c1() {
    let t = full_table();
    let c1 = C1Mode::numeric(C1Table::extract(t, &[1.0, 2.0]).unwrap());
    let zero = c(0.0, 0.0);
    let p = SineParams::new(vec![1.0, 1.0], vec![zero, zero]).unwrap();
    let d = discrepancy_sine(&p, SignC0::Plus, &c1).unwrap();
    let f1 = f_polynomial(
        1.0,
        sine_argument(1, 1.0, zero),
        SignC0::Plus,
        c1.c1(1.0).unwrap(),
    );
    let f2 = f_polynomial(
        2.0,
        sine_argument(2, 2.0, zero),
        SignC0::Plus,
        c1.c1(2.0).unwrap(),
    );
    assert!((d.discrepancy - (2.0 * f1 - f2)).norm() <= 1e-14 * (2.0 * f1 - f2).norm());
    assert_eq!(d.per_factor_f[0], d.per_factor_f[1]);
    assert!(!d.flagged);
}
