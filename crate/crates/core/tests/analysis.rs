use std::f64::consts::PI;

use glt_spectra::analysis::{
    laplace2d_gap, l1_case_stats, max_relative_error, necessary_condition_gap, relative_errors, saturation_constant,
};
use glt_spectra::eig::eigvals_sym_tridiagonal;
use glt_spectra::fd::{assemble_fd, fd_operator};
use glt_spectra::grids::Diffeomorphism;
use glt_spectra::problems::euler_cauchy;
use glt_spectra::symbol::{euler_cauchy_quantile, euler_cauchy_rearrangement};

#[test]
fn identical_spectra_report_zero_numerical_error() {
    let exact = euler_cauchy(1.0).unwrap().exact.unwrap().first(50);
    let w = euler_cauchy_rearrangement(1.0, 50).unwrap();
    let r = relative_errors(&exact, &exact, &w, 50).unwrap();
    assert!(r.numerical_err.iter().all(|&e| e == 0.0));
    assert_eq!(r.max_err, 0.0);
}

#[test]
fn analytic_error_tends_to_saturation() {
    let c = saturation_constant(1.0, 1);
    assert!((c - 0.0247).abs() < 5e-5);
    assert!((saturation_constant(0.1, 1) - 0.0025).abs() < 5e-5);
    let n = 100;
    let prob = euler_cauchy(1.0).unwrap();
    let sys = assemble_fd(&prob, &Diffeomorphism::identity(prob.a, prob.b).unwrap(), n, 1).unwrap();
    let lam = eigvals_sym_tridiagonal(&fd_operator(&sys).tridiagonal().unwrap()).values;
    let r = relative_errors(&lam, &prob.exact.unwrap().first(n), &euler_cauchy_rearrangement(1.0, n).unwrap(), n).unwrap();
    assert!((r.analytic_err[0] / c - 1.0).abs() < 0.01);
}

#[test]
fn saturation_constant_examples() {
    assert!((saturation_constant(4.0 * PI * PI, 1) - 0.5).abs() < 1e-15);
    assert!((saturation_constant(4.0 * PI * PI, 2) - 0.2).abs() < 1e-15);
    assert!(saturation_constant(1e-15, 1) < 1e-16);
    assert!((saturation_constant(1.0, 10) - 2.5324e-4).abs() < 5e-9);
}

#[test]
fn saturation_holds_for_fixed_k() {
    let exact = euler_cauchy(1.0).unwrap().exact.unwrap();
    let n = 1000;
    let w = euler_cauchy_quantile(1.0, 1.0 / (n + 1) as f64).unwrap();
    let err = ((n + 1) as f64).powi(2) * w / exact.eigenvalue(1) - 1.0;
    assert!((err.abs() / saturation_constant(1.0, 1) - 1.0).abs() < 0.05);
}

#[test]
fn gap_examples() {
    let exact_profile = necessary_condition_gap(|x| x * x * PI * PI, 1.0, 1000);
    assert!(exact_profile.gap < 1e-15);
    let g = necessary_condition_gap(|x| euler_cauchy_quantile(1.0, x).unwrap(), 1.0, 1000);
    assert!((g.gap - 0.3206).abs() < 1e-3, "{}", g.gap);
    assert!((g.argmax_x - 0.6675).abs() < 0.01);
}

#[test]
fn max_relative_error_examples() {
    let d = [1.0, 2.2, 2.7];
    let r = [1.0, 2.0, 3.0];
    let m = max_relative_error(&d, &r, None).unwrap();
    assert_eq!(m.argmax_k, 2);
    assert!((m.max - 0.1).abs() < 1e-15);
    assert!(max_relative_error(&d, &r[..2], None).is_err());
}

#[test]
fn l1_limits() {
    let s = l1_case_stats(500, 500).unwrap();
    let bound = 2f64.sqrt() * (1.0 + 2.0 / 3f64.sqrt());
    assert!(s.eig_ratio <= bound);
    assert!(s.mean_eig < 4.0 && s.mean_eig > 3.8);
}

#[test]
fn laplace2d_examples() {
    let r = laplace2d_gap(64).unwrap();
    assert!((r.bound - 0.59471).abs() < 1e-5);
    assert!(r.max_rel_err >= 0.55 && r.max_rel_err <= r.bound);
    assert!(laplace2d_gap(0).is_err());
}
