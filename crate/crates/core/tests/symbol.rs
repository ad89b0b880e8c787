use std::f64::consts::PI;
use std::sync::Arc;

use glt_spectra::eig::eigvals_sym_tridiagonal;
use glt_spectra::fd::{assemble_fd, fd_operator};
use glt_spectra::grids::Diffeomorphism;
use glt_spectra::problems::{dirichlet_laplacian, euler_cauchy};
use glt_spectra::symbol::{
    counting_function, essential_range, euler_cauchy_max, euler_cauchy_phi, euler_cauchy_quantile, euler_cauchy_rearrangement, fd_symbol_for,
    is_outlier, rearrange, sample_rearrangement, EssentialRange, GridConvention, MonotoneRearrangement,
    RearrangementMode, SeparableSymbol,
};

fn cosine_symbol() -> SeparableSymbol {
    SeparableSymbol::new(0.0, 1.0, Arc::new(|_| 1.0), Arc::new(|t: f64| 2.0 - 2.0 * t.cos()), "cos").unwrap()
}

fn ec_symbol(alpha: f64) -> SeparableSymbol {
    let prob = euler_cauchy(alpha).unwrap();
    fd_symbol_for(&prob, &Diffeomorphism::identity(prob.a, prob.b).unwrap(), 1).unwrap()
}

fn weighted_fd_eigs(alpha: f64, n: usize) -> Vec<f64> {
    let prob = euler_cauchy(alpha).unwrap();
    let sys = assemble_fd(&prob, &Diffeomorphism::identity(prob.a, prob.b).unwrap(), n, 1).unwrap();
    let w = 1.0 / ((n + 1) * (n + 1)) as f64;
    eigvals_sym_tridiagonal(&fd_operator(&sys).tridiagonal().unwrap()).values.into_iter().map(|v| v * w).collect()
}

#[test]
fn x_independent_symbol_rearranges_to_cosine() {
    let r = 200;
    let w = rearrange(&cosine_symbol(), r).unwrap();
    assert!((w.eval(0.5) - 2.0).abs() < 2.0 / r as f64);
    let worst = (0..=100).map(|i| i as f64 / 100.0).map(|x| (w.eval(x) - (2.0 - 2.0 * (PI * x).cos())).abs()).fold(0.0, f64::max);
    assert!(worst < 4.0 * 4.0 / r as f64);
}

#[test]
fn euler_cauchy_symbol_maximum() {
    let e = std::f64::consts::E;
    let want = 4.0 * e * e / (e - 1.0).powi(2);
    assert!((euler_cauchy_max(1.0).unwrap() - want).abs() < 1e-12);
    let w = rearrange(&ec_symbol(1.0), 100).unwrap();
    assert!((w.eval(1.0) - want).abs() < 1e-9);
    assert!((essential_range(&ec_symbol(1.0)).hi.unwrap() - want).abs() < 1e-9);
    let exact = euler_cauchy_rearrangement(1.0, 1000).unwrap();
    assert!((exact.eval(1.0) - want).abs() < 1e-9);
}

#[test]
fn rearrangement_approaches_maximum_like_two_thirds_power() {
    // Near the top, 1 - phi(max - s) ~ s^{3/2}, so max - omega(1 - d) ~ d^{2/3}.
    let max = euler_cauchy_max(1.0).unwrap();
    let gap = |n: usize| max - euler_cauchy_quantile(1.0, n as f64 / (n + 1) as f64).unwrap();
    assert!(gap(1000) < 0.25);
    let ratio = gap(1000) / gap(8000);
    assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
}

#[test]
fn sampling_examples() {
    let id = MonotoneRearrangement::new(vec![0.0, 1.0], vec![0.0, 1.0], RearrangementMode::Exact, GridConvention::Interior).unwrap();
    assert_eq!(sample_rearrangement(&id, 3), vec![0.25, 0.5, 0.75]);
    let r = 400;
    let lap = dirichlet_laplacian(1.0).unwrap();
    let sym = fd_symbol_for(&lap, &Diffeomorphism::identity(0.0, 1.0).unwrap(), 1).unwrap();
    let w = rearrange(&sym, r).unwrap();
    let n = 99;
    for (k, v) in sample_rearrangement(&w, n).iter().enumerate() {
        let want = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
        assert!((v - want).abs() < 4.0 / r as f64);
    }
}

#[test]
fn phi_examples() {
    assert_eq!(euler_cauchy_phi(1.0, 0.0).unwrap(), 0.0);
    assert!((euler_cauchy_phi(1.0, euler_cauchy_max(1.0).unwrap()).unwrap() - 1.0).abs() < 1e-14);
    assert!((euler_cauchy_phi(1.0, 1e-6).unwrap() * PI / 1e-3 - 1.0).abs() < 1e-2);
}

#[test]
fn exact_rearrangement_examples() {
    let w = euler_cauchy_rearrangement(1.0, 1000).unwrap();
    assert!((w.eval(1.0 / 1001.0) * 1001.0 * 1001.0 / (PI * PI) - 1.0).abs() < 5e-3);
    let approx = rearrange(&ec_symbol(1.0), 1000).unwrap();
    let sup = (1..=1000).map(|k| k as f64 / 1001.0).map(|x| (w.eval(x) - approx.eval(x)).abs()).fold(0.0, f64::max);
    assert!(sup < 5e-2, "{sup}");
}

#[test]
fn exact_and_approximate_rearrangements_converge() {
    let w = euler_cauchy_rearrangement(1.0, 1000).unwrap();
    let sups: Vec<f64> = [250usize, 500, 1000]
        .iter()
        .map(|&r| {
            let a = rearrange(&ec_symbol(1.0), r).unwrap();
            (1..=1000).map(|k| k as f64 / 1001.0).map(|x| (w.eval(x) - a.eval(x)).abs()).fold(0.0, f64::max)
        })
        .collect();
    assert!(sups[0] > sups[1] && sups[1] > sups[2], "{sups:?}");
}

#[test]
fn essential_range_and_outliers() {
    let lap = dirichlet_laplacian(1.0).unwrap();
    let r = essential_range(&fd_symbol_for(&lap, &Diffeomorphism::identity(0.0, 1.0).unwrap(), 1).unwrap());
    assert_eq!(r.lo, 0.0);
    assert!((r.hi.unwrap() - 4.0).abs() < 1e-12);
    let range = EssentialRange { lo: 0.0, hi: Some(4.0) };
    assert!(is_outlier(4.0 + 0.1 * 4.0, &range, 0.05));
    assert!(!is_outlier(4.1, &range, 0.05));
}

#[test]
fn counting_function_examples() {
    let s: Vec<f64> = (1..=101).map(|i| i as f64).collect();
    assert_eq!(counting_function(&s, 0.5), 0.0);
    assert!((counting_function(&s, 51.0) - 0.5).abs() <= 1.0 / 101.0);
    let n = 1000;
    let lam = weighted_fd_eigs(1.0, n);
    let t = 0.5 * euler_cauchy_max(1.0).unwrap();
    assert!((counting_function(&lam, t) - euler_cauchy_phi(1.0, t).unwrap()).abs() < 0.01);
}

#[test]
fn weyl_law_consistency() {
    let n = 1000;
    let lam = weighted_fd_eigs(1.0, n);
    let w = euler_cauchy_rearrangement(1.0, n).unwrap();
    for x in [0.25, 0.5, 0.75] {
        assert!((counting_function(&lam, w.eval(x)) - x).abs() < 0.02);
    }
}

#[test]
fn absolute_error_decreases_with_n() {
    let errs: Vec<f64> = [100usize, 200, 400, 800]
        .iter()
        .map(|&n| {
            let w = euler_cauchy_rearrangement(1.0, n).unwrap();
            let lam = weighted_fd_eigs(1.0, n);
            sample_rearrangement(&w, n).iter().zip(&lam).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(errs[3] < 0.05);
}

#[test]
fn monotone_symbol_is_reproduced() {
    let r = 100;
    let w = rearrange(&cosine_symbol(), r).unwrap();
    let again = MonotoneRearrangement::new(w.xs.clone(), w.vals.clone(), RearrangementMode::Exact, GridConvention::Interior).unwrap();
    assert!(w.vals.windows(2).all(|p| p[1] >= p[0]));
    let lin = SeparableSymbol::new(0.0, 1.0, Arc::new(|_| 1.0), Arc::new(|t: f64| t), "linear").unwrap();
    let wl = rearrange(&lin, r).unwrap();
    let sup = (0..=200).map(|i| i as f64 / 200.0).map(|x| (wl.eval(x) - PI * x).abs()).fold(0.0, f64::max);
    assert!(sup <= 4.0 * PI / r as f64);
    assert_eq!(again.eval(0.3), w.eval(0.3));
}

#[test]
fn unbounded_symbol_tail_grows_like_square_root() {
    let sym = SeparableSymbol::new(0.0, 1.0, Arc::new(|x: f64| x.powf(-0.5)), Arc::new(|t: f64| 2.0 - 2.0 * t.cos()), "l1").unwrap();
    assert!(sym.unbounded);
    assert!(essential_range(&sym).hi.is_none());
    let n = 2000;
    let w = glt_spectra::symbol::rearrange_with(&sym, n, GridConvention::Spanning).unwrap();
    let tail = w.sample(n)[n - 1] / ((n + 1) as f64).sqrt();
    assert!((3.8..=4.2).contains(&tail), "{tail}");
}
