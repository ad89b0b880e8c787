use std::f64::consts::PI;
use std::sync::Arc;

use glt_spectra::eig::{cholesky_banded, eigvals_general, eigvals_sym_banded};
use glt_spectra::grids::{exp_map, Diffeomorphism};
use glt_spectra::iga::{assemble_iga, cardinal_bspline, cardinal_bspline_d2, iga_operator, iga_symbol, IgaSymbol};
use glt_spectra::matrix::DenseMatrix;
use glt_spectra::problems::{dirichlet_laplacian, euler_cauchy, BoundaryConditions, SlProblem};

#[test]
fn cardinal_examples() {
    assert!((cardinal_bspline(1, 1.0) - 1.0).abs() < 1e-15);
    assert!((cardinal_bspline(3, 2.0) - 2.0 / 3.0).abs() < 1e-15);
    assert!((cardinal_bspline(3, 1.0) - 1.0 / 6.0).abs() < 1e-15);
    let s: f64 = (-6..=8).map(|k| cardinal_bspline(5, 2.3 - k as f64)).sum();
    assert!((s - 1.0).abs() < 1e-14);
    assert!((cardinal_bspline_d2(3, 2.0).unwrap() + 2.0).abs() < 1e-14);
    assert!((cardinal_bspline_d2(3, 1.0).unwrap() - 1.0).abs() < 1e-14);
    for deg in [3usize, 5, 7] {
        let s: f64 = (-10..=10).map(|k| cardinal_bspline_d2(deg, 3.7 - k as f64).unwrap()).sum();
        assert!(s.abs() < 1e-12, "deg={deg}: {s}");
    }
}

#[test]
fn symbol_examples() {
    assert!((iga_symbol(1).unwrap()(PI) - 12.0).abs() < 1e-13);
    assert!((iga_symbol(2).unwrap()(PI) - 10.0).abs() < 1e-13);
    assert!(IgaSymbol::new(2).unwrap().numerator(0.0).abs() < 1e-14);
}

#[test]
fn linear_pair_is_classical() {
    let n = 9;
    let pair = assemble_iga(&dirichlet_laplacian(1.0).unwrap(), &Diffeomorphism::identity(0.0, 1.0).unwrap(), n, 1).unwrap();
    let h = 1.0 / (n + 1) as f64;
    assert_eq!(pair.k.dim(), n);
    for i in 0..n {
        assert!((pair.k.get(i, i) - 2.0 / h).abs() < 1e-12);
        assert!((pair.m.get(i, i) - 2.0 * h / 3.0).abs() < 1e-14);
        if i > 0 {
            assert!((pair.k.get(i, i - 1) + 1.0 / h).abs() < 1e-12);
            assert!((pair.m.get(i, i - 1) - h / 6.0).abs() < 1e-14);
        }
    }
}

#[test]
fn mapped_pair_is_definite() {
    let pair = assemble_iga(&euler_cauchy(1.0).unwrap(), &exp_map(1.0).unwrap(), 16, 2).unwrap();
    assert!(cholesky_banded(&pair.m.to_dense(), 2).is_ok());
    let k = eigvals_sym_banded(&pair.k);
    assert!(k.values[0] >= -1e-12);
}

#[test]
fn smallest_eigenvalue_approximates_pi_squared() {
    let pair = assemble_iga(&dirichlet_laplacian(1.0).unwrap(), &Diffeomorphism::identity(0.0, 1.0).unwrap(), 10, 1).unwrap();
    let l = iga_operator(&pair).eigenvalues().unwrap().values[0];
    assert!((l / (PI * PI) - 1.0).abs() < 0.01);
}

#[test]
fn pencil_matches_explicit_inverse_product() {
    let pair = assemble_iga(&euler_cauchy(1.0).unwrap(), &exp_map(1.0).unwrap(), 20, 3).unwrap();
    let pencil = iga_operator(&pair).eigenvalues().unwrap().values;
    let (k, m) = (pair.k.to_dense(), pair.m.to_dense());
    let dim = k.dim();
    // M^{-1} K by Gauss-Jordan elimination on [M | K].
    let mut aug: Vec<Vec<f64>> = (0..dim).map(|i| m.row(i).iter().chain(k.row(i)).copied().collect()).collect();
    for c in 0..dim {
        let p = (c..dim).max_by(|&a, &b| aug[a][c].abs().total_cmp(&aug[b][c].abs())).unwrap();
        aug.swap(c, p);
        let piv = aug[c][c];
        aug[c].iter_mut().for_each(|v| *v /= piv);
        for r in 0..dim {
            if r != c {
                let f = aug[r][c];
                let src = aug[c].clone();
                aug[r].iter_mut().zip(&src).for_each(|(v, s)| *v -= f * s);
            }
        }
    }
    let rows: Vec<Vec<f64>> = aug.into_iter().map(|r| r[dim..].to_vec()).collect();
    let gen = eigvals_general(&DenseMatrix::from_rows(&rows)).unwrap();
    for (a, b) in pencil.iter().zip(&gen.values) {
        assert!((a / b - 1.0).abs() < 1e-9, "{a} vs {b}");
    }
}

#[test]
fn doubling_weight_halves_eigenvalues() {
    let prob = |w: f64| {
        SlProblem::new(
            0.0,
            1.0,
            Arc::new(|_| 1.0),
            Arc::new(|_| 0.0),
            Arc::new(|_| 0.0),
            Arc::new(move |_| w),
            Arc::new(|_| 0.0),
            BoundaryConditions::DIRICHLET,
            "weighted",
        )
        .unwrap()
    };
    let tau = Diffeomorphism::identity(0.0, 1.0).unwrap();
    let one = iga_operator(&assemble_iga(&prob(1.0), &tau, 15, 3).unwrap()).eigenvalues().unwrap().values;
    let two = iga_operator(&assemble_iga(&prob(2.0), &tau, 15, 3).unwrap()).eigenvalues().unwrap().values;
    for (a, b) in one.iter().zip(&two) {
        assert!((a / 2.0 - b).abs() < 1e-10 * a);
    }
}

#[test]
fn fixed_eigenvalues_converge() {
    let prob = euler_cauchy(1.0).unwrap();
    let tau = Diffeomorphism::identity(prob.a, prob.b).unwrap();
    let exact = prob.exact.unwrap().eigenvalue(1);
    for eta in [1usize, 2] {
        let errs: Vec<f64> = [10usize, 20, 40]
            .iter()
            .map(|&n| (iga_operator(&assemble_iga(&prob, &tau, n, eta).unwrap()).eigenvalues().unwrap().values[0] - exact).abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "eta={eta}: {errs:?}");
    }
}

#[test]
fn unsupported_problems_rejected() {
    let with_q = SlProblem::new(
        0.0,
        1.0,
        Arc::new(|_| 1.0),
        Arc::new(|_| 0.0),
        Arc::new(|_| 1.0),
        Arc::new(|_| 1.0),
        Arc::new(|_| 0.0),
        BoundaryConditions::DIRICHLET,
        "reaction",
    )
    .unwrap();
    assert!(assemble_iga(&with_q, &Diffeomorphism::identity(0.0, 1.0).unwrap(), 10, 2).is_err());
    assert!(IgaSymbol::new(0).is_err());
}
