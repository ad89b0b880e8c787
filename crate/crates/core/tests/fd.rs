use std::f64::consts::PI;
use std::sync::Arc;

use glt_spectra::eig::{eigvals_general, eigvals_sym_tridiagonal};
use glt_spectra::fd::{assemble_fd, fd_coefficients, fd_operator, fd_symbol, general_form};
use glt_spectra::grids::{exp_map, Diffeomorphism};
use glt_spectra::problems::{dirichlet_laplacian, euler_cauchy, BoundaryConditions, SlProblem};

fn laplacian(a: f64, b: f64, w: f64) -> SlProblem {
    SlProblem::new(
        a,
        b,
        Arc::new(|_| 1.0),
        Arc::new(|_| 0.0),
        Arc::new(|_| 0.0),
        Arc::new(move |_| w),
        Arc::new(|_| 0.0),
        BoundaryConditions::DIRICHLET,
        "laplacian",
    )
    .unwrap()
}

#[test]
fn coefficient_examples() {
    let c1 = fd_coefficients(1).unwrap();
    assert_eq!(c1.d, vec![2.0, -1.0]);
    let c2 = fd_coefficients(2).unwrap();
    for (got, want) in c2.d.iter().zip([2.5, -4.0 / 3.0, 1.0 / 12.0]) {
        assert!((got - want).abs() < 1e-15);
    }
    let c15 = fd_coefficients(15).unwrap();
    assert!(c15.symbol(0.0).abs() < 1e-12);
    assert!((c15.d[1] + 2.0 * 15.0 / 16.0).abs() < 1e-12);
}

#[test]
fn symbol_examples() {
    assert!((fd_symbol(1).unwrap()(PI) - 4.0).abs() < 1e-15);
    assert!((fd_symbol(2).unwrap()(PI) - 16.0 / 3.0).abs() < 1e-14);
    for eta in 1..=15 {
        let f = fd_symbol(eta).unwrap();
        assert!((f(1e-3) / 1e-6 - 1.0).abs() < 1e-4, "eta={eta}");
    }
}

#[test]
fn toeplitz_reduction_on_other_interval() {
    let (a, b) = (1.0, 3.5);
    for eta in [1usize, 2, 3, 5] {
        let n = 4 * eta;
        let sys = assemble_fd(&laplacian(a, b, 1.0), &Diffeomorphism::identity(a, b).unwrap(), n, eta).unwrap();
        let d = fd_coefficients(eta).unwrap().d;
        let scale = (b - a).powi(2) / ((n + 1) * (n + 1)) as f64;
        for i in 0..n {
            for j in 0..n {
                let k = i.abs_diff(j);
                let want = if k <= eta { d[k] } else { 0.0 };
                assert!((sys.l.get(i, j) * scale - want).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn three_point_laplacian_samples_symbol_exactly() {
    let n = 40;
    let sys = assemble_fd(&dirichlet_laplacian(1.0).unwrap(), &Diffeomorphism::identity(0.0, 1.0).unwrap(), n, 1).unwrap();
    let t = fd_operator(&sys).tridiagonal().unwrap();
    let lam = eigvals_sym_tridiagonal(&t).values;
    for (k, l) in lam.iter().enumerate() {
        let want = 2.0 - 2.0 * (((k + 1) as f64) * PI / (n + 1) as f64).cos();
        assert!((l / ((n + 1) * (n + 1)) as f64 - want).abs() < 1e-12);
    }
}

#[test]
fn uniform_grid_operator_is_symmetric() {
    let prob = euler_cauchy(1.0).unwrap();
    let tau = Diffeomorphism::identity(prob.a, prob.b).unwrap();
    for eta in [1, 3, 6] {
        assert!(fd_operator(&assemble_fd(&prob, &tau, 30, eta).unwrap()).is_symmetric());
    }
}

#[test]
fn symmetric_and_general_forms_agree_on_mapped_grid() {
    let prob = euler_cauchy(1.0).unwrap();
    let tau = exp_map(1.0).unwrap();
    let sys = assemble_fd(&prob, &tau, 50, 1).unwrap();
    let op = fd_operator(&sys).eigenvalues().unwrap().values;
    let gen = eigvals_general(&general_form(&sys).to_dense()).unwrap();
    assert!(gen.max_imag() < 1e-8 * general_form(&sys).norm_max());
    for (a, b) in op.iter().zip(&gen.values) {
        assert!((a / b - 1.0).abs() < 1e-9);
    }
}

#[test]
fn weight_scales_spectrum() {
    let tau = Diffeomorphism::identity(0.0, 1.0).unwrap();
    let one = fd_operator(&assemble_fd(&laplacian(0.0, 1.0, 1.0), &tau, 25, 2).unwrap()).eigenvalues().unwrap();
    let two = fd_operator(&assemble_fd(&laplacian(0.0, 1.0, 2.0), &tau, 25, 2).unwrap()).eigenvalues().unwrap();
    for (a, b) in one.values.iter().zip(&two.values) {
        assert!((a / 2.0 - b).abs() < 1e-12 * a);
    }
}

#[test]
fn fixed_eigenvalues_converge_at_order_two() {
    let prob = euler_cauchy(1.0).unwrap();
    let tau = Diffeomorphism::identity(prob.a, prob.b).unwrap();
    let exact = prob.exact.unwrap().eigenvalue(2);
    let err = |n| {
        let t = fd_operator(&assemble_fd(&prob, &tau, n, 1).unwrap()).tridiagonal().unwrap();
        (eigvals_sym_tridiagonal(&t).values[1] - exact).abs()
    };
    let ratio = err(100) / err(200);
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn invalid_sizes_rejected() {
    let prob = euler_cauchy(1.0).unwrap();
    let tau = Diffeomorphism::identity(prob.a, prob.b).unwrap();
    assert!(assemble_fd(&prob, &tau, 5, 3).is_err());
    assert!(fd_coefficients(0).is_err());
    assert!(fd_coefficients(21).is_err());
}
