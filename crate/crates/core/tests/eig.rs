use std::f64::consts::PI;

use glt_spectra::eig::{eigvals_gen_sym, eigvals_general, eigvals_sym, eigvals_sym_tridiagonal, Method};
use glt_spectra::grids::exp_map;
use glt_spectra::fd::{assemble_fd, general_form};
use glt_spectra::iga::assemble_iga;
use glt_spectra::grids::Diffeomorphism;
use glt_spectra::matrix::{DenseMatrix, SymTridiagonal};
use glt_spectra::problems::{dirichlet_laplacian, euler_cauchy};

#[test]
fn toeplitz_tridiagonal_closed_form() {
    let n = 99;
    let t = SymTridiagonal::toeplitz(n, 2.0, -1.0);
    let a = DenseMatrix::from_rows(
        &(0..n)
            .map(|i| (0..n).map(|j| if i == j { 2.0 } else if i.abs_diff(j) == 1 { -1.0 } else { 0.0 }).collect())
            .collect::<Vec<_>>(),
    );
    for s in [eigvals_sym_tridiagonal(&t), eigvals_sym(&a).unwrap()] {
        for (k, v) in s.values.iter().enumerate() {
            assert!((v - (2.0 - 2.0 * ((k + 1) as f64 * PI / 100.0).cos())).abs() < 1e-12);
        }
    }
}

#[test]
fn diagonal_matrix_returns_sorted_diagonal() {
    let s = eigvals_sym(&DenseMatrix::from_diagonal(&[3.0, -1.0, 2.0, 0.5])).unwrap();
    for (got, want) in s.values.iter().zip([-1.0, 0.5, 2.0, 3.0]) {
        assert!((got - want).abs() <= 4.0 * f64::EPSILON * 3.0);
    }
}

#[test]
fn generalized_identity_and_self_pencil() {
    let k = DenseMatrix::from_rows(&[vec![4.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, 2.0]]);
    let a = eigvals_gen_sym(&k, &DenseMatrix::identity(3)).unwrap();
    let b = eigvals_sym(&k).unwrap();
    for (x, y) in a.values.iter().zip(&b.values) {
        assert!((x - y).abs() < 1e-13);
    }
    let same = eigvals_gen_sym(&k, &k).unwrap();
    assert!(same.values.iter().all(|v| (v - 1.0).abs() < 1e-13));
    assert_eq!(same.method, Method::CholeskyReduction);
}

#[test]
fn linear_elements_first_eigenvalue() {
    let pair = assemble_iga(&dirichlet_laplacian(1.0).unwrap(), &Diffeomorphism::identity(0.0, 1.0).unwrap(), 40, 1).unwrap();
    let s = eigvals_gen_sym(&pair.k.to_dense(), &pair.m.to_dense()).unwrap();
    assert!((s.values[0] / (PI * PI) - 1.0).abs() < 1e-3);
}

#[test]
fn general_solver_examples() {
    let rot = eigvals_general(&DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]])).unwrap();
    assert!(rot.values.iter().all(|v| v.abs() < 1e-15));
    let mut im = rot.imag.clone();
    im.sort_by(f64::total_cmp);
    assert!((im[0] + 1.0).abs() < 1e-15 && (im[1] - 1.0).abs() < 1e-15);

    let sys = assemble_fd(&euler_cauchy(1.0).unwrap(), &exp_map(1.0).unwrap(), 60, 2).unwrap();
    let a = general_form(&sys).to_dense();
    assert!(eigvals_general(&a).unwrap().max_imag() < 1e-8 * a.norm_fro());
}

#[test]
fn asymmetric_input_rejected_by_symmetric_solver() {
    let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
    assert!(eigvals_sym(&a).is_err());
}

#[test]
fn indefinite_mass_rejected() {
    let k = DenseMatrix::identity(2);
    let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
    assert!(eigvals_gen_sym(&k, &m).is_err());
}
