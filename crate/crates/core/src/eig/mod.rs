//! Eigenvalue solvers: Sturm bisection for symmetric tridiagonal matrices,
//! Householder reduction for dense symmetric ones, Cholesky reduction for
//! symmetric-definite pencils and Hessenberg QR for general real matrices.
//!
//! All solvers return eigenvalues only. Costs are O(n^2) per eigenvalue for
//! bisection and O(n^3) for the dense paths; callers are expected to keep
//! dense problems at desk scale (a few thousand).

mod bisection;
mod cholesky;
mod householder;
mod qr;

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{BandMatrix, BandedSymmetricMatrix, DenseMatrix, SymTridiagonal};

pub use bisection::{sturm_count, tridiagonal_eigvals_range};
pub use cholesky::cholesky_banded;

/// Relative asymmetry tolerated by the symmetric solvers.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    TridiagonalBisection,
    HouseholderBisection,
    CholeskyReduction,
    HessenbergQr,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::TridiagonalBisection => "tridiagonal-bisection",
            Method::HouseholderBisection => "householder-bisection",
            Method::CholeskyReduction => "cholesky-reduction",
            Method::HessenbergQr => "hessenberg-qr",
        };
        f.write_str(s)
    }
}

/// Eigenvalues sorted by real part, with imaginary parts (all zero for the
/// symmetric solvers) and an a-posteriori bound on the absolute error.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub values: Vec<f64>,
    pub imag: Vec<f64>,
    pub residual_bound: f64,
    pub method: Method,
}

impl SpectrumResult {
    fn real(values: Vec<f64>, residual_bound: f64, method: Method) -> Self {
        let imag = vec![0.0; values.len()];
        SpectrumResult { values, imag, residual_bound, method }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_imag(&self) -> f64 {
        self.imag.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// All eigenvalues of a symmetric tridiagonal matrix.
pub fn eigvals_sym_tridiagonal(t: &SymTridiagonal) -> SpectrumResult {
    let n = t.dim();
    if n == 0 {
        return SpectrumResult::real(Vec::new(), 0.0, Method::TridiagonalBisection);
    }
    let values = tridiagonal_eigvals_range(t, 0, n);
    let bound = 4.0 * f64::EPSILON * t.norm_inf() * (n as f64).sqrt().max(1.0);
    SpectrumResult::real(values, bound, Method::TridiagonalBisection)
}

/// All eigenvalues of a dense symmetric matrix.
pub fn eigvals_sym(a: &DenseMatrix) -> Result<SpectrumResult> {
    let asym = a.asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let n = a.dim();
    if n == 0 {
        return Ok(SpectrumResult::real(Vec::new(), 0.0, Method::HouseholderBisection));
    }
    let mut work = a.clone();
    work.symmetrize();
    let t = householder::tridiagonalize(work);
    let values = tridiagonal_eigvals_range(&t, 0, n);
    let bound = 8.0 * n as f64 * f64::EPSILON * a.norm_fro();
    Ok(SpectrumResult::real(values, bound, Method::HouseholderBisection))
}

/// All eigenvalues of a banded symmetric matrix; bandwidth one goes straight to bisection.
pub fn eigvals_sym_banded(a: &BandedSymmetricMatrix) -> SpectrumResult {
    match a.to_tridiagonal() {
        Some(t) => eigvals_sym_tridiagonal(&t),
        None => eigvals_sym(&a.to_dense()).expect("banded storage is symmetric by construction"),
    }
}

/// Eigenvalues of the pencil (K, M) with K symmetric and M symmetric positive definite,
/// i.e. of M^{-1} K, through M = C C^T and the symmetric matrix C^{-1} K C^{-T}.
pub fn eigvals_gen_sym(k: &DenseMatrix, m: &DenseMatrix) -> Result<SpectrumResult> {
    if k.dim() != m.dim() {
        return Err(Error::InvalidParameter(format!(
            "pencil dimensions differ: {} vs {}",
            k.dim(),
            m.dim()
        )));
    }
    for a in [k, m] {
        let asym = a.asymmetry();
        if asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(asym));
        }
    }
    let c = cholesky::reduce_pencil(k, m, m.bandwidth())?;
    let mut res = eigvals_sym(&c)?;
    res.method = Method::CholeskyReduction;
    Ok(res)
}

/// Banded-storage entry point for [`eigvals_gen_sym`].
pub fn eigvals_gen_sym_banded(k: &BandedSymmetricMatrix, m: &BandedSymmetricMatrix) -> Result<SpectrumResult> {
    if k.dim() != m.dim() {
        return Err(Error::InvalidParameter(format!(
            "pencil dimensions differ: {} vs {}",
            k.dim(),
            m.dim()
        )));
    }
    let c = cholesky::reduce_pencil(&k.to_dense(), &m.to_dense(), m.bandwidth())?;
    let mut res = eigvals_sym(&c)?;
    res.method = Method::CholeskyReduction;
    Ok(res)
}

/// All eigenvalues of a general real matrix, sorted by real part then imaginary part.
pub fn eigvals_general(a: &DenseMatrix) -> Result<SpectrumResult> {
    let n = a.dim();
    if n == 0 {
        return Ok(SpectrumResult {
            values: Vec::new(),
            imag: Vec::new(),
            residual_bound: 0.0,
            method: Method::HessenbergQr,
        });
    }
    let norm = a.norm_fro();
    let (re, im) = qr::eigvals(a.clone())?;
    let mut pairs: Vec<(f64, f64)> = re.into_iter().zip(im).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let (values, imag) = pairs.into_iter().unzip();
    Ok(SpectrumResult {
        values,
        imag,
        residual_bound: 16.0 * n as f64 * f64::EPSILON * norm,
        method: Method::HessenbergQr,
    })
}

/// General band matrix entry point for [`eigvals_general`].
pub fn eigvals_general_banded(a: &BandMatrix) -> Result<SpectrumResult> {
    eigvals_general(&a.to_dense())
}
