//! Discretize-and-solve helpers shared by the subcommands.

use anyhow::Result;
use glt_spectra::analysis::{max_relative_error, MaxError, OutlierFilter, OUTLIER_EPS};
use glt_spectra::eig::SpectrumResult;
use glt_spectra::fd::{assemble_fd, fd_operator};
use glt_spectra::grids::Diffeomorphism;
use glt_spectra::iga::{assemble_iga, iga_operator};
use glt_spectra::problems::SlProblem;
use glt_spectra::symbol::{essential_range, fd_symbol_for, iga_symbol_for, SeparableSymbol};

use crate::config::{Caps, MethodKind};

/// Size of the discrete operator: `n` for FD, `n + eta - 1` for IgA.
pub fn operator_dim(method: MethodKind, n: usize, eta: usize) -> usize {
    match method {
        MethodKind::Fd => n,
        MethodKind::Iga => n + eta - 1,
    }
}

/// Eigenvalues of the discretized operator, with the size checked against the caps
/// of the solver path that will be taken.
pub fn discrete_spectrum(
    method: MethodKind,
    prob: &SlProblem,
    tau: &Diffeomorphism,
    n: usize,
    eta: usize,
    caps: &Caps,
) -> Result<SpectrumResult> {
    match method {
        MethodKind::Fd => {
            let sys = assemble_fd(prob, tau, n, eta)?;
            let op = fd_operator(&sys);
            match op.tridiagonal() {
                Some(_) => caps.check("tridiagonal operator", n, caps.bisection)?,
                None => caps.check("dense operator", n, caps.dense)?,
            }
            Ok(op.eigenvalues()?)
        }
        MethodKind::Iga => {
            caps.check("Galerkin pencil", operator_dim(method, n, eta), caps.dense)?;
            let pair = assemble_iga(prob, tau, n, eta)?;
            Ok(iga_operator(&pair).eigenvalues()?)
        }
    }
}

pub fn symbol_for(method: MethodKind, prob: &SlProblem, tau: &Diffeomorphism, eta: usize) -> Result<SeparableSymbol> {
    Ok(match method {
        MethodKind::Fd => fd_symbol_for(prob, tau, eta)?,
        MethodKind::Iga => iga_symbol_for(prob, tau, eta)?,
    })
}

/// Outlier filter on `(n+1)^{-2}`-weighted eigenvalues against the symbol's essential range.
pub fn outlier_filter(sym: &SeparableSymbol, n: usize) -> OutlierFilter {
    OutlierFilter { range: essential_range(sym), eps: OUTLIER_EPS, weight: 1.0 / ((n + 1) * (n + 1)) as f64 }
}

/// Maximum relative error against `reference`, excluding outliers when a filter is given.
pub fn max_error(values: &[f64], reference: &[f64], filter: Option<&OutlierFilter>) -> Result<MaxError> {
    Ok(max_relative_error(values, &reference[..values.len()], filter)?)
}

pub fn weighted(values: &[f64], n: usize) -> Vec<f64> {
    let w = 1.0 / ((n + 1) * (n + 1)) as f64;
    values.iter().map(|v| v * w).collect()
}
