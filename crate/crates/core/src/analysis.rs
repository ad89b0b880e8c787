//! Error functionals comparing discrete spectra with reference spectra and
//! with sampled symbols, plus two self-contained demonstration statistics.

use std::f64::consts::PI;

use crate::eig;
use crate::error::{invalid, Error, Result};
use crate::fd;
use crate::grids::Diffeomorphism;
use crate::problems::l1_case;
use crate::symbol::{fd_symbol_for, is_outlier, rearrange_with, EssentialRange, GridConvention, MonotoneRearrangement};

/// Default width of the outlier band, as a fraction of the essential range.
pub const OUTLIER_EPS: f64 = 0.01;

/// Per-index relative errors of a discrete spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub k: Vec<usize>,
    /// `|lambda_k / lambda_k^ref - 1|`.
    pub numerical_err: Vec<f64>,
    /// `|(n + 1)^2 omega_tilde(k/(n + 1)) / lambda_k^ref - 1|`.
    pub analytic_err: Vec<f64>,
    /// Largest numerical error.
    pub max_err: f64,
    pub argmax_k: usize,
    pub outliers_excluded: usize,
}

fn check_reference(reference: &[f64], n: usize) -> Result<()> {
    if reference.len() < n {
        return Err(invalid(format!("reference has {} values, need {n}", reference.len())));
    }
    if let Some(k) = reference[..n].iter().position(|&v| v == 0.0) {
        return Err(invalid(format!("reference eigenvalue {} is zero", k + 1)));
    }
    Ok(())
}

/// Numerical and analytic relative errors for the first `n` eigenvalues.
pub fn relative_errors(
    discrete: &[f64],
    reference: &[f64],
    rearr: &MonotoneRearrangement,
    n: usize,
) -> Result<ErrorReport> {
    if discrete.len() != n {
        return Err(invalid(format!("discrete spectrum has {} values, expected {n}", discrete.len())));
    }
    check_reference(reference, n)?;
    let scale = ((n + 1) * (n + 1)) as f64;
    let numerical_err: Vec<f64> = discrete.iter().zip(reference).map(|(d, r)| (d / r - 1.0).abs()).collect();
    let analytic_err = (1..=n)
        .map(|k| (scale * rearr.eval(k as f64 / (n + 1) as f64) / reference[k - 1] - 1.0).abs())
        .collect();
    let (argmax, max_err) = argmax(&numerical_err);
    Ok(ErrorReport { k: (1..=n).collect(), numerical_err, analytic_err, max_err, argmax_k: argmax + 1, outliers_excluded: 0 })
}

fn argmax(v: &[f64]) -> (usize, f64) {
    v.iter().enumerate().fold((0, f64::NEG_INFINITY), |best, (i, &x)| if x > best.1 { (i, x) } else { best })
}

/// `c_{alpha,k} = (alpha/4) / (k^2 pi^2 + alpha/4)`: the relative error that
/// sampling the Euler-Cauchy symbol at `k/(n+1)` cannot go below.
pub fn saturation_constant(alpha: f64, k: usize) -> f64 {
    let s = alpha / 4.0;
    s / ((k * k) as f64 * PI * PI + s)
}

/// Largest deviation of a rearranged symbol from the continuous Weyl profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    /// `max_x |omega_tilde(x) B^2 / (x^2 pi^2) - 1|`.
    pub gap: f64,
    pub argmax_x: f64,
    pub grid_n: usize,
}

/// Maximises `|omega_tilde(x) B^2/(x^2 pi^2) - 1|` over `x = k/(grid_n + 1)`, `k = 1..=grid_n`.
pub fn necessary_condition_gap(omega_tilde: impl Fn(f64) -> f64, length: f64, grid_n: usize) -> GapReport {
    let mut gap = 0.0;
    let mut argmax_x = 0.0;
    for k in 1..=grid_n {
        let x = k as f64 / (grid_n + 1) as f64;
        let v = (omega_tilde(x) * length * length / (x * x * PI * PI) - 1.0).abs();
        if v > gap {
            gap = v;
            argmax_x = x;
        }
    }
    GapReport { gap, argmax_x, grid_n }
}

/// Outlier exclusion for [`max_relative_error`]: eigenvalues are multiplied by
/// `weight` before being compared with the (widened) essential range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutlierFilter {
    pub range: EssentialRange,
    pub eps: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxError {
    pub max: f64,
    /// 1-based index of the maximum.
    pub argmax_k: usize,
    pub excluded: usize,
}

/// `max_k |lambda_k / lambda_k^ref - 1|`, optionally skipping outliers.
pub fn max_relative_error(discrete: &[f64], reference: &[f64], filter: Option<&OutlierFilter>) -> Result<MaxError> {
    let n = discrete.len();
    check_reference(reference, n)?;
    let mut best = MaxError { max: f64::NEG_INFINITY, argmax_k: 0, excluded: 0 };
    for (k, (&d, &r)) in discrete.iter().zip(reference).enumerate() {
        if let Some(f) = filter {
            if is_outlier(d * f.weight, &f.range, f.eps) {
                best.excluded += 1;
                continue;
            }
        }
        let e = (d / r - 1.0).abs();
        if e > best.max {
            best.max = e;
            best.argmax_k = k + 1;
        }
    }
    if best.argmax_k == 0 {
        return Err(Error::Unsupported("every eigenvalue was excluded as an outlier".into()));
    }
    Ok(best)
}

/// Number of weighted eigenvalues outside the widened essential range.
pub fn count_outliers(discrete: &[f64], filter: &OutlierFilter) -> usize {
    discrete.iter().filter(|&&d| is_outlier(d * filter.weight, &filter.range, filter.eps)).count()
}

/// Statistics comparing the 3-point FD spectrum of the `x^{-1/2}` diffusion
/// problem with its sampled (unbounded) symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Stats {
    pub n: usize,
    /// `max_k |omega_k - lambda_k|` with `lambda` the `(n + 1)^{-2}`-weighted eigenvalues.
    pub sup_abs_err: f64,
    /// `max_k |omega_k / lambda_k - 1|`.
    pub max_analytic_rel_err: f64,
    /// `omega_n / sqrt(n + 1)`.
    pub tail_ratio: f64,
    /// `lambda_n / sqrt(n + 1)`.
    pub eig_ratio: f64,
    /// Mean weighted eigenvalue.
    pub mean_eig: f64,
}

/// L1-coefficient statistics; symbol samples use the spanning node convention
/// (`r^2` sorted samples on `(j-1)/(r^2-1)`, evaluated at `(k-1)/(n-1)`).
pub fn l1_case_stats(n: usize, r: usize) -> Result<L1Stats> {
    if n < 10 {
        return Err(invalid(format!("n must be at least 10, got {n}")));
    }
    let prob = l1_case()?;
    let tau = Diffeomorphism::identity(prob.a, prob.b)?;
    let sys = fd::assemble_fd(&prob, &tau, n, 1)?;
    let t = fd::fd_operator(&sys)
        .tridiagonal()
        .ok_or_else(|| Error::Unsupported("3-point operator on a uniform grid should be symmetric tridiagonal".into()))?;
    let w = 1.0 / ((n + 1) * (n + 1)) as f64;
    let lambda: Vec<f64> = eig::eigvals_sym_tridiagonal(&t).values.into_iter().map(|v| v * w).collect();
    let sym = fd_symbol_for(&prob, &tau, 1)?;
    let rearr = rearrange_with(&sym, r, GridConvention::Spanning)?;
    let omega = rearr.sample(n);
    let mut sup_abs_err = 0.0f64;
    let mut max_rel = 0.0f64;
    for (o, l) in omega.iter().zip(&lambda) {
        sup_abs_err = sup_abs_err.max((o - l).abs());
        max_rel = max_rel.max((o / l - 1.0).abs());
    }
    let root = ((n + 1) as f64).sqrt();
    Ok(L1Stats {
        n,
        sup_abs_err,
        max_analytic_rel_err: max_rel,
        tail_ratio: omega[n - 1] / root,
        eig_ratio: lambda[n - 1] / root,
        mean_eig: lambda.iter().sum::<f64>() / n as f64,
    })
}

/// Worst relative gap between the 5-point Laplacian spectrum on the unit
/// square and the continuous one, with the limiting bound `1 - 4/pi^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Laplace2dReport {
    pub n: usize,
    pub max_rel_err: f64,
    /// 1-based index of the maximum in the sorted spectra.
    pub argmax_k: usize,
    pub bound: f64,
}

pub const LAPLACE2D_MAX_N: usize = 256;

/// Compares the sorted values `(n+1)^2 (4 - 2cos(i pi/(n+1)) - 2cos(j pi/(n+1)))`
/// with the sorted `pi^2 (i^2 + j^2)`, both over the same index set `1 <= i, j <= n`.
pub fn laplace2d_gap(n: usize) -> Result<Laplace2dReport> {
    if n < 1 || n > LAPLACE2D_MAX_N {
        return Err(invalid(format!("n must be in 1..={LAPLACE2D_MAX_N}, got {n}")));
    }
    let h = PI / (n + 1) as f64;
    let s = ((n + 1) * (n + 1)) as f64;
    let one_d: Vec<f64> = (1..=n).map(|i| 2.0 - 2.0 * (i as f64 * h).cos()).collect();
    let mut disc = Vec::with_capacity(n * n);
    for &a in &one_d {
        for &b in &one_d {
            disc.push(s * (a + b));
        }
    }
    disc.sort_unstable_by(f64::total_cmp);
    let mut cont = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            cont.push(PI * PI * (i * i + j * j) as f64);
        }
    }
    cont.sort_unstable_by(f64::total_cmp);
    let rel: Vec<f64> = disc.iter().zip(&cont).map(|(d, c)| (d / c - 1.0).abs()).collect();
    let (k, max_rel_err) = argmax(&rel);
    Ok(Laplace2dReport { n, max_rel_err, argmax_k: k + 1, bound: 1.0 - 8.0 / (2.0 * PI * PI) })
}
