//! Plot-ready figure datasets (no rendering).

use std::f64::consts::PI;

use anyhow::Result;
use glt_spectra::analysis::relative_errors;
use glt_spectra::io::{num, Csv};
use glt_spectra::problems::{euler_cauchy, l1_case, ExactSpectrum};
use glt_spectra::symbol::{euler_cauchy_rearrangement, rearrange, rearrange_with, GridConvention};

use crate::compute::{discrete_spectrum, outlier_filter, symbol_for, weighted};
use crate::config::{config_error, grid_map, GridKind, MethodKind, ProblemKind};
use crate::parallel::par_map;
use crate::tables::{Ctx, Output};

pub const FIGURE_IDS: &[&str] = &[
    "eig-symbol-comparison",
    "relative-errors",
    "saturation",
    "eig-distribution",
    "fd-grids",
    "iga-grids",
    "l1-comparison",
];

pub fn build(id: &str, ctx: &Ctx) -> Result<Output> {
    let csv = match id {
        "eig-symbol-comparison" => eig_symbol_comparison(ctx, 100)?,
        "relative-errors" => analytic_errors(ctx, 1.0, &[100, 500, 800], true)?,
        "saturation" => analytic_errors(ctx, 4.0 * PI * PI, &[800, 1000, 2000], false)?,
        "eig-distribution" => eig_symbol_comparison(ctx, 1000)?,
        "fd-grids" => method_grids(ctx, MethodKind::Fd, &[1, 15], 1000)?,
        "iga-grids" => method_grids(ctx, MethodKind::Iga, &[1, 5, 10], 100)?,
        "l1-comparison" => l1_comparison(ctx, 1000)?,
        other => {
            return Err(config_error(format!("unknown figure id {other:?}; known ids: {}", FIGURE_IDS.join(", "))))
        }
    };
    Ok(Output { files: vec![(format!("figure-{id}.csv"), csv)], notes: Vec::new() })
}

fn cap(ctx: &Ctx, n: usize) -> Result<usize> {
    ctx.caps.check("figure", n, ctx.caps.table)?;
    Ok(n)
}

/// Weighted 3-point FD eigenvalues, exact weighted eigenvalues and the exact rearrangement, alpha = 1.
fn eig_symbol_comparison(ctx: &Ctx, n: usize) -> Result<Csv> {
    let n = cap(ctx, n)?;
    let alpha = 1.0;
    let prob = euler_cauchy(alpha)?;
    let tau = grid_map(GridKind::Uniform, ProblemKind::EulerCauchy, &prob, alpha)?;
    let lam = discrete_spectrum(MethodKind::Fd, &prob, &tau, n, 1, &ctx.caps)?.values;
    let lam_w = weighted(&lam, n);
    let exact = weighted(&ExactSpectrum::EulerCauchy { alpha }.first(n), n);
    let w = euler_cauchy_rearrangement(alpha, n)?;
    let mut csv = Csv::new(&["k", "k_over_n", "eig_weighted", "exact_weighted", "omega_tilde", "rel_err"]);
    for k in 1..=n {
        csv.push(vec![
            k.to_string(),
            num(k as f64 / n as f64),
            num(lam_w[k - 1]),
            num(exact[k - 1]),
            num(w.eval(k as f64 / (n + 1) as f64)),
            num((lam_w[k - 1] / exact[k - 1] - 1.0).abs()),
        ]);
    }
    Ok(csv)
}

/// Numerical error of 3-point FD (n = 100) and analytic errors for several `r`.
fn analytic_errors(ctx: &Ctx, alpha: f64, rs: &[usize], with_numerical: bool) -> Result<Csv> {
    let n = 100;
    let prob = euler_cauchy(alpha)?;
    let tau = grid_map(GridKind::Uniform, ProblemKind::EulerCauchy, &prob, alpha)?;
    let lam = discrete_spectrum(MethodKind::Fd, &prob, &tau, n, 1, &ctx.caps)?.values;
    let reference = ExactSpectrum::EulerCauchy { alpha }.first(n);
    let sym = symbol_for(MethodKind::Fd, &prob, &tau, 1)?;
    let reports: Result<Vec<_>> = par_map(ctx.jobs, rs, |&r| {
        let w = rearrange(&sym, r)?;
        Ok(relative_errors(&lam, &reference, &w, n)?)
    })
    .into_iter()
    .collect();
    let reports = reports?;
    let mut header = vec!["k".to_string()];
    if with_numerical {
        header.push("err_num".into());
    } else {
        header.push("c_alpha_k".into());
    }
    header.extend(rs.iter().map(|r| format!("err_analytic_r{r}")));
    let mut csv = Csv::new(&header);
    for k in 1..=n {
        let mut row = vec![k.to_string()];
        if with_numerical {
            row.push(num(reports[0].numerical_err[k - 1]));
        } else {
            row.push(num(glt_spectra::analysis::saturation_constant(alpha, k)));
        }
        row.extend(reports.iter().map(|rep| num(rep.analytic_err[k - 1])));
        csv.push(row);
    }
    Ok(csv)
}

/// Long-format weighted spectra on uniform and exponential grids, alpha = 1.
fn method_grids(ctx: &Ctx, method: MethodKind, etas: &[usize], n: usize) -> Result<Csv> {
    let n = cap(ctx, n)?;
    let alpha = 1.0;
    let mut cells = Vec::new();
    for g in [GridKind::Uniform, GridKind::Exp] {
        for &eta in etas {
            cells.push((g, eta));
        }
    }
    let series: Result<Vec<_>> = par_map(ctx.jobs, &cells, |&(g, eta)| {
        let prob = euler_cauchy(alpha)?;
        let tau = grid_map(g, ProblemKind::EulerCauchy, &prob, alpha)?;
        let lam = discrete_spectrum(method, &prob, &tau, n, eta, &ctx.caps)?.values;
        let filter = match method {
            MethodKind::Iga => Some(outlier_filter(&symbol_for(method, &prob, &tau, eta)?, n)),
            MethodKind::Fd => None,
        };
        let exact = ExactSpectrum::EulerCauchy { alpha }.first(lam.len());
        let outlier_flags: Vec<bool> = match &filter {
            Some(f) => lam.iter().map(|&l| glt_spectra::symbol::is_outlier(l * f.weight, &f.range, f.eps)).collect(),
            None => vec![false; lam.len()],
        };
        Ok((g, eta, lam, exact, outlier_flags))
    })
    .into_iter()
    .collect();
    let mut csv = Csv::new(&["grid", "eta", "k", "k_over_n", "eig_weighted", "exact_weighted", "rel_err", "outlier"]);
    let w = 1.0 / ((n + 1) * (n + 1)) as f64;
    for (g, eta, lam, exact, flags) in series? {
        for k in 1..=lam.len() {
            csv.push(vec![
                g.to_string(),
                eta.to_string(),
                k.to_string(),
                num(k as f64 / n as f64),
                num(lam[k - 1] * w),
                num(exact[k - 1] * w),
                num((lam[k - 1] / exact[k - 1] - 1.0).abs()),
                flags[k - 1].to_string(),
            ]);
        }
    }
    Ok(csv)
}

/// `(n+1)^2 omega_tilde` against the 3-point FD eigenvalues of the L1 problem, r = n.
fn l1_comparison(ctx: &Ctx, n: usize) -> Result<Csv> {
    let n = cap(ctx, n)?;
    let prob = l1_case()?;
    let tau = grid_map(GridKind::Uniform, ProblemKind::L1Case, &prob, 1.0)?;
    let lam = discrete_spectrum(MethodKind::Fd, &prob, &tau, n, 1, &ctx.caps)?.values;
    let w = rearrange_with(&symbol_for(MethodKind::Fd, &prob, &tau, 1)?, n, GridConvention::Spanning)?;
    let omega = w.sample(n);
    let s = ((n + 1) * (n + 1)) as f64;
    let mut csv = Csv::new(&["k", "k_over_n", "omega_scaled", "eig"]);
    for k in 1..=n {
        csv.push(vec![k.to_string(), num(k as f64 / n as f64), num(s * omega[k - 1]), num(lam[k - 1])]);
    }
    Ok(csv)
}
