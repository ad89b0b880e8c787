//! Table datasets. Each table is a list of independent cells evaluated with
//! [`par_map`] and written as one or more CSV files.

use std::f64::consts::PI;

use anyhow::{Context, Result};
use glt_spectra::analysis::{count_outliers, l1_case_stats, necessary_condition_gap, saturation_constant};
use glt_spectra::grids::{exp_map, Diffeomorphism};
use glt_spectra::io::{num, Csv};
use glt_spectra::problems::{euler_cauchy, ExactSpectrum};
use glt_spectra::symbol::{euler_cauchy_max, euler_cauchy_quantile, euler_cauchy_rearrangement, rearrange};

use crate::compute::{discrete_spectrum, max_error, outlier_filter, symbol_for, weighted};
use crate::config::{Caps, GridKind, MethodKind};
use crate::parallel::par_map;

pub struct Output {
    pub files: Vec<(String, Csv)>,
    pub notes: Vec<String>,
}

pub struct Ctx {
    pub jobs: usize,
    pub caps: Caps,
}

impl Ctx {
    /// Clamps a table size to the cap, recording the reduction.
    fn cap(&self, n: usize, notes: &mut Vec<String>) -> usize {
        if n > self.caps.table {
            notes.push(format!("n={n} reduced to the desk-scale cap {}", self.caps.table));
            self.caps.table
        } else {
            n
        }
    }

    fn cells<T: Sync, R: Send>(&self, items: &[T], f: impl Fn(&T) -> Result<R> + Sync) -> Result<Vec<R>> {
        par_map(self.jobs, items, f).into_iter().collect()
    }
}

pub fn build(id: u32, ctx: &Ctx) -> Result<Output> {
    match id {
        1 => table1(ctx),
        2 => table2(ctx),
        3 => table3(ctx),
        4 => table4(ctx),
        5 => table5(ctx),
        6 => table6(ctx),
        7 => table7(ctx),
        8 => table8(ctx),
        _ => unreachable!("table id validated by the argument parser"),
    }
}

fn grid(kind: GridKind, alpha: f64) -> Result<Diffeomorphism> {
    Ok(match kind {
        GridKind::Uniform => Diffeomorphism::identity(1.0, alpha.sqrt().exp())?,
        GridKind::Exp => exp_map(alpha)?,
    })
}

fn exact(alpha: f64, n: usize) -> Vec<f64> {
    ExactSpectrum::EulerCauchy { alpha }.first(n)
}

/// Sup-norm distance between the exact Euler-Cauchy rearrangement and `2 - 2cos(pi x)`.
fn table1(ctx: &Ctx) -> Result<Output> {
    let n = 1000;
    let alphas = [1.0, 1e-2, 1e-5, 1e-10];
    let rows = ctx.cells(&alphas, |&alpha| {
        let w = euler_cauchy_rearrangement(alpha, n)?;
        let sup = (1..=n)
            .map(|k| k as f64 / (n + 1) as f64)
            .map(|x| (w.eval(x) - (2.0 - 2.0 * (PI * x).cos())).abs())
            .fold(0.0, f64::max);
        Ok(vec![num(alpha), n.to_string(), num(sup)])
    })?;
    let mut csv = Csv::new(&["alpha", "n", "sup_norm"]);
    rows.into_iter().for_each(|r| csv.push(r));
    Ok(Output { files: vec![("table1.csv".into(), csv)], notes: vec!["exact rearrangement (closed-form distribution, bisection + Newton inverse)".into()] })
}

/// Analytic relative error of the exact rearrangement against its saturation constant.
fn table2(ctx: &Ctx) -> Result<Output> {
    let mut cells = Vec::new();
    for alpha in [0.1, 1.0, 2.0, 5.0] {
        for k in [1usize, 5, 10] {
            for n in [100usize, 1000, 10_000] {
                cells.push((alpha, k, n));
            }
        }
    }
    let rows = ctx.cells(&cells, |&(alpha, k, n)| {
        let c = saturation_constant(alpha, k);
        let w = euler_cauchy_quantile(alpha, k as f64 / (n + 1) as f64)?;
        let err = (((n + 1) as f64).powi(2) * w / ExactSpectrum::EulerCauchy { alpha }.eigenvalue(k) - 1.0).abs();
        Ok(vec![num(alpha), k.to_string(), num(c), n.to_string(), num(err), num((err / c - 1.0).abs())])
    })?;
    let mut csv = Csv::new(&["alpha", "k", "c_alpha_k", "n", "analytic_err", "dev_from_saturation"]);
    rows.into_iter().for_each(|r| csv.push(r));
    Ok(Output {
        files: vec![("table2.csv".into(), csv)],
        notes: vec!["no matrix is solved, so n=10000 is not capped".into()],
    })
}

/// Behaviour of the largest eigenvalue: the `k = n` analytic error against the
/// discrete eigenvalue and the attraction of `(n+1)^{-2} lambda_n` to the symbol maximum.
fn table3(ctx: &Ctx) -> Result<Output> {
    let mut notes = Vec::new();
    let mut cells = Vec::new();
    for alpha in [0.5, 1.2, 4.0] {
        for n in [100usize, 1000, 3000] {
            cells.push((alpha, ctx.cap(n, &mut notes)));
        }
    }
    let rows = ctx.cells(&cells, |&(alpha, n)| {
        let prob = euler_cauchy(alpha)?;
        let tau = grid(GridKind::Uniform, alpha)?;
        let lam = discrete_spectrum(MethodKind::Fd, &prob, &tau, n, 1, &ctx.caps)?.values;
        let lam_w = weighted(&lam, n);
        let w = rearrange(&symbol_for(MethodKind::Fd, &prob, &tau, 1)?, n)?;
        let last = lam_w[n - 1];
        let analytic = (w.eval(n as f64 / (n + 1) as f64) / last - 1.0).abs();
        let top = euler_cauchy_max(alpha)? / (PI * PI);
        let attraction = (lam[n - 1] / exact(alpha, n)[n - 1] / top - 1.0).abs();
        Ok(vec![num(alpha), n.to_string(), num(analytic), num(attraction)])
    })?;
    let mut csv = Csv::new(&["alpha", "n", "analytic_err_n", "attraction_dev"]);
    rows.into_iter().for_each(|r| csv.push(r));
    notes.push("rearrangement from r = n symbol samples".into());
    Ok(Output { files: vec![("table3.csv".into(), csv)], notes })
}

/// Maximum relative error of 3-point FD against the necessary-condition gap.
fn table4(ctx: &Ctx) -> Result<Output> {
    let mut notes = Vec::new();
    let mut cells = Vec::new();
    for alpha in [0.5, 1.0, 1.2, 3.0] {
        for n in [100usize, 1000, 5000] {
            cells.push((alpha, ctx.cap(n, &mut notes)));
        }
    }
    let rows = ctx.cells(&cells, |&(alpha, n)| {
        let prob = euler_cauchy(alpha)?;
        let tau = grid(GridKind::Uniform, alpha)?;
        let lam = discrete_spectrum(MethodKind::Fd, &prob, &tau, n, 1, &ctx.caps)?.values;
        let m = max_error(&lam, &exact(alpha, n), None)?;
        let grid_n = n;
        let g = necessary_condition_gap(|x| euler_cauchy_quantile(alpha, x).unwrap_or(f64::NAN), 1.0, grid_n);
        Ok(vec![
            num(alpha),
            n.to_string(),
            num(m.max),
            num(m.argmax_k as f64 / n as f64),
            num(g.gap),
            num(g.argmax_x),
            num((m.max / g.gap - 1.0).abs()),
        ])
    })?;
    let mut csv = Csv::new(&["alpha", "n", "max_rel_err", "argmax_k_over_n", "gap", "gap_argmax_x", "ratio_dev"]);
    rows.into_iter().for_each(|r| csv.push(r));
    notes.push("gap maximized over the eigenvalue sample points x = k/(n+1)".into());
    Ok(Output { files: vec![("table4.csv".into(), csv)], notes })
}

/// FD maximum relative error on uniform and exponential grids for several orders.
fn table5(ctx: &Ctx) -> Result<Output> {
    let mut notes = Vec::new();
    let n = ctx.cap(1000, &mut notes);
    let alpha = 1.0;
    let mut cells = Vec::new();
    for g in [GridKind::Uniform, GridKind::Exp] {
        for eta in [1usize, 10, 15] {
            cells.push((g, eta));
        }
    }
    let rows = ctx.cells(&cells, |&(g, eta)| {
        let prob = euler_cauchy(alpha)?;
        let spec = discrete_spectrum(MethodKind::Fd, &prob, &grid(g, alpha)?, n, eta, &ctx.caps)?;
        let m = max_error(&spec.values, &exact(alpha, n), None)?;
        Ok(vec![g.to_string(), eta.to_string(), n.to_string(), num(m.max), m.argmax_k.to_string(), spec.method.to_string()])
    })?;
    let mut csv = Csv::new(&["grid", "eta", "n", "max_rel_err", "argmax_k", "solver"]);
    rows.into_iter().for_each(|r| csv.push(r));
    Ok(Output { files: vec![("table5.csv".into(), csv)], notes })
}

/// IgA maximum relative error (outliers excluded) and outlier counts.
fn table6(ctx: &Ctx) -> Result<Output> {
    let alpha = 1.0;
    let mut cells = Vec::new();
    for g in [GridKind::Uniform, GridKind::Exp] {
        for eta in [1usize, 5, 10] {
            cells.push((g, eta, 100usize));
        }
    }
    let iga_cell = |&(g, eta, n): &(GridKind, usize, usize)| -> Result<(usize, glt_spectra::analysis::MaxError, usize)> {
        let prob = euler_cauchy(alpha)?;
        let tau = grid(g, alpha)?;
        let lam = discrete_spectrum(MethodKind::Iga, &prob, &tau, n, eta, &ctx.caps)?.values;
        let filter = outlier_filter(&symbol_for(MethodKind::Iga, &prob, &tau, eta)?, n);
        let m = max_error(&lam, &exact(alpha, lam.len()), Some(&filter))?;
        Ok((lam.len(), m, count_outliers(&lam, &filter)))
    };
    let rows = ctx.cells(&cells, |c| {
        let (dim, m, outliers) = iga_cell(c)?;
        Ok(vec![c.0.to_string(), c.1.to_string(), c.2.to_string(), dim.to_string(), num(m.max), m.argmax_k.to_string(), outliers.to_string()])
    })?;
    let mut errors = Csv::new(&["grid", "eta", "n", "dim", "max_rel_err", "argmax_k", "outliers"]);
    rows.into_iter().for_each(|r| errors.push(r));

    let mut counts_cells = Vec::new();
    for eta in [1usize, 2, 3, 4, 5, 10] {
        for n in [50usize, 100] {
            counts_cells.push((GridKind::Exp, eta, n));
        }
    }
    let rows = ctx.cells(&counts_cells, |c| {
        let (dim, _, outliers) = iga_cell(c)?;
        Ok(vec![c.1.to_string(), c.2.to_string(), dim.to_string(), outliers.to_string()])
    })?;
    let mut counts = Csv::new(&["eta", "n", "dim", "outliers"]);
    rows.into_iter().for_each(|r| counts.push(r));
    Ok(Output {
        files: vec![("table6.csv".into(), errors), ("table6_outliers.csv".into(), counts)],
        notes: vec![format!(
            "outliers: (n+1)^-2 lambda outside the symbol's essential range widened by {} of its width",
            glt_spectra::analysis::OUTLIER_EPS
        )],
    })
}

/// Necessary-condition check for higher orders: FD eta=5 and IgA eta=4, both grids.
fn table7(ctx: &Ctx) -> Result<Output> {
    let mut notes = Vec::new();
    let mut cells = Vec::new();
    for (method, eta) in [(MethodKind::Fd, 5usize), (MethodKind::Iga, 4)] {
        for g in [GridKind::Uniform, GridKind::Exp] {
            for alpha in [0.1, 3.0] {
                for n in [100usize, 1000] {
                    cells.push((method, eta, g, alpha, ctx.cap(n, &mut notes)));
                }
            }
        }
    }
    let rows = ctx.cells(&cells, |&(method, eta, g, alpha, n)| {
        let prob = euler_cauchy(alpha)?;
        let tau = grid(g, alpha)?;
        let lam = discrete_spectrum(method, &prob, &tau, n, eta, &ctx.caps)?.values;
        let sym = symbol_for(method, &prob, &tau, eta)?;
        let filter = (method == MethodKind::Iga).then(|| outlier_filter(&sym, n));
        let m = max_error(&lam, &exact(alpha, lam.len()), filter.as_ref())?;
        let w = rearrange(&sym, n)?;
        let gap = necessary_condition_gap(|x| w.eval(x), 1.0, n);
        Ok(vec![
            method.to_string(),
            eta.to_string(),
            g.to_string(),
            num(alpha),
            n.to_string(),
            num(m.max),
            num(m.argmax_k as f64 / n as f64),
            num(gap.gap),
            num((m.max / gap.gap - 1.0).abs()),
        ])
    })?;
    let mut csv =
        Csv::new(&["method", "eta", "grid", "alpha", "n", "max_rel_err", "argmax_k_over_n", "gap", "ratio_dev"]);
    rows.into_iter().for_each(|r| csv.push(r));
    notes.push("rearrangement from r = n symbol samples; IgA outliers excluded".into());
    Ok(Output { files: vec![("table7.csv".into(), csv)], notes })
}

/// Statistics of the unbounded L1 diffusion coefficient.
fn table8(ctx: &Ctx) -> Result<Output> {
    let mut notes = Vec::new();
    let ns: Vec<usize> = [100usize, 1000, 2000].iter().map(|&n| ctx.cap(n, &mut notes)).collect();
    let rows = ctx.cells(&ns, |&n| {
        let s = l1_case_stats(n, n).with_context(|| format!("L1 statistics at n={n}"))?;
        Ok(vec![
            n.to_string(),
            num(s.sup_abs_err),
            num(s.max_analytic_rel_err),
            num(s.tail_ratio),
            num(s.eig_ratio),
            num(s.mean_eig),
        ])
    })?;
    let mut csv = Csv::new(&["n", "sup_abs_err", "max_analytic_rel_err", "tail_ratio", "eig_ratio", "mean_eig"]);
    rows.into_iter().for_each(|r| csv.push(r));
    notes.push("r = n; symbol samples on the spanning node convention (j-1)/(r^2-1), read at (k-1)/(n-1)".into());
    Ok(Output { files: vec![("table8.csv".into(), csv)], notes })
}
