mod compute;
mod config;
mod figures;
mod parallel;
mod tables;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use glt_spectra::io::{num, rearrangement_csv, spectrum_csv, Csv};
use glt_spectra::symbol::{euler_cauchy_rearrangement, rearrange, sample_points, GridConvention};

use compute::{discrete_spectrum, operator_dim, symbol_for};
use config::{config_error, grid_map, positive_alpha, problem, Caps, ConfigError, GridKind, MethodKind, ProblemKind};
use tables::{Ctx, Output};

/// Spectra of discretized Sturm-Liouville operators and their spectral symbols.
#[derive(Parser, Debug)]
#[command(name = "glt-spectra", version, about)]
struct Cli {
    /// Output directory for CSV files and provenance.txt.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads for independent sub-computations; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues of one discretized operator.
    Spectrum(SpectrumArgs),
    /// Monotone rearrangement of a spectral symbol sampled at k/(n+1).
    Rearrange(RearrangeArgs),
    /// Regenerate a table dataset (1-8).
    Table {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=8))]
        id: u32,
    },
    /// Regenerate a figure dataset.
    Figure {
        /// One of: eig-symbol-comparison, relative-errors, saturation, eig-distribution,
        /// fd-grids, iga-grids, l1-comparison.
        id: String,
    },
}

#[derive(Args, Debug)]
struct ProblemArgs {
    #[arg(long, value_enum, default_value_t = ProblemKind::EulerCauchy)]
    problem: ProblemKind,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Number of interior grid nodes (FD) or interior breakpoints (IgA).
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// FD half-width or B-spline degree.
    #[arg(long, default_value_t = 1)]
    eta: usize,
    #[arg(long, value_enum, default_value_t = GridKind::Uniform)]
    grid: GridKind,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = MethodKind::Fd)]
    method: MethodKind,
    #[command(flatten)]
    common: ProblemArgs,
}

#[derive(Args, Debug)]
struct RearrangeArgs {
    #[arg(long, value_enum, default_value_t = MethodKind::Fd)]
    method: MethodKind,
    #[command(flatten)]
    common: ProblemArgs,
    /// Symbol samples per direction (r x r grid).
    #[arg(long, default_value_t = 1000)]
    r: usize,
    /// Use the closed-form Euler-Cauchy rearrangement instead of sampling.
    #[arg(long)]
    exact: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for configuration errors, 3 for numerical failures, 1 for anything else (e.g. I/O).
fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    if let Some(err) = e.downcast_ref::<glt_spectra::Error>() {
        use glt_spectra::Error::*;
        return match err {
            InvalidParameter(_) | OutOfRange(_) | Unsupported(_) | TooLarge { .. } => 2,
            _ => 3,
        };
    }
    1
}

fn run(cli: &Cli) -> Result<()> {
    if cli.jobs == 0 {
        return Err(config_error("--jobs must be at least 1"));
    }
    let caps = Caps::from_env()?;
    let ctx = Ctx { jobs: cli.jobs, caps };
    let (output, params) = match &cli.command {
        Command::Spectrum(a) => (cmd_spectrum(a, &caps)?, describe_problem(&a.common, Some(a.method))),
        Command::Rearrange(a) => (
            cmd_rearrange(a, &caps)?,
            format!("{} r={} exact={}", describe_problem(&a.common, Some(a.method)), a.r, a.exact),
        ),
        Command::Table { id } => (tables::build(*id, &ctx)?, format!("table {id}")),
        Command::Figure { id } => (figures::build(id, &ctx)?, format!("figure {id}")),
    };
    write_output(&cli.out, &output, &params, &caps)
}

fn describe_problem(p: &ProblemArgs, method: Option<MethodKind>) -> String {
    let m = method.map(|m| format!("method={m} ")).unwrap_or_default();
    format!("{m}problem={} alpha={} n={} eta={} grid={}", p.problem, num(p.alpha), p.n, p.eta, p.grid)
}

fn validate(p: &ProblemArgs) -> Result<()> {
    if p.n == 0 {
        return Err(config_error("--n must be at least 1"));
    }
    if p.eta == 0 {
        return Err(config_error("--eta must be at least 1"));
    }
    positive_alpha(p.alpha)?;
    if p.problem == ProblemKind::L1Case && p.grid == GridKind::Exp {
        return Err(config_error("l1-case supports only --grid uniform"));
    }
    Ok(())
}

fn cmd_spectrum(a: &SpectrumArgs, caps: &Caps) -> Result<Output> {
    let p = &a.common;
    validate(p)?;
    let name = format!("spectrum-{}-{}-n{}-eta{}-{}.csv", a.method, p.problem, p.n, p.eta, p.grid);
    if p.problem == ProblemKind::Laplace2d {
        return laplace2d_spectrum(a, caps, name);
    }
    if a.method == MethodKind::Fd && p.n < 2 * p.eta {
        return Err(config_error(format!("FD needs n >= 2 eta, got n={} eta={}", p.n, p.eta)));
    }
    if a.method == MethodKind::Iga && p.n < 2 {
        return Err(config_error("IgA needs n >= 2"));
    }
    let prob = problem(p.problem, p.alpha)?;
    let tau = grid_map(p.grid, p.problem, &prob, p.alpha)?;
    let spec = discrete_spectrum(a.method, &prob, &tau, p.n, p.eta, caps)?;
    debug_assert_eq!(spec.len(), operator_dim(a.method, p.n, p.eta));
    Ok(Output {
        files: vec![(name, spectrum_csv(&spec))],
        notes: vec![format!("solver: {}; a-posteriori error bound {}", spec.method, num(spec.residual_bound))],
    })
}

/// Closed-form eigenvalues of the 5-point Laplacian on the unit square, sorted.
fn laplace2d_spectrum(a: &SpectrumArgs, caps: &Caps, name: String) -> Result<Output> {
    let p = &a.common;
    if a.method != MethodKind::Fd || p.eta != 1 || p.grid != GridKind::Uniform {
        return Err(config_error("laplace-2d supports only --method fd --eta 1 --grid uniform"));
    }
    caps.check("2-D grid side", p.n, caps.dense)?;
    let n = p.n;
    let h = std::f64::consts::PI / (n + 1) as f64;
    let s = ((n + 1) * (n + 1)) as f64;
    let one_d: Vec<f64> = (1..=n).map(|i| 2.0 - 2.0 * (i as f64 * h).cos()).collect();
    let mut vals: Vec<f64> = one_d.iter().flat_map(|&x| one_d.iter().map(move |&y| s * (x + y))).collect();
    vals.sort_by(f64::total_cmp);
    let mut csv = Csv::new(&["k", "lambda_re", "lambda_im"]);
    for (k, v) in vals.iter().enumerate() {
        csv.push(vec![(k + 1).to_string(), num(*v), num(0.0)]);
    }
    Ok(Output { files: vec![(name, csv)], notes: vec!["closed-form tensor-product eigenvalues".into()] })
}

fn cmd_rearrange(a: &RearrangeArgs, caps: &Caps) -> Result<Output> {
    let p = &a.common;
    validate(p)?;
    if p.problem == ProblemKind::Laplace2d {
        return Err(config_error("rearrange does not support laplace-2d"));
    }
    caps.check("sample count", p.n, caps.bisection)?;
    let xs = sample_points(p.n, GridConvention::Interior);
    let (vals, note) = if a.exact {
        if p.problem != ProblemKind::EulerCauchy || a.method != MethodKind::Fd || p.eta != 1 || p.grid != GridKind::Uniform {
            return Err(config_error(
                "--exact is available only for euler-cauchy with --method fd --eta 1 --grid uniform",
            ));
        }
        let w = euler_cauchy_rearrangement(p.alpha, p.n)?;
        (xs.iter().map(|&x| w.eval(x)).collect::<Vec<_>>(), "closed-form distribution function".to_string())
    } else {
        if a.r < 2 {
            return Err(config_error("--r must be at least 2"));
        }
        caps.check("symbol grid r", a.r, caps.dense)?;
        let prob = problem(p.problem, p.alpha)?;
        let tau = grid_map(p.grid, p.problem, &prob, p.alpha)?;
        let w = rearrange(&symbol_for(a.method, &prob, &tau, p.eta)?, a.r)?;
        (xs.iter().map(|&x| w.eval(x)).collect(), format!("sorted r x r samples, r={}", a.r))
    };
    let name = format!(
        "rearrangement-{}-{}-n{}-eta{}-{}-{}.csv",
        a.method,
        p.problem,
        p.n,
        p.eta,
        p.grid,
        if a.exact { "exact".to_string() } else { format!("r{}", a.r) }
    );
    Ok(Output { files: vec![(name, rearrangement_csv(&xs, &vals))], notes: vec![note] })
}

fn write_output(dir: &Path, out: &Output, params: &str, caps: &Caps) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, csv) in &out.files {
        let path = dir.join(name);
        csv.write(&path).with_context(|| format!("writing {}", path.display()))?;
        println!("{}", path.display());
    }
    let mut prov = String::new();
    prov.push_str(&format!("glt-spectra {}\n", env!("CARGO_PKG_VERSION")));
    prov.push_str(&format!("command: {params}\n"));
    prov.push_str(&format!(
        "caps: dense n <= {}, bisection n <= {}, table n <= {}{}\n",
        caps.dense,
        caps.bisection,
        caps.table,
        if caps.overridden { format!(" (set by {})", config::MAX_N_VAR) } else { String::new() }
    ));
    prov.push_str("reference eigenvalues: closed-form spectra (e.g. k^2 pi^2 + alpha/4 for Euler-Cauchy) instead of fine-grid reference solves\n");
    for note in &out.notes {
        prov.push_str(&format!("note: {note}\n"));
    }
    for (name, _) in &out.files {
        prov.push_str(&format!("file: {name}\n"));
    }
    let path = dir.join("provenance.txt");
    fs::write(&path, prov).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
