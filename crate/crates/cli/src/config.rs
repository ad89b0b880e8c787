//! Run configuration, validation and desk-scale caps.

use std::fmt;

use clap::ValueEnum;
use glt_spectra::grids::{exp_map, Diffeomorphism};
use glt_spectra::problems::{dirichlet_laplacian, euler_cauchy, l1_case, SlProblem};

/// A problem with the command line rather than with the numerics; exits with code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodKind {
    Fd,
    Iga,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    EulerCauchy,
    #[value(name = "laplacian-1d")]
    Laplacian1d,
    L1Case,
    #[value(name = "laplace-2d")]
    Laplace2d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    Uniform,
    Exp,
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

pub const DENSE_MAX_N: usize = 3000;
pub const BISECTION_MAX_N: usize = 100_000;
pub const TABLE_MAX_N: usize = 5000;
pub const MAX_N_VAR: &str = "GLT_SPECTRA_MAX_N";

/// Size limits; `GLT_SPECTRA_MAX_N` replaces all of them when set.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub dense: usize,
    pub bisection: usize,
    pub table: usize,
    pub overridden: bool,
}

impl Caps {
    pub fn from_env() -> anyhow::Result<Self> {
        match std::env::var(MAX_N_VAR) {
            Ok(v) => {
                let n: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| config_error(format!("{MAX_N_VAR}={v:?} is not a positive integer")))?;
                if n == 0 {
                    return Err(config_error(format!("{MAX_N_VAR} must be positive")));
                }
                Ok(Caps { dense: n, bisection: n, table: n, overridden: true })
            }
            Err(_) => Ok(Caps { dense: DENSE_MAX_N, bisection: BISECTION_MAX_N, table: TABLE_MAX_N, overridden: false }),
        }
    }

    pub fn check(&self, what: &str, n: usize, limit: usize) -> anyhow::Result<()> {
        if n > limit {
            return Err(config_error(format!(
                "{what} of size {n} exceeds the desk-scale cap {limit}; set {MAX_N_VAR} to raise it"
            )));
        }
        Ok(())
    }
}

pub fn problem(kind: ProblemKind, alpha: f64) -> anyhow::Result<SlProblem> {
    let p = match kind {
        ProblemKind::EulerCauchy => euler_cauchy(alpha),
        ProblemKind::Laplacian1d => dirichlet_laplacian(1.0),
        ProblemKind::L1Case => l1_case(),
        ProblemKind::Laplace2d => return Err(config_error("laplace-2d has no one-dimensional problem")),
    };
    p.map_err(|e| config_error(e.to_string()))
}

/// Grid map for the problem's interval; the exponential map needs the Euler-Cauchy interval.
pub fn grid_map(kind: GridKind, prob_kind: ProblemKind, prob: &SlProblem, alpha: f64) -> anyhow::Result<Diffeomorphism> {
    match kind {
        GridKind::Uniform => Ok(Diffeomorphism::identity(prob.a, prob.b)?),
        GridKind::Exp if prob_kind == ProblemKind::EulerCauchy => Ok(exp_map(alpha)?),
        GridKind::Exp => Err(config_error(format!("--grid exp is only defined for euler-cauchy, not {prob_kind}"))),
    }
}

pub fn positive_alpha(alpha: f64) -> anyhow::Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(config_error(format!("--alpha must be positive, got {alpha}")));
    }
    Ok(())
}
