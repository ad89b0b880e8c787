//! Sturm-Liouville problem instances, the Liouville normal form and exact
//! or reference spectra.
//!
//! The model problem is `-(p u')' + q u = lambda w u` on `[a, b]` with
//! separated boundary conditions `sigma1 u(a) + sigma2 (p u')(a) = 0`,
//! `zeta1 u(b) + zeta2 (p u')(b) = 0`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::eig;
use crate::error::{invalid, Error, Result};
use crate::fd;
use crate::grids::Diffeomorphism;
use crate::quad::{adaptive_simpson, bisect_increasing};

/// Shared, thread-safe real function of one variable.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub(crate) fn scalar_fn(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> ScalarFn {
    Arc::new(f)
}

pub(crate) fn constant(c: f64) -> ScalarFn {
    Arc::new(move |_| c)
}

/// Relative tolerance for the quadrature of the Liouville length.
pub const LENGTH_REL_TOL: f64 = 1e-12;
const PROBES: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConditions {
    pub sigma1: f64,
    pub sigma2: f64,
    pub zeta1: f64,
    pub zeta2: f64,
}

impl BoundaryConditions {
    pub const DIRICHLET: BoundaryConditions = BoundaryConditions { sigma1: 1.0, sigma2: 0.0, zeta1: 1.0, zeta2: 0.0 };

    pub fn is_dirichlet(&self) -> bool {
        self.sigma2 == 0.0 && self.zeta2 == 0.0
    }
}

/// Closed-form spectra available for the built-in problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExactSpectrum {
    /// `lambda_k = k^2 pi^2 + alpha / 4`.
    EulerCauchy { alpha: f64 },
    /// `lambda_k = k^2 pi^2 / length^2`.
    DirichletLaplacian1D { length: f64 },
    /// Sorted values of `pi^2 (i^2 + j^2)` on the unit square.
    DirichletLaplacian2D,
}

impl ExactSpectrum {
    /// The k-th eigenvalue (1-based).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k >= 1, "eigenvalue index is 1-based");
        let kf = k as f64;
        match *self {
            ExactSpectrum::EulerCauchy { alpha } => kf * kf * PI * PI + alpha / 4.0,
            ExactSpectrum::DirichletLaplacian1D { length } => kf * kf * PI * PI / (length * length),
            ExactSpectrum::DirichletLaplacian2D => self.first(k)[k - 1],
        }
    }

    /// The first `k_max` eigenvalues in ascending order.
    pub fn first(&self, k_max: usize) -> Vec<f64> {
        match *self {
            ExactSpectrum::DirichletLaplacian2D => laplacian_2d_eigenvalues(k_max),
            _ => (1..=k_max).map(|k| self.eigenvalue(k)).collect(),
        }
    }
}

/// The first `k_max` values of `pi^2 (i^2 + j^2)`, `i, j >= 1`, with multiplicity.
pub fn laplacian_2d_eigenvalues(k_max: usize) -> Vec<f64> {
    if k_max == 0 {
        return Vec::new();
    }
    // The k-th smallest i^2 + j^2 is at most 2 m^2 with m = ceil(sqrt(k)),
    // so indices beyond sqrt(2) m cannot contribute.
    let m = (k_max as f64).sqrt().ceil() as usize;
    let limit = ((2.0f64).sqrt() * m as f64).ceil() as usize + 1;
    let mut vals: Vec<u64> = Vec::with_capacity(limit * limit);
    for i in 1..=limit as u64 {
        for j in 1..=limit as u64 {
            vals.push(i * i + j * j);
        }
    }
    vals.sort_unstable();
    vals.truncate(k_max);
    vals.into_iter().map(|v| PI * PI * v as f64).collect()
}

/// A regular Sturm-Liouville problem.
#[derive(Clone)]
pub struct SlProblem {
    pub a: f64,
    pub b: f64,
    pub p: ScalarFn,
    pub p_prime: ScalarFn,
    pub q: ScalarFn,
    pub w: ScalarFn,
    pub w_prime: ScalarFn,
    pub bc: BoundaryConditions,
    pub exact: Option<ExactSpectrum>,
    pub label: String,
}

impl fmt::Debug for SlProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SlProblem")
            .field("label", &self.label)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("bc", &self.bc)
            .field("exact", &self.exact)
            .finish_non_exhaustive()
    }
}

impl SlProblem {
    /// Validates the interval, the boundary conditions and positivity of `p` and `w`
    /// on interior probe points (endpoints are excluded so that coefficients
    /// singular at an endpoint can still be represented).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: f64,
        b: f64,
        p: ScalarFn,
        p_prime: ScalarFn,
        q: ScalarFn,
        w: ScalarFn,
        w_prime: ScalarFn,
        bc: BoundaryConditions,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(invalid(format!("interval [{a}, {b}] must satisfy b > a")));
        }
        if bc.sigma1 == 0.0 && bc.sigma2 == 0.0 || bc.zeta1 == 0.0 && bc.zeta2 == 0.0 {
            return Err(invalid("boundary condition coefficients must not both vanish"));
        }
        let prob = SlProblem { a, b, p, p_prime, q, w, w_prime, bc, exact: None, label: label.into() };
        for i in 0..PROBES {
            let x = a + (b - a) * (i as f64 + 0.5) / PROBES as f64;
            prob.check_positive(x)?;
        }
        Ok(prob)
    }

    pub fn with_exact(mut self, exact: ExactSpectrum) -> Self {
        self.exact = Some(exact);
        self
    }

    fn check_positive(&self, x: f64) -> Result<()> {
        let pv = (self.p)(x);
        if !(pv > 0.0) {
            return Err(Error::NonPositive { name: "p", x, value: pv });
        }
        let wv = (self.w)(x);
        if !(wv > 0.0) {
            return Err(Error::NonPositive { name: "w", x, value: wv });
        }
        Ok(())
    }

    /// Liouville coordinate `y(x) = int_a^x sqrt(w/p)`.
    pub fn liouville_coordinate(&self, x: f64) -> Result<f64> {
        let f = self.liouville_density();
        adaptive_simpson(f, self.a, x, LENGTH_REL_TOL)
    }

    fn liouville_density(&self) -> impl Fn(f64) -> f64 + '_ {
        move |t| ((self.w)(t) / (self.p)(t)).sqrt()
    }
}

/// Euler-Cauchy problem `-(alpha x^2 u')' = lambda u` on `[1, e^sqrt(alpha)]`, Dirichlet.
pub fn euler_cauchy(alpha: f64) -> Result<SlProblem> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(invalid(format!("alpha must be positive, got {alpha}")));
    }
    SlProblem::new(
        1.0,
        alpha.sqrt().exp(),
        scalar_fn(move |x| alpha * x * x),
        scalar_fn(move |x| 2.0 * alpha * x),
        constant(0.0),
        constant(1.0),
        constant(0.0),
        BoundaryConditions::DIRICHLET,
        format!("euler-cauchy(alpha={alpha})"),
    )
    .map(|p| p.with_exact(ExactSpectrum::EulerCauchy { alpha }))
}

/// `-u'' = lambda u` on `[0, length]`, Dirichlet.
pub fn dirichlet_laplacian(length: f64) -> Result<SlProblem> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(invalid(format!("length must be positive, got {length}")));
    }
    SlProblem::new(
        0.0,
        length,
        constant(1.0),
        constant(0.0),
        constant(0.0),
        constant(1.0),
        constant(0.0),
        BoundaryConditions::DIRICHLET,
        format!("laplacian-1d(length={length})"),
    )
    .map(|p| p.with_exact(ExactSpectrum::DirichletLaplacian1D { length }))
}

/// `-(x^{-1/2} u')' = lambda u` on `(0, 1)`, Dirichlet: the diffusion
/// coefficient is integrable but unbounded at the left end.
pub fn l1_case() -> Result<SlProblem> {
    SlProblem::new(
        0.0,
        1.0,
        scalar_fn(|x| 1.0 / x.sqrt()),
        scalar_fn(|x| -0.5 * x.powf(-1.5)),
        constant(0.0),
        constant(1.0),
        constant(0.0),
        BoundaryConditions::DIRICHLET,
        "l1-case",
    )
}

/// Liouville normal form `-v'' + V v = lambda v` on `[0, length]`.
#[derive(Clone)]
pub struct NormalForm {
    pub length: f64,
    pub potential: ScalarFn,
    pub sigma: (f64, f64),
    pub zeta: (f64, f64),
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormalForm")
            .field("length", &self.length)
            .field("sigma", &self.sigma)
            .field("zeta", &self.zeta)
            .finish_non_exhaustive()
    }
}

/// Tabulated `y(x)` used to invert the Liouville coordinate.
struct CoordinateTable {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

const TABLE_NODES: usize = 256;

impl CoordinateTable {
    fn new(prob: &SlProblem) -> Result<Self> {
        let density = prob.liouville_density();
        let xs: Vec<f64> = (0..=TABLE_NODES)
            .map(|i| prob.a + (prob.b - prob.a) * i as f64 / TABLE_NODES as f64)
            .collect();
        let mut ys = vec![0.0; xs.len()];
        for i in 1..xs.len() {
            ys[i] = ys[i - 1] + adaptive_simpson(&density, xs[i - 1], xs[i], LENGTH_REL_TOL)?;
        }
        Ok(CoordinateTable { xs, ys })
    }

    fn length(&self) -> f64 {
        *self.ys.last().unwrap()
    }

    /// x with y(x) = target, by bisection inside the bracketing table cell.
    fn invert(&self, prob: &SlProblem, target: f64) -> f64 {
        if target <= 0.0 {
            return prob.a;
        }
        if target >= self.length() {
            return prob.b;
        }
        let i = self.ys.partition_point(|&y| y <= target).clamp(1, self.ys.len() - 1);
        let (x0, y0) = (self.xs[i - 1], self.ys[i - 1]);
        let density = prob.liouville_density();
        let y = |x: f64| y0 + adaptive_simpson(&density, x0, x, LENGTH_REL_TOL).unwrap_or(f64::NAN);
        bisect_increasing(y, target, x0, self.xs[i])
    }
}

/// Converts a problem to Liouville normal form.
pub fn liouville_transform(prob: &SlProblem) -> Result<NormalForm> {
    for i in 0..PROBES {
        let x = prob.a + (prob.b - prob.a) * (i as f64 + 0.5) / PROBES as f64;
        prob.check_positive(x)?;
    }
    let table = CoordinateTable::new(prob)?;
    let length = table.length();
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::Quadrature { a: prob.a, b: prob.b });
    }

    let (a, b) = (prob.a, prob.b);
    let wp = |x: f64| (prob.w)(x) * (prob.p)(x);
    let dwp = |x: f64| (prob.w_prime)(x) * (prob.p)(x) + (prob.w)(x) * (prob.p_prime)(x);
    let bc = prob.bc;
    let sigma1 = bc.sigma1 / wp(a).powf(0.25) + bc.sigma2 * dwp(a) / (4.0 * (prob.p)(a).powf(0.25) * (prob.w)(a).powf(1.25));
    let sigma2 = wp(a).powf(0.25) * bc.sigma2;
    let zeta1 = bc.zeta1 / wp(b).powf(0.25) - bc.zeta2 * dwp(b) / (4.0 * (prob.p)(b).powf(0.25) * (prob.w)(b).powf(1.25));
    let zeta2 = wp(b).powf(0.25) * bc.zeta2;

    let owned = prob.clone();
    let table = Arc::new(table);
    let g = {
        let owned = owned.clone();
        let table = Arc::clone(&table);
        move |y: f64| {
            let x = table.invert(&owned, y);
            ((owned.w)(x) * (owned.p)(x)).powf(0.25)
        }
    };
    let h = 1e-3 * length;
    let potential = move |y: f64| {
        let x = table.invert(&owned, y);
        let g0 = g(y);
        let d2 = if y - 2.0 * h < 0.0 {
            (35.0 * g0 - 104.0 * g(y + h) + 114.0 * g(y + 2.0 * h) - 56.0 * g(y + 3.0 * h) + 11.0 * g(y + 4.0 * h))
                / (12.0 * h * h)
        } else if y + 2.0 * h > length {
            (35.0 * g0 - 104.0 * g(y - h) + 114.0 * g(y - 2.0 * h) - 56.0 * g(y - 3.0 * h) + 11.0 * g(y - 4.0 * h))
                / (12.0 * h * h)
        } else {
            (-g(y - 2.0 * h) + 16.0 * g(y - h) - 30.0 * g0 + 16.0 * g(y + h) - g(y + 2.0 * h)) / (12.0 * h * h)
        };
        d2 / g0 + (owned.q)(x) / (owned.w)(x)
    };
    Ok(NormalForm { length, potential: Arc::new(potential), sigma: (sigma1, sigma2), zeta: (zeta1, zeta2) })
}

/// `pi^2 / B^2`, the limit of `lambda_n / n^2`.
pub fn weyl_constant(prob: &SlProblem) -> Result<f64> {
    let nf = liouville_transform(prob)?;
    Ok(PI * PI / (nf.length * nf.length))
}

/// How reference eigenvalues are obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceMode {
    /// Closed-form spectrum of the problem.
    Exact,
    /// Finite differences of half-width `eta` on a uniform grid with `n_fine` interior nodes.
    FineFd { n_fine: usize, eta: usize },
}

/// The first `k_max` reference eigenvalues of `prob`.
pub fn reference_spectrum(prob: &SlProblem, k_max: usize, mode: ReferenceMode) -> Result<Vec<f64>> {
    match mode {
        ReferenceMode::Exact => {
            let exact = prob
                .exact
                .ok_or_else(|| Error::Unsupported(format!("no closed-form spectrum for {}", prob.label)))?;
            Ok(exact.first(k_max))
        }
        ReferenceMode::FineFd { n_fine, eta } => {
            if n_fine < 10 * k_max {
                return Err(invalid(format!("fine grid n'={n_fine} must be at least 10*k_max={}", 10 * k_max)));
            }
            let tau = Diffeomorphism::identity(prob.a, prob.b)?;
            let sys = fd::assemble_fd(prob, &tau, n_fine, eta)?;
            let op = fd::fd_operator(&sys);
            let values = match op.tridiagonal() {
                Some(t) => eig::tridiagonal_eigvals_range(&t, 0, k_max),
                None => {
                    let mut all = op.eigenvalues()?.values;
                    all.truncate(k_max);
                    all
                }
            };
            Ok(values)
        }
    }
}
