//! B-spline (isogeometric) Galerkin discretization and the cardinal B-spline
//! frequency function.

use crate::eig::{self, SpectrumResult};
use crate::error::{invalid, Error, Result};
use crate::grids::Diffeomorphism;
use crate::matrix::BandedSymmetricMatrix;
use crate::problems::SlProblem;
use crate::quad::gauss_legendre;

pub const MAX_DEGREE: usize = 10;

/// Cardinal B-spline of degree `s`, supported on `[0, s + 1]`.
pub fn cardinal_bspline(s: usize, x: f64) -> f64 {
    if !(x >= 0.0 && x < (s + 1) as f64) {
        return 0.0;
    }
    // t[m] holds psi_d(x - m) for m = 0..=s - d.
    let mut t: Vec<f64> = (0..=s)
        .map(|m| {
            let y = x - m as f64;
            if (0.0..1.0).contains(&y) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for d in 1..=s {
        let df = d as f64;
        for m in 0..=s - d {
            let y = x - m as f64;
            t[m] = (y * t[m] + (df + 1.0 - y) * t[m + 1]) / df;
        }
    }
    t[0]
}

/// Second derivative of the cardinal B-spline of degree `s >= 2`,
/// `psi_{s-2}(x) - 2 psi_{s-2}(x - 1) + psi_{s-2}(x - 2)`.
pub fn cardinal_bspline_d2(s: usize, x: f64) -> Result<f64> {
    if s < 2 {
        return Err(invalid(format!("second derivative needs degree >= 2, got {s}")));
    }
    Ok(cardinal_bspline(s - 2, x) - 2.0 * cardinal_bspline(s - 2, x - 1.0) + cardinal_bspline(s - 2, x - 2.0))
}

/// Cosine coefficients of the numerator `g` and denominator `h` of the IgA frequency function.
#[derive(Debug, Clone, PartialEq)]
pub struct IgaSymbol {
    pub eta: usize,
    g: Vec<f64>,
    h: Vec<f64>,
}

impl IgaSymbol {
    pub fn new(eta: usize) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&eta) {
            return Err(invalid(format!("IgA degree must be in 1..={MAX_DEGREE}, got {eta}")));
        }
        let s = 2 * eta + 1;
        let c = (eta + 1) as f64;
        let mut g = Vec::with_capacity(eta + 1);
        let mut h = Vec::with_capacity(eta + 1);
        for k in 0..=eta {
            let x = c - k as f64;
            g.push(-cardinal_bspline_d2(s, x)?);
            h.push(cardinal_bspline(s, x));
        }
        Ok(IgaSymbol { eta, g, h })
    }

    pub fn numerator(&self, theta: f64) -> f64 {
        cosine_series(&self.g, theta)
    }

    pub fn denominator(&self, theta: f64) -> f64 {
        cosine_series(&self.h, theta)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.numerator(theta) / self.denominator(theta)
    }
}

fn cosine_series(c: &[f64], theta: f64) -> f64 {
    let mut s = c[0];
    for (k, &ck) in c.iter().enumerate().skip(1) {
        s += 2.0 * ck * (k as f64 * theta).cos();
    }
    s
}

/// Frequency function `f_eta = g_eta / h_eta` of degree-`eta` B-splines.
pub fn iga_symbol(eta: usize) -> Result<impl Fn(f64) -> f64 + Send + Sync + Clone> {
    let s = IgaSymbol::new(eta)?;
    Ok(move |theta: f64| s.eval(theta))
}

/// Spline space of degree `eta` with `n` uniform interior breakpoints on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BSplineSpace {
    pub eta: usize,
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub knots: Vec<f64>,
}

impl BSplineSpace {
    pub fn new(a: f64, b: f64, n: usize, eta: usize) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&eta) {
            return Err(invalid(format!("IgA degree must be in 1..={MAX_DEGREE}, got {eta}")));
        }
        if n < 1 || !(b > a) {
            return Err(invalid("spline space needs n >= 1 and b > a"));
        }
        let mut knots = vec![a; eta + 1];
        let h = (b - a) / (n + 1) as f64;
        knots.extend((1..=n).map(|j| a + h * j as f64));
        knots.extend(std::iter::repeat(b).take(eta + 1));
        Ok(BSplineSpace { eta, n, a, b, knots })
    }

    /// Number of B-splines including the two that do not vanish on the boundary.
    pub fn full_dim(&self) -> usize {
        self.n + self.eta + 1
    }

    /// Number of B-splines vanishing at both ends.
    pub fn dim(&self) -> usize {
        self.n + self.eta - 1
    }

    pub fn spans(&self) -> usize {
        self.n + 1
    }

    /// Breakpoints bounding span `s`.
    pub fn span_bounds(&self, s: usize) -> (f64, f64) {
        (self.knots[self.eta + s], self.knots[self.eta + s + 1])
    }

    /// Values and first derivatives of the `eta + 1` B-splines nonzero on span `s`
    /// (global indices `s ..= s + eta`) at `x`.
    pub fn basis(&self, s: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
        let p = self.eta;
        let u = &self.knots;
        let i = p + s;
        let mut ndu = vec![vec![0.0; p + 1]; p + 1];
        let mut left = vec![0.0; p + 1];
        let mut right = vec![0.0; p + 1];
        ndu[0][0] = 1.0;
        for j in 1..=p {
            left[j] = x - u[i + 1 - j];
            right[j] = u[i + j] - x;
            let mut saved = 0.0;
            for r in 0..j {
                ndu[j][r] = right[r + 1] + left[j - r];
                let temp = if ndu[j][r] == 0.0 { 0.0 } else { ndu[r][j - 1] / ndu[j][r] };
                ndu[r][j] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            ndu[j][j] = saved;
        }
        let vals: Vec<f64> = (0..=p).map(|r| ndu[r][p]).collect();
        let pf = p as f64;
        let lower = |r: isize| -> f64 {
            if r < 0 || r as usize >= p {
                0.0
            } else {
                ndu[r as usize][p - 1]
            }
        };
        let ders = (0..=p)
            .map(|r| {
                let k = s + r;
                let d1 = u[k + p] - u[k];
                let d2 = u[k + p + 1] - u[k + 1];
                let t1 = if d1 == 0.0 { 0.0 } else { lower(r as isize - 1) / d1 };
                let t2 = if d2 == 0.0 { 0.0 } else { lower(r as isize) / d2 };
                pf * (t1 - t2)
            })
            .collect();
        (vals, ders)
    }
}

/// Stiffness and mass matrices restricted to the B-splines vanishing on the boundary.
#[derive(Debug, Clone)]
pub struct GalerkinPair {
    pub k: BandedSymmetricMatrix,
    pub m: BandedSymmetricMatrix,
    pub space: BSplineSpace,
}

/// Stiffness and mass over the full B-spline basis (boundary functions included).
pub(crate) fn assemble_full(
    prob: &SlProblem,
    tau: &Diffeomorphism,
    n: usize,
    eta: usize,
) -> Result<(BandedSymmetricMatrix, BandedSymmetricMatrix, BSplineSpace)> {
    let space = BSplineSpace::new(prob.a, prob.b, n, eta)?;
    let nfull = space.full_dim();
    let mut k = BandedSymmetricMatrix::zeros(nfull, eta);
    let mut m = BandedSymmetricMatrix::zeros(nfull, eta);
    let (gx, gw) = gauss_legendre(eta + 2);
    for s in 0..space.spans() {
        let (x0, x1) = space.span_bounds(s);
        let half = 0.5 * (x1 - x0);
        let mid = 0.5 * (x0 + x1);
        for (&xi, &wi) in gx.iter().zip(&gw) {
            let x = mid + half * xi;
            let t = tau.eval(x);
            let dt = tau.derivative(x).abs();
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(Error::DegenerateGrid(format!("grid map derivative vanishes at x = {x}")));
            }
            let ck = wi * half * (prob.p)(t) / dt;
            let cm = wi * half * (prob.w)(t) * dt;
            let (v, d) = space.basis(s, x);
            for r1 in 0..=eta {
                for r2 in 0..=r1 {
                    k.add(s + r1, s + r2, ck * d[r1] * d[r2]);
                    m.add(s + r1, s + r2, cm * v[r1] * v[r2]);
                }
            }
        }
    }
    Ok((k, m, space))
}

/// Galerkin pair `(K, M)` with `K = int p(tau)/|tau'| B_i' B_j'` and
/// `M = int w(tau) |tau'| B_i B_j`, integrated with `eta + 2` Gauss-Legendre
/// nodes per knot span.
pub fn assemble_iga(prob: &SlProblem, tau: &Diffeomorphism, n: usize, eta: usize) -> Result<GalerkinPair> {
    if n < 2 {
        return Err(invalid(format!("IgA needs n >= 2 interior breakpoints, got {n}")));
    }
    if !prob.bc.is_dirichlet() {
        return Err(Error::Unsupported("IgA assembly supports Dirichlet conditions only".into()));
    }
    for i in 0..=32 {
        let x = prob.a + (prob.b - prob.a) * (i as f64 + 0.5) / 33.0;
        if (prob.q)(x) != 0.0 {
            return Err(Error::Unsupported("IgA assembly supports q = 0 only".into()));
        }
    }
    let (kf, mf, space) = assemble_full(prob, tau, n, eta)?;
    let dim = space.dim();
    let mut k = BandedSymmetricMatrix::zeros(dim, eta);
    let mut m = BandedSymmetricMatrix::zeros(dim, eta);
    for i in 0..dim {
        for j in i.saturating_sub(eta)..=i {
            k.set(i, j, kf.get(i + 1, j + 1));
            m.set(i, j, mf.get(i + 1, j + 1));
        }
    }
    Ok(GalerkinPair { k, m, space })
}

/// Generalized eigenproblem `K u = lambda M u`, solved without forming `M^{-1} K`.
#[derive(Debug, Clone, Copy)]
pub struct Pencil<'a> {
    pub k: &'a BandedSymmetricMatrix,
    pub m: &'a BandedSymmetricMatrix,
}

pub fn iga_operator(pair: &GalerkinPair) -> Pencil<'_> {
    Pencil { k: &pair.k, m: &pair.m }
}

impl Pencil<'_> {
    pub fn eigenvalues(&self) -> Result<SpectrumResult> {
        eig::eigvals_gen_sym_banded(self.k, self.m)
    }
}
