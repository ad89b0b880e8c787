//! Central finite differences of half-width `eta` (2 eta + 1 points) on
//! possibly non-uniform grids, and the associated frequency function.

use crate::eig::{self, SpectrumResult};
use crate::error::{invalid, Error, Result};
use crate::grids::{mapped_grid, uniform_grid, Diffeomorphism, ExtendedGrid};
use crate::matrix::{BandMatrix, BandedSymmetricMatrix, DenseMatrix, SymTridiagonal};
use crate::problems::SlProblem;

pub const MAX_ETA: usize = 20;

/// Stencil coefficients `d_0 ..= d_eta` of the second-difference operator.
#[derive(Debug, Clone, PartialEq)]
pub struct FdCoefficients {
    pub eta: usize,
    pub d: Vec<f64>,
}

/// `d_k = (-1)^k prod_{j=1..k} (eta - j + 1)/(eta + j) * 2/k^2` for `k >= 1`
/// and `d_0 = -2 sum_k d_k`.
pub fn fd_coefficients(eta: usize) -> Result<FdCoefficients> {
    if !(1..=MAX_ETA).contains(&eta) {
        return Err(invalid(format!("FD order eta must be in 1..={MAX_ETA}, got {eta}")));
    }
    let mut d = vec![0.0; eta + 1];
    let mut ratio = 1.0;
    for k in 1..=eta {
        ratio *= (eta - k + 1) as f64 / (eta + k) as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        d[k] = sign * ratio * 2.0 / (k * k) as f64;
    }
    d[0] = -2.0 * d[1..].iter().sum::<f64>();
    Ok(FdCoefficients { eta, d })
}

impl FdCoefficients {
    /// `f(theta) = d_0 + 2 sum_k d_k cos(k theta)`.
    pub fn symbol(&self, theta: f64) -> f64 {
        let mut s = self.d[0];
        for (k, &dk) in self.d.iter().enumerate().skip(1) {
            s += 2.0 * dk * (k as f64 * theta).cos();
        }
        s
    }
}

/// Frequency function of the FD scheme, `theta -> f_eta(theta)` on `[0, pi]`.
pub fn fd_symbol(eta: usize) -> Result<impl Fn(f64) -> f64 + Send + Sync + Clone> {
    let c = fd_coefficients(eta)?;
    Ok(move |theta: f64| c.symbol(theta))
}

/// Assembled FD system `W^{-1} (L + Q)` on the interior nodes.
#[derive(Debug, Clone)]
pub struct FdSystem {
    /// Diffusion part, bandwidth `eta`.
    pub l: BandMatrix,
    /// Reaction samples `q(x_j)`.
    pub q: Vec<f64>,
    /// Weight samples `w(x_j)`.
    pub w: Vec<f64>,
    pub grid: ExtendedGrid,
}

/// Assembles the `(2 eta + 1)`-point discretization of `prob` on the grid
/// `tau(a + (b - a) j / (n + 1))`.
///
/// The off-diagonal weights are `-pbar(m_ij) L_j''(x_i)`, with `L_j` the
/// Lagrange basis polynomial of the stencil around `x_i` and `pbar` the
/// constant extension of `p` outside `[a, b]` evaluated at the midpoint
/// `m_ij`. Ghost columns contribute to the diagonal (which makes each row
/// sum to zero) but are not stored.
pub fn assemble_fd(prob: &SlProblem, tau: &Diffeomorphism, n: usize, eta: usize) -> Result<FdSystem> {
    fd_coefficients(eta)?;
    if n < 2 * eta {
        return Err(invalid(format!("n = {n} must be at least 2 eta = {}", 2 * eta)));
    }
    let grid = mapped_grid(&uniform_grid(prob.a, prob.b, n, eta)?, tau)?;
    let pbar = |x: f64| (prob.p)(x.clamp(prob.a, prob.b));

    let mut l = BandMatrix::zeros(n, eta);
    let width = 2 * eta + 1;
    let mut u = vec![0.0; width];
    for i in 1..=n {
        let ii = i as isize;
        let xi = grid.node(ii);
        let s = 0.5 * (grid.node(ii + 1) - grid.node(ii - 1));
        for (t, slot) in u.iter_mut().enumerate() {
            *slot = (grid.node(ii - eta as isize + t as isize) - xi) / s;
        }
        let mut diag = 0.0;
        for jt in 0..width {
            if jt == eta {
                continue;
            }
            let j = ii - eta as isize + jt as isize;
            let xj = grid.node(j);
            let mid = 0.5 * (xi + xj);
            let pm = pbar(mid);
            if !(pm > 0.0 && pm.is_finite()) {
                return Err(Error::NonPositive { name: "p", x: mid, value: pm });
            }
            let uj = u[jt];
            let mut denom = uj;
            for (kt, &uk) in u.iter().enumerate() {
                if kt != eta && kt != jt {
                    denom *= uk - uj;
                }
            }
            if denom == 0.0 || !denom.is_finite() {
                return Err(Error::DegenerateGrid(format!("coincident nodes near x = {xi}")));
            }
            let mut sum = 0.0;
            for mt in 0..width {
                if mt == eta || mt == jt {
                    continue;
                }
                let mut prod = 1.0;
                for (kt, &uk) in u.iter().enumerate() {
                    if kt != eta && kt != jt && kt != mt {
                        prod *= uk;
                    }
                }
                sum += prod;
            }
            let lij = 2.0 * pm * sum / denom / (s * s);
            diag -= lij;
            if (1..=n as isize).contains(&j) {
                l.set(i - 1, j as usize - 1, lij);
            }
        }
        l.set(i - 1, i - 1, diag);
    }
    let q = grid.interior().iter().map(|&x| (prob.q)(x)).collect();
    let w: Vec<f64> = grid.interior().iter().map(|&x| (prob.w)(x)).collect();
    if let Some((j, &v)) = w.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
        return Err(Error::NonPositive { name: "w", x: grid.interior()[j], value: v });
    }
    Ok(FdSystem { l, q, w, grid })
}

/// Relative asymmetry below which `L + Q` is treated as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// The FD eigenvalue operator, in symmetric form when possible.
#[derive(Debug, Clone)]
pub enum FdOperator {
    /// `W^{-1/2} (L + Q) W^{-1/2}`.
    Symmetric(BandedSymmetricMatrix),
    /// `W^{-1} (L + Q)`.
    General(BandMatrix),
}

/// `W^{-1}(L + Q)` without symmetrisation.
pub fn general_form(sys: &FdSystem) -> BandMatrix {
    let n = sys.l.dim();
    let bw = sys.l.bandwidth();
    let mut a = BandMatrix::zeros(n, bw);
    for i in 0..n {
        for j in i.saturating_sub(bw)..(i + bw + 1).min(n) {
            let mut v = sys.l.get(i, j);
            if i == j {
                v += sys.q[i];
            }
            a.set(i, j, v / sys.w[i]);
        }
    }
    a
}

/// Chooses the symmetric form `W^{-1/2}(L + Q)W^{-1/2}` when `L + Q` is
/// symmetric to [`SYMMETRY_TOL`], otherwise `W^{-1}(L + Q)`.
pub fn fd_operator(sys: &FdSystem) -> FdOperator {
    let n = sys.l.dim();
    let bw = sys.l.bandwidth();
    let mut lq = sys.l.clone();
    for i in 0..n {
        lq.set(i, i, lq.get(i, i) + sys.q[i]);
    }
    if lq.asymmetry() <= SYMMETRY_TOL {
        let mut s = lq.symmetric_part();
        let rs: Vec<f64> = sys.w.iter().map(|w| 1.0 / w.sqrt()).collect();
        for i in 0..n {
            for j in i.saturating_sub(bw)..=i {
                s.set(i, j, s.get(i, j) * rs[i] * rs[j]);
            }
        }
        FdOperator::Symmetric(s)
    } else {
        FdOperator::General(general_form(sys))
    }
}

impl FdOperator {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, FdOperator::Symmetric(_))
    }

    pub fn dim(&self) -> usize {
        match self {
            FdOperator::Symmetric(s) => s.dim(),
            FdOperator::General(g) => g.dim(),
        }
    }

    pub fn tridiagonal(&self) -> Option<SymTridiagonal> {
        match self {
            FdOperator::Symmetric(s) => s.to_tridiagonal(),
            FdOperator::General(_) => None,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            FdOperator::Symmetric(s) => s.to_dense(),
            FdOperator::General(g) => g.to_dense(),
        }
    }

    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        match self {
            FdOperator::Symmetric(s) => s.triplets(),
            FdOperator::General(g) => g.triplets(),
        }
    }

    /// All eigenvalues: bisection for symmetric operators, Hessenberg QR otherwise.
    pub fn eigenvalues(&self) -> Result<SpectrumResult> {
        match self {
            FdOperator::Symmetric(s) => Ok(eig::eigvals_sym_banded(s)),
            FdOperator::General(g) => eig::eigvals_general_banded(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{dirichlet_laplacian, euler_cauchy};

    #[test]
    fn classical_stencils() {
        let c = fd_coefficients(1).unwrap();
        assert_eq!(c.d, vec![2.0, -1.0]);
        let c = fd_coefficients(2).unwrap();
        assert!((c.d[0] - 2.5).abs() < 1e-15);
        assert!((c.d[1] + 4.0 / 3.0).abs() < 1e-15);
        assert!((c.d[2] - 1.0 / 12.0).abs() < 1e-15);
        assert!((c.symbol(std::f64::consts::PI) - 16.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn order_range_checked() {
        assert!(fd_coefficients(0).is_err());
        assert!(fd_coefficients(21).is_err());
        assert!(fd_coefficients(20).is_ok());
    }

    #[test]
    fn euler_cauchy_three_point_entries() {
        let alpha = 1.0;
        let prob = euler_cauchy(alpha).unwrap();
        let tau = Diffeomorphism::identity(prob.a, prob.b).unwrap();
        let sys = assemble_fd(&prob, &tau, 3, 1).unwrap();
        let h = (alpha.sqrt().exp() - 1.0) / 4.0;
        for i in 0..2 {
            let mid = 1.0 + h * (i as f64 + 1.5);
            let expect = -alpha * mid * mid / (h * h);
            assert!((sys.l.get(i, i + 1) - expect).abs() < 1e-11 * expect.abs());
            assert!((sys.l.get(i + 1, i) - expect).abs() < 1e-11 * expect.abs());
        }
    }

    #[test]
    fn weight_one_operator_equals_l() {
        let prob = dirichlet_laplacian(1.0).unwrap();
        let tau = Diffeomorphism::identity(0.0, 1.0).unwrap();
        let sys = assemble_fd(&prob, &tau, 8, 2).unwrap();
        let op = fd_operator(&sys);
        assert!(op.is_symmetric());
        let d = op.to_dense();
        for i in 0..8 {
            for j in 0..8 {
                assert!((d[(i, j)] - sys.l.get(i, j)).abs() <= 1e-12 * sys.l.norm_max());
            }
        }
    }
}
