//! Uniform and mapped grids, including the ghost nodes the wide FD stencils need.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::problems::{scalar_fn, ScalarFn};

const PROBES: usize = 1000;

/// A C^1 bijection of `[a, b]` onto itself used to place grid nodes.
#[derive(Clone)]
pub struct Diffeomorphism {
    pub a: f64,
    pub b: f64,
    pub tau: ScalarFn,
    pub tau_prime: ScalarFn,
    pub label: String,
}

impl fmt::Debug for Diffeomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Diffeomorphism")
            .field("label", &self.label)
            .field("a", &self.a)
            .field("b", &self.b)
            .finish_non_exhaustive()
    }
}

impl Diffeomorphism {
    /// Checks that the endpoints are fixed and that `tau` is strictly increasing
    /// with nonvanishing derivative on a probe grid.
    pub fn new(a: f64, b: f64, tau: ScalarFn, tau_prime: ScalarFn, label: impl Into<String>) -> Result<Self> {
        if !(b > a) {
            return Err(invalid(format!("interval [{a}, {b}] must satisfy b > a")));
        }
        let scale = a.abs().max(b.abs()).max(1.0);
        if (tau(a) - a).abs() > 1e-12 * scale || (tau(b) - b).abs() > 1e-12 * scale {
            return Err(invalid("grid map must fix both endpoints"));
        }
        let mut prev = tau(a);
        for i in 1..=PROBES {
            let x = a + (b - a) * i as f64 / PROBES as f64;
            let t = tau(x);
            let d = tau_prime(x);
            if !(t > prev) {
                return Err(Error::DegenerateGrid(format!("grid map not strictly increasing near x = {x}")));
            }
            if !(d != 0.0 && d.is_finite()) {
                return Err(Error::DegenerateGrid(format!("grid map derivative vanishes at x = {x}")));
            }
            prev = t;
        }
        Ok(Diffeomorphism { a, b, tau, tau_prime, label: label.into() })
    }

    pub fn identity(a: f64, b: f64) -> Result<Self> {
        Self::new(a, b, scalar_fn(|x| x), scalar_fn(|_| 1.0), "identity")
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.tau)(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (self.tau_prime)(x)
    }
}

/// The exponential grid map on `[1, e^sqrt(alpha)]`:
/// `tau(x) = exp(sqrt(alpha) (x - 1) / (e^sqrt(alpha) - 1))`.
///
/// It equidistributes the Liouville coordinate of the Euler-Cauchy problem,
/// so the FD/IgA symbol amplitude on the mapped grid is constant.
pub fn exp_map(alpha: f64) -> Result<Diffeomorphism> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(invalid(format!("alpha must be positive, got {alpha}")));
    }
    let s = alpha.sqrt();
    let len = s.exp_m1();
    Diffeomorphism::new(
        1.0,
        s.exp(),
        scalar_fn(move |x| (s * (x - 1.0) / len).exp()),
        scalar_fn(move |x| s / len * (s * (x - 1.0) / len).exp()),
        format!("exp(alpha={alpha})"),
    )
}

/// Grid nodes `x_j`, `j = 1 - eta ..= n + eta`; nodes outside `1..=n` are ghosts.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedGrid {
    nodes: Vec<f64>,
    pub n: usize,
    pub eta: usize,
    pub a: f64,
    pub b: f64,
}

impl ExtendedGrid {
    /// Node with signed index `j` in `1 - eta ..= n + eta`.
    pub fn node(&self, j: isize) -> f64 {
        let off = j + self.eta as isize - 1;
        assert!(
            off >= 0 && (off as usize) < self.nodes.len(),
            "node index {j} outside {}..={}",
            1 - self.eta as isize,
            self.n + self.eta
        );
        self.nodes[off as usize]
    }

    /// All nodes in index order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Interior nodes `x_1 ..= x_n`.
    pub fn interior(&self) -> &[f64] {
        &self.nodes[self.eta..self.eta + self.n]
    }

    /// Signed indices paired with their nodes.
    pub fn indexed(&self) -> impl Iterator<Item = (isize, f64)> + '_ {
        let start = 1 - self.eta as isize;
        self.nodes.iter().enumerate().map(move |(i, &x)| (start + i as isize, x))
    }
}

/// Uniform grid `x_j = a + (b - a) j / (n + 1)` with `eta` ghost nodes on each side.
pub fn uniform_grid(a: f64, b: f64, n: usize, eta: usize) -> Result<ExtendedGrid> {
    if n < 1 {
        return Err(invalid("grid needs at least one interior node"));
    }
    if eta < 1 {
        return Err(invalid("extension width eta must be at least 1"));
    }
    if !(b > a) {
        return Err(invalid(format!("interval [{a}, {b}] must satisfy b > a")));
    }
    let h = (b - a) / (n + 1) as f64;
    let nodes = (1 - eta as isize..=(n + eta) as isize)
        .map(|j| match j {
            0 => a,
            j if j == (n + 1) as isize => b,
            j => a + h * j as f64,
        })
        .collect();
    Ok(ExtendedGrid { nodes, n, eta, a, b })
}

/// Applies `tau` to the interior nodes; ghost nodes stay at their uniform positions.
pub fn mapped_grid(g: &ExtendedGrid, tau: &Diffeomorphism) -> Result<ExtendedGrid> {
    let scale = g.a.abs().max(g.b.abs()).max(1.0);
    if (tau.a - g.a).abs() > 1e-12 * scale || (tau.b - g.b).abs() > 1e-12 * scale {
        return Err(invalid("grid map interval does not match the grid"));
    }
    let mut out = g.clone();
    for j in 1..=g.n {
        let off = j + g.eta - 1;
        out.nodes[off] = tau.eval(g.nodes[off]);
    }
    if let Some(w) = out.nodes.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::DegenerateGrid(format!("mapped nodes not strictly increasing at position {w}")));
    }
    Ok(out)
}
