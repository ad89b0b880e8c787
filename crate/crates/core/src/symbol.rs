//! Separable spectral symbols `a(x) f(theta)`, their monotone rearrangements,
//! essential ranges and the discrete counting function.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::fd;
use crate::grids::Diffeomorphism;
use crate::iga;
use crate::problems::{ScalarFn, SlProblem};
use crate::quad::{bisect_increasing, golden_max};

const PROBES: usize = 1000;

/// `omega(x, theta) = amp(x) * freq(theta)` on `[a, b] x [0, pi]`.
#[derive(Clone)]
pub struct SeparableSymbol {
    pub a: f64,
    pub b: f64,
    amp: ScalarFn,
    freq: ScalarFn,
    /// The amplitude is not bounded on `[a, b]` (e.g. an integrable endpoint singularity).
    pub unbounded: bool,
    /// `freq(0) = 0`, so the infimum of the symbol is zero.
    pub vanishes_at_zero_frequency: bool,
    pub label: String,
}

impl fmt::Debug for SeparableSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeparableSymbol")
            .field("label", &self.label)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("unbounded", &self.unbounded)
            .finish_non_exhaustive()
    }
}

impl SeparableSymbol {
    /// Builds a symbol, checking `amp > 0` on interior probes. The symbol is
    /// flagged unbounded when the amplitude is not finite at an endpoint.
    pub fn new(a: f64, b: f64, amp: ScalarFn, freq: ScalarFn, label: impl Into<String>) -> Result<Self> {
        if !(b > a) {
            return Err(invalid(format!("interval [{a}, {b}] must satisfy b > a")));
        }
        for i in 0..PROBES {
            let x = a + (b - a) * (i as f64 + 0.5) / PROBES as f64;
            let v = amp(x);
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonPositive { name: "symbol amplitude", x, value: v });
            }
        }
        let unbounded = !amp(a).is_finite() || !amp(b).is_finite();
        let vanishes_at_zero_frequency = freq(0.0).abs() < 1e-12;
        Ok(SeparableSymbol { a, b, amp, freq, unbounded, vanishes_at_zero_frequency, label: label.into() })
    }

    pub fn amp(&self, x: f64) -> f64 {
        (self.amp)(x)
    }

    pub fn freq(&self, theta: f64) -> f64 {
        (self.freq)(theta)
    }

    pub fn eval(&self, x: f64, theta: f64) -> f64 {
        self.amp(x) * self.freq(theta)
    }
}

/// Amplitude `p(tau(x)) / (w(tau(x)) tau'(x)^2 (b - a)^2)` shared by the FD and IgA symbols.
fn amplitude(prob: &SlProblem, tau: &Diffeomorphism) -> ScalarFn {
    let (p, w) = (prob.p.clone(), prob.w.clone());
    let (t, dt) = (tau.tau.clone(), tau.tau_prime.clone());
    let len2 = (prob.b - prob.a) * (prob.b - prob.a);
    Arc::new(move |x| {
        let y = t(x);
        let d = dt(x);
        p(y) / (w(y) * d * d * len2)
    })
}

/// Symbol of the `(2 eta + 1)`-point FD discretization of `prob` on the grid mapped by `tau`.
pub fn fd_symbol_for(prob: &SlProblem, tau: &Diffeomorphism, eta: usize) -> Result<SeparableSymbol> {
    let f = fd::fd_symbol(eta)?;
    SeparableSymbol::new(prob.a, prob.b, amplitude(prob, tau), Arc::new(f), format!("fd(eta={eta}) {}", prob.label))
}

/// Symbol of the degree-`eta` IgA discretization of `prob` with geometry map `tau`.
pub fn iga_symbol_for(prob: &SlProblem, tau: &Diffeomorphism, eta: usize) -> Result<SeparableSymbol> {
    let f = iga::iga_symbol(eta)?;
    SeparableSymbol::new(prob.a, prob.b, amplitude(prob, tau), Arc::new(f), format!("iga(eta={eta}) {}", prob.label))
}

/// Placement of rearrangement nodes and sample points in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridConvention {
    /// Sorted samples at `j / (m + 1)`, plus end values at 0 and 1; samples taken at `k / (n + 1)`.
    #[default]
    Interior,
    /// Sorted samples spanning `[0, 1]` at `(j - 1) / (m - 1)`; samples taken at `(k - 1) / (n - 1)`.
    Spanning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RearrangementMode {
    /// Built from `r x r` symbol samples.
    Approx { r: usize },
    /// Built from a closed-form distribution function.
    Exact,
}

/// Nondecreasing piecewise-linear function on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneRearrangement {
    pub xs: Vec<f64>,
    pub vals: Vec<f64>,
    pub mode: RearrangementMode,
    pub convention: GridConvention,
}

impl MonotoneRearrangement {
    /// Checks that `xs` is strictly increasing, `vals` nondecreasing, and lengths match.
    pub fn new(xs: Vec<f64>, vals: Vec<f64>, mode: RearrangementMode, convention: GridConvention) -> Result<Self> {
        if xs.len() != vals.len() || xs.len() < 2 {
            return Err(invalid("rearrangement needs at least two nodes and one value per node"));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("rearrangement nodes must be strictly increasing"));
        }
        if vals.windows(2).any(|w| w[1] < w[0]) {
            return Err(invalid("rearrangement values must be nondecreasing"));
        }
        Ok(MonotoneRearrangement { xs, vals, mode, convention })
    }

    /// Piecewise-linear interpolation; the end segments extend linearly past the nodes.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = self.xs.partition_point(|&v| v <= x).clamp(1, n - 1);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.vals[i - 1], self.vals[i]);
        if x == x1 {
            return y1;
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Distribution function: the largest `x` in `[0, 1]` with `eval(x) <= t`.
    pub fn distribution(&self, t: f64) -> f64 {
        let n = self.vals.len();
        if t < self.vals[0] {
            return 0.0;
        }
        if t >= self.vals[n - 1] {
            return 1.0;
        }
        let i = self.vals.partition_point(|&v| v <= t).clamp(1, n - 1);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.vals[i - 1], self.vals[i]);
        if y1 == y0 {
            return x1;
        }
        (x0 + (x1 - x0) * (t - y0) / (y1 - y0)).clamp(0.0, 1.0)
    }

    /// Values at the grid convention's sample points for `n` eigenvalues.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        sample_points(n, self.convention).into_iter().map(|x| self.eval(x)).collect()
    }
}

/// Sample abscissae in `[0, 1]` for `n` eigenvalues.
pub fn sample_points(n: usize, convention: GridConvention) -> Vec<f64> {
    match convention {
        GridConvention::Interior => (1..=n).map(|k| k as f64 / (n + 1) as f64).collect(),
        GridConvention::Spanning if n == 1 => vec![0.0],
        GridConvention::Spanning => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
    }
}

/// `omega_tilde(k / (n + 1))`, `k = 1..=n`.
pub fn sample_rearrangement(rearr: &MonotoneRearrangement, n: usize) -> Vec<f64> {
    sample_points(n, GridConvention::Interior).into_iter().map(|x| rearr.eval(x)).collect()
}

/// Sorted symbol values on the `r x r` grid `x_i = a + (b - a) i/(r + 1)`, `theta_j = j pi/(r + 1)`.
pub fn symbol_samples(sym: &SeparableSymbol, r: usize) -> Vec<f64> {
    let amps: Vec<f64> = (1..=r).map(|i| sym.amp(sym.a + (sym.b - sym.a) * i as f64 / (r + 1) as f64)).collect();
    let freqs: Vec<f64> = (1..=r).map(|j| sym.freq(j as f64 * PI / (r + 1) as f64)).collect();
    let mut vals = Vec::with_capacity(r * r);
    for &a in &amps {
        vals.extend(freqs.iter().map(|&f| a * f));
    }
    vals.sort_unstable_by(f64::total_cmp);
    vals
}

/// Monotone rearrangement from `r x r` samples with the default node placement.
pub fn rearrange(sym: &SeparableSymbol, r: usize) -> Result<MonotoneRearrangement> {
    rearrange_with(sym, r, GridConvention::Interior)
}

/// Monotone rearrangement from `r x r` samples.
///
/// With [`GridConvention::Interior`] the sorted samples sit at `j/(r^2 + 1)`
/// and the ends take the symbol's infimum and supremum; for an unbounded
/// symbol the right end is left open and the last segment extends linearly.
pub fn rearrange_with(sym: &SeparableSymbol, r: usize, convention: GridConvention) -> Result<MonotoneRearrangement> {
    if r < 2 {
        return Err(invalid(format!("rearrangement needs r >= 2, got {r}")));
    }
    let vals = symbol_samples(sym, r);
    let m = vals.len();
    let mode = RearrangementMode::Approx { r };
    match convention {
        GridConvention::Spanning => {
            let xs = (0..m).map(|j| j as f64 / (m - 1) as f64).collect();
            MonotoneRearrangement::new(xs, vals, mode, convention)
        }
        GridConvention::Interior => {
            let range = essential_range(sym);
            let lo = if sym.vanishes_at_zero_frequency { 0.0 } else { range.lo.min(vals[0]) };
            let mut xs = Vec::with_capacity(m + 2);
            let mut ys = Vec::with_capacity(m + 2);
            xs.push(0.0);
            ys.push(lo.min(vals[0]));
            for (j, v) in vals.iter().enumerate() {
                xs.push((j + 1) as f64 / (m + 1) as f64);
                ys.push(*v);
            }
            if let Some(hi) = range.hi {
                xs.push(1.0);
                ys.push(hi.max(vals[m - 1]));
            }
            MonotoneRearrangement::new(xs, ys, mode, convention)
        }
    }
}

/// Closure of the symbol's range; `hi` is `None` for unbounded symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EssentialRange {
    pub lo: f64,
    pub hi: Option<f64>,
}

impl EssentialRange {
    pub fn width(&self) -> Option<f64> {
        self.hi.map(|h| h - self.lo)
    }
}

fn extremes(f: impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let xs: Vec<f64> = (0..=PROBES).map(|i| a + (b - a) * i as f64 / PROBES as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let refine = |sign: f64| {
        let (k, &best) = vs
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .max_by(|x, y| (sign * x.1).total_cmp(&(sign * y.1)))
            .expect("finite probe value");
        let lo = xs[k.saturating_sub(1)];
        let hi = xs[(k + 1).min(PROBES)];
        let (_, v) = golden_max(|x| sign * f(x), lo, hi, 80);
        if sign * v > sign * best {
            v * sign
        } else {
            best
        }
    };
    let min = -refine(-1.0);
    let max = refine(1.0);
    (min.min(max), max)
}

/// `[min amp * min freq, max amp * max freq]`, from probe extrema refined by golden-section search.
pub fn essential_range(sym: &SeparableSymbol) -> EssentialRange {
    let (amin, amax) = extremes(|x| sym.amp(x), sym.a, sym.b);
    let (fmin, fmax) = extremes(|t| sym.freq(t), 0.0, PI);
    let lo = if sym.vanishes_at_zero_frequency { 0.0 } else { amin * fmin };
    let hi = if sym.unbounded { None } else { Some(amax * fmax) };
    EssentialRange { lo, hi }
}

/// Whether `lambda` lies outside the essential range widened by `eps` times its width.
/// For unbounded ranges only the lower end is tested.
pub fn is_outlier(lambda: f64, range: &EssentialRange, eps: f64) -> bool {
    match range.hi {
        Some(hi) => {
            let pad = eps * (hi - range.lo);
            lambda < range.lo - pad || lambda > hi + pad
        }
        None => lambda < range.lo - eps * range.lo.abs(),
    }
}

/// Fraction of the (ascending) spectrum not exceeding `t`.
pub fn counting_function(spectrum: &[f64], t: f64) -> f64 {
    if spectrum.is_empty() {
        return 0.0;
    }
    spectrum.partition_point(|&v| v <= t) as f64 / spectrum.len() as f64
}

// Exact rearrangement of the Euler-Cauchy FD symbol.
//
// With y = sqrt(alpha) x / L, L = e^sqrt(alpha) - 1, the symbol is
// y^2 * 4 sin^2(theta/2) with y uniform on [g0, g0 + g1], g0 = sqrt(alpha)/L,
// g1 = sqrt(alpha). The distribution function is
//   phi(t) = (u - g0)_+ / g1 + (1/(pi g1)) * int_{max(u, g0)}^{g0+g1} 2 asin(u/y) dy,
// u = sqrt(t)/2, with antiderivative F(y) = 2y asin(u/y) + 2u ln(y + sqrt(y^2 - u^2)).

struct EcParams {
    g0: f64,
    g1: f64,
    tmax: f64,
}

impl EcParams {
    fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(invalid(format!("alpha must be positive, got {alpha}")));
        }
        let s = alpha.sqrt();
        let l = s.exp_m1();
        Ok(EcParams { g0: s / l, g1: s, tmax: 4.0 * alpha * (1.0 + l) * (1.0 + l) / (l * l) })
    }
}

/// `F(y2) - F(y1)` for `u <= y1 < y2`, evaluated without cancellation.
fn antiderivative_diff(u: f64, y1: f64, y2: f64) -> f64 {
    let r1 = ((y1 - u) * (y1 + u)).max(0.0).sqrt();
    let r2 = ((y2 - u) * (y2 + u)).sqrt();
    let p = u / y2;
    let q = u / y1;
    let sp = r2 / y2;
    let sq = r1 / y1;
    // asin(p) - asin(q) via atan2 of sin/cos of the difference.
    let den = p * sq + q * sp;
    let sin_d = if den > 0.0 { (u * (y1 - y2) / (y1 * y2)) * (p + q) / den } else { p - q };
    let dasin = sin_d.atan2(sp * sq + p * q);
    let a = 2.0 * (y2 - y1) * p.asin() + 2.0 * y1 * dasin;
    let dr = (y2 - y1) * (y2 + y1) / (r1 + r2);
    let b = 2.0 * u * (((y2 - y1) + dr) / (y1 + r1)).ln_1p();
    a + b
}

fn ec_phi(par: &EcParams, t: f64) -> f64 {
    let u = t.max(0.0).sqrt() / 2.0;
    let top = par.g0 + par.g1;
    if u >= top {
        return 1.0;
    }
    if u <= par.g0 {
        if u == 0.0 {
            return 0.0;
        }
        return (antiderivative_diff(u, par.g0, top) / (PI * par.g1)).clamp(0.0, 1.0);
    }
    let s = (u - par.g0) / par.g1;
    (s + antiderivative_diff(u, u, top) / (PI * par.g1)).clamp(0.0, 1.0)
}

fn ec_phi_prime(par: &EcParams, t: f64) -> f64 {
    let u = t.sqrt() / 2.0;
    let top = par.g0 + par.g1;
    if u <= 0.0 || u >= top {
        return 0.0;
    }
    let lo = u.max(par.g0);
    let rlo = ((lo - u) * (lo + u)).max(0.0).sqrt();
    let rtop = ((top - u) * (top + u)).sqrt();
    ((top + rtop) / (lo + rlo)).ln() / (4.0 * PI * par.g1 * u)
}

/// Largest value of the Euler-Cauchy FD symbol, `4 alpha e^{2 sqrt(alpha)} / (e^sqrt(alpha) - 1)^2`.
pub fn euler_cauchy_max(alpha: f64) -> Result<f64> {
    Ok(EcParams::new(alpha)?.tmax)
}

/// Distribution function of the Euler-Cauchy FD symbol (3-point stencil, uniform grid).
pub fn euler_cauchy_phi(alpha: f64, t: f64) -> Result<f64> {
    let par = EcParams::new(alpha)?;
    if !(t >= 0.0 && t <= par.tmax * (1.0 + 1e-12)) {
        return Err(Error::OutOfRange(format!("t = {t} outside [0, {}]", par.tmax)));
    }
    Ok(ec_phi(&par, t))
}

fn ec_quantile(par: &EcParams, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return par.tmax;
    }
    let t = bisect_increasing(|t| ec_phi(par, t), x, 0.0, par.tmax);
    // One Newton step from the bisection midpoint; kept only if it lowers the residual.
    let r = ec_phi(par, t) - x;
    let d = ec_phi_prime(par, t);
    if d > 0.0 && d.is_finite() {
        let tn = t - r / d;
        if tn > 0.0 && tn < par.tmax && (ec_phi(par, tn) - x).abs() < r.abs() {
            return tn;
        }
    }
    t
}

/// Exact rearrangement value `phi^{-1}(x)` at an arbitrary `x` in `[0, 1]`.
pub fn euler_cauchy_quantile(alpha: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(format!("x = {x} outside [0, 1]")));
    }
    Ok(ec_quantile(&EcParams::new(alpha)?, x))
}

/// Exact rearrangement sampled at `k/(n + 1)`, with end values 0 and the symbol maximum.
pub fn euler_cauchy_rearrangement(alpha: f64, n: usize) -> Result<MonotoneRearrangement> {
    let par = EcParams::new(alpha)?;
    let mut xs = Vec::with_capacity(n + 2);
    let mut vals = Vec::with_capacity(n + 2);
    xs.push(0.0);
    vals.push(0.0);
    for k in 1..=n {
        let x = k as f64 / (n + 1) as f64;
        xs.push(x);
        vals.push(ec_quantile(&par, x));
    }
    xs.push(1.0);
    vals.push(par.tmax);
    MonotoneRearrangement::new(xs, vals, RearrangementMode::Exact, GridConvention::Interior)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::scalar_fn;

    #[test]
    fn phi_endpoints() {
        assert_eq!(euler_cauchy_phi(1.0, 0.0).unwrap(), 0.0);
        let m = euler_cauchy_max(1.0).unwrap();
        assert!((euler_cauchy_phi(1.0, m).unwrap() - 1.0).abs() < 1e-15);
        assert!(euler_cauchy_phi(1.0, -1.0).is_err());
        assert!(euler_cauchy_phi(1.0, 2.0 * m).is_err());
    }

    #[test]
    fn quantile_inverts_phi() {
        for &alpha in &[1e-6, 0.1, 1.0, 4.0] {
            for &x in &[1e-3, 0.1, 0.5, 0.9, 0.999] {
                let t = euler_cauchy_quantile(alpha, x).unwrap();
                let back = euler_cauchy_phi(alpha, t).unwrap();
                assert!((back - x).abs() < 1e-12, "alpha={alpha} x={x} back={back}");
            }
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let par = EcParams::new(1.0).unwrap();
        for &t in &[0.05, 1.0, 3.0, 8.0] {
            let h = 1e-6 * t;
            let fd = (ec_phi(&par, t + h) - ec_phi(&par, t - h)) / (2.0 * h);
            let d = ec_phi_prime(&par, t);
            assert!((fd - d).abs() < 1e-6 * d.abs(), "t={t} fd={fd} d={d}");
        }
    }

    #[test]
    fn rearrangement_eval_and_distribution() {
        let r = MonotoneRearrangement::new(
            vec![0.0, 0.5, 1.0],
            vec![0.0, 1.0, 3.0],
            RearrangementMode::Exact,
            GridConvention::Interior,
        )
        .unwrap();
        assert_eq!(r.eval(0.25), 0.5);
        assert_eq!(r.eval(0.75), 2.0);
        assert_eq!(r.distribution(2.0), 0.75);
        assert_eq!(r.distribution(-1.0), 0.0);
        assert_eq!(r.distribution(5.0), 1.0);
        assert!(MonotoneRearrangement::new(vec![0.0, 1.0], vec![1.0, 0.0], RearrangementMode::Exact, GridConvention::Interior).is_err());
    }

    #[test]
    fn identity_rearrangement_samples() {
        let r = MonotoneRearrangement::new(vec![0.0, 1.0], vec![0.0, 1.0], RearrangementMode::Exact, GridConvention::Interior).unwrap();
        assert_eq!(sample_rearrangement(&r, 3), vec![0.25, 0.5, 0.75]);
    }

    #[test]
    fn outlier_test() {
        let range = EssentialRange { lo: 0.0, hi: Some(4.0) };
        assert!(is_outlier(4.4, &range, 0.05));
        assert!(!is_outlier(4.1, &range, 0.05));
        assert!(is_outlier(-0.3, &range, 0.05));
        let open = EssentialRange { lo: 0.0, hi: None };
        assert!(!is_outlier(1e9, &open, 0.05));
    }

    #[test]
    fn counting() {
        let s = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(counting_function(&s, 0.5), 0.0);
        assert_eq!(counting_function(&s, 2.0), 0.5);
        assert_eq!(counting_function(&s, 9.0), 1.0);
    }

    #[test]
    fn unbounded_amplitude_flagged() {
        let s = SeparableSymbol::new(0.0, 1.0, scalar_fn(|x| 1.0 / x.sqrt()), scalar_fn(|t| 2.0 - 2.0 * t.cos()), "l1").unwrap();
        assert!(s.unbounded);
        assert!(s.vanishes_at_zero_frequency);
        assert_eq!(essential_range(&s).hi, None);
    }
}
