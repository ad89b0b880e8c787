use crate::matrix::SymTridiagonal;

struct Sturm<'a> {
    diag: &'a [f64],
    off_sq: Vec<f64>,
    pivmin: f64,
}

impl<'a> Sturm<'a> {
    fn new(t: &'a SymTridiagonal) -> Self {
        let off_sq: Vec<f64> = t.off.iter().map(|e| e * e).collect();
        let max_sq = off_sq.iter().fold(1.0f64, |m, &v| m.max(v));
        Sturm { diag: &t.diag, off_sq, pivmin: f64::MIN_POSITIVE * max_sq }
    }

    /// Number of eigenvalues strictly below `x`.
    fn count(&self, x: f64) -> usize {
        let mut c = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < self.pivmin {
            q = -self.pivmin;
        }
        if q < 0.0 {
            c += 1;
        }
        for i in 1..self.diag.len() {
            q = self.diag[i] - x - self.off_sq[i - 1] / q;
            if q.abs() < self.pivmin {
                q = -self.pivmin;
            }
            if q < 0.0 {
                c += 1;
            }
        }
        c
    }
}

/// Number of eigenvalues of `t` strictly below `x` (Sturm sequence count).
pub fn sturm_count(t: &SymTridiagonal, x: f64) -> usize {
    if t.dim() == 0 {
        return 0;
    }
    Sturm::new(t).count(x)
}

fn gershgorin(t: &SymTridiagonal) -> (f64, f64) {
    let n = t.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += t.off[i - 1].abs();
        }
        if i + 1 < n {
            r += t.off[i].abs();
        }
        lo = lo.min(t.diag[i] - r);
        hi = hi.max(t.diag[i] + r);
    }
    let pad = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + f64::MIN_POSITIVE;
    (lo - pad, hi + pad)
}

/// Eigenvalues with ascending indices `first..last` (0-based, `last` exclusive)
/// by interval bisection on the Sturm count.
///
/// Intervals are split until their width reaches a few ulps of the endpoints,
/// so each value is as accurate as the count itself (absolute error of order
/// `eps * ||T||`).
pub fn tridiagonal_eigvals_range(t: &SymTridiagonal, first: usize, last: usize) -> Vec<f64> {
    let n = t.dim();
    assert!(first <= last && last <= n, "index range {first}..{last} outside 0..{n}");
    let mut out = vec![f64::NAN; last - first];
    if first == last {
        return out;
    }
    let sturm = Sturm::new(t);
    let (glo, ghi) = gershgorin(t);
    let abstol = f64::EPSILON * f64::EPSILON * t.norm_inf().max(f64::MIN_POSITIVE);

    // Each entry: interval [lo, hi) holding eigenvalues with indices count(lo)..count(hi).
    let mut stack = vec![(glo, ghi, 0usize, n)];
    while let Some((lo, hi, clo, chi)) = stack.pop() {
        if chi <= first || clo >= last || clo >= chi {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let width_tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + abstol;
        if hi - lo <= width_tol || mid <= lo || mid >= hi {
            for k in clo.max(first)..chi.min(last) {
                out[k - first] = mid;
            }
            continue;
        }
        let cm = sturm.count(mid).clamp(clo, chi);
        debug_assert!(clo <= cm && cm <= chi, "Sturm count not monotone");
        stack.push((mid, hi, cm, chi));
        stack.push((lo, mid, clo, cm));
    }
    out
}
