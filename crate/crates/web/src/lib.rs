//! wasm-bindgen bindings behind the static demo page in `www/`.

use std::f64::consts::PI;

use glt_spectra::fd::{assemble_fd, fd_operator, fd_symbol};
use glt_spectra::grids::{exp_map, Diffeomorphism};
use glt_spectra::iga::{assemble_iga, iga_operator, iga_symbol};
use glt_spectra::problems::{euler_cauchy, ExactSpectrum};
use glt_spectra::symbol::{euler_cauchy_rearrangement, fd_symbol_for, rearrange, sample_points, GridConvention};
use glt_spectra::{Error, Result};
use wasm_bindgen::prelude::*;

/// Largest operator size solved in the browser; dense solves are O(n^3).
pub const MAX_SOLVE_N: usize = 400;
/// Largest symbol grid side for sampled rearrangements.
pub const MAX_R: usize = 2000;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn is_iga(method: &str) -> Result<bool> {
    match method {
        "fd" => Ok(false),
        "iga" => Ok(true),
        other => Err(invalid(format!("unknown method {other:?}, expected fd or iga"))),
    }
}

fn grid(kind: &str, alpha: f64, a: f64, b: f64) -> Result<Diffeomorphism> {
    match kind {
        "uniform" => Diffeomorphism::identity(a, b),
        "exp" => exp_map(alpha),
        other => Err(invalid(format!("unknown grid {other:?}, expected uniform or exp"))),
    }
}

/// Frequency function on `points` equispaced angles in `[0, pi]`.
pub fn symbol_curve_values(method: &str, eta: usize, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(invalid("need at least 2 points"));
    }
    let thetas = (0..points).map(|i| PI * i as f64 / (points - 1) as f64);
    if is_iga(method)? {
        let f = iga_symbol(eta)?;
        Ok(thetas.map(f).collect())
    } else {
        let f = fd_symbol(eta)?;
        Ok(thetas.map(f).collect())
    }
}

/// Sampled (r x r grid) and closed-form rearrangements of the Euler-Cauchy
/// 3-point symbol at `k/(n+1)`, concatenated: first `n` sampled, then `n` exact.
pub fn rearrangement_values(alpha: f64, n: usize, r: usize) -> Result<Vec<f64>> {
    if n == 0 || !(2..=MAX_R).contains(&r) {
        return Err(invalid(format!("need n >= 1 and 2 <= r <= {MAX_R}")));
    }
    let prob = euler_cauchy(alpha)?;
    let tau = Diffeomorphism::identity(prob.a, prob.b)?;
    let sampled = rearrange(&fd_symbol_for(&prob, &tau, 1)?, r)?;
    let exact = euler_cauchy_rearrangement(alpha, n)?;
    let xs = sample_points(n, GridConvention::Interior);
    Ok(xs.iter().map(|&x| sampled.eval(x)).chain(xs.iter().map(|&x| exact.eval(x))).collect())
}

/// `|lambda_k / lambda_k^exact - 1|` for the Euler-Cauchy problem, k = 1..n
/// (IgA values beyond `n` are dropped).
pub fn relative_error_values(method: &str, grid_kind: &str, alpha: f64, n: usize, eta: usize) -> Result<Vec<f64>> {
    if n > MAX_SOLVE_N {
        return Err(Error::TooLarge { what: "n", n, limit: MAX_SOLVE_N });
    }
    let iga = is_iga(method)?;
    let prob = euler_cauchy(alpha)?;
    let tau = grid(grid_kind, alpha, prob.a, prob.b)?;
    let spec = if iga {
        iga_operator(&assemble_iga(&prob, &tau, n, eta)?).eigenvalues()?
    } else {
        fd_operator(&assemble_fd(&prob, &tau, n, eta)?).eigenvalues()?
    };
    let exact = ExactSpectrum::EulerCauchy { alpha }.first(n);
    Ok(spec.values.iter().zip(&exact).map(|(l, e)| (l / e - 1.0).abs()).collect())
}

fn js(r: Result<Vec<f64>>) -> std::result::Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn symbol_curve(method: &str, eta: usize, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    js(symbol_curve_values(method, eta, points))
}

#[wasm_bindgen]
pub fn rearrangement(alpha: f64, n: usize, r: usize) -> std::result::Result<Vec<f64>, JsError> {
    js(rearrangement_values(alpha, n, r))
}

#[wasm_bindgen]
pub fn relative_errors(method: &str, grid: &str, alpha: f64, n: usize, eta: usize) -> std::result::Result<Vec<f64>, JsError> {
    js(relative_error_values(method, grid, alpha, n, eta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_curves_start_at_zero_and_peak_at_pi() {
        let fd = symbol_curve_values("fd", 1, 11).unwrap();
        assert_eq!(fd.len(), 11);
        assert!(fd[0].abs() < 1e-15);
        assert!((fd[10] - 4.0).abs() < 1e-12);
        let iga = symbol_curve_values("iga", 2, 11).unwrap();
        assert!(iga[0].abs() < 1e-15 && iga.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rearrangement_halves_agree() {
        let v = rearrangement_values(1.0, 50, 400).unwrap();
        let (sampled, exact) = v.split_at(50);
        for (s, e) in sampled.iter().zip(exact) {
            assert!((s - e).abs() < 0.1, "{s} vs {e}");
        }
    }

    #[test]
    fn relative_errors_are_small_for_low_modes() {
        let fd = relative_error_values("fd", "uniform", 1.0, 100, 1).unwrap();
        assert_eq!(fd.len(), 100);
        assert!(fd[0] < 1e-3);
        let iga = relative_error_values("iga", "exp", 1.0, 60, 3).unwrap();
        assert_eq!(iga.len(), 60);
        assert!(iga[0] < 1e-6);
    }

    #[test]
    fn bad_input_is_rejected() {
        assert!(symbol_curve_values("fem", 1, 10).is_err());
        assert!(relative_error_values("fd", "chebyshev", 1.0, 50, 1).is_err());
        assert!(relative_error_values("fd", "uniform", 1.0, MAX_SOLVE_N + 1, 1).is_err());
        assert!(rearrangement_values(1.0, 10, 1).is_err());
    }
}
