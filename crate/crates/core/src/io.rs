//! CSV output with shortest round-trip float formatting.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::analysis::{ErrorReport, GapReport};
use crate::eig::SpectrumResult;
use crate::grids::ExtendedGrid;

/// Shortest decimal representation that parses back to the same `f64`
/// (at most 17 significant digits).
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// A header plus rows of already formatted cells.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Csv { header: header.iter().map(|s| s.as_ref().to_string()).collect(), rows: Vec::new() }
    }

    /// Appends a row; panics if its width differs from the header.
    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width differs from header");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.join(","));
        }
        s
    }

    pub fn write(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        fs::write(path, self.render())
    }
}

/// Columns `j, x`.
pub fn grid_csv(g: &ExtendedGrid) -> Csv {
    let mut c = Csv::new(&["j", "x"]);
    for (j, x) in g.indexed() {
        c.push(vec![j.to_string(), num(x)]);
    }
    c
}

/// Columns `i, j, value` (1-based indices).
pub fn triplets_csv(t: &[(usize, usize, f64)]) -> Csv {
    let mut c = Csv::new(&["i", "j", "value"]);
    for &(i, j, v) in t {
        c.push(vec![(i + 1).to_string(), (j + 1).to_string(), num(v)]);
    }
    c
}

/// Columns `k, lambda_re, lambda_im`.
pub fn spectrum_csv(s: &SpectrumResult) -> Csv {
    let mut c = Csv::new(&["k", "lambda_re", "lambda_im"]);
    for (k, (re, im)) in s.values.iter().zip(&s.imag).enumerate() {
        c.push(vec![(k + 1).to_string(), num(*re), num(*im)]);
    }
    c
}

/// Columns `x, omega_tilde`.
pub fn rearrangement_csv(xs: &[f64], vals: &[f64]) -> Csv {
    let mut c = Csv::new(&["x", "omega_tilde"]);
    for (x, v) in xs.iter().zip(vals) {
        c.push(vec![num(*x), num(*v)]);
    }
    c
}

/// Columns `k, err_num, err_analytic`.
pub fn error_report_csv(r: &ErrorReport) -> Csv {
    let mut c = Csv::new(&["k", "err_num", "err_analytic"]);
    for ((k, e), a) in r.k.iter().zip(&r.numerical_err).zip(&r.analytic_err) {
        c.push(vec![k.to_string(), num(*e), num(*a)]);
    }
    c
}

/// Columns `x, gap`.
pub fn gap_csv(g: &GapReport) -> Csv {
    let mut c = Csv::new(&["x", "gap"]);
    c.push(vec![num(g.argmax_x), num(g.gap)]);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for &x in &[0.1, 1.0 / 3.0, 4.2392e-6, 1e300, -2.5, std::f64::consts::PI] {
            let s = num(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let digits = s.chars().filter(|c| c.is_ascii_digit()).count();
            assert!(digits <= 20, "{s}");
        }
    }

    #[test]
    fn csv_render() {
        let mut c = Csv::new(&["a", "b"]);
        c.push(vec!["1".into(), num(0.5)]);
        assert_eq!(c.render(), "a,b\n1,0.5\n");
    }
}
