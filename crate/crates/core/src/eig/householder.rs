use crate::matrix::{DenseMatrix, SymTridiagonal};

/// Householder reduction of a symmetric matrix to tridiagonal form
/// (eigenvalues preserved; transformations discarded).
pub(super) fn tridiagonalize(mut a: DenseMatrix) -> SymTridiagonal {
    let n = a.dim();
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let m = k + 1;
        let mut scale = 0.0;
        for i in m..n {
            scale += a[(i, k)].abs();
        }
        if scale == 0.0 {
            off[k] = 0.0;
            continue;
        }
        let mut h = 0.0;
        for i in m..n {
            v[i] = a[(i, k)] / scale;
            h += v[i] * v[i];
        }
        let g = if v[m] >= 0.0 { -h.sqrt() } else { h.sqrt() };
        // Reflector I - v v^T / h' with v = x - g e_1 (scaled), h' = h - x_0 g.
        h -= v[m] * g;
        v[m] -= g;
        off[k] = scale * g;

        // p = A22 v / h
        for i in m..n {
            let row = &a.row(i)[m..n];
            let s: f64 = row.iter().zip(&v[m..n]).map(|(x, y)| x * y).sum();
            p[i] = s / h;
        }
        // w = p - (v^T p / 2h) v
        let kk: f64 = (m..n).map(|i| v[i] * p[i]).sum::<f64>() / (2.0 * h);
        for i in m..n {
            p[i] -= kk * v[i];
        }
        // A22 -= v w^T + w v^T
        for i in m..n {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a.row_mut(i)[m..n];
            for ((x, &vj), &wj) in row.iter_mut().zip(&v[m..n]).zip(&p[m..n]) {
                *x -= vi * wj + wi * vj;
            }
        }
    }
    for (i, d) in diag.iter_mut().enumerate() {
        *d = a[(i, i)];
    }
    if n >= 2 {
        off[n - 2] = a[(n - 1, n - 2)];
    }
    SymTridiagonal::new(diag, off)
}
