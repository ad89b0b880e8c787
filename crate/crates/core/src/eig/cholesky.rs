use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Lower Cholesky factor of a symmetric positive definite matrix whose
/// nonzeros lie within `bw` of the diagonal; work is O(n bw^2).
pub fn cholesky_banded(m: &DenseMatrix, bw: usize) -> Result<DenseMatrix> {
    let n = m.dim();
    let mut l = DenseMatrix::zeros(n);
    for j in 0..n {
        let k0 = j.saturating_sub(bw);
        let mut d = m[(j, j)];
        for k in k0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { row: j, pivot: d });
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..(j + bw + 1).min(n) {
            let mut s = m[(i, j)];
            for k in i.saturating_sub(bw).max(k0)..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Solves L X = B in place for lower-triangular banded L (B overwritten row by row).
fn forward_solve_rows(l: &DenseMatrix, bw: usize, b: &mut DenseMatrix) {
    let n = l.dim();
    for i in 0..n {
        for k in i.saturating_sub(bw)..i {
            let c = l[(i, k)];
            if c == 0.0 {
                continue;
            }
            let (src, dst) = b.row_pair_mut(k, i);
            for (x, y) in dst.iter_mut().zip(src) {
                *x -= c * y;
            }
        }
        let d = l[(i, i)];
        for x in b.row_mut(i) {
            *x /= d;
        }
    }
}

/// C = L^{-1} K L^{-T} for M = L L^T, symmetrised to remove rounding asymmetry.
pub(super) fn reduce_pencil(k: &DenseMatrix, m: &DenseMatrix, bw: usize) -> Result<DenseMatrix> {
    let l = cholesky_banded(m, bw)?;
    let mut x = k.clone();
    forward_solve_rows(&l, bw, &mut x);
    let mut c = x.transpose();
    forward_solve_rows(&l, bw, &mut c);
    c.symmetrize();
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_reproduces_matrix() {
        let m = DenseMatrix::from_rows(&[
            vec![4.0, 1.0, 0.0, 0.0],
            vec![1.0, 4.0, 1.0, 0.0],
            vec![0.0, 1.0, 4.0, 1.0],
            vec![0.0, 0.0, 1.0, 4.0],
        ]);
        let l = cholesky_banded(&m, 1).unwrap();
        let back = l.matmul(&l.transpose());
        for i in 0..4 {
            for j in 0..4 {
                assert!((back[(i, j)] - m[(i, j)]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn indefinite_matrix_fails() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(matches!(cholesky_banded(&m, 1), Err(Error::NotPositiveDefinite { row: 1, .. })));
    }
}
