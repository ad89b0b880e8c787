use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Eigenvalues (real parts, imaginary parts) of a general real matrix:
/// balancing, Householder reduction to Hessenberg form, then Francis
/// double-shift QR on the active window.
pub(super) fn eigvals(mut a: DenseMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    balance(&mut a);
    hessenberg(&mut a);
    hqr(a)
}

fn balance(a: &mut DenseMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.dim();
    let sqrdx = RADIX * RADIX;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for v in a.row_mut(i) {
                    *v *= inv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

fn hessenberg(a: &mut DenseMatrix) {
    let n = a.dim();
    let mut u = vec![0.0; n];
    let mut f = vec![0.0; n];
    for m in 1..n.saturating_sub(1) {
        let col = m - 1;
        let scale: f64 = (m..n).map(|i| a[(i, col)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut h = 0.0;
        for i in m..n {
            u[i] = a[(i, col)] / scale;
            h += u[i] * u[i];
        }
        let g = if u[m] > 0.0 { -h.sqrt() } else { h.sqrt() };
        h -= u[m] * g;
        u[m] -= g;

        // Left: A[m.., m..] -= u (u^T A[m.., m..]) / h
        f[m..n].iter_mut().for_each(|x| *x = 0.0);
        for i in m..n {
            let ui = u[i];
            for (fj, &aij) in f[m..n].iter_mut().zip(&a.row(i)[m..n]) {
                *fj += ui * aij;
            }
        }
        for i in m..n {
            let c = u[i] / h;
            for (aij, &fj) in a.row_mut(i)[m..n].iter_mut().zip(&f[m..n]) {
                *aij -= c * fj;
            }
        }
        // Right: A[.., m..] -= (A[.., m..] u) u^T / h
        for i in 0..n {
            let row = &mut a.row_mut(i)[m..n];
            let s: f64 = row.iter().zip(&u[m..n]).map(|(x, y)| x * y).sum::<f64>() / h;
            for (x, &uj) in row.iter_mut().zip(&u[m..n]) {
                *x -= s * uj;
            }
        }
        a[(m, col)] = scale * g;
        for i in m + 1..n {
            a[(i, col)] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
fn hqr(a: DenseMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = a.dim();
    // 1-based working copy keeps the classical index arithmetic readable.
    let stride = n + 1;
    let mut h = vec![0.0; stride * stride];
    for i in 0..n {
        for j in 0..n {
            h[(i + 1) * stride + j + 1] = a[(i, j)];
        }
    }
    let idx = |i: usize, j: usize| i * stride + j;
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];

    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += h[idx(i, j)].abs();
        }
    }
    let max_total = 50 * n.max(1);
    let mut total = 0usize;
    let mut nn = n;
    let mut t = 0.0;
    let (mut p, mut q, mut r, mut s, mut w, mut x, mut y, mut z);
    while nn >= 1 {
        let mut its = 0usize;
        loop {
            let mut l = nn;
            while l >= 2 {
                s = h[idx(l - 1, l - 1)].abs() + h[idx(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h[idx(l, l - 1)].abs() + s == s {
                    h[idx(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = h[idx(nn, nn)];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            y = h[idx(nn - 1, nn - 1)];
            w = h[idx(nn, nn - 1)] * h[idx(nn - 1, nn)];
            if l == nn - 1 {
                p = 0.5 * (y - x);
                q = p * p + w;
                z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn -= 2;
                break;
            }
            if total >= max_total {
                return Err(Error::NoConvergence(total));
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift.
                t += x;
                for i in 1..=nn {
                    h[idx(i, i)] -= x;
                }
                s = h[idx(nn, nn - 1)].abs() + h[idx(nn - 1, nn - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total += 1;
            let mut m = nn - 2;
            loop {
                z = h[idx(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[idx(m + 1, m)] + h[idx(m, m + 1)];
                q = h[idx(m + 1, m + 1)] - z - r - s;
                r = h[idx(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = h[idx(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (h[idx(m - 1, m - 1)].abs() + z.abs() + h[idx(m + 1, m + 1)].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                h[idx(i, i - 2)] = 0.0;
                if i != m + 2 {
                    h[idx(i, i - 3)] = 0.0;
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = h[idx(k, k - 1)];
                    q = h[idx(k + 1, k - 1)];
                    r = 0.0;
                    if k != nn - 1 {
                        r = h[idx(k + 2, k - 1)];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            h[idx(k, k - 1)] = -h[idx(k, k - 1)];
                        }
                    } else {
                        h[idx(k, k - 1)] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        p = h[idx(k, j)] + q * h[idx(k + 1, j)];
                        if k != nn - 1 {
                            p += r * h[idx(k + 2, j)];
                            h[idx(k + 2, j)] -= p * z;
                        }
                        h[idx(k + 1, j)] -= p * y;
                        h[idx(k, j)] -= p * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        p = x * h[idx(i, k)] + y * h[idx(i, k + 1)];
                        if k != nn - 1 {
                            p += z * h[idx(i, k + 2)];
                            h[idx(i, k + 2)] -= p * r;
                        }
                        h[idx(i, k + 1)] -= p * q;
                        h[idx(i, k)] -= p;
                    }
                }
                k += 1;
            }
        }
    }
    Ok((wr[1..].to_vec(), wi[1..].to_vec()))
}
