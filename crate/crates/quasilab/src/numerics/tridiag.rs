//! Symmetric eigenvalue solver: Householder reduction to tridiagonal form
//! followed by bisection with Sturm-sequence counts.
//!
//! Bisection is bitwise deterministic and gives every eigenvalue to a
//! relative tolerance, which the spectral-counting callers (integrated
//! density of states) rely on.

use crate::error::{Error, Result};

/// Reduce a symmetric matrix (only the lower triangle is read) to
/// tridiagonal form.  Returns (diagonal, subdiagonal), subdiagonal[i]
/// coupling rows i and i+1.
#[must_use]
pub fn tridiagonalize(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut e = vec![0.0f64; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = a[i][..=l].iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j][k] * a[i][k];
                    }
                    for k in j + 1..=l {
                        g += a[k][j] * a[i][k];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[i][j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let sub: Vec<f64> = (1..n).map(|i| e[i]).collect();
    (d, sub)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`,
/// by counting negative pivots of the shifted LDL^T factorization.
#[must_use]
pub fn count_below(d: &[f64], e: &[f64], x: f64) -> usize {
    let pivmin = 1e-290;
    let mut q = d[0] - x;
    let mut count = usize::from(q < 0.0);
    for i in 1..d.len() {
        let denom = if q.abs() < pivmin {
            if q < 0.0 { -pivmin } else { pivmin }
        } else {
            q
        };
        q = d[i] - x - e[i - 1] * e[i - 1] / denom;
        count += usize::from(q < 0.0);
    }
    count
}

/// Gershgorin enclosure of the whole spectrum.
#[must_use]
pub fn gershgorin(d: &[f64], e: &[f64]) -> (f64, f64) {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 }
            + if i < n - 1 { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    (lo, hi)
}

/// All eigenvalues, ascending, each located by bisection.
#[must_use]
pub fn tridiag_eigenvalues(d: &[f64], e: &[f64]) -> Vec<f64> {
    let n = d.len();
    if n == 0 {
        return Vec::new();
    }
    let (glo, ghi) = gershgorin(d, e);
    let span = (ghi - glo).max(1e-30);
    let tol = span * 1e-15;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut lo = glo;
        let mut hi = ghi;
        for _ in 0..120 {
            if hi - lo <= tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if count_below(d, e, mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

/// Dense symmetric path: tridiagonalize then bisect.  `max_dim` guards
/// against accidentally feeding a huge matrix through the O(n^3) reduction.
pub fn symmetric_eigenvalues(a: Vec<Vec<f64>>, max_dim: usize) -> Result<Vec<f64>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("eigenvalues need a square matrix".into()));
    }
    if n > max_dim {
        return Err(Error::Resource(format!(
            "dense eigensolve of dimension {n} exceeds cap {max_dim}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let (d, e) = tridiagonalize(a);
    Ok(tridiag_eigenvalues(&d, &e))
}
