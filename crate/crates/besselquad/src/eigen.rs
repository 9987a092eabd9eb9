//! Symmetric eigenvalue kernels used by the quadrature layer.
//!
//! Two small solvers, both dependency-free:
//!
//! * an implicit-shift QL iteration for symmetric tridiagonal matrices that
//!   tracks only the first component of each eigenvector -- exactly the data
//!   the Golub-Welsch construction needs;
//! * a cyclic Jacobi sweep for dense symmetric matrices, used for condition
//!   numbers and positive-definiteness probes where all eigenvalues matter
//!   but the matrices stay small.

use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 50;

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix with diagonal `d` and subdiagonal `e` (`e[0]` unused, `e[i]`
/// couples rows `i-1` and `i`).
///
/// Returns `(eigenvalues, first_components)` sorted by ascending eigenvalue.
/// `first_components[i]` is the first entry of the normalized eigenvector for
/// `eigenvalues[i]`.
pub(crate) fn tridiagonal_eigen_first_components(
    d: &[f64],
    e: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    assert_eq!(e.len(), n, "subdiagonal must have the same length");
    let mut d = d.to_vec();
    let mut e = e.to_vec();
    // z starts as the first row of the identity and accumulates the rotations
    let mut z = vec![0.0; n];
    if n == 0 {
        return Ok((d, z));
    }
    z[0] = 1.0;
    // shift the subdiagonal down so e[i] couples d[i] and d[i+1]
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iterations = 0;
        loop {
            // find the first negligible subdiagonal element at or after l
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::EigenFailure {
                    index: l,
                    iterations,
                });
            }
            // implicit shift from the trailing 2x2 of the active block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // accumulate the rotation into the tracked first components
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if r == 0.0 && m > l + 1 {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let firsts = order.iter().map(|&i| z[i]).collect();
    Ok((values, firsts))
}

const MAX_JACOBI_SWEEPS: usize = 60;

/// All eigenvalues of a dense symmetric matrix (row-major, `n x n`) by cyclic
/// Jacobi rotations, sorted ascending. Only the strictly lower/upper symmetry
/// of the input is assumed; the matrix is copied and destroyed internally.
pub(crate) fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let mut a = matrix.to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    for sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        if off.sqrt() <= 1e-300 || off == 0.0 {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)];
                let scale = a[idx(p, p)].abs() + a[idx(q, q)].abs();
                if apq.abs() <= f64::EPSILON * 0.5 * scale {
                    continue;
                }
                rotated = true;
                let theta = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + theta.hypot(1.0))
                } else {
                    -1.0 / (-theta + theta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
        if !rotated {
            break;
        }
        if sweep + 1 == MAX_JACOBI_SWEEPS {
            return Err(Error::EigenFailure {
                index: 0,
                iterations: MAX_JACOBI_SWEEPS,
            });
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[idx(i, i)]).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}
