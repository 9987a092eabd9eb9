//! Recurrence coefficients of the orthogonal polynomials for the weight
//! `x^alpha e^{-cx} (J_nu(x) + 1)`.
//!
//! The monic orthogonal polynomials satisfy
//!
//! ```text
//! pi_{k+1}(x) = (x - alpha_k) pi_k(x) - beta_k pi_{k-1}(x),
//! ```
//!
//! and everything else (nodes, weights, condition diagnostics) follows from
//! the `alpha_k`, `beta_k`. Three routes are provided, in increasing order of
//! numerical robustness:
//!
//! * [`chebyshev`] maps ordinary power moments to coefficients. The map's
//!   conditioning grows so fast that it breaks down between orders 10 and 30
//!   in double precision; the breakdown is detected and reported.
//! * [`modified_chebyshev`] replaces power moments by moments against the
//!   Laguerre polynomials matched to the smooth part of the weight, buying
//!   several additional orders before the same fate.
//! * [`preconditioned_cramer`] symmetrically preconditions the moment matrix
//!   by the explicit Cholesky factor of its smooth part. The preconditioned
//!   matrix stays near the identity at every order, so coefficients remain
//!   accurate as far as they are needed.

use crate::error::{Error, Result};
use crate::moments::{core_values_signed_log, modified_moments, power_moments, WeightParams};
use crate::specfun::{log_gamma, signed_log_sum, SignedLog};

/// Jacobi recurrence coefficients `alpha[k]`, `beta[k]`,
/// `k = 0, ..., len - 1`.
///
/// `beta[0]` carries the total mass of the weight, so that quadrature
/// weights constructed from these coefficients sum to it.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoefficients {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl RecurrenceCoefficients {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// The leading `n` coefficient pairs.
    pub fn truncated(&self, n: usize) -> RecurrenceCoefficients {
        RecurrenceCoefficients {
            alpha: self.alpha[..n.min(self.alpha.len())].to_vec(),
            beta: self.beta[..n.min(self.beta.len())].to_vec(),
        }
    }
}

/// Recurrence coefficients of the smooth part `x^alpha e^{-cx}` alone
/// (generalized Gauss-Laguerre, rescaled):
///
/// ```text
/// alpha_k = (2k + alpha + 1) / c,
/// beta_0  = Gamma(alpha + 1) / c^{alpha+1},
/// beta_k  = k (k + alpha) / c^2.
/// ```
pub fn laguerre_recurrence(alpha: f64, c: f64, n: usize) -> Result<RecurrenceCoefficients> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::Domain(format!(
            "laguerre recurrence requires alpha > -1, got {alpha}"
        )));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Domain(format!(
            "laguerre recurrence requires c > 0, got {c}"
        )));
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        a.push((2.0 * kf + alpha + 1.0) / c);
        b.push(if k == 0 {
            (log_gamma(alpha + 1.0)? - (alpha + 1.0) * c.ln()).exp()
        } else {
            kf * (kf + alpha) / (c * c)
        });
    }
    Ok(RecurrenceCoefficients { alpha: a, beta: b })
}

/// Shared sweep of the (modified) Chebyshev algorithm.
///
/// `m` holds at least `2n` moments against monic auxiliary polynomials whose
/// own recurrence coefficients are `a`, `b` (at least `2n - 1` of each);
/// plain power moments correspond to `a = b = 0`. Mixed moments
///
/// ```text
/// sigma[k][l] = <pi_k, p_l>
/// ```
///
/// are swept row by row; a non-positive or non-finite `sigma[k][k]` is the
/// breakdown signal that ends the algorithm at order `k`.
fn wheeler_sweep(
    m: &[f64],
    a: &[f64],
    b: &[f64],
    n: usize,
    algorithm: &'static str,
) -> Result<RecurrenceCoefficients> {
    if n == 0 {
        return Ok(RecurrenceCoefficients {
            alpha: Vec::new(),
            beta: Vec::new(),
        });
    }
    assert!(m.len() >= 2 * n, "need 2n moments");
    assert!(
        a.len() >= 2 * n - 1 && b.len() >= 2 * n - 1,
        "need 2n - 1 auxiliary coefficients"
    );
    if !(m[0] > 0.0) || !m[0].is_finite() {
        return Err(Error::Breakdown {
            algorithm,
            index: 0,
            detail: format!("zeroth moment {} is not positive", m[0]),
        });
    }
    let width = 2 * n;
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    alpha.push(a[0] + m[1] / m[0]);
    beta.push(m[0]);

    // rows k-2, k-1, k of the sigma table, rolled forward
    let mut prev2 = vec![0.0; width];
    let mut prev: Vec<f64> = m[..width].to_vec();
    let mut cur = vec![0.0; width];
    for k in 1..n {
        for slot in cur.iter_mut() {
            *slot = 0.0;
        }
        for l in k..=(2 * n - k - 1) {
            let mut s = prev[l + 1] - (alpha[k - 1] - a[l]) * prev[l] - beta[k - 1] * prev2[l];
            if b[l] != 0.0 {
                s += b[l] * prev[l - 1];
            }
            cur[l] = s;
        }
        let diag = cur[k];
        let prev_diag = prev[k - 1];
        if !(diag > 0.0) || !diag.is_finite() {
            return Err(Error::Breakdown {
                algorithm,
                index: k,
                detail: format!("sigma[{k}][{k}] = {diag:e}"),
            });
        }
        let ak = a[k] + cur[k + 1] / diag - prev[k] / prev_diag;
        let bk = diag / prev_diag;
        if !ak.is_finite() || !bk.is_finite() {
            return Err(Error::Breakdown {
                algorithm,
                index: k,
                detail: "non-finite coefficient".to_string(),
            });
        }
        alpha.push(ak);
        beta.push(bk);
        std::mem::swap(&mut prev2, &mut prev);
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(RecurrenceCoefficients { alpha, beta })
}

/// Chebyshev algorithm: power moments to recurrence coefficients.
///
/// Fails with [`Error::Breakdown`] at the first order where the moment map
/// loses positivity in double precision; the coefficients up to that order
/// can be recovered by calling again with `n` equal to the breakdown index.
pub fn chebyshev(params: &WeightParams, n: usize) -> Result<RecurrenceCoefficients> {
    let m = power_moments(params, 2 * n.max(1))?;
    let zeros = vec![0.0; (2 * n).max(1)];
    wheeler_sweep(&m.values, &zeros, &zeros, n, "chebyshev")
}

/// Modified Chebyshev algorithm: moments against the Laguerre polynomials of
/// the smooth part instead of raw powers.
///
/// The auxiliary polynomials are already orthogonal for `x^alpha e^{-cx}`,
/// which defers — but does not remove — the breakdown of the moment map.
pub fn modified_chebyshev(params: &WeightParams, n: usize) -> Result<RecurrenceCoefficients> {
    let m = modified_moments(params, 2 * n.max(1))?;
    let aux = laguerre_recurrence(params.alpha, params.c, (2 * n).max(1))?;
    wheeler_sweep(&m.values, &aux.alpha, &aux.beta, n, "modified chebyshev")
}

// ---------------------------------------------------------------------------
// Explicit Cholesky structure of the smooth part
// ---------------------------------------------------------------------------

/// Entry `(i, j)`, `1 <= i <= j`, of the upper-triangular Cholesky factor
/// `R` of the Hankel moment matrix `[Gamma(i + j + alpha - 1)]_{ij}` of
/// `x^alpha e^{-x}`:
///
/// ```text
/// R[i][j] = ((j-1)! / (j-i)!) Gamma(alpha+j) / sqrt((i-1)! Gamma(alpha+i)).
/// ```
///
/// Equivalently, `R[i][j]` is the inner product of `x^{j-1}` with the
/// `(i-1)`-th orthonormal polynomial of that weight. The factor for general
/// scale `c` is this matrix times `diag(c^{-(j-1) - (alpha+1)/2})`.
pub fn cholesky_factor_entry(alpha: f64, i: usize, j: usize) -> Result<f64> {
    validate_entry_access(alpha, i, j)?;
    let (fi, fj) = (i as f64, j as f64);
    let log = log_gamma(fj)? + log_gamma(alpha + fj)?
        - log_gamma(fj - fi + 1.0)?
        - 0.5 * (log_gamma(fi)? + log_gamma(alpha + fi)?);
    let v = log.exp();
    if !v.is_finite() {
        return Err(Error::Overflow {
            what: "cholesky factor entry",
            index: j,
        });
    }
    Ok(v)
}

/// Entry `(i, j)`, `1 <= i <= j`, of the inverse Cholesky factor for scale
/// `c`, in signed-log form since the plain value under- and overflows well
/// inside the orders the preconditioned construction reaches:
///
/// ```text
/// R^{-1}[i][j] = (-1)^{i+j} sqrt(c^{alpha+1}) c^{i-1}
///                sqrt((j-1)! Gamma(alpha+j))
///                / ((j-i)! (i-1)! Gamma(alpha+i)).
/// ```
///
/// Column `j` lists the monomial coefficients of the `(j-1)`-th orthonormal
/// polynomial of `x^alpha e^{-cx}`.
pub fn inverse_cholesky_entry(alpha: f64, c: f64, i: usize, j: usize) -> Result<SignedLog> {
    validate_entry_access(alpha, i, j)?;
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Domain(format!(
            "cholesky structure requires c > 0, got {c}"
        )));
    }
    inverse_cholesky_signed_log(alpha, c, i - 1, j - 1)
}

fn validate_entry_access(alpha: f64, i: usize, j: usize) -> Result<()> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::Domain(format!(
            "cholesky structure requires alpha > -1, got {alpha}"
        )));
    }
    if i == 0 || i > j {
        return Err(Error::Domain(format!(
            "cholesky factors are upper triangular: need 1 <= i <= j, got ({i}, {j})"
        )));
    }
    Ok(())
}

/// Zero-indexed signed-log form of the inverse factor entry; zero below the
/// diagonal, which lets the assembly loops run without triangular guards.
fn inverse_cholesky_signed_log(alpha: f64, c: f64, i: usize, j: usize) -> Result<SignedLog> {
    if i > j {
        return Ok(SignedLog::ZERO);
    }
    let (fi, fj) = (i as f64, j as f64);
    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
    let log = 0.5 * (log_gamma(fj + 1.0)? + log_gamma(alpha + fj + 1.0)?)
        - log_gamma(fj - fi + 1.0)?
        - log_gamma(fi + 1.0)?
        - log_gamma(alpha + fi + 1.0)?
        + (fi + 0.5 * (alpha + 1.0)) * c.ln();
    Ok(SignedLog::new(sign, log))
}

/// Worst absolute entry of `R R^{-1} - I` over the leading `n x n` section.
///
/// Each product entry factors as a common positive scalar times an
/// alternating binomial sum,
///
/// ```text
/// (R R^{-1})[i][j] = K_ij / (j-i)! * sum_l (-1)^{l+j} C(j-i, l-i),
/// ```
///
/// and the scale factor `c` cancels exactly between `R` and `R^{-1}`. The
/// binomial coefficients at these orders are exact integers in double
/// precision, so the cancellation that a direct floating-point product would
/// smear over many orders of magnitude (the summands reach `C(j-i, l-i)`
/// times the unit target) is carried out without rounding. What remains
/// measures the mutual consistency of the two closed forms.
pub fn cholesky_identity_residual(alpha: f64, n: usize) -> Result<f64> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::Domain(format!(
            "cholesky structure requires alpha > -1, got {alpha}"
        )));
    }
    let mut factorial = vec![1.0_f64; n.max(1)];
    for t in 1..n {
        factorial[t] = factorial[t - 1] * t as f64;
        if !factorial[t].is_finite() {
            return Err(Error::Overflow {
                what: "factorial",
                index: t,
            });
        }
    }
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            let mut sum = 0.0_f64;
            for l in i..=j {
                let binomial = factorial[j - i] / (factorial[l - i] * factorial[j - l]);
                sum += if (l + j) % 2 == 0 { binomial } else { -binomial };
            }
            let (fi, fj) = (i as f64, j as f64);
            let log_k = 0.5
                * (log_gamma(fj + 1.0)? + log_gamma(alpha + fj + 1.0)?
                    - log_gamma(fi + 1.0)?
                    - log_gamma(alpha + fi + 1.0)?)
                - factorial[j - i].ln();
            let scale = log_k.exp();
            if !scale.is_finite() {
                return Err(Error::Overflow {
                    what: "identity residual scale",
                    index: j,
                });
            }
            let entry = scale * sum;
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((entry - target).abs());
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Preconditioned moment matrix and the Cramer route
// ---------------------------------------------------------------------------

/// The symmetrically preconditioned moment matrix
/// `Q = R^{-T} M R^{-1} = I + R^{-T} M_0 R^{-1}`,
/// where `M` is the Hankel matrix of the full weight and `M_0` that of its
/// oscillating part.
#[derive(Debug, Clone)]
pub struct PreconditionedSystem {
    pub size: usize,
    /// Row-major `size x size`, symmetric.
    pub matrix: Vec<f64>,
}

impl PreconditionedSystem {
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.size + j]
    }
}

/// Assembles the preconditioned matrix of the given size.
///
/// Every product `R^{-1}[l][i] * mu_{l+m} * R^{-1}[m][j]` is formed in
/// signed-log arithmetic: the inverse Cholesky entries and the core moments
/// both overflow `f64` at orders the assembled matrix — whose entries stay
/// of order one — has no trouble reaching.
pub fn build_preconditioned_system(
    params: &WeightParams,
    size: usize,
) -> Result<PreconditionedSystem> {
    let mu = core_values_signed_log(params, (2 * size).saturating_sub(1))?;
    let mut rinv = vec![SignedLog::ZERO; size * size];
    for i in 0..size {
        for j in i..size {
            rinv[i * size + j] = inverse_cholesky_signed_log(params.alpha, params.c, i, j)?;
        }
    }
    let mut matrix = vec![0.0; size * size];
    let mut terms: Vec<SignedLog> = Vec::with_capacity(size * size + 1);
    for i in 0..size {
        for j in i..size {
            terms.clear();
            if i == j {
                terms.push(SignedLog::from_value(1.0));
            }
            for l in 0..=i {
                let left = rinv[l * size + i];
                for m in 0..=j {
                    terms.push(left.mul(mu[l + m]).mul(rinv[m * size + j]));
                }
            }
            let q = signed_log_sum(&terms).value();
            matrix[i * size + j] = q;
            matrix[j * size + i] = q;
        }
    }
    Ok(PreconditionedSystem { size, matrix })
}

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix,
/// row-major. Fails with the dimension of the first non-positive pivot.
fn cholesky_lower(matrix: &[f64], n: usize) -> Result<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = matrix[i * n + j];
            for t in 0..j {
                s -= l[i * n + t] * l[j * n + t];
            }
            if i == j {
                if !(s > 0.0) || !s.is_finite() {
                    return Err(Error::CholeskyFailure { size: i + 1 });
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Ok(l)
}

/// First three power moments, the seeds shared by both Cramer routes.
fn cramer_seeds(params: &WeightParams) -> Result<(f64, f64, f64)> {
    let m = power_moments(params, 3)?;
    Ok((m.values[0], m.values[1], m.values[2]))
}

/// Recurrence coefficients from the Cholesky factor of the preconditioned
/// matrix, using the closed-form entries of the needed sections of the
/// inverses of its leading blocks.
fn jacobi_from_cholesky(
    alpha: f64,
    c: f64,
    l: &[f64],
    size: usize,
    seeds: (f64, f64, f64),
    n: usize,
) -> Result<RecurrenceCoefficients> {
    let (mu0, mu1, mu2) = seeds;
    if !(mu0 > 0.0) || !mu0.is_finite() {
        return Err(Error::Breakdown {
            algorithm: "preconditioned cramer",
            index: 0,
            detail: format!("zeroth moment {mu0} is not positive"),
        });
    }
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    if n == 0 {
        return Ok(RecurrenceCoefficients { alpha: a, beta: b });
    }
    a.push(mu1 / mu0);
    b.push(mu0);
    let ld = |k: usize| l[k * size + k];
    let lsub = |k: usize| l[k * size + k - 1];
    for k in 1..n {
        let kf = k as f64;
        let s0 = (kf * (alpha + kf)).sqrt();
        let s1 = ((kf + 1.0) * (alpha + kf + 1.0)).sqrt();
        let ak = (s1 / c) * (lsub(k + 1) / ld(k) + s1) - (s0 / c) * (lsub(k) / ld(k - 1) + s0);
        let bk = if k == 1 {
            (mu0 * mu2 - mu1 * mu1) / (mu0 * mu0)
        } else {
            let ratio = ld(k) / ld(k - 1);
            (kf * (alpha + kf) / (c * c)) * ratio * ratio
        };
        if !ak.is_finite() || !bk.is_finite() || !(bk > 0.0) {
            return Err(Error::Breakdown {
                algorithm: "preconditioned cramer",
                index: k,
                detail: format!("alpha = {ak:e}, beta = {bk:e}"),
            });
        }
        a.push(ak);
        b.push(bk);
    }
    Ok(RecurrenceCoefficients { alpha: a, beta: b })
}

/// Preconditioned Cramer route: recurrence coefficients through the Cholesky
/// factorization of `Q = I + R^{-T} M_0 R^{-1}`.
///
/// `Q` stays well conditioned at every order, so this route reaches orders
/// far beyond both Chebyshev variants; its cost is dominated by assembling
/// `Q` once at dimension `n + 1`.
pub fn preconditioned_cramer(params: &WeightParams, n: usize) -> Result<RecurrenceCoefficients> {
    let seeds = cramer_seeds(params)?;
    if n <= 1 {
        return jacobi_from_cholesky(params.alpha, params.c, &[], 0, seeds, n);
    }
    let system = build_preconditioned_system(params, n + 1)?;
    let l = cholesky_lower(&system.matrix, system.size)?;
    jacobi_from_cholesky(params.alpha, params.c, &l, system.size, seeds, n)
}

/// Variant of the Cramer route that mirrors the classical presentation:
/// for each order `k` the leading `(k+1)`-section system
/// `Q y = R^{-1}[k][k] e_k` is solved densely by forward and back
/// substitution, and coefficients are read off ratios of solution components:
///
/// ```text
/// beta_k  = (s_k / c) * y^{(k-1)}[k-1] / y^{(k)}[k],
/// alpha_k = (s_{k+1}/c)(s_{k+1} - y^{(k+1)}[k]/y^{(k+1)}[k+1])
///         - (s_k    /c)(s_k     - y^{(k)}[k-1]  /y^{(k)}[k]),
/// ```
///
/// with `s_k = sqrt(k (alpha + k))`. The right-hand-side scale limits this
/// route to the orders where `R^{-1}[k][k]` is representable; it exists to
/// cross-check [`preconditioned_cramer`], which evaluates the same ratios
/// free of that scale.
pub fn preconditioned_cramer_scaled_rhs(
    params: &WeightParams,
    n: usize,
) -> Result<RecurrenceCoefficients> {
    let seeds = cramer_seeds(params)?;
    if n <= 1 {
        return jacobi_from_cholesky(params.alpha, params.c, &[], 0, seeds, n);
    }
    let size = n + 1;
    let system = build_preconditioned_system(params, size)?;
    let l = cholesky_lower(&system.matrix, size)?;

    // y_diag[k] = y^{(k)}[k], y_next[k] = y^{(k)}[k-1]
    let mut y_diag = vec![0.0; size];
    let mut y_prev = vec![0.0; size];
    let mut z = vec![0.0; size];
    let mut y = vec![0.0; size];
    for k in 0..size {
        let rhs = inverse_cholesky_signed_log(params.alpha, params.c, k, k)?.value();
        if !rhs.is_finite() || rhs == 0.0 {
            return Err(Error::Overflow {
                what: "scaled right-hand side",
                index: k,
            });
        }
        // forward substitution on the leading (k+1) section; the right-hand
        // side is nonzero only in its last slot
        for i in 0..=k {
            let mut s = if i == k { rhs } else { 0.0 };
            for t in 0..i {
                s -= l[i * size + t] * z[t];
            }
            z[i] = s / l[i * size + i];
        }
        for i in (0..=k).rev() {
            let mut s = z[i];
            for t in i + 1..=k {
                s -= l[t * size + i] * y[t];
            }
            y[i] = s / l[i * size + i];
        }
        y_diag[k] = y[k];
        if k > 0 {
            y_prev[k] = y[k - 1];
        }
    }

    let (mu0, mu1, _) = seeds;
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    a.push(mu1 / mu0);
    b.push(mu0);
    for k in 1..n {
        let kf = k as f64;
        let s0 = (kf * (params.alpha + kf)).sqrt();
        let s1 = ((kf + 1.0) * (params.alpha + kf + 1.0)).sqrt();
        let ak = (s1 / params.c) * (s1 - y_prev[k + 1] / y_diag[k + 1])
            - (s0 / params.c) * (s0 - y_prev[k] / y_diag[k]);
        let bk = (s0 / params.c) * (y_diag[k - 1] / y_diag[k]);
        if !ak.is_finite() || !bk.is_finite() || !(bk > 0.0) {
            return Err(Error::Breakdown {
                algorithm: "preconditioned cramer (scaled rhs)",
                index: k,
                detail: format!("alpha = {ak:e}, beta = {bk:e}"),
            });
        }
        a.push(ak);
        b.push(bk);
    }
    Ok(RecurrenceCoefficients { alpha: a, beta: b })
}
