//! Gaussian rules from recurrence coefficients, and their use on the
//! Bessel-weight integrals.
//!
//! A rule for the full weight `x^alpha e^{-cx} (J_nu(x) + 1)` never appears
//! alone in applications: the target integrals carry `J_nu` without the
//! stabilizing `+1`, so [`integrate_bessel`] evaluates
//!
//! ```text
//! integral_0^inf f(x) x^alpha e^{-cx} J_nu(x) dx  ~  I_n^J(f) - I_n^L(f),
//! ```
//!
//! the difference between the full-weight rule and the Gauss-Laguerre rule
//! of the smooth part. Both factors of the split are exact on polynomials up
//! to degree `2n - 1`, hence so is the difference.

use crate::eigen;
use crate::error::{Error, Result};
use crate::moments::{power_moments, WeightParams};
use crate::recurrence::{
    build_preconditioned_system, chebyshev, laguerre_recurrence, modified_chebyshev,
    preconditioned_cramer, RecurrenceCoefficients,
};
use crate::specfun::log_gamma;

/// Coefficient-recovery algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Power moments through the Chebyshev algorithm.
    Chebyshev,
    /// Modified (Laguerre) moments through the Wheeler sweep.
    Modified,
    /// Preconditioned Cramer route.
    Cramer,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Chebyshev, Algorithm::Modified, Algorithm::Cramer];

    /// Recurrence coefficients of the full weight by this algorithm.
    pub fn coefficients(self, params: &WeightParams, n: usize) -> Result<RecurrenceCoefficients> {
        match self {
            Algorithm::Chebyshev => chebyshev(params, n),
            Algorithm::Modified => modified_chebyshev(params, n),
            Algorithm::Cramer => preconditioned_cramer(params, n),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Chebyshev => "chebyshev",
            Algorithm::Modified => "modified",
            Algorithm::Cramer => "cramer",
        })
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        match s {
            "chebyshev" => Ok(Algorithm::Chebyshev),
            "modified" => Ok(Algorithm::Modified),
            "cramer" => Ok(Algorithm::Cramer),
            other => Err(Error::Domain(format!(
                "unknown algorithm '{other}' (expected chebyshev, modified, or cramer)"
            ))),
        }
    }
}

/// An `n`-point Gaussian rule: positive, strictly increasing nodes with
/// positive weights summing to the mass of the generating weight function.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Point count, equal to `nodes.len()`.
    pub n: usize,
    /// Total mass `beta_0` of the generating coefficients; `sum(weights)`
    /// reproduces it to rounding accuracy.
    pub mass: f64,
}

impl GaussRule {
    /// Applies the rule: `sum_i w_i f(x_i)`.
    ///
    /// A non-finite integrand value is an error naming the offending node,
    /// not a silent NaN in the sum.
    pub fn integrate(&self, f: &dyn Fn(f64) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand { node: x });
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

/// Nodes and weights from the symmetric tridiagonal Jacobi matrix of the
/// coefficients (diagonal `alpha_k`, off-diagonal `sqrt(beta_k)`): the
/// eigenvalues are the nodes and `beta_0` times the squared first components
/// of the normalized eigenvectors are the weights.
pub fn golub_welsch(coeffs: &RecurrenceCoefficients) -> Result<GaussRule> {
    let n = coeffs.len();
    if n == 0 {
        return Err(Error::Domain(
            "cannot build a rule from empty coefficients".to_string(),
        ));
    }
    for (k, &b) in coeffs.beta.iter().enumerate() {
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!(
                "coefficient beta[{k}] = {b} is not positive"
            )));
        }
    }
    let mut off = vec![0.0; n];
    for k in 1..n {
        off[k] = coeffs.beta[k].sqrt();
    }
    let (mut nodes, first) = eigen::tridiagonal_eigen_first_components(&coeffs.alpha, &off)?;
    let mut weights: Vec<f64> = first.iter().map(|&z| coeffs.beta[0] * z * z).collect();
    // eigensolver order is not trusted; sort nodes and carry weights along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| nodes[a].total_cmp(&nodes[b]));
    nodes = order.iter().map(|&i| nodes[i]).collect();
    weights = order.iter().map(|&i| weights[i]).collect();
    Ok(GaussRule {
        nodes,
        weights,
        n,
        mass: coeffs.beta[0],
    })
}

/// Gauss-Laguerre rule for `x^alpha e^{-cx}`: the standard rule for
/// `t^alpha e^{-t}` with nodes divided by `c` and weights by `c^{alpha+1}`.
pub fn gauss_laguerre_rule(alpha: f64, c: f64, n: usize) -> Result<GaussRule> {
    golub_welsch(&laguerre_recurrence(alpha, c, n)?)
}

/// Gaussian rule for the full weight `x^alpha e^{-cx} (J_nu(x) + 1)` with
/// coefficients from the selected algorithm.
pub fn bessel_weight_rule(
    params: &WeightParams,
    n: usize,
    algorithm: Algorithm,
) -> Result<GaussRule> {
    golub_welsch(&algorithm.coefficients(params, n)?)
}

/// The split approximation `I_n^J(f) - I_n^L(f)` to
/// `integral_0^inf f(x) x^alpha e^{-cx} J_nu(x) dx`.
pub fn integrate_bessel(
    params: &WeightParams,
    f: &dyn Fn(f64) -> f64,
    n: usize,
    algorithm: Algorithm,
) -> Result<f64> {
    let full = bessel_weight_rule(params, n, algorithm)?;
    let smooth = gauss_laguerre_rule(params.alpha, params.c, n)?;
    Ok(full.integrate(f)? - smooth.integrate(f)?)
}

/// Truncation error bound for the split rule:
///
/// ```text
/// (sup|f^(2n)| / (2n)!) (1/(k_n^J)^2 + 1/(k_n^L)^2),
/// ```
///
/// where `1/(k_n^J)^2 = beta_0 ... beta_n` of the full weight and
/// `1/(k_n^L)^2 = n! Gamma(n + alpha + 1)` for the smooth part (its `c`
/// powers cancel against the mass scaling). Products are accumulated in log
/// space; a bound too large for double precision is reported as `+inf`
/// rather than an error, since it still reads as "no accuracy claimed".
pub fn truncation_bound(
    coeffs: &RecurrenceCoefficients,
    alpha: f64,
    n: usize,
    sup_f2n: f64,
) -> Result<f64> {
    if sup_f2n < 0.0 || !sup_f2n.is_finite() {
        return Err(Error::Domain(format!(
            "derivative bound must be finite and nonnegative, got {sup_f2n}"
        )));
    }
    if coeffs.beta.len() < n + 1 {
        return Err(Error::Domain(format!(
            "bound at n = {n} needs beta_0..beta_{n}, got {} coefficients",
            coeffs.beta.len()
        )));
    }
    if sup_f2n == 0.0 {
        return Ok(0.0);
    }
    let fn_ = n as f64;
    let mut log_kj = 0.0;
    for &b in &coeffs.beta[..=n] {
        if !(b > 0.0) {
            return Err(Error::Domain(format!(
                "bound requires positive beta, got {b}"
            )));
        }
        log_kj += b.ln();
    }
    let log_kl = log_gamma(fn_ + 1.0)? + log_gamma(fn_ + alpha + 1.0)?;
    let log_front = sup_f2n.ln() - log_gamma(2.0 * fn_ + 1.0)?;
    // log-sum-exp of the two channel bounds
    let hi = log_kj.max(log_kl);
    let bound = (log_front + hi).exp() * ((log_kj - hi).exp() + (log_kl - hi).exp());
    Ok(if bound.is_finite() { bound } else { f64::INFINITY })
}

/// Euclidean condition numbers `kappa_2(Q_k)` of the leading sections of the
/// preconditioned matrix, one row per requested size.
///
/// The matrix is assembled once at the largest size; each section's extremal
/// eigenvalues come from a dense symmetric eigensolve, which is affordable
/// precisely because preconditioning keeps the sizes of interest small.
pub fn condition_report(params: &WeightParams, sizes: &[usize]) -> Result<Vec<(usize, f64)>> {
    if sizes.is_empty() {
        return Err(Error::Domain(
            "condition report needs at least one size".to_string(),
        ));
    }
    if sizes.iter().any(|&k| k == 0) {
        return Err(Error::Domain(
            "condition report sizes must be positive".to_string(),
        ));
    }
    let max_k = *sizes.iter().max().unwrap();
    let system = build_preconditioned_system(params, max_k)?;
    let mut report = Vec::with_capacity(sizes.len());
    for &k in sizes {
        let mut section = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                section[i * k + j] = system.entry(i, j);
            }
        }
        let eigs = eigen::symmetric_eigenvalues(&section, k)?;
        let smallest = eigs[0];
        let largest = eigs[k - 1];
        if !(smallest > 0.0) {
            return Err(Error::Domain(format!(
                "Q_{k} is not positive definite: smallest eigenvalue {smallest:e}"
            )));
        }
        report.push((k, largest / smallest));
    }
    Ok(report)
}

/// One row of a convergence sweep: the rule order, the split-rule value, and
/// the oracle disagreement at that order.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub n: usize,
    pub value: f64,
    pub abs_error: f64,
}

/// Applies [`integrate_bessel`] at each order of `orders` against a known
/// exact value, reusing one coefficient computation at the largest order.
pub fn convergence_sweep(
    params: &WeightParams,
    f: &dyn Fn(f64) -> f64,
    orders: &[usize],
    algorithm: Algorithm,
    exact: f64,
) -> Result<Vec<ConvergenceRow>> {
    let max_n = orders.iter().copied().max().unwrap_or(0);
    if max_n == 0 {
        return Ok(Vec::new());
    }
    let coeffs = algorithm.coefficients(params, max_n)?;
    let smooth = laguerre_recurrence(params.alpha, params.c, max_n)?;
    let mut rows = Vec::with_capacity(orders.len());
    for &n in orders {
        let full = golub_welsch(&coeffs.truncated(n))?;
        let lag = golub_welsch(&smooth.truncated(n))?;
        let value = full.integrate(f)? - lag.integrate(f)?;
        rows.push(ConvergenceRow {
            n,
            value,
            abs_error: (value - exact).abs(),
        });
    }
    Ok(rows)
}

/// Convenience wrapper asserting a rule against its generating moments:
/// returns the worst relative error of `sum_i w_i x_i^j` against `mu_j`
/// over `j <= 2n - 1`.
pub fn moment_matching_error(params: &WeightParams, rule: &GaussRule) -> Result<f64> {
    let mu = power_moments(params, 2 * rule.n)?;
    let mut worst = 0.0_f64;
    for (j, &target) in mu.values.iter().enumerate() {
        let got = rule.integrate(&|x| x.powi(j as i32))?;
        worst = worst.max((got - target).abs() / target.abs().max(f64::MIN_POSITIVE));
    }
    Ok(worst)
}
