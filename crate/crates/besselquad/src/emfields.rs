//! Layered-earth electromagnetic forward model.
//!
//! A vertical magnetic dipole at height `H` above an `N`-layer conductive
//! half-space induces secondary fields whose imaginary (quadrature) parts
//! are Hankel-transform integrals. After the substitution `x = lambda r`
//! they take exactly the form this library's rules are built for:
//!
//! ```text
//! Im(H_z)   =  m/(4 pi r^3) * integral_0^inf Im(R_0(x/r)) e^{-(2H/r)x} x^2 J_0(x) dx
//! Im(H_rho) = -m/(4 pi r^3) * integral_0^inf Im(R_0(x/r)) e^{-(2H/r)x} x^2 J_1(x) dx
//! ```
//!
//! with `R_0` the surface reflection coefficient of the layer stack. The
//! fields are evaluated with the split Gaussian rules at increasing order
//! until successive values agree to a requested tolerance.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moments::WeightParams;
use crate::quadrature::{golub_welsch, Algorithm};
use crate::recurrence::laguerre_recurrence;

/// Vacuum magnetic permeability, H/m.
pub const VACUUM_PERMEABILITY: f64 = 4.0e-7 * std::f64::consts::PI;

/// Horizontally stratified conducting ground: `N` conductivities, `N - 1`
/// finite thicknesses (the deepest layer extends to infinity), and the
/// operating angular frequency.
#[derive(Debug, Clone)]
pub struct LayeredEarth {
    /// Layer conductivities, S/m, top first.
    pub sigma: Vec<f64>,
    /// Layer thicknesses, m; one entry fewer than `sigma`.
    pub h: Vec<f64>,
    /// Angular frequency, rad/s.
    pub omega: f64,
    /// Magnetic permeability, H/m.
    pub mu: f64,
}

impl LayeredEarth {
    /// Validated model with vacuum permeability.
    pub fn new(sigma: Vec<f64>, h: Vec<f64>, omega: f64) -> Result<LayeredEarth> {
        if sigma.is_empty() {
            return Err(Error::Domain("model needs at least one layer".to_string()));
        }
        if h.len() + 1 != sigma.len() {
            return Err(Error::Domain(format!(
                "{} layers need {} thicknesses, got {}",
                sigma.len(),
                sigma.len() - 1,
                h.len()
            )));
        }
        for (j, &s) in sigma.iter().enumerate() {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::Domain(format!(
                    "conductivity sigma[{j}] = {s} must be finite and positive"
                )));
            }
        }
        for (j, &t) in h.iter().enumerate() {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Domain(format!(
                    "thickness h[{j}] = {t} must be finite and positive"
                )));
            }
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain(format!(
                "angular frequency {omega} must be finite and positive"
            )));
        }
        Ok(LayeredEarth {
            sigma,
            h,
            omega,
            mu: VACUUM_PERMEABILITY,
        })
    }

    /// Uniform half-space: a single infinite layer.
    pub fn half_space(sigma: f64, omega: f64) -> Result<LayeredEarth> {
        LayeredEarth::new(vec![sigma], Vec::new(), omega)
    }

    /// Same model with a non-vacuum permeability.
    pub fn with_permeability(mut self, mu: f64) -> Result<LayeredEarth> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Domain(format!(
                "permeability {mu} must be finite and positive"
            )));
        }
        self.mu = mu;
        Ok(self)
    }

    /// Number of layers `N`.
    pub fn layers(&self) -> usize {
        self.sigma.len()
    }
}

/// Dipole-receiver arrangement above the surface.
#[derive(Debug, Clone, Copy)]
pub struct SurveyGeometry {
    /// Dipole height above the surface, m.
    pub height: f64,
    /// Transmitter-receiver offset, m.
    pub offset: f64,
    /// Dipole moment, A m^2.
    pub moment: f64,
}

impl SurveyGeometry {
    /// Validated geometry with unit dipole moment.
    pub fn new(height: f64, offset: f64) -> Result<SurveyGeometry> {
        if !(height > 0.0) || !height.is_finite() {
            return Err(Error::Domain(format!(
                "dipole height {height} must be finite and positive"
            )));
        }
        if !(offset > 0.0) || !offset.is_finite() {
            return Err(Error::Domain(format!(
                "offset {offset} must be finite and positive"
            )));
        }
        Ok(SurveyGeometry {
            height,
            offset,
            moment: 1.0,
        })
    }

    /// Same geometry with an explicit dipole moment.
    pub fn with_moment(mut self, moment: f64) -> Result<SurveyGeometry> {
        if !moment.is_finite() {
            return Err(Error::Domain(format!("dipole moment {moment} must be finite")));
        }
        self.moment = moment;
        Ok(self)
    }

    /// Exponential decay rate `c = 2H/r` of the field integrands.
    ///
    /// The application keeps `0 < c < 1`; larger values are legal for the
    /// quadrature and are only warned about at the command line.
    pub fn decay_rate(&self) -> f64 {
        2.0 * self.height / self.offset
    }
}

/// Surface reflection coefficient `R_0(lambda)` of the layer stack, from the
/// standard backward recursion
///
/// ```text
/// R_N = 0,
/// R_j = (R_{j+1} + Psi_{j+1}) / (R_{j+1} Psi_{j+1} + 1) * e^{-2 u_j h_j},   j = N-1..1,
/// R_0 = (R_1 + Psi_1) / (R_1 Psi_1 + 1),
/// ```
///
/// where `Psi_j = (u_{j-1} - u_j)/(u_{j-1} + u_j)`, `u_0 = lambda`,
/// `u_j = sqrt(lambda^2 - k_j^2)` and `k_j = sqrt(-i omega mu sigma_j)`.
/// Square roots are taken on the branch with nonnegative real part (and
/// nonnegative imaginary part on the cut), so `e^{-2 u_j h_j}` decays with
/// depth.
pub fn reflection_coefficient(model: &LayeredEarth, lambda: f64) -> Complex64 {
    let n = model.sigma.len();
    let one = Complex64::new(1.0, 0.0);
    // u_0..u_N; the principal square root has Re >= 0, Im >= 0 on the cut
    let mut u = Vec::with_capacity(n + 1);
    u.push(Complex64::new(lambda, 0.0));
    for &sigma in &model.sigma {
        // lambda^2 - k^2 with k^2 = -i omega mu sigma
        u.push(Complex64::new(lambda * lambda, model.omega * model.mu * sigma).sqrt());
    }
    let psi = |j: usize| (u[j - 1] - u[j]) / (u[j - 1] + u[j]);
    let mut r = Complex64::new(0.0, 0.0);
    for j in (1..n).rev() {
        r = (r + psi(j + 1)) / (r * psi(j + 1) + one) * (-2.0 * u[j] * model.h[j - 1]).exp();
    }
    (r + psi(1)) / (r * psi(1) + one)
}

/// Field value with its order-by-order convergence history.
#[derive(Debug, Clone)]
pub struct FieldResult {
    /// Field value at the last evaluated order, A/m.
    pub value: f64,
    /// Whether two successive orders agreed to the requested tolerance
    /// within the order budget.
    pub converged: bool,
    /// `(order, field value)` for every evaluated order.
    pub trace: Vec<(usize, f64)>,
}

/// Imaginary part of the vertical magnetic field `Im(H_z)`, A/m.
///
/// Evaluated with the split rule for `(nu, alpha, c) = (0, 0, 2H/r)` and
/// `f(x) = Im(R_0(x/r)) x^2` at orders `5, 10, 15, ...` up to `n`, stopping
/// early once successive values differ by less than `tol`. Coefficients are
/// computed once at the largest order and truncated, so the sweep costs one
/// coefficient run plus an eigensolve per order.
pub fn hz_field(
    model: &LayeredEarth,
    geometry: &SurveyGeometry,
    n: usize,
    tol: f64,
) -> Result<FieldResult> {
    field_component(model, geometry, 0.0, 1.0, n, tol)
}

/// Imaginary part of the radial magnetic field `Im(H_rho)`, A/m: the same
/// integral with `J_1` in place of `J_0` and an overall negative sign.
pub fn hrho_field(
    model: &LayeredEarth,
    geometry: &SurveyGeometry,
    n: usize,
    tol: f64,
) -> Result<FieldResult> {
    field_component(model, geometry, 1.0, -1.0, n, tol)
}

fn field_component(
    model: &LayeredEarth,
    geometry: &SurveyGeometry,
    nu: f64,
    sign: f64,
    n: usize,
    tol: f64,
) -> Result<FieldResult> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "field evaluation needs an order budget of at least 2, got {n}"
        )));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!(
            "tolerance {tol} must be finite and positive"
        )));
    }
    let r = geometry.offset;
    let params = WeightParams::new(nu, 0.0, geometry.decay_rate())?;
    let prefactor =
        sign * geometry.moment / (4.0 * std::f64::consts::PI * r * r * r);
    let f = |x: f64| reflection_coefficient(model, x / r).im * x * x;

    let coeffs = Algorithm::Cramer.coefficients(&params, n)?;
    let smooth = laguerre_recurrence(params.alpha, params.c, n)?;
    let mut trace: Vec<(usize, f64)> = Vec::new();
    let mut converged = false;
    let mut order = 5.min(n);
    loop {
        let full = golub_welsch(&coeffs.truncated(order))?;
        let lag = golub_welsch(&smooth.truncated(order))?;
        let value = prefactor * (full.integrate(&f)? - lag.integrate(&f)?);
        if let Some(&(_, prev)) = trace.last() {
            if (value - prev).abs() < tol {
                converged = true;
            }
        }
        trace.push((order, value));
        if converged || order >= n {
            break;
        }
        order = (order + 5).min(n);
    }
    Ok(FieldResult {
        value: trace.last().unwrap().1,
        converged,
        trace,
    })
}
