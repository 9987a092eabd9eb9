use besselquad::emfields::{hz_field, reflection_coefficient, LayeredEarth, SurveyGeometry};
use besselquad::moments::WeightParams;
use besselquad::oracle::{reference_integral, ExpEnvelope};

fn main() {
    let omega = 2.0e4 * std::f64::consts::PI;
    let model = LayeredEarth::new(vec![0.05, 0.0049, 0.0182], vec![2.5, 0.5], omega).unwrap();
    let geometry = SurveyGeometry::new(0.4, 8.0).unwrap();
    let r = geometry.offset;
    let c = geometry.decay_rate();
    let prefactor = 1.0 / (4.0 * std::f64::consts::PI * r.powi(3));

    let result = hz_field(&model, &geometry, 100, 1e-10).unwrap();
    println!("converged = {}", result.converged);
    for (order, value) in &result.trace {
        println!("order {order:3}  raw {:+.15e}", value / prefactor);
    }

    let params = WeightParams::new(0.0, 0.0, c).unwrap();
    let f = |x: f64| reflection_coefficient(&model, x / r).im * x * x;
    for tol in [1e-8, 1e-10] {
        let envelope = ExpEnvelope {
            coeff: (4.0 / (c * std::f64::consts::E)).powi(2),
            rate: c / 2.0,
        };
        let o = reference_integral(&params, &f, envelope, tol).unwrap();
        println!(
            "oracle tol {tol:e}: value {:+.15e}  est {:.2e}  panels {}",
            o.value, o.error_estimate, o.panels
        );
    }
    // sample the integrand for the mpmath cross-check
    for x in [0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 40.0] {
        println!("f({x}) = {:+.15e}", f(x));
    }
}
