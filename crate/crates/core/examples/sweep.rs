//! Minimal library usage: print F(theta) for one parameter point.

use bellsim::correlator::chsh_curve;
use bellsim::quadrature::QuadratureSpec;

fn main() -> Result<(), bellsim::Error> {
    let grid: Vec<f64> = (0..181)
        .map(|i| i as f64 * std::f64::consts::FRAC_PI_2 / 180.0)
        .collect();
    let curve = chsh_curve(&grid, -2.0, 0.6, &QuadratureSpec::default())?;
    for point in &curve.points {
        println!("{:.6} {:.12}", point.theta, point.f_value);
    }
    Ok(())
}
