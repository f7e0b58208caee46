//! The quadrature layer on its own: intervals with breakpoints, spheres,
//! balls with an interior singularity and truncated whole-space integrals.
//!
//! ```bash
//! cargo run --release --example quadrature
//! ```

use fraclap::geometry::ball_volume;
use fraclap::quadrature::{quad_ball, quad_interval_breaks, quad_space, quad_sphere};
use fraclap::{Point, QuadSpec};

pub fn run_example() -> fraclap::Result<()> {
    let spec = QuadSpec::default();

    let r = quad_interval_breaks(|t| (t - 0.3).abs().sqrt(), &[0.0, 0.3, 1.0], &spec);
    let exact = (2.0 / 3.0) * (0.3f64.powf(1.5) + 0.7f64.powf(1.5));
    println!(
        "int_0^1 |t-0.3|^(1/2) = {:.15} (exact {exact:.15}), {} subdivisions",
        r.value, r.subdivisions_used
    );

    let s = quad_sphere(|t| t.get(2) * t.get(2), 3, &spec);
    println!(
        "int_S2 z^2 = {:.15} (exact {:.15})",
        s.value,
        4.0 * std::f64::consts::PI / 3.0
    );

    let x = Point::new(&[0.2, -0.1, 0.3])?;
    let b = quad_ball(|y| 1.0 / y.dist(&x), Some(x), 3, &spec);
    let exact = 2.0 * std::f64::consts::PI * (1.0 - x.norm_sq() / 3.0);
    println!("int_B3 |x-y|^-1 = {:.12} (exact {exact:.12})", b.value);

    let v = quad_ball(|_| 1.0, None, 2, &spec);
    println!("|B2| = {:.15} (exact {:.15})", v.value, ball_volume(2));

    let w = quad_space(|y| (1.0 + y.norm_sq()).powf(-2.5), 5.0, 3, &spec)?;
    // Only B_{far_radius} is integrated; the tail shows up in the error estimate.
    println!(
        "int_B50 (1+|y|^2)^-5/2 = {:.10} (over R3 {:.10}), err est {:.1e}",
        w.value,
        4.0 * std::f64::consts::PI / 3.0,
        w.err_estimate
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
