//! `(-Delta)^s` of a radial polynomial bump, inside and outside its support,
//! and the pointwise `(-Delta)^sigma` of a general field.
//!
//! ```bash
//! cargo run --release --example frac_eval
//! ```

use fraclap::order::gamma_ball;
use fraclap::{frac_s_smooth, frac_sigma_pointwise, Ball, FnField, KernelContext, Point, RadialPolyBump};

pub fn run_example() -> fraclap::Result<()> {
    let ctx = KernelContext::new(1, 1.5)?;
    let g = RadialPolyBump::single(Point::origin(1), 0.5, 1.0, 6.0)?;
    for t in [0.0, 0.25, 0.49, 0.7, 2.0] {
        let v = frac_s_smooth(&g, &Point::on_axis(1, t), &ctx)?;
        println!("(-Delta)^1.5 (1/4 - x^2)^6 at x={t:<5} = {v:+.8e}");
    }

    // (1 - |x|^2)_+^sigma solves (-Delta)^sigma u = 1/gamma in the ball.
    let ctx = KernelContext::new(2, 0.5)?;
    let u = FnField::in_ball(Ball::unit(2), |x: &Point| (1.0 - x.norm_sq()).max(0.0).sqrt())
        .radial_about(Point::origin(2));
    let x = Point::new(&[0.3, -0.2])?;
    let v = frac_sigma_pointwise(&u, &x, &ctx)?;
    println!(
        "N=2: (-Delta)^(1/2) (1-|x|^2)^(1/2) = {v:.8}, expected {:.8}",
        1.0 / gamma_ball(2, 0.5)
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
