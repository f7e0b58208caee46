//! Evaluates the Green function, Martin and Poisson kernels and the
//! fundamental solution at a few points.
//!
//! ```bash
//! cargo run --release --example green_kernels
//! ```

use fraclap::kernels::poisson;
use fraclap::{KernelContext, Point};

pub fn run_example() -> fraclap::Result<()> {
    let ctx = KernelContext::new(1, 0.5)?;
    let g = ctx.green(&Point::on_axis(1, 0.0), &Point::on_axis(1, 0.5))?;
    println!("N=1 s=0.5  G(0, 1/2) = {g:.15}");
    println!(
        "           ln(2+sqrt 3)/pi = {:.15}",
        (2.0 + 3f64.sqrt()).ln() / std::f64::consts::PI
    );

    for &(dim, s) in &[(2, 1.5), (3, 2.5)] {
        let ctx = KernelContext::new(dim, s)?;
        let x = Point::on_axis(dim, 0.3);
        let y = Point::on_axis(dim, -0.4);
        let theta = Point::unit(dim, 0);
        println!(
            "N={dim} s={s}  G = {:.6e}  P_(s-1) = {:.6e}  M = {:.6e}  Poisson = {:.6e}  F(x-y) = {:.6e}",
            ctx.green(&x, &y)?,
            ctx.poly_p(&x, &y)?,
            ctx.martin(&x, &theta)?,
            poisson(&x, &theta, dim)?,
            ctx.fundamental(&(x - y))?,
        );
    }

    // s - N/2 = 1: logarithmic fundamental solution.
    let ctx = KernelContext::new(2, 2.0)?;
    println!("N=2 s=2  log branch: {}", ctx.consts.log_branch);
    for r in [0.5, 1.0, 2.0] {
        println!("  F(r={r}) = {:+.6e}", ctx.fundamental_radial(r));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
