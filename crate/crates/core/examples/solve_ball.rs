//! Solves `(-Delta)^s u = f` in the unit ball with zero exterior data and
//! compares the torsion problem against its closed form.
//!
//! ```bash
//! cargo run --release --example solve_ball
//! ```

use fraclap::ball_solver::decay_norm;
use fraclap::order::gamma_ball;
use fraclap::{solve_ball, BallProblem, KernelContext, Point, RadialPolyBump};

pub fn run_example() -> fraclap::Result<()> {
    for &(dim, s) in &[(1, 1.5), (2, 1.5), (3, 1.25)] {
        let ctx = KernelContext::new(dim, s)?;
        let p = BallProblem::constant(ctx, 1.0);
        let x = Point::on_axis(dim, 0.6);
        let u = solve_ball(&p, &x)?;
        let exact = gamma_ball(dim, s) * (1.0 - x.norm_sq()).powf(s);
        println!("N={dim} s={s}: u(0.6 e1) = {u:.12e}, closed form {exact:.12e}");
    }

    let ctx = KernelContext::new(2, 2.5)?;
    let f = RadialPolyBump::single(Point::new(&[0.2, 0.1])?, 0.5, 1.0, 3.0)?;
    let p = BallProblem::bump(ctx, f)?;
    let grid: Vec<Point> = (1..10)
        .map(|i| Point::new(&[0.1 * i as f64, 0.0]))
        .collect::<Result<_, _>>()?;
    for x in &grid {
        println!(
            "  bump rhs, N=2 s=2.5: u({:.1}, 0) = {:+.6e}",
            x.get(0),
            solve_ball(&p, x)?
        );
    }
    println!("  sup |u| / d^s = {:.6e}", decay_norm(&p, &grid)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
