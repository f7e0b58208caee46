//! Whole-space solutions `u = F * f` by convolution with the fundamental
//! solution, in each regime of `2s` against `N`.
//!
//! ```bash
//! cargo run --release --example solve_free
//! ```

use fraclap::freespace::{cube_grid, positivity_scan, RegimeTag};
use fraclap::{solve_free, FreeProblem, KernelContext, Point, RadialPolyBump};

pub fn run_example() -> fraclap::Result<()> {
    for &(dim, s) in &[(3, 1.25), (2, 1.0), (1, 1.5)] {
        let ctx = KernelContext::new(dim, s)?;
        let f = RadialPolyBump::single(Point::origin(dim), 1.0, 1.0, 2.0)?;
        let p = FreeProblem::new(ctx, f)?;
        print!("N={dim} s={s} {:?}:", RegimeTag::of(dim, s));
        for t in [0.0, 0.5, 2.0, 5.0] {
            print!("  u({t}) = {:+.5e}", solve_free(&p, &Point::on_axis(dim, t))?);
        }
        println!();
    }

    let ctx = KernelContext::new(3, 1.25)?;
    let f = RadialPolyBump::single(Point::on_axis(3, 0.3), 0.5, 1.0, 4.0)?;
    let p = FreeProblem::new(ctx, f)?;
    let grid = cube_grid(3, 3.0, 11);
    println!(
        "subcritical N=3 s=1.25: min u over {} grid points = {:.4e}",
        grid.len(),
        positivity_scan(&p, &grid)?
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
