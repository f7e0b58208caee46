//! Martin extensions of boundary data and `s`-harmonic functions of the form
//! `(1 - |x|^2)^(s-1) phi(x)`.
//!
//! ```bash
//! cargo run --release --example martin_sharmonic
//! ```

use fraclap::ball_solver::{martin_extension, sharmonic_martin_factor, sharmonic_product, HarmonicPoly};
use fraclap::{BoundaryData, KernelContext, Point};

pub fn run_example() -> fraclap::Result<()> {
    let ctx = KernelContext::new(2, 1.5)?;
    let factor = sharmonic_martin_factor(&ctx);
    for phi in [
        HarmonicPoly::One,
        HarmonicPoly::Coord(0),
        HarmonicPoly::DiffSquares(0, 1),
    ] {
        let data = BoundaryData::continuous(move |t: &Point| phi.eval(t));
        let x = Point::new(&[0.3, 0.4])?;
        let direct = sharmonic_product(&phi, &ctx, &x)?;
        let via_martin = factor * martin_extension(&data, &ctx, &x)?;
        println!("{phi:?}: product {direct:.12e}, factor * Martin extension {via_martin:.12e}");
    }

    let atom = BoundaryData::atom(Point::unit(2, 0));
    for t in [0.0, 0.5, 0.9, 0.99] {
        let x = Point::on_axis(2, t);
        println!(
            "  Martin kernel of the atom at e1, x = {t} e1: {:.6e}",
            martin_extension(&atom, &ctx, &x)?
        );
    }

    match sharmonic_product(&HarmonicPoly::Custom(|x| x.norm_sq()), &ctx, &Point::origin(2)) {
        Ok(_) => println!("|x|^2 accepted?"),
        Err(e) => println!("|x|^2 rejected: {e}"),
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
