//! Special functions: Gamma, `exprel` and the incomplete Beta integral used
//! by the Green function.
//!
//! ```bash
//! cargo run --release --example special
//! ```

use fraclap::special::{exprel, gamma, IncompleteBeta};
use fraclap::{constants, frac_split};

pub fn run_example() -> fraclap::Result<()> {
    for x in [0.5, 1.0, 2.5, -0.5, 7.0] {
        println!("Gamma({x}) = {:.15e}", gamma(x));
    }
    println!("exprel(1e-10) = {:.17}", exprel(1e-10));

    let b = IncompleteBeta::new(1.5, 0.5);
    for x in [0.1, 0.5, 0.9, 0.999] {
        println!("int_0^{x} t^0.5 (1-t)^-0.5 dt = {:.15}", b.eval(x, 1.0 - x));
    }

    for &(dim, s) in &[(1, 0.5), (2, 1.5), (2, 2.0), (3, 2.5)] {
        let c = constants(dim, frac_split(s)?)?;
        println!("N={dim} s={s}: {c:?}");
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
