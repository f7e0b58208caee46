//! Runs the identity checks at a few orders and prints one line per check.
//!
//! ```bash
//! cargo run --release --example verify_suite
//! ```

use fraclap::verify::{run_suite, SuiteConfig};

pub fn run_example() -> fraclap::Result<()> {
    for &(dim, s) in &[(1, 1.5), (2, 1.5), (2, 2.0), (3, 2.5)] {
        let cfg = SuiteConfig::new(dim, s);
        let names: &[&str] = if dim == 3 {
            &["green_recurrence", "fund_recurrence", "martin_rep"]
        } else {
            &["all"]
        };
        for r in run_suite(names, &cfg)? {
            println!(
                "N={dim} s={s:<4} {:<17} residual {:.3e} (tol {:.0e}) {}",
                r.name,
                r.residual,
                r.tolerance,
                if r.passed { "ok" } else { "FAIL" }
            );
        }
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
