//! Builds the reference sign-changing solution: `f > 0` on two disjoint
//! balls `D` and `A`, yet `u < 0` on part of `D`.
//!
//! ```bash
//! cargo run --release --example counterexample
//! ```

use fraclap::counterexample::{build, verify_ce, CEConfig};
use fraclap::Point;

pub fn run_example() -> fraclap::Result<()> {
    let cfg = CEConfig::reference();
    let res = build(&cfg)?;
    println!(
        "N={} s={}: thresholds A {:.4e}, D {:.4e}, a = {:.4e}, min f = {:.4e}",
        cfg.dim,
        res.ctx.s(),
        res.threshold_a,
        res.threshold_d,
        res.a,
        res.f_min
    );
    for t in [-0.9, -0.6, -0.5, -0.4, 0.3, 0.5, 0.7] {
        let x = Point::on_axis(1, t);
        let f = res.f(&x)?.map_or("-".to_string(), |v| format!("{v:+.4e}"));
        println!(
            "  x={t:+.1} ({:<7}) u = {:+.4e}  f = {f}",
            res.component(&x).as_str(),
            res.u(&x)
        );
    }
    let report = verify_ce(&res, 1e-3)?;
    println!(
        "verification: f > 0 {}, sign change {}, pairings {:.1e} / {:.1e}, passed {}",
        report.f_positive,
        report.sign_change,
        report.pairing_d.residual,
        report.pairing_a.residual,
        report.passed
    );

    // A just below the threshold no longer gives f > 0 everywhere.
    let low = res.with_a(0.9 * res.threshold_a.max(res.threshold_d))?;
    println!("with a at 90% of the threshold: min f = {:+.4e}", low.f_min);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
