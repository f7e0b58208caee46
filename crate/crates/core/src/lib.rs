//! Higher-order fractional Laplacians `(-Delta)^s`, `s > 0`, on the unit ball
//! and on `R^N` for `N = 1, 2, 3`.
//!
//! * [`kernels`]: Boggio's Green function, Martin and Poisson kernels,
//!   fundamental solutions.
//! * [`frac_op`]: pointwise `(-Delta)^s` of radial polynomial bumps and
//!   general fields, finite-difference Laplacians on grids.
//! * [`ball_solver`], [`freespace`]: solutions by kernel quadrature.
//! * [`counterexample`]: a sign-changing solution with positive data on two
//!   disjoint balls.
//! * [`verify`]: checks of the kernel identities.
//!
//! ```
//! use fraclap::{KernelContext, Point};
//!
//! let ctx = KernelContext::new(1, 0.5).unwrap();
//! let g = ctx.green(&Point::on_axis(1, 0.0), &Point::on_axis(1, 0.5)).unwrap();
//! assert!((g - (2.0 + 3f64.sqrt()).ln() / std::f64::consts::PI).abs() < 1e-12);
//! ```

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ball_solver;
pub mod cli;
pub mod counterexample;
pub mod error;
pub mod frac_op;
pub mod freespace;
pub mod geometry;
pub mod interp;
pub mod kernels;
pub mod order;
pub mod quadrature;
pub mod radial;
pub mod special;
pub mod verify;

pub use ball_solver::{solve_ball, BallProblem, BoundaryData};
pub use error::{Error, Result};
pub use frac_op::{frac_s_smooth, frac_sigma_pointwise, Field, FnField, Support};
pub use freespace::{solve_free, FreeProblem};
pub use geometry::{Ball, Point};
pub use kernels::KernelContext;
pub use order::{constants, frac_split, ConstantSet, FracOrder};
pub use quadrature::{QuadResult, QuadSpec};
pub use radial::{RadialPolyBump, Term};
