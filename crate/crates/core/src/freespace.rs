//! Convolution with the fundamental solution on `R^N` and the positivity of
//! free-space solutions for `2s < N`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frac_op::{Field, Support};
use crate::geometry::{Ball, Point};
use crate::kernels::KernelContext;
use crate::quadrature::{quad_ball_with, BallQuad, QuadResult};
use crate::radial::RadialPolyBump;

/// How `2s` compares with `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeTag {
    /// `2s < N`: `F_{N,s}` is positive and decays.
    Subcritical,
    /// `2s = N`.
    Critical,
    /// `2s > N`.
    Supercritical,
}

impl RegimeTag {
    pub fn of(dim: usize, s: f64) -> Self {
        let d = 2.0 * s - dim as f64;
        if d.abs() < 1e-12 {
            Self::Critical
        } else if d < 0.0 {
            Self::Subcritical
        } else {
            Self::Supercritical
        }
    }
}

/// `(-Delta)^s u = f` on `R^N` with compactly supported `f`.
#[derive(Clone, Debug)]
pub struct FreeProblem {
    pub ctx: KernelContext,
    pub rhs: RadialPolyBump,
    pub regime: RegimeTag,
}

impl FreeProblem {
    pub fn new(ctx: KernelContext, rhs: RadialPolyBump) -> Result<Self> {
        if rhs.dim() != ctx.dim {
            return Err(Error::DimensionMismatch {
                expected: ctx.dim,
                got: rhs.dim(),
            });
        }
        let regime = RegimeTag::of(ctx.dim, ctx.s());
        Ok(Self { ctx, rhs, regime })
    }

    /// The solution as a [`Field`] (whole space).
    pub fn solution(&self) -> FreeSolution<'_> {
        FreeSolution { problem: self }
    }
}

/// `u(x) = int F_{N,s}(x - y) f(y) dy`.
pub fn solve_free(p: &FreeProblem, x: &Point) -> Result<f64> {
    solve_free_detailed(p, x)?.into_result()
}

pub fn solve_free_detailed(p: &FreeProblem, x: &Point) -> Result<QuadResult> {
    x.check_dim(p.ctx.dim)?;
    if p.rhs.is_zero() {
        return Ok(QuadResult::exact(0.0));
    }
    let support = p.rhs.support();
    let c = p.rhs.center();
    let kinks = [support];
    let pts = [*x];
    let inside = support.signed_dist(x) <= 0.0;
    let axis = (p.ctx.dim == 3).then(|| {
        let a = *x - c;
        if a.norm() > 0.0 {
            a
        } else {
            Point::unit(3, 2)
        }
    });
    let mut q = BallQuad::new(support).kinks(&kinks).axis(axis);
    if inside {
        q = q.singular_at(*x);
    } else {
        q = q.points(&pts);
    }
    let ctx = &p.ctx;
    let r = quad_ball_with(
        |y| {
            let d = x.dist(y);
            if d == 0.0 {
                0.0
            } else {
                ctx.fundamental_radial(d) * p.rhs.evaluate(y)
            }
        },
        &q,
        &ctx.spec,
    );
    Ok(r)
}

/// The free-space solution viewed as a field.
pub struct FreeSolution<'a> {
    problem: &'a FreeProblem,
}

impl Field for FreeSolution<'_> {
    fn dim(&self) -> usize {
        self.problem.ctx.dim
    }

    fn eval(&self, x: &Point) -> f64 {
        solve_free_detailed(self.problem, x)
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
    }

    fn support(&self) -> Support {
        Support::Whole {
            decay: self.problem.ctx.dim as f64 - 2.0 * self.problem.ctx.s(),
        }
    }

    fn kinks(&self) -> Vec<Ball> {
        vec![self.problem.rhs.support()]
    }

    fn symmetry_center(&self) -> Option<Point> {
        Some(self.problem.rhs.center())
    }
}

/// Minimum of [`solve_free`] over `grid`. Requires `2s < N` and a
/// nonnegative right-hand side; the zero right-hand side gives 0.
pub fn positivity_scan(p: &FreeProblem, grid: &[Point]) -> Result<f64> {
    if p.regime != RegimeTag::Subcritical {
        return Err(Error::Regime(format!(
            "positivity needs 2s < N, got N = {}, s = {}",
            p.ctx.dim,
            p.ctx.s()
        )));
    }
    if p.rhs.is_zero() {
        return Ok(0.0);
    }
    let r2 = p.rhs.radius() * p.rhs.radius();
    let negative = (1..=400).any(|i| p.rhs.eval_w(r2 * i as f64 / 400.0) < 0.0);
    if negative {
        return Err(Error::InvalidArgument(
            "right-hand side takes negative values".into(),
        ));
    }
    let values = grid
        .par_iter()
        .map(|x| solve_free_detailed(p, x).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

/// Uniform grid with `n` points per axis on the cube `[-half, half]^N`.
pub fn cube_grid(dim: usize, half: f64, n: usize) -> Vec<Point> {
    let n = n.max(2);
    let h = 2.0 * half / (n - 1) as f64;
    let total = n.pow(dim as u32);
    (0..total)
        .map(|mut k| {
            let mut c = [0.0; 3];
            for ci in c.iter_mut().take(dim) {
                *ci = -half + h * (k % n) as f64;
                k /= n;
            }
            Point::new(&c[..dim]).expect("finite grid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn newton_shell_theorem() {
        let ctx = KernelContext::new(3, 1.0).unwrap();
        let f = RadialPolyBump::single(Point::origin(3), 0.5, 1.0, 6.0).unwrap();
        let mass = f.integral().unwrap();
        let p = FreeProblem::new(ctx, f).unwrap();
        for x in [[1.0, 0.0, 0.0], [0.3, -0.6, 0.9], [0.0, 0.0, 2.5]] {
            let x = Point::new(&x).unwrap();
            let u = solve_free(&p, &x).unwrap();
            let exact = mass / (4.0 * PI * x.norm());
            assert!((u - exact).abs() < 1e-8 * exact, "{x}: {u} vs {exact}");
        }
    }

    #[test]
    fn zero_rhs() {
        let p = FreeProblem::new(KernelContext::new(2, 0.7).unwrap(), RadialPolyBump::zero(2)).unwrap();
        assert_eq!(solve_free(&p, &Point::new(&[0.1, 0.2]).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn classical_1d_second_derivative() {
        let ctx = KernelContext::new(1, 1.0).unwrap();
        let f = RadialPolyBump::single(Point::origin(1), 1.0, 1.0, 2.0).unwrap();
        let p = FreeProblem::new(ctx, f.clone()).unwrap();
        let u = |t: f64| solve_free(&p, &Point::on_axis(1, t)).unwrap();
        let mut prev = None;
        for &h in &[1e-2, 5e-3] {
            let mut worst: f64 = 0.0;
            for &t in &[-0.5, 0.0, 0.3, 0.7] {
                let d2 = (u(t + h) - 2.0 * u(t) + u(t - h)) / (h * h);
                worst = worst.max((d2 + f.evaluate(&Point::on_axis(1, t))).abs());
            }
            assert!(worst < 5.0 * h * h, "h = {h}: {worst}");
            if let Some(p) = prev {
                assert!(worst < p);
            }
            prev = Some(worst);
        }
    }

    #[test]
    fn critical_2d_log_potential() {
        // N = 2, s = 1: F = -ln|x| / (2 pi); outside the support u = -M ln|x| / (2 pi).
        let ctx = KernelContext::new(2, 1.0).unwrap();
        assert!(ctx.consts.log_branch);
        let f = RadialPolyBump::single(Point::origin(2), 0.5, 1.0, 3.0).unwrap();
        let mass = f.integral().unwrap();
        let p = FreeProblem::new(ctx, f).unwrap();
        assert_eq!(p.regime, RegimeTag::Critical);
        let x = Point::new(&[1.2, 0.9]).unwrap();
        let exact = -mass * x.norm().ln() / (2.0 * PI);
        let u = solve_free(&p, &x).unwrap();
        assert!((u - exact).abs() < 1e-8 * exact.abs(), "{u} vs {exact}");
    }

    #[test]
    fn positivity_in_3d() {
        let ctx = KernelContext::new(3, 1.25).unwrap();
        let f = RadialPolyBump::single(Point::origin(3), 0.5, 1.0, 4.0).unwrap();
        let p = FreeProblem::new(ctx, f).unwrap();
        let grid = cube_grid(3, 3.0, 4);
        assert!(positivity_scan(&p, &grid).unwrap() > 0.0);
        let u2 = solve_free(&p, &Point::on_axis(3, 2.0)).unwrap();
        let u3 = solve_free(&p, &Point::on_axis(3, 3.0)).unwrap();
        assert!(u3 < u2);
    }

    #[test]
    fn positivity_regime_and_sign_checks() {
        let f = RadialPolyBump::single(Point::origin(1), 0.5, 1.0, 4.0).unwrap();
        let p = FreeProblem::new(KernelContext::new(1, 1.5).unwrap(), f).unwrap();
        assert!(matches!(
            positivity_scan(&p, &[Point::origin(1)]),
            Err(Error::Regime(_))
        ));
        let zero = FreeProblem::new(KernelContext::new(3, 1.25).unwrap(), RadialPolyBump::zero(3)).unwrap();
        assert_eq!(positivity_scan(&zero, &cube_grid(3, 1.0, 2)).unwrap(), 0.0);
        let neg = RadialPolyBump::single(Point::origin(3), 0.5, -1.0, 4.0).unwrap();
        let p = FreeProblem::new(KernelContext::new(3, 1.25).unwrap(), neg).unwrap();
        assert!(positivity_scan(&p, &[Point::origin(3)]).is_err());
    }

    #[test]
    fn grid_shape() {
        let g = cube_grid(3, 3.0, 11);
        assert_eq!(g.len(), 1331);
        assert_eq!(g[0].coords(), &[-3.0, -3.0, -3.0]);
        assert_eq!(g[1330].coords(), &[3.0, 3.0, 3.0]);
    }
}
