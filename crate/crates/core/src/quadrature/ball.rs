use rayon::prelude::*;

use super::{quad_interval_breaks, QuadResult, QuadSpec, SphereRule};
use crate::error::{Error, Result};
use crate::geometry::{sphere_area, Ball, Point};

/// Geometry hints for [`quad_ball_with`].
#[derive(Clone, Debug)]
pub struct BallQuad<'a> {
    pub ball: Ball,
    /// Pole of the polar decomposition; the ball center if `None` or outside.
    pub singular_at: Option<Point>,
    /// Spheres across which the integrand is not smooth; their crossings
    /// become radial breakpoints.
    pub kinks: &'a [Ball],
    /// Points near which the integrand is singular; the closest approach of
    /// each ray becomes a radial breakpoint.
    pub points: &'a [Point],
    /// If the integrand, in polar coordinates about the pole, depends on the
    /// direction only through its angle with `axis`, the azimuth is skipped.
    pub axis: Option<Point>,
}

impl<'a> BallQuad<'a> {
    pub fn new(ball: Ball) -> Self {
        Self {
            ball,
            singular_at: None,
            kinks: &[],
            points: &[],
            axis: None,
        }
    }

    pub fn singular_at(mut self, p: Point) -> Self {
        self.singular_at = Some(p);
        self
    }

    pub fn kinks(mut self, kinks: &'a [Ball]) -> Self {
        self.kinks = kinks;
        self
    }

    pub fn points(mut self, points: &'a [Point]) -> Self {
        self.points = points;
        self
    }

    pub fn axis(mut self, axis: Option<Point>) -> Self {
        self.axis = axis;
        self
    }

    fn pole(&self) -> Point {
        match self.singular_at {
            Some(p) if self.ball.signed_dist(&p) <= 0.0 => p,
            _ => self.ball.center,
        }
    }
}

/// Integral of `f` over the unit ball, in polar coordinates about
/// `singular_at` (or the origin).
pub fn quad_ball<F>(f: F, singular_at: Option<Point>, dim: usize, spec: &QuadSpec) -> QuadResult
where
    F: Fn(&Point) -> f64 + Sync,
{
    let mut q = BallQuad::new(Ball::unit(dim));
    q.singular_at = singular_at;
    quad_ball_with(f, &q, spec)
}

/// Integral of `f` over `q.ball` by a sphere rule in the direction times
/// adaptive Gauss-Kronrod along each ray from the pole.
pub fn quad_ball_with<F>(f: F, q: &BallQuad<'_>, spec: &QuadSpec) -> QuadResult
where
    F: Fn(&Point) -> f64 + Sync,
{
    let dim = q.ball.dim();
    let pole = q.pole();
    let rule = match q.axis {
        Some(a) if a.norm() > 0.0 => SphereRule::axial(dim, &a, spec),
        _ => SphereRule::new(dim, spec),
    };
    let power = dim as i32 - 1;

    let rays: Vec<QuadResult> = rule
        .nodes
        .par_iter()
        .map(|theta| {
            let rmax = q.ball.exit_radius(&pole, theta);
            if rmax <= 0.0 {
                return QuadResult::exact(0.0);
            }
            let mut breaks = vec![0.0, rmax];
            for k in q.kinks {
                for r in k.ray_crossings(&pole, theta) {
                    if r > 0.0 && r < rmax {
                        breaks.push(r);
                    }
                }
            }
            for p in q.points {
                let t = (*p - pole).dot(theta);
                if t > 0.0 && t < rmax && p.dist_sq(&pole) > 0.0 {
                    breaks.push(t);
                }
            }
            breaks.sort_by(f64::total_cmp);
            breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * rmax);
            quad_interval_breaks(
                |r| {
                    let y = pole + *theta * r;
                    f(&y) * r.powi(power)
                },
                &breaks,
                spec,
            )
        })
        .collect();

    let vals: Vec<f64> = rays.iter().map(|r| r.value).collect();
    let value: f64 = vals.iter().zip(&rule.weights).map(|(v, w)| v * w).sum();
    let ray_err: f64 = rays
        .iter()
        .zip(&rule.weights)
        .map(|(r, w)| w * r.err_estimate)
        .sum();
    // Angular error: the same rule on every other azimuthal node.
    let ang_err = if dim == 1 {
        0.0
    } else {
        (value - rule.coarse_dot(&vals)).abs()
    };
    QuadResult {
        value,
        err_estimate: ray_err + ang_err,
        converged: rays.iter().all(|r| r.converged) && ang_err <= spec.tolerance_for(value),
        subdivisions_used: rays.iter().map(|r| r.subdivisions_used).sum(),
    }
}

/// Integral of `f` over `R^N`, assuming `|f(y)| <= K |y|^{-decay_beta}` for
/// `|y| >= far_radius`.
///
/// The value is the integral over `B_{far_radius}`; the tail is bounded
/// (`K |S^{N-1}| R^{N-beta} / (beta - N)`, with `K` sampled on the far sphere)
/// and added to the error estimate only.
pub fn quad_space<F>(f: F, decay_beta: f64, dim: usize, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(&Point) -> f64 + Sync,
{
    let n = dim as f64;
    if !(decay_beta > n) {
        return Err(Error::Divergent(format!(
            "decay exponent {decay_beta} must exceed the dimension {dim}"
        )));
    }
    let r = spec.far_radius;
    let ball = Ball::new(Point::origin(dim), r)?;
    let inner = quad_ball_with(&f, &BallQuad::new(ball), spec);
    let rule = SphereRule::new(dim, spec);
    let k = rule
        .nodes
        .iter()
        .map(|t| f(&(*t * r)).abs() * r.powf(decay_beta))
        .fold(0.0, f64::max);
    let tail = k * sphere_area(dim) * r.powf(n - decay_beta) / (decay_beta - n);
    Ok(QuadResult {
        value: inner.value,
        err_estimate: inner.err_estimate + tail,
        converged: inner.converged,
        subdivisions_used: inner.subdivisions_used,
    })
}
