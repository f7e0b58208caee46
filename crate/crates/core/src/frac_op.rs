//! Pointwise fractional Laplacians `(-Delta)^sigma` by singular quadrature of
//! the second difference, higher orders `(-Delta)^{m+sigma}` through exact
//! integer Laplacians of radial bumps, and finite-difference Laplacians on
//! grids.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Ball, Point};
use crate::kernels::KernelContext;
use crate::order::c_frac;
use crate::quadrature::{quad_ball_with, quad_interval_breaks, BallQuad, QuadResult, QuadSpec, SphereRule};
use crate::radial::{iterate_laplacian, RadialPolyBump};

/// Where a field lives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Support {
    /// Vanishes outside the closed ball.
    Ball(Ball),
    /// Whole space with `|u(x)| <= K |x|^{-decay}` at infinity.
    Whole { decay: f64 },
}

/// A scalar field that can be sampled pointwise.
pub trait Field: Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &Point) -> f64;

    fn support(&self) -> Support;

    /// Spheres across which the field fails to be smooth.
    fn kinks(&self) -> Vec<Ball> {
        match self.support() {
            Support::Ball(b) => vec![b],
            Support::Whole { .. } => Vec::new(),
        }
    }

    /// Center of rotational symmetry, if the field is radial.
    fn symmetry_center(&self) -> Option<Point> {
        None
    }
}

impl Field for RadialPolyBump {
    fn dim(&self) -> usize {
        RadialPolyBump::dim(self)
    }

    fn eval(&self, x: &Point) -> f64 {
        self.evaluate(x)
    }

    fn support(&self) -> Support {
        Support::Ball(RadialPolyBump::support(self))
    }

    fn symmetry_center(&self) -> Option<Point> {
        Some(self.center())
    }
}

/// A closure together with its support description.
pub struct FnField<F> {
    dim: usize,
    f: F,
    support: Support,
    kinks: Vec<Ball>,
    center: Option<Point>,
}

impl<F: Fn(&Point) -> f64 + Sync> FnField<F> {
    /// A field vanishing outside the open `ball` (`f` is not called there),
    /// kinked only on its boundary.
    pub fn in_ball(ball: Ball, f: F) -> Self {
        Self {
            dim: ball.dim(),
            f,
            support: Support::Ball(ball),
            kinks: vec![ball],
            center: None,
        }
    }

    pub fn whole(dim: usize, decay: f64, f: F) -> Self {
        Self {
            dim,
            f,
            support: Support::Whole { decay },
            kinks: Vec::new(),
            center: None,
        }
    }

    pub fn with_kinks(mut self, kinks: Vec<Ball>) -> Self {
        self.kinks = kinks;
        self
    }

    pub fn radial_about(mut self, center: Point) -> Self {
        self.center = Some(center);
        self
    }
}

impl<F: Fn(&Point) -> f64 + Sync> Field for FnField<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &Point) -> f64 {
        match self.support {
            Support::Ball(b) if !b.contains(x) => 0.0,
            _ => (self.f)(x),
        }
    }

    fn support(&self) -> Support {
        self.support
    }

    fn kinks(&self) -> Vec<Ball> {
        self.kinks.clone()
    }

    fn symmetry_center(&self) -> Option<Point> {
        self.center
    }
}

/// Tuning for [`frac_sigma_pointwise`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FracOptions {
    /// Near-field radius; default `0.25 dist(x, kinks)`, capped at 0.5.
    pub delta: Option<f64>,
    /// Force the ray evaluation about `x` even far outside the support.
    pub rays_only: bool,
}

/// `(-Delta)^sigma u(x)` for `sigma = ctx.order.sigma()` in `(0, 1)`.
pub fn frac_sigma_pointwise(u: &dyn Field, x: &Point, ctx: &KernelContext) -> Result<f64> {
    frac_sigma_with(u, x, ctx, &FracOptions::default()).map(|r| r.value)
}

/// [`frac_sigma_pointwise`] with options and the full quadrature result.
pub fn frac_sigma_with(
    u: &dyn Field,
    x: &Point,
    ctx: &KernelContext,
    opts: &FracOptions,
) -> Result<QuadResult> {
    if ctx.order.is_integer() {
        return Err(Error::ClassicalBranch);
    }
    frac_sigma_raw(u, x, ctx.order.sigma(), &ctx.spec, opts)
}

/// The fractional Laplacian of order `sigma` in `(0, 1)`, independent of a
/// kernel context.
pub fn frac_sigma_raw(
    u: &dyn Field,
    x: &Point,
    sigma: f64,
    spec: &QuadSpec,
    opts: &FracOptions,
) -> Result<QuadResult> {
    let dim = u.dim();
    x.check_dim(dim)?;
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::InvalidOrder(sigma));
    }
    if let Support::Whole { decay } = u.support() {
        if !(decay > 0.0) {
            return Err(Error::Domain(
                "whole-space field needs a positive decay exponent".into(),
            ));
        }
    }
    let c = c_frac(dim, sigma);
    if let (Support::Ball(b), false) = (u.support(), opts.rays_only) {
        if b.signed_dist(x) >= 0.25 * b.radius {
            return Ok(exterior_direct(u, x, b, sigma, c, spec));
        }
    }
    Ok(second_difference_rays(u, x, sigma, c, spec, opts))
}

/// `-c int_B u(y) |x-y|^{-N-2 sigma} dy` for `x` outside the support ball.
fn exterior_direct(u: &dyn Field, x: &Point, b: Ball, sigma: f64, c: f64, spec: &QuadSpec) -> QuadResult {
    let p = -(u.dim() as f64 + 2.0 * sigma) / 2.0;
    let axis = u.symmetry_center().map(|ctr| *x - ctr);
    let kinks = u.kinks();
    let q = BallQuad::new(b).kinks(&kinks).axis(axis);
    let r = quad_ball_with(|y| u.eval(y) * x.dist_sq(y).powf(p), &q, spec);
    QuadResult {
        value: -c * r.value,
        err_estimate: c * r.err_estimate,
        ..r
    }
}

fn second_difference_rays(
    u: &dyn Field,
    x: &Point,
    sigma: f64,
    c: f64,
    spec: &QuadSpec,
    opts: &FracOptions,
) -> QuadResult {
    let dim = u.dim();
    let ux = u.eval(x);
    let support = u.support();
    let mut kinks = u.kinks();
    if let Support::Ball(b) = support {
        if !kinks.contains(&b) {
            kinks.push(b);
        }
    }
    let kink_dist = kinks
        .iter()
        .map(|k| k.signed_dist(x).abs())
        .fold(f64::INFINITY, f64::min);
    let delta = opts.delta.unwrap_or_else(|| (0.25 * kink_dist).min(0.5)).max(0.0);
    // Below r0 the second difference is replaced by its quadratic part.
    let r0 = if kink_dist.is_finite() {
        (1e-2 * kink_dist).min(1e-3)
    } else {
        1e-3
    };
    let (far, tail_err_coef) = match support {
        Support::Ball(_) => (None, 0.0),
        Support::Whole { decay } => (Some(spec.far_radius), decay),
    };

    let rule = match u.symmetry_center() {
        Some(ctr) if dim == 3 => {
            let a = *x - ctr;
            let axis = if a.norm() > 0.0 { a } else { Point::unit(3, 2) };
            SphereRule::axial(3, &axis, spec)
        }
        _ => SphereRule::new(dim, spec),
    };
    let p = -1.0 - 2.0 * sigma;
    let ray_spec = spec.nested(0.1);

    let rays: Vec<QuadResult> = rule
        .nodes
        .par_iter()
        .map(|theta| {
            let d = |r: f64| 2.0 * ux - u.eval(&(*x + *theta * r)) - u.eval(&(*x - *theta * r));
            // Radii past which both x + r theta and x - r theta have left every kink ball.
            let mut breaks = Vec::new();
            let mut rmax: f64 = 0.0;
            for k in &kinks {
                for r in k.ray_crossings(x, theta) {
                    let r = r.abs();
                    breaks.push(r);
                    rmax = rmax.max(r);
                }
            }
            let rmax = match (support, far) {
                (_, Some(f)) => f.max(rmax),
                (Support::Ball(b), None) => {
                    // The line misses the support entirely: nothing to integrate.
                    if b.ray_crossings(x, theta).is_empty() {
                        return QuadResult::exact(2.0 * ux * rmax_tail(b.signed_dist(x).max(1e-300), sigma));
                    }
                    rmax
                }
                _ => rmax,
            };
            let lo = if kink_dist > 0.0 { r0.min(rmax) } else { 0.0 };
            let mut near = 0.0;
            if lo > 0.0 {
                near = d(lo) / (lo * lo) * lo.powf(2.0 - 2.0 * sigma) / (2.0 - 2.0 * sigma);
            }
            breaks.push(lo);
            breaks.push(rmax);
            if delta > lo && delta < rmax {
                breaks.push(delta);
            }
            breaks.retain(|r| *r >= lo && *r <= rmax);
            breaks.sort_by(f64::total_cmp);
            breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * rmax.max(1.0));
            let mid = if breaks.len() >= 2 && rmax > lo {
                quad_interval_breaks(|r| d(r) * r.powf(p), &breaks, &ray_spec)
            } else {
                QuadResult::exact(0.0)
            };
            let tail = 2.0 * ux * rmax_tail(rmax, sigma);
            let tail_err = if tail_err_coef > 0.0 {
                // |u| beyond far_radius bounded by its value scale there.
                let k = u.eval(&(*x + *theta * rmax)).abs() + u.eval(&(*x - *theta * rmax)).abs();
                k * rmax_tail(rmax, sigma)
            } else {
                0.0
            };
            QuadResult {
                value: near + mid.value + tail,
                err_estimate: mid.err_estimate + tail_err,
                converged: mid.converged,
                subdivisions_used: mid.subdivisions_used,
            }
        })
        .collect();

    let scale = 0.5 * c;
    let vals: Vec<f64> = rays.iter().map(|r| r.value).collect();
    let value: f64 = vals.iter().zip(&rule.weights).map(|(v, w)| v * w).sum::<f64>();
    let ray_err: f64 = rays
        .iter()
        .zip(&rule.weights)
        .map(|(r, w)| w * r.err_estimate)
        .sum();
    let ang_err = if dim == 1 {
        0.0
    } else {
        (value - rule.coarse_dot(&vals)).abs()
    };
    let err = scale * (ray_err + ang_err);
    QuadResult {
        value: scale * value,
        err_estimate: err,
        converged: rays.iter().all(|r| r.converged),
        subdivisions_used: rays.iter().map(|r| r.subdivisions_used).sum(),
    }
}

/// `int_R^infinity r^{-1-2 sigma} dr`.
#[inline]
fn rmax_tail(r: f64, sigma: f64) -> f64 {
    r.powf(-2.0 * sigma) / (2.0 * sigma)
}

/// Why the exact-then-fractional evaluation order is allowed for a bump.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum License {
    /// The zero extension is `C^{2m+2}`, so the integer and fractional parts
    /// commute pointwise.
    Strict,
    /// Every exponent exceeds `2m - 1`: the first `m - 1` Laplacians stay
    /// `C^1` across the support sphere, so the distributional `(-Delta)^m u`
    /// has no surface layer and equals the (integrable) exact expression.
    Distributional,
}

/// Checks whether [`frac_s_smooth`] may compute `(-Delta)^s u` as
/// `(-Delta)^sigma` of the exact `(-Delta)^m u`.
pub fn license(u: &RadialPolyBump, m: u32) -> Result<License> {
    let m = m as f64;
    if u.is_zero() || u.smoothness().global_order >= 2.0 * m + 2.0 {
        return Ok(License::Strict);
    }
    let min = u.min_exponent().unwrap_or(f64::INFINITY);
    if min > 2.0 * m - 1.0 {
        Ok(License::Distributional)
    } else {
        Err(Error::Smoothness(format!(
            "exponent {min} too low for {m} exact Laplacians before the fractional part"
        )))
    }
}

/// `(-Delta)^s u(x)` for a radial bump: `m` exact Laplacians, then the
/// fractional part. For integer `s` the result is the exact `(-Delta)^s u`
/// (valid off the support sphere).
pub fn frac_s_smooth(u: &RadialPolyBump, x: &Point, ctx: &KernelContext) -> Result<f64> {
    frac_s_smooth_with(u, x, ctx, &FracOptions::default()).map(|r| r.value)
}

pub fn frac_s_smooth_with(
    u: &RadialPolyBump,
    x: &Point,
    ctx: &KernelContext,
    opts: &FracOptions,
) -> Result<QuadResult> {
    x.check_dim(ctx.dim)?;
    u.center().check_dim(ctx.dim)?;
    let m = ctx.order.m();
    license(u, m)?;
    let v = iterate_laplacian(u, m, ctx.dim, false)?;
    if ctx.order.is_integer() {
        let w = iterate_laplacian(&v, 1, ctx.dim, false)?;
        return Ok(QuadResult::exact(w.evaluate(x)));
    }
    frac_sigma_raw(&v, x, ctx.order.sigma(), &ctx.spec, opts)
}

/// `max_x |(-Delta)^s u(x)| (1 + |x|^{N+2s})` over the sample.
pub fn decay_envelope_check(u: &RadialPolyBump, ctx: &KernelContext, sample: &[Point]) -> Result<f64> {
    if u.is_zero() {
        return Ok(0.0);
    }
    let p = ctx.dim as f64 + 2.0 * ctx.s();
    let mut worst: f64 = 0.0;
    for x in sample {
        let v = frac_s_smooth(u, x, ctx)?;
        worst = worst.max(v.abs() * (1.0 + x.norm().powf(p)));
    }
    Ok(worst)
}

/// Scalar field on a uniform grid; the last index varies fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub origin: Point,
    pub h: f64,
    pub extents: Vec<usize>,
    pub values: Vec<f64>,
}

impl GridField {
    pub fn new(origin: Point, h: f64, extents: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidArgument(format!("grid spacing {h}")));
        }
        if extents.len() != origin.dim() {
            return Err(Error::DimensionMismatch {
                expected: origin.dim(),
                got: extents.len(),
            });
        }
        if extents.iter().product::<usize>() != values.len() {
            return Err(Error::InvalidArgument(
                "value count does not match extents".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            origin,
            h,
            extents,
            values,
        })
    }

    /// Samples `f` at every grid node (in parallel).
    pub fn sample<F>(origin: Point, h: f64, extents: Vec<usize>, f: F) -> Result<Self>
    where
        F: Fn(&Point) -> f64 + Sync,
    {
        let total: usize = extents.iter().product();
        let probe = Self {
            origin,
            h,
            extents: extents.clone(),
            values: Vec::new(),
        };
        let values: Vec<f64> = (0..total)
            .into_par_iter()
            .map(|i| f(&probe.point(&probe.unflatten(i))))
            .collect();
        Self::new(origin, h, extents, values)
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.extents).fold(0, |acc, (i, n)| acc * n + i)
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.extents.len()];
        for d in (0..self.extents.len()).rev() {
            idx[d] = flat % self.extents[d];
            flat /= self.extents[d];
        }
        idx
    }

    pub fn point(&self, idx: &[usize]) -> Point {
        let mut p = self.origin;
        for (d, &i) in idx.iter().enumerate() {
            p = p.with(d, self.origin.get(d) + self.h * i as f64);
        }
        p
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.values[self.flatten(idx)]
    }

    /// Nodes and values.
    pub fn iter(&self) -> impl Iterator<Item = (Point, f64)> + '_ {
        (0..self.len()).map(|i| (self.point(&self.unflatten(i)), self.values[i]))
    }
}

/// `(-Delta_h)^m g` with the second-order central stencil; each application
/// drops one layer of nodes on every side.
pub fn fd_laplacian(g: &GridField, m: u32) -> Result<GridField> {
    if m == 0 {
        return Err(Error::InvalidArgument("fd_laplacian needs m >= 1".into()));
    }
    let mut cur = g.clone();
    for _ in 0..m {
        cur = fd_once(&cur)?;
    }
    Ok(cur)
}

fn fd_once(g: &GridField) -> Result<GridField> {
    if g.extents.iter().any(|&n| n < 3) {
        return Err(Error::Extent(format!(
            "extents {:?} leave no interior nodes",
            g.extents
        )));
    }
    let dim = g.dim();
    let ext: Vec<usize> = g.extents.iter().map(|n| n - 2).collect();
    let mut origin = g.origin;
    for d in 0..dim {
        origin = origin.with(d, g.origin.get(d) + g.h);
    }
    let h2 = g.h * g.h;
    let total: usize = ext.iter().product();
    let shape = GridField {
        origin,
        h: g.h,
        extents: ext.clone(),
        values: Vec::new(),
    };
    let values = (0..total)
        .map(|i| {
            let inner = shape.unflatten(i);
            let idx: Vec<usize> = inner.iter().map(|k| k + 1).collect();
            let center = g.get(&idx);
            let mut acc = 2.0 * dim as f64 * center;
            for d in 0..dim {
                let mut a = idx.clone();
                a[d] -= 1;
                let mut b = idx.clone();
                b[d] += 1;
                acc -= g.get(&a) + g.get(&b);
            }
            acc / h2
        })
        .collect();
    GridField::new(origin, g.h, ext, values)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::order::gamma_ball;
    use crate::radial::Term;

    fn p1(x: f64) -> Point {
        Point::on_axis(1, x)
    }

    fn bump1(center: f64, radius: f64, exponent: f64) -> RadialPolyBump {
        RadialPolyBump::single(p1(center), radius, 1.0, exponent).unwrap()
    }

    #[test]
    fn torsion_half_order_1d() {
        let ctx = KernelContext::new(1, 0.5).unwrap();
        let psi = RadialPolyBump::torsion(p1(0.0), 1.0, 0.5).unwrap();
        assert!((gamma_ball(1, 0.5) - 1.0).abs() < 1e-14);
        for &x in &[0.0, 0.3, -0.7] {
            let v = frac_sigma_pointwise(&psi, &p1(x), &ctx).unwrap();
            assert!((v - 1.0).abs() < 1e-6, "x = {x}: {v}");
        }
    }

    #[test]
    fn exterior_value_is_riesz_integral() {
        // (1 - y^2)_+^2 at x = 2.5 with sigma = 1/2 and c_{1,1/2} = 1/pi:
        // -(1/pi) int_{-1}^{1} (1 - y^2)^2 / (2.5 - y)^2 dy.
        let ctx = KernelContext::new(1, 0.5).unwrap();
        let u = bump1(0.0, 1.0, 2.0);
        let oracle = {
            let n = 200_000;
            let h = 2.0 / n as f64;
            (0..n)
                .map(|i| {
                    let y = -1.0 + (i as f64 + 0.5) * h;
                    (1.0 - y * y).powi(2) / (2.5 - y).powi(2) * h
                })
                .sum::<f64>()
                * (-1.0 / PI)
        };
        let direct = frac_sigma_pointwise(&u, &p1(2.5), &ctx).unwrap();
        assert!(direct < 0.0);
        assert!((direct - oracle).abs() < 1e-8 * oracle.abs());
        let opts = FracOptions {
            rays_only: true,
            ..Default::default()
        };
        let rays = frac_sigma_with(&u, &p1(2.5), &ctx, &opts).unwrap().value;
        assert!((rays - oracle).abs() < 1e-7 * oracle.abs(), "{rays} vs {oracle}");
    }

    #[test]
    fn brute_force_principal_value() {
        // (1 - x^2)_+^4 at x = 0, sigma = 1/2, N = 1: (c/2) int (2u(0) - u(y) - u(-y)) / y^2
        // = c int_0^inf (2 - 2 u(y)) / y^2 dy.
        let ctx = KernelContext::new(1, 0.5).unwrap();
        let u = bump1(0.0, 1.0, 4.0);
        let n = 1_000_000;
        let h = 1.0 / n as f64;
        // (1 - (1 - y^2)^4) / y^2 is a polynomial: midpoint rule on [0, 1].
        let inner: f64 = (0..n)
            .map(|i| {
                let y: f64 = (i as f64 + 0.5) * h;
                let q = y * y;
                (4.0 - 6.0 * q + 4.0 * q * q - q * q * q) * h
            })
            .sum();
        let oracle = (2.0 / PI) * (inner + 1.0);
        let v = frac_sigma_pointwise(&u, &p1(0.0), &ctx).unwrap();
        assert!((v - oracle).abs() < 1e-6, "{v} vs {oracle}");
    }

    #[test]
    fn near_far_split_independence() {
        let ctx = KernelContext::new(2, 0.4).unwrap();
        let u = RadialPolyBump::single(Point::origin(2), 1.0, 1.0, 3.0).unwrap();
        let x = Point::new(&[0.1, 0.2]).unwrap();
        let vals: Vec<f64> = [0.1, 0.2, 0.4]
            .iter()
            .map(|&d| {
                let o = FracOptions {
                    delta: Some(d),
                    ..Default::default()
                };
                frac_sigma_with(&u, &x, &ctx, &o).unwrap().value
            })
            .collect();
        for v in &vals[1..] {
            assert!((v - vals[0]).abs() < 1e-8 * vals[0].abs(), "{vals:?}");
        }
    }

    #[test]
    fn classical_branch_is_refused() {
        let ctx = KernelContext::new(1, 1.0).unwrap();
        let u = bump1(0.0, 1.0, 4.0);
        assert!(matches!(
            frac_sigma_pointwise(&u, &p1(0.0), &ctx),
            Err(Error::ClassicalBranch)
        ));
        // ... but the integer order is exact through frac_s_smooth.
        let v = frac_s_smooth(&u, &p1(0.0), &ctx).unwrap();
        assert!((v - 8.0).abs() < 1e-14);
    }

    #[test]
    fn torsion_order_three_halves() {
        let ctx = KernelContext::new(1, 1.5).unwrap();
        let psi = RadialPolyBump::torsion(p1(0.0), 1.0, 1.5).unwrap();
        assert_eq!(license(&psi, 1).unwrap(), License::Distributional);
        for &x in &[0.0, 0.45] {
            let v = frac_s_smooth(&psi, &p1(x), &ctx).unwrap();
            assert!((v - 1.0).abs() < 1e-5, "x = {x}: {v}");
        }
    }

    #[test]
    fn license_refusal() {
        let u = bump1(0.0, 1.0, 1.0);
        assert!(matches!(license(&u, 1), Err(Error::Smoothness(_))));
        assert_eq!(license(&bump1(0.0, 1.0, 6.0), 1).unwrap(), License::Strict);
        let ctx = KernelContext::new(1, 1.5).unwrap();
        assert!(frac_s_smooth(&u, &p1(0.0), &ctx).is_err());
    }

    #[test]
    fn exterior_sign_odd_m() {
        let ctx = KernelContext::new(1, 1.5).unwrap();
        let g = bump1(0.0, 1.0, 6.0);
        let v = frac_s_smooth(&g, &p1(3.0), &ctx).unwrap();
        assert!(v > 0.0, "{v}");
    }

    #[test]
    fn zero_integer_part_matches_sigma() {
        let ctx = KernelContext::new(1, 0.3).unwrap();
        let g = bump1(0.2, 0.8, 3.0);
        let a = frac_s_smooth(&g, &p1(0.1), &ctx).unwrap();
        let b = frac_sigma_pointwise(&g, &p1(0.1), &ctx).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn decay_envelope() {
        let ctx = KernelContext::new(1, 0.5).unwrap();
        let g = bump1(0.0, 1.0, 4.0);
        let ratios: Vec<f64> = [2.0, 4.0, 8.0, 16.0, 32.0]
            .iter()
            .map(|&r| decay_envelope_check(&g, &ctx, &[p1(r)]).unwrap())
            .collect();
        assert!(ratios[4] <= 2.0 * ratios[0], "{ratios:?}");
        // Far away, (-Delta)^s g ~ -c int g |x|^{-1-2s}, so the ratio tends to c int g.
        let limit = g.integral().unwrap() / PI;
        assert!((ratios[4] - limit).abs() < 0.1 * limit);
        assert_eq!(
            decay_envelope_check(&RadialPolyBump::zero(1), &ctx, &[p1(2.0)]).unwrap(),
            0.0
        );
    }

    #[test]
    fn fd_stencil_on_quadratics() {
        for dim in 1..=3 {
            let o = Point::new(&[-0.5, -0.4, -0.3][..dim]).unwrap();
            let g = GridField::sample(o, 0.1, vec![6; dim], |p| p.norm_sq()).unwrap();
            let l = fd_laplacian(&g, 1).unwrap();
            assert_eq!(l.extents, vec![4; dim]);
            for v in &l.values {
                assert!((v + 2.0 * dim as f64).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn fd_eigenfunction_second_order() {
        let err = |n: usize| {
            let h = PI / (n - 1) as f64;
            let g = GridField::sample(Point::origin(2), h, vec![n, n], |p| {
                p.get(0).sin() * (2.0 * p.get(1)).sin()
            })
            .unwrap();
            let l = fd_laplacian(&g, 1).unwrap();
            l.iter()
                .zip(&g.values[..])
                .map(|((p, v), _)| (v - 5.0 * p.get(0).sin() * (2.0 * p.get(1)).sin()).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(41), err(81));
        let order = (e1 / e2).log2();
        assert!((order - 2.0).abs() < 0.1, "order {order}");
    }

    #[test]
    fn fd_composition() {
        let g = GridField::sample(Point::origin(1), 0.05, vec![30], |p| p.get(0).powi(5)).unwrap();
        let twice = fd_laplacian(&fd_laplacian(&g, 1).unwrap(), 1).unwrap();
        assert_eq!(fd_laplacian(&g, 2).unwrap(), twice);
        assert!(matches!(
            fd_laplacian(
                &GridField::sample(Point::origin(1), 0.1, vec![4], |_| 0.0).unwrap(),
                2
            ),
            Err(Error::Extent(_))
        ));
    }

    #[test]
    fn grid_index_round_trip() {
        let g = GridField::sample(Point::origin(3), 0.5, vec![2, 3, 4], |p| p.get(2)).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.flatten(&g.unflatten(i)), i);
        }
        assert_eq!(g.get(&[1, 2, 3]), 1.5);
    }

    #[test]
    fn multi_term_bumps() {
        // Linearity across terms.
        let ctx = KernelContext::new(1, 0.7).unwrap();
        let terms = vec![
            Term {
                coef: 2.0,
                exponent: 3.0,
            },
            Term {
                coef: -1.0,
                exponent: 2.0,
            },
        ];
        let u = RadialPolyBump::new(p1(0.0), 1.0, terms).unwrap();
        let x = p1(0.25);
        let a = frac_sigma_pointwise(&bump1(0.0, 1.0, 3.0), &x, &ctx).unwrap();
        let b = frac_sigma_pointwise(&bump1(0.0, 1.0, 2.0), &x, &ctx).unwrap();
        let v = frac_sigma_pointwise(&u, &x, &ctx).unwrap();
        assert!((v - (2.0 * a - b)).abs() < 1e-8 * v.abs());
    }
}
