//! Solution operators on the unit ball: the Green representation, decay
//! norms, Martin extensions, explicit `s`-harmonic functions, iterated Green
//! compositions and exterior-data problems.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frac_op::{Field, FnField, Support};
use crate::geometry::{Ball, Point};
use crate::interp::Interp1;
use crate::kernels::KernelContext;
use crate::order::k_green;
use crate::quadrature::{quad_ball_with, quad_sphere, BallQuad, QuadResult, QuadSpec};
use crate::radial::RadialPolyBump;

/// Right-hand side shared between threads.
pub type SharedField = Arc<dyn Field + Send + Sync>;

/// `(-Delta)^s u = f` in the unit ball with `u = 0` outside.
#[derive(Clone)]
pub struct BallProblem {
    pub ctx: KernelContext,
    pub rhs: SharedField,
    pub label: String,
}

impl fmt::Debug for BallProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BallProblem")
            .field("dim", &self.ctx.dim)
            .field("s", &self.ctx.s())
            .field("label", &self.label)
            .finish()
    }
}

impl BallProblem {
    pub fn new(ctx: KernelContext, rhs: SharedField, label: impl Into<String>) -> Result<Self> {
        if rhs.dim() != ctx.dim {
            return Err(Error::DimensionMismatch {
                expected: ctx.dim,
                got: rhs.dim(),
            });
        }
        Ok(Self {
            ctx,
            rhs,
            label: label.into(),
        })
    }

    /// Constant right-hand side `value` on the ball.
    pub fn constant(ctx: KernelContext, value: f64) -> Self {
        let dim = ctx.dim;
        let f = FnField::in_ball(Ball::unit(dim), move |_: &Point| value).radial_about(Point::origin(dim));
        Self {
            ctx,
            rhs: Arc::new(f),
            label: format!("const({value})"),
        }
    }

    /// A polynomial bump as right-hand side (restricted to the ball).
    pub fn bump(ctx: KernelContext, g: RadialPolyBump) -> Result<Self> {
        let label = format!("bump(r={}, center={})", g.radius(), g.center());
        Self::new(ctx, Arc::new(g), label)
    }

    /// The solution as a [`Field`].
    pub fn solution(&self) -> BallSolution<'_> {
        BallSolution { problem: self }
    }

    fn rhs_radial(&self) -> bool {
        self.rhs.symmetry_center().is_some_and(|c| c.norm() == 0.0)
    }
}

/// `u(x) = int_B G_s(x, y) f(y) dy`; zero outside the ball.
pub fn solve_ball(p: &BallProblem, x: &Point) -> Result<f64> {
    solve_ball_detailed(p, x).map(|r| r.value)
}

pub fn solve_ball_detailed(p: &BallProblem, x: &Point) -> Result<QuadResult> {
    x.check_dim(p.ctx.dim)?;
    if x.norm_sq() >= 1.0 {
        return Ok(QuadResult::exact(0.0));
    }
    Ok(green_integral(&p.ctx, x, &*p.rhs, p.rhs_radial(), &p.ctx.spec))
}

/// `int_B G_s(x, y) f(y) dy` for interior `x`, polar about `x`.
fn green_integral(
    ctx: &KernelContext,
    x: &Point,
    f: &dyn Field,
    radial_about_origin: bool,
    spec: &QuadSpec,
) -> QuadResult {
    let kinks: Vec<Ball> = f.kinks().into_iter().filter(|k| k.radius > 0.0).collect();
    let axis =
        (radial_about_origin && ctx.dim == 3).then(|| if x.norm() > 0.0 { *x } else { Point::unit(3, 2) });
    let q = BallQuad::new(Ball::unit(ctx.dim))
        .singular_at(*x)
        .kinks(&kinks)
        .axis(axis);
    quad_ball_with(
        |y| {
            let fy = f.eval(y);
            if fy == 0.0 {
                0.0
            } else {
                ctx.green_unchecked(x, y) * fy
            }
        },
        &q,
        spec,
    )
}

/// The Green-representation solution of a [`BallProblem`] viewed as a field.
pub struct BallSolution<'a> {
    problem: &'a BallProblem,
}

impl Field for BallSolution<'_> {
    fn dim(&self) -> usize {
        self.problem.ctx.dim
    }

    fn eval(&self, x: &Point) -> f64 {
        solve_ball(self.problem, x).unwrap_or(f64::NAN)
    }

    fn support(&self) -> Support {
        Support::Ball(Ball::unit(self.problem.ctx.dim))
    }

    fn symmetry_center(&self) -> Option<Point> {
        self.problem
            .rhs_radial()
            .then(|| Point::origin(self.problem.ctx.dim))
    }
}

/// `max_x (1 - |x|)^{-s} |u(x)|` over the grid.
pub fn decay_norm(p: &BallProblem, grid: &[Point]) -> Result<f64> {
    let s = p.ctx.s();
    let mut worst: f64 = 0.0;
    for x in grid {
        let d = 1.0 - x.norm();
        if d <= 0.0 {
            return Err(Error::Domain(format!("grid point {x} is not interior")));
        }
        worst = worst.max(solve_ball(p, x)?.abs() / d.powf(s));
    }
    Ok(worst)
}

/// Boundary data for Martin extensions.
#[derive(Clone)]
pub enum BoundaryData {
    /// A continuous function on the unit sphere.
    Continuous(Arc<dyn Fn(&Point) -> f64 + Send + Sync>),
    /// Point masses `(theta, weight)` with `|theta| = 1`.
    Atomic(Vec<(Point, f64)>),
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Continuous(_) => f.write_str("Continuous(..)"),
            Self::Atomic(a) => f.debug_tuple("Atomic").field(a).finish(),
        }
    }
}

impl BoundaryData {
    pub fn continuous<F: Fn(&Point) -> f64 + Send + Sync + 'static>(g: F) -> Self {
        Self::Continuous(Arc::new(g))
    }

    pub fn atom(theta: Point) -> Self {
        Self::Atomic(vec![(theta, 1.0)])
    }
}

/// `u(x) = int_{dB} M_s(x, theta) dmu(theta)`; zero outside the open ball.
pub fn martin_extension(data: &BoundaryData, ctx: &KernelContext, x: &Point) -> Result<f64> {
    x.check_dim(ctx.dim)?;
    if x.norm_sq() >= 1.0 {
        return Ok(0.0);
    }
    match data {
        BoundaryData::Continuous(g) => {
            Ok(quad_sphere(|t| ctx.martin_unchecked(x, t) * g(t), ctx.dim, &ctx.spec).value)
        }
        BoundaryData::Atomic(atoms) => {
            let mut total = 0.0;
            for (theta, w) in atoms {
                if !w.is_finite() {
                    return Err(Error::NonFinite);
                }
                total += w * ctx.martin(x, theta)?;
            }
            Ok(total)
        }
    }
}

/// The Martin extension as a field on `R^N`.
pub struct MartinField<'a> {
    pub data: &'a BoundaryData,
    pub ctx: &'a KernelContext,
}

impl Field for MartinField<'_> {
    fn dim(&self) -> usize {
        self.ctx.dim
    }

    fn eval(&self, x: &Point) -> f64 {
        martin_extension(self.data, self.ctx, x).unwrap_or(f64::NAN)
    }

    fn support(&self) -> Support {
        Support::Ball(Ball::unit(self.ctx.dim))
    }
}

/// Harmonic polynomials accepted by [`sharmonic_product`].
#[derive(Clone, Copy, Debug)]
pub enum HarmonicPoly {
    One,
    /// `x_i`.
    Coord(usize),
    /// `x_i x_j`, `i != j`.
    Product(usize, usize),
    /// `x_i^2 - x_j^2`, `i != j`.
    DiffSquares(usize, usize),
    /// Anything else; harmonicity is checked numerically.
    Custom(fn(&Point) -> f64),
}

impl HarmonicPoly {
    pub fn eval(&self, x: &Point) -> f64 {
        match *self {
            Self::One => 1.0,
            Self::Coord(i) => x.get(i),
            Self::Product(i, j) => x.get(i) * x.get(j),
            Self::DiffSquares(i, j) => x.get(i) * x.get(i) - x.get(j) * x.get(j),
            Self::Custom(f) => f(x),
        }
    }

    /// Rejects index choices outside the dimension and, for `Custom`,
    /// polynomials whose finite-difference Laplacian is not small at ten
    /// interior points.
    pub fn validate(&self, dim: usize) -> Result<()> {
        let idx_ok = |i: usize| i < dim;
        let ok = match *self {
            Self::One => true,
            Self::Coord(i) => idx_ok(i),
            Self::Product(i, j) | Self::DiffSquares(i, j) => idx_ok(i) && idx_ok(j) && i != j,
            Self::Custom(_) => true,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!("{self:?} in dimension {dim}")));
        }
        if let Self::Custom(f) = *self {
            let h = 1e-3;
            for k in 0..10 {
                let t = k as f64 / 10.0;
                let c: Vec<f64> = (0..dim)
                    .map(|d| {
                        0.6 * ((1.7 + d as f64) * t * std::f64::consts::TAU + d as f64).sin()
                            / (dim as f64).sqrt()
                    })
                    .collect();
                let x = Point::new(&c)?;
                let mut lap = -2.0 * dim as f64 * f(&x);
                let mut scale = f(&x).abs();
                for d in 0..dim {
                    let a = f(&x.with(d, x.get(d) + h));
                    let b = f(&x.with(d, x.get(d) - h));
                    lap += a + b;
                    scale = scale.max(a.abs()).max(b.abs());
                }
                lap /= h * h;
                if lap.abs() > 1e-4 * scale.max(1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "polynomial is not harmonic: FD Laplacian {lap:e} at {x}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `(1 - |x|^2)_+^{s-1} phi(x)` for harmonic `phi`, an `s`-harmonic function
/// in the ball.
pub fn sharmonic_product(phi: &HarmonicPoly, ctx: &KernelContext, x: &Point) -> Result<f64> {
    x.check_dim(ctx.dim)?;
    phi.validate(ctx.dim)?;
    let a = 1.0 - x.norm_sq();
    if a <= 0.0 {
        return Ok(0.0);
    }
    Ok(a.powf(ctx.s() - 1.0) * phi.eval(x))
}

/// The factor `2 k_{N,1} s / k_{N,s}` relating [`sharmonic_product`] to the
/// Martin extension of the boundary trace.
pub fn sharmonic_martin_factor(ctx: &KernelContext) -> f64 {
    2.0 * k_green(ctx.dim, 1.0) * ctx.s() / ctx.consts.k_green
}

/// Cached inner solve `w(y) = int_B G_j(y, z) f(z) dz` for [`iterated_green`].
#[derive(Clone, Debug)]
pub struct InnerCache {
    kind: CacheKind,
}

#[derive(Clone, Debug)]
enum CacheKind {
    /// `N = 1`: values on `[-1, 1]`.
    Line(Interp1),
    /// Radial right-hand side: profile in `|y|`.
    Radial(Interp1),
}

impl InnerCache {
    /// Tabulates the inner solve on `nodes` points, or returns `None` if the
    /// right-hand side admits no one-dimensional table.
    pub fn build(p: &BallProblem, j: u32, nodes: usize) -> Result<Option<Self>> {
        let inner = p.ctx.at_order(j as f64)?;
        let q = BallProblem {
            ctx: inner,
            rhs: p.rhs.clone(),
            label: p.label.clone(),
        };
        let n = nodes.max(8);
        if p.ctx.dim == 1 {
            let h = 2.0 / (n - 1) as f64;
            let values = (0..n)
                .map(|i| solve_ball(&q, &Point::on_axis(1, -1.0 + h * i as f64)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(Self {
                kind: CacheKind::Line(Interp1 {
                    a: -1.0,
                    h,
                    values,
                    even: false,
                }),
            }))
        } else if p.rhs_radial() {
            let h = 1.0 / (n - 1) as f64;
            let values = (0..n)
                .map(|i| solve_ball(&q, &Point::on_axis(p.ctx.dim, h * i as f64)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(Self {
                kind: CacheKind::Radial(Interp1 {
                    a: 0.0,
                    h,
                    values,
                    even: true,
                }),
            }))
        } else {
            Ok(None)
        }
    }

    pub fn eval(&self, y: &Point) -> f64 {
        if y.norm_sq() >= 1.0 {
            return 0.0;
        }
        match &self.kind {
            CacheKind::Line(t) => t.eval(y.get(0)),
            CacheKind::Radial(t) => t.eval(y.norm()),
        }
    }
}

/// `u_j(x) = int_B G_{s-j}(x, y) int_B G_j(y, z) f(z) dz dy`.
///
/// The inner solve is tabulated once (`N = 1`, or radial data) and
/// interpolated; otherwise it is nested directly.
pub fn iterated_green(p: &BallProblem, j: u32, x: &Point) -> Result<f64> {
    let cache = prepare_iterated(p, j)?;
    iterated_green_cached(p, j, cache.as_ref(), x)
}

/// Checks the order and builds the inner table (see [`iterated_green`]).
pub fn prepare_iterated(p: &BallProblem, j: u32) -> Result<Option<InnerCache>> {
    if j == 0 || j as f64 >= p.ctx.s() {
        return Err(Error::InvalidOrder(p.ctx.s() - j as f64));
    }
    InnerCache::build(p, j, 401)
}

pub fn iterated_green_cached(p: &BallProblem, j: u32, cache: Option<&InnerCache>, x: &Point) -> Result<f64> {
    x.check_dim(p.ctx.dim)?;
    if j == 0 || j as f64 >= p.ctx.s() {
        return Err(Error::InvalidOrder(p.ctx.s() - j as f64));
    }
    if x.norm_sq() >= 1.0 {
        return Ok(0.0);
    }
    let outer = p.ctx.at_order(p.ctx.s() - j as f64)?;
    let r = match cache {
        Some(c) => {
            let w = FnField::in_ball(Ball::unit(p.ctx.dim), |y: &Point| c.eval(y));
            green_integral(&outer, x, &w, p.rhs_radial(), &outer.spec)
        }
        None => {
            let inner = BallProblem {
                ctx: p.ctx.at_order(j as f64)?,
                rhs: p.rhs.clone(),
                label: p.label.clone(),
            };
            let coarse = outer.spec.nested(10.0);
            let inner_field = inner.solution();
            green_integral(&outer, x, &inner_field, false, &coarse)
        }
    };
    Ok(r.value)
}

/// `v(x, y) = G_s(x, y) - int_B G_1(x, z) G_{s-1}(z, y) dz`.
pub fn green_defect(x: &Point, y: &Point, ctx: &KernelContext) -> Result<f64> {
    let s = ctx.s();
    if s <= 1.0 {
        return Err(Error::InvalidOrder(s));
    }
    let g = ctx.green(x, y)?;
    if x.norm_sq() >= 1.0 || y.norm_sq() >= 1.0 {
        return Ok(0.0);
    }
    let g1 = ctx.at_order(1.0)?;
    let gs1 = ctx.at_order(s - 1.0)?;
    let composed = two_point_integral(ctx, x, y, |z| {
        g1.green_unchecked(x, z) * gs1.green_unchecked(z, y)
    });
    Ok(g - composed)
}

/// `-4 k_{N,s} (s-1) int_B G_1(x, z) P_{s-1}(z, y) dz`, the closed form of
/// [`green_defect`].
pub fn green_defect_via_p(x: &Point, y: &Point, ctx: &KernelContext) -> Result<f64> {
    let s = ctx.s();
    if s <= 1.0 {
        return Err(Error::InvalidOrder(s));
    }
    x.check_dim(ctx.dim)?;
    y.check_dim(ctx.dim)?;
    if x.norm_sq() >= 1.0 || y.norm_sq() >= 1.0 {
        return Ok(0.0);
    }
    let g1 = ctx.at_order(1.0)?;
    let integral = two_point_integral(ctx, x, y, |z| {
        g1.green_unchecked(x, z) * ctx.poly_p_unchecked(z, y)
    });
    Ok(-4.0 * ctx.consts.k_green * (s - 1.0) * integral)
}

/// Ball integral of an integrand singular at `x` and `y`.
fn two_point_integral<F: Fn(&Point) -> f64 + Sync>(ctx: &KernelContext, x: &Point, y: &Point, f: F) -> f64 {
    let pts = [*y];
    let q = BallQuad::new(Ball::unit(ctx.dim)).singular_at(*x).points(&pts);
    quad_ball_with(f, &q, &ctx.spec).value
}

/// Weak solution of `(-Delta)^s u = 0` in `B`, `u = g` outside, for `g >= 0`
/// supported away from the closed ball and `s` in `(k, k+1)`, `k` odd.
///
/// Inside the ball `u = -int_B G_s(x, y) g~(y) dy` with
/// `g~(y) = C_int int g(z) |y - z|^{-N-2s} dz`; outside, `u = g`.
pub fn exterior_extension(g: &RadialPolyBump, ctx: &KernelContext, x: &Point) -> Result<f64> {
    x.check_dim(ctx.dim)?;
    g.center().check_dim(ctx.dim)?;
    let m = ctx.order.m();
    if ctx.order.is_integer() || m.is_multiple_of(2) {
        return Err(Error::Regime(format!(
            "exterior sign result needs s in (k, k+1) with k odd, got s = {}",
            ctx.s()
        )));
    }
    if g.center().norm() - g.radius() <= 1.0 {
        return Err(Error::Domain(
            "exterior data must be supported at positive distance from the closed ball".into(),
        ));
    }
    if x.norm_sq() >= 1.0 {
        return Ok(g.evaluate(x));
    }
    if g.is_zero() {
        return Ok(0.0);
    }
    let c = ctx.consts.c_interaction.expect("fractional order");
    let p = -(ctx.dim as f64 + 2.0 * ctx.s()) / 2.0;
    let inner_spec = ctx.spec.nested(0.1);
    let support = g.support();
    let gq = BallQuad::new(support).axis(Some(Point::origin(ctx.dim)));
    let gtilde = |y: &Point| -> f64 {
        let q = BallQuad {
            axis: (ctx.dim == 3).then(|| *y - g.center()),
            ..gq.clone()
        };
        c * quad_ball_with(|z| g.evaluate(z) * y.dist_sq(z).powf(p), &q, &inner_spec).value
    };
    let q = BallQuad::new(Ball::unit(ctx.dim)).singular_at(*x);
    let r = quad_ball_with(|y| ctx.green_unchecked(x, y) * gtilde(y), &q, &ctx.spec);
    Ok(-r.value)
}
