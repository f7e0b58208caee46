//! Numerical checks of the kernel identities: differential recurrences,
//! Martin limits and representations, mass identities and distributional
//! pairings.

use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ball_solver::{solve_ball, BallProblem, BoundaryData, MartinField};
use crate::error::{Error, Result};
use crate::frac_op::{frac_s_smooth, license, Field, License, Support};
use crate::geometry::{Ball, Point};
use crate::interp::RadialTable;
use crate::kernels::KernelContext;
use crate::order::{gamma_ball, k_green};
use crate::quadrature::{quad_ball_with, quad_space, quad_sphere, BallQuad};
use crate::radial::RadialPolyBump;

/// Outcome of one check; `passed` iff `residual <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub context: Value,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64, context: Value) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            context,
        }
    }

    fn require(mut self, cond: bool) -> Self {
        self.passed &= cond;
        self
    }
}

/// `max(|a|, |b|, 1e-8)`.
fn scale2(a: f64, b: f64) -> f64 {
    a.abs().max(b.abs()).max(1e-8)
}

/// Second-order central-difference Laplacian at `x`.
pub fn fd_laplacian_at<F: Fn(&Point) -> Result<f64>>(f: F, x: &Point, h: f64) -> Result<f64> {
    let mut lap = -2.0 * x.dim() as f64 * f(x)?;
    for i in 0..x.dim() {
        lap += f(&x.with(i, x.get(i) + h))? + f(&x.with(i, x.get(i) - h))?;
    }
    Ok(lap / (h * h))
}

fn stencil_ok(x: &Point, h: f64, avoid: &Point) -> Result<()> {
    if x.norm() + h >= 1.0 {
        return Err(Error::Geometry("FD stencil leaves the ball".into()));
    }
    if x.dist(avoid) <= 2.0 * h {
        return Err(Error::Geometry("FD stencil touches the singular point".into()));
    }
    Ok(())
}

fn recurrence_residual(ctx: &KernelContext, x: &Point, y: &Point, h: f64) -> Result<(f64, f64, f64)> {
    let lower = ctx.at_order(ctx.s() - 1.0)?;
    let left = -fd_laplacian_at(|z| ctx.green(z, y), x, h)?;
    let right = lower.green(x, y)? - 4.0 * ctx.consts.k_green * (ctx.s() - 1.0) * ctx.poly_p(x, y)?;
    Ok((left, right, (left - right).abs() / scale2(left, right)))
}

/// `-Delta_x G_s(x,y) = G_{s-1}(x,y) - 4 k_{N,s} (s-1) P_{s-1}(x,y)` by central
/// differences; the context records the residual at `h/2` and the observed
/// order.
pub fn check_green_recurrence(ctx: &KernelContext, x: &Point, y: &Point, h: f64) -> Result<CheckReport> {
    if ctx.s() <= 1.0 {
        return Err(Error::InvalidOrder(ctx.s()));
    }
    stencil_ok(x, h, y)?;
    if y.norm() >= 1.0 {
        return Err(Error::Geometry("y must be interior".into()));
    }
    let (left, right, r1) = recurrence_residual(ctx, x, y, h)?;
    let (_, _, r2) = recurrence_residual(ctx, x, y, h / 2.0)?;
    let order = (r1 / r2).log2();
    Ok(CheckReport::new(
        "green_recurrence",
        r1,
        1e-4,
        json!({
            "dim": ctx.dim, "s": ctx.s(), "x": x, "y": y, "h": h,
            "left": left, "right": right, "residual_half_h": r2, "observed_order": order,
        }),
    ))
}

fn fund_residual(ctx: &KernelContext, x: &Point, h: f64) -> Result<(f64, f64, f64)> {
    let lower = ctx.at_order(ctx.s() - 1.0)?;
    let left = -fd_laplacian_at(|z| ctx.fundamental(z), x, h)?;
    let right = lower.fundamental(x)? + ctx.fundamental_remainder(x)?;
    Ok((left, right, (left - right).abs() / scale2(left, right)))
}

/// `-Delta F_{N,s} = F_{N,s-1} + R_s` away from the origin.
pub fn check_fund_recurrence(ctx: &KernelContext, x: &Point, h: f64) -> Result<CheckReport> {
    if ctx.s() <= 1.0 {
        return Err(Error::InvalidOrder(ctx.s()));
    }
    if x.norm() <= 2.0 * h {
        return Err(Error::Geometry("FD stencil touches the origin".into()));
    }
    let (left, right, r1) = fund_residual(ctx, x, h)?;
    let (_, _, r2) = fund_residual(ctx, x, h / 2.0)?;
    Ok(CheckReport::new(
        "fund_recurrence",
        r1,
        1e-4,
        json!({
            "dim": ctx.dim, "s": ctx.s(), "x": x, "h": h, "log_branch": ctx.consts.log_branch,
            "left": left, "right": right, "residual_half_h": r2,
            "observed_order": (r1 / r2).log2(),
        }),
    ))
}

/// `G_s(x, z_k) / (1 - |z_k|^2)^s -> M_s(x, theta)` along
/// `z_k = (1 - 2^{-k}) theta`; passes if the final relative residual is
/// below tolerance and the sequence decreases from `k = 5` on.
pub fn check_martin_limit(ctx: &KernelContext, x: &Point, theta: &Point, kmax: u32) -> Result<CheckReport> {
    let m = ctx.martin(x, theta)?;
    let mut seq = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        let z = *theta * (1.0 - 2f64.powi(-(k as i32)));
        let q = ctx.green(x, &z)? / (1.0 - z.norm_sq()).powf(ctx.s());
        seq.push((q - m).abs() / m.abs().max(1e-300));
    }
    let last = *seq.last().unwrap_or(&f64::INFINITY);
    let monotone = seq.windows(2).skip(4).all(|w| w[1] <= w[0]);
    Ok(CheckReport::new(
        "martin_limit",
        last,
        1e-4,
        json!({"dim": ctx.dim, "s": ctx.s(), "x": x, "theta": theta, "martin": m, "residuals": seq, "monotone": monotone}),
    )
    .require(monotone))
}

/// `P_{s-1}(x,y) = 2 k_{N,1} (s-1) s / (k_{N,s-1} k_{N,s}) int M_{s-1}(x,.) M_s(y,.)`.
pub fn check_martin_rep(ctx: &KernelContext, x: &Point, y: &Point) -> Result<CheckReport> {
    let s = ctx.s();
    if s <= 1.0 {
        return Err(Error::InvalidOrder(s));
    }
    let lower = ctx.at_order(s - 1.0)?;
    let p = ctx.poly_p(x, y)?;
    let c = 2.0 * k_green(ctx.dim, 1.0) * (s - 1.0) * s / (lower.consts.k_green * ctx.consts.k_green);
    let integral = quad_sphere(
        |t| lower.martin_unchecked(x, t) * ctx.martin_unchecked(y, t),
        ctx.dim,
        &ctx.spec,
    );
    let right = c * integral.value;
    let tol = if ctx.dim == 1 { 1e-10 } else { 1e-7 };
    Ok(CheckReport::new(
        "martin_rep",
        (p - right).abs() / scale2(p, right),
        tol,
        json!({"dim": ctx.dim, "s": s, "x": x, "y": y, "left": p, "right": right}),
    ))
}

/// Right-hand side of a distributional equation.
pub enum Rhs<'a> {
    Zero,
    Field(&'a dyn Field),
    /// Point masses.
    Atoms(Vec<(Point, f64)>),
}

/// Integrates `g` over the support of `u` (or all of space), with `extra`
/// spheres as breakpoints.
fn integrate_against(
    u: &dyn Field,
    g: &(dyn Fn(&Point) -> f64 + Sync),
    extra: &[Ball],
    ctx: &KernelContext,
    decay: f64,
) -> Result<f64> {
    match u.support() {
        Support::Ball(b) => {
            let mut kinks = u.kinks();
            kinks.extend_from_slice(extra);
            if !kinks.contains(&b) {
                kinks.push(b);
            }
            let axis = match u.symmetry_center() {
                Some(c) if ctx.dim == 3 && extra.iter().all(|k| k.center.dist(&c) == 0.0) => {
                    Some(Point::unit(3, 2))
                }
                _ => None,
            };
            let mut q = BallQuad::new(b).kinks(&kinks).axis(axis);
            if let Some(c) = u.symmetry_center() {
                if b.signed_dist(&c) < 0.0 {
                    q = q.singular_at(c);
                }
            }
            Ok(quad_ball_with(g, &q, &ctx.spec).value)
        }
        Support::Whole { .. } => Ok(quad_space(g, decay, ctx.dim, &ctx.spec)?.value),
    }
}

const TABLE_NODES: usize = 401;

/// A radial table of `u` when `u` is radial about the center of its support ball.
fn radial_table_of(u: &dyn Field, ctx: &KernelContext) -> Result<Option<RadialTable>> {
    let (Some(c), Support::Ball(b)) = (u.symmetry_center(), u.support()) else {
        return Ok(None);
    };
    if c.dist(&b.center) > 0.0 {
        return Ok(None);
    }
    let mut breaks = vec![0.0];
    for k in u.kinks() {
        if k.center.dist(&c) == 0.0 && k.radius < b.radius {
            breaks.push(k.radius);
        }
    }
    breaks.push(b.radius);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let e1 = Point::unit(ctx.dim, 0);
    let t = RadialTable::build(c, &breaks, TABLE_NODES, Support::Ball(b), |r| {
        Ok(u.eval(&(c + e1 * r)))
    })?;
    if t.profile(0.0).is_nan() {
        return Err(Error::NotConverged {
            value: f64::NAN,
            err: f64::NAN,
        });
    }
    Ok(Some(t))
}

/// `max_phi |<u, (-Delta)^s phi> - <f, phi>| / scale` over the bumps, with
/// `scale = max(|left|, |right|, int |u (-Delta)^s phi|, 1e-8)`.
///
/// Bumps must be supported in `omega` (the whole space if `None`) and smooth
/// enough for the exact integer part.
pub fn check_distributional(
    u: &dyn Field,
    f: &Rhs<'_>,
    ctx: &KernelContext,
    bumps: &[RadialPolyBump],
    omega: Option<&Ball>,
) -> Result<CheckReport> {
    let m = ctx.order.m();
    let tabulate = ctx.dim >= 2;
    let u_table = if tabulate { radial_table_of(u, ctx)? } else { None };
    let u: &dyn Field = match &u_table {
        Some(t) => t,
        None => u,
    };
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for phi in bumps {
        let sup = phi.support();
        if let Some(om) = omega {
            if sup.center.dist(&om.center) + sup.radius >= om.radius {
                return Err(Error::Domain(format!(
                    "test bump at {} leaves the domain",
                    sup.center
                )));
            }
        }
        if license(phi, m)? != License::Strict {
            return Err(Error::Smoothness(format!("test bumps must be C^{}", 2 * m + 2)));
        }
        let err = Mutex::new(None);
        // In two and three dimensions (-Delta)^s phi is tabulated as a radial profile.
        let table = if tabulate {
            let reach = match u.support() {
                Support::Ball(b) => sup.center.dist(&b.center) + b.radius,
                Support::Whole { .. } => ctx.spec.far_radius + sup.center.norm(),
            };
            let e1 = Point::unit(ctx.dim, 0);
            Some(RadialTable::build(
                sup.center,
                &[0.0, sup.radius, reach.max(1.01 * sup.radius)],
                TABLE_NODES,
                Support::Whole {
                    decay: ctx.dim as f64 + 2.0 * ctx.s(),
                },
                |r| frac_s_smooth(phi, &(sup.center + e1 * r), ctx),
            )?)
        } else {
            None
        };
        let lphi = |y: &Point| -> f64 {
            if let Some(t) = &table {
                return t.profile(y.dist(&sup.center));
            }
            match frac_s_smooth(phi, y, ctx) {
                Ok(v) => v,
                Err(e) => {
                    *err.lock().expect("poisoned") = Some(e);
                    0.0
                }
            }
        };
        let decay = match u.support() {
            Support::Whole { decay } => decay + ctx.dim as f64 + 2.0 * ctx.s(),
            Support::Ball(_) => 0.0,
        };
        let left = integrate_against(
            u,
            &|y| {
                let v = u.eval(y);
                if v == 0.0 {
                    0.0
                } else {
                    v * lphi(y)
                }
            },
            &[sup],
            ctx,
            decay,
        )?;
        let abs = integrate_against(
            u,
            &|y| {
                let v = u.eval(y);
                if v == 0.0 {
                    0.0
                } else {
                    (v * lphi(y)).abs()
                }
            },
            &[sup],
            ctx,
            decay,
        )?;
        if let Some(e) = err.into_inner().expect("poisoned") {
            return Err(e);
        }
        let right = match f {
            Rhs::Zero => 0.0,
            Rhs::Atoms(a) => a.iter().map(|(p, w)| w * phi.evaluate(p)).sum(),
            Rhs::Field(g) => {
                let mut kinks = g.kinks();
                kinks.push(sup);
                let q = BallQuad::new(sup).kinks(&kinks);
                quad_ball_with(|y| g.eval(y) * phi.evaluate(y), &q, &ctx.spec).value
            }
        };
        let scale = left.abs().max(right.abs()).max(abs).max(1e-8);
        let r = (left - right).abs() / scale;
        worst = worst.max(r);
        rows.push(
            json!({"center": sup.center, "radius": sup.radius, "left": left, "right": right, "scale": scale}),
        );
    }
    Ok(CheckReport::new(
        "distributional",
        worst,
        1e-3,
        json!({"dim": ctx.dim, "s": ctx.s(), "pairings": rows}),
    ))
}

/// `max_x |int_B G_s(x,y) dy - gamma_{N,s} (1-|x|^2)^s|`, relative.
pub fn check_mass_identity(ctx: &KernelContext, xs: &[Point]) -> Result<CheckReport> {
    let p = BallProblem::constant(ctx.clone(), 1.0);
    let g = gamma_ball(ctx.dim, ctx.s());
    let mut worst: f64 = 0.0;
    for x in xs {
        let left = solve_ball(&p, x)?;
        let right = if x.norm_sq() < 1.0 {
            g * (1.0 - x.norm_sq()).powf(ctx.s())
        } else {
            0.0
        };
        let r = (left - right).abs() / right.abs().max(left.abs()).max(1e-300);
        worst = worst.max(if left == right { 0.0 } else { r });
    }
    Ok(CheckReport::new(
        "mass_identity",
        worst,
        1e-5,
        json!({"dim": ctx.dim, "s": ctx.s(), "points": xs.len()}),
    ))
}

/// Two-sided comparison of `G_s` with its comparator `H`: the residual is
/// `c = sqrt(max(G/H) / min(G/H))` over the sample, so that
/// `c^{-1} H <= G / K <= c H` for a suitable normalization `K`.
pub fn check_green_bounds(ctx: &KernelContext, pairs: &[(Point, Point)]) -> Result<CheckReport> {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for (x, y) in pairs {
        let g = ctx.green(x, y)?;
        let h = ctx.green_comparator(x, y);
        if !(g > 0.0 && h > 0.0) {
            return Err(Error::Singular(format!("non-positive kernel at {x}, {y}")));
        }
        lo = lo.min(g / h);
        hi = hi.max(g / h);
    }
    let c = (hi / lo).sqrt();
    Ok(CheckReport::new(
        "green_bounds",
        c,
        1e3,
        json!({"dim": ctx.dim, "s": ctx.s(), "min_ratio": lo, "max_ratio": hi, "pairs": pairs.len()}),
    ))
}

/// Settings for [`run_suite`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub dim: usize,
    pub s: f64,
    pub seed: u64,
    /// FD step.
    pub h: f64,
    /// Random samples per check.
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(dim: usize, s: f64) -> Self {
        Self {
            dim,
            s,
            seed: 7,
            h: 1e-3,
            samples: 5,
        }
    }
}

/// All check names, in suite order.
pub const CHECKS: &[&str] = &[
    "green_recurrence",
    "fund_recurrence",
    "martin_limit",
    "martin_rep",
    "distributional",
    "mass_identity",
    "green_bounds",
];

/// A uniformly random point of the ball of radius `r`.
pub fn random_point<R: Rng>(rng: &mut R, dim: usize, r: f64) -> Point {
    loop {
        let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-r..r)).collect();
        let p = Point::new(&c).expect("finite");
        if p.norm() < r {
            return p;
        }
    }
}

fn random_unit<R: Rng>(rng: &mut R, dim: usize) -> Point {
    loop {
        let p = random_point(rng, dim, 1.0);
        if p.norm() > 0.1 {
            return p * (1.0 / p.norm());
        }
    }
}

fn random_pair<R: Rng>(rng: &mut R, dim: usize, r: f64, min_gap: f64) -> (Point, Point) {
    loop {
        let x = random_point(rng, dim, r);
        let y = random_point(rng, dim, r);
        if x.dist(&y) >= min_gap {
            return (x, y);
        }
    }
}

/// Worst of several reports under one name.
fn worst_of(name: &str, reports: Vec<CheckReport>) -> CheckReport {
    let passed = reports.iter().all(|r| r.passed);
    let worst = reports
        .iter()
        .max_by(|a, b| (a.residual / a.tolerance).total_cmp(&(b.residual / b.tolerance)))
        .cloned()
        .expect("non-empty");
    CheckReport {
        name: name.into(),
        passed,
        context: json!({"worst": worst.context, "cases": reports.len()}),
        ..worst
    }
}

/// The test bumps used by the suite: three concentric-ish bumps inside the ball.
pub fn suite_bumps(dim: usize, s: f64) -> Result<Vec<RadialPolyBump>> {
    let m = (s.ceil() - 1.0).max(0.0);
    let p = 2.0 * m + 4.0;
    [(0.0, 0.5), (0.3, 0.4), (-0.4, 0.3)]
        .iter()
        .map(|&(c, r)| RadialPolyBump::single(Point::on_axis(dim, c), r, 1.0, p))
        .collect()
}

fn run_one(name: &str, cfg: &SuiteConfig, ctx: &KernelContext, rng: &mut ChaCha8Rng) -> Result<CheckReport> {
    let dim = cfg.dim;
    let n = cfg.samples.max(1);
    match name {
        "green_recurrence" => {
            let reps = (0..n)
                .map(|_| {
                    let (x, y) = random_pair(rng, dim, 0.8, 0.1);
                    check_green_recurrence(ctx, &x, &y, cfg.h)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(worst_of(name, reps))
        }
        "fund_recurrence" => {
            let reps = (0..n)
                .map(|_| {
                    let u = random_unit(rng, dim);
                    let r = rng.gen_range(0.5..2.0);
                    check_fund_recurrence(ctx, &(u * r), cfg.h)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(worst_of(name, reps))
        }
        "martin_limit" => {
            let reps = (0..n)
                .map(|_| {
                    let x = random_point(rng, dim, 0.7);
                    let t = random_unit(rng, dim);
                    check_martin_limit(ctx, &x, &t, 20)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(worst_of(name, reps))
        }
        "martin_rep" => {
            let reps = (0..n)
                .map(|_| {
                    let (x, y) = random_pair(rng, dim, 0.8, 0.0);
                    check_martin_rep(ctx, &x, &y)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(worst_of(name, reps))
        }
        "distributional" => {
            let bumps = suite_bumps(dim, cfg.s)?;
            let p = BallProblem::constant(ctx.clone(), 1.0);
            let one = crate::frac_op::FnField::in_ball(Ball::unit(dim), |_: &Point| 1.0);
            let r1 = check_distributional(
                &p.solution(),
                &Rhs::Field(&one),
                ctx,
                &bumps,
                Some(&Ball::unit(dim)),
            )?;
            let theta = random_unit(rng, dim);
            let data = BoundaryData::atom(theta);
            let mf = MartinField { data: &data, ctx };
            let r2 = check_distributional(&mf, &Rhs::Zero, ctx, &bumps, Some(&Ball::unit(dim)))?;
            Ok(worst_of(name, vec![r1, r2]))
        }
        "mass_identity" => {
            let xs: Vec<Point> = (0..n.max(20)).map(|_| random_point(rng, dim, 0.95)).collect();
            check_mass_identity(ctx, &xs)
        }
        "green_bounds" => {
            let pairs: Vec<(Point, Point)> = (0..200).map(|_| random_pair(rng, dim, 0.999, 1e-3)).collect();
            check_green_bounds(ctx, &pairs)
        }
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

/// Whether a check applies at order `s` (recurrences and the Martin
/// representation need `s > 1`; pairings need a fractional part).
pub fn applicable(name: &str, s: f64) -> bool {
    match name {
        "green_recurrence" | "fund_recurrence" | "martin_rep" => s > 1.0,
        "distributional" => s.fract() != 0.0,
        _ => true,
    }
}

/// Runs the named checks (`["all"]` for every applicable one) in a fixed
/// order, drawing sample points from one generator seeded with `cfg.seed`.
pub fn run_suite(names: &[&str], cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let ctx = KernelContext::new(cfg.dim, cfg.s)?;
    let selected: Vec<&str> = if names.contains(&"all") {
        CHECKS.iter().copied().filter(|n| applicable(n, cfg.s)).collect()
    } else {
        for n in names {
            if !CHECKS.contains(n) {
                return Err(Error::UnknownCheck(n.to_string()));
            }
        }
        names.to_vec()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    selected.iter().map(|n| run_one(n, cfg, &ctx, &mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(x: f64) -> Point {
        Point::on_axis(1, x)
    }

    #[test]
    fn green_recurrence_1d_and_order() {
        let ctx = KernelContext::new(1, 1.5).unwrap();
        let r = check_green_recurrence(&ctx, &p1(0.2), &p1(-0.3), 1e-3).unwrap();
        assert!(r.passed && r.residual < 1e-5, "{r:?}");
        let order = r.context["observed_order"].as_f64().unwrap();
        assert!((order - 2.0).abs() < 0.3, "order {order}");
        let ctx2 = KernelContext::new(2, 2.0).unwrap();
        let x = Point::new(&[0.2, 0.1]).unwrap();
        let y = Point::new(&[-0.3, 0.4]).unwrap();
        assert!(check_green_recurrence(&ctx2, &x, &y, 1e-3).unwrap().passed);
        assert!(matches!(
            check_green_recurrence(&ctx, &p1(0.9995), &p1(0.0), 1e-3),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            check_green_recurrence(&ctx, &p1(0.2), &p1(0.2015), 1e-3),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn fund_recurrence_cases() {
        for &(n, s) in &[(3, 2.0), (2, 2.0), (1, 1.5)] {
            let ctx = KernelContext::new(n, s).unwrap();
            let x = Point::on_axis(n, 1.0);
            let r = check_fund_recurrence(&ctx, &x, 1e-3).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn martin_limit_2d() {
        let ctx = KernelContext::new(2, 1.5).unwrap();
        let x = Point::new(&[0.3, 0.0]).unwrap();
        let t = Point::new(&[1.0, 0.0]).unwrap();
        let r = check_martin_limit(&ctx, &x, &t, 20).unwrap();
        assert!(r.passed, "{r:?}");
        let o = check_martin_limit(&ctx, &Point::origin(2), &t, 20).unwrap();
        let m = o.context["martin"].as_f64().unwrap();
        assert!((m - ctx.consts.k_green / 1.5).abs() < 1e-15 * m);
    }

    #[test]
    fn martin_representation() {
        let ctx = KernelContext::new(2, 1.5).unwrap();
        let x = Point::new(&[0.3, 0.0]).unwrap();
        let y = Point::new(&[0.0, 0.4]).unwrap();
        let r = check_martin_rep(&ctx, &x, &y).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
        let ctx1 = KernelContext::new(1, 1.5).unwrap();
        let r = check_martin_rep(&ctx1, &p1(0.3), &p1(-0.6)).unwrap();
        assert!(r.residual < 1e-12, "{r:?}");
        assert!(check_martin_rep(&ctx, &x, &Point::origin(2)).unwrap().passed);
    }

    #[test]
    fn mass_identity_classical() {
        let ctx = KernelContext::new(1, 1.0).unwrap();
        let r = check_mass_identity(&ctx, &[p1(0.0), p1(0.5), p1(0.999999)]).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn zero_pairing_is_zero() {
        let ctx = KernelContext::new(1, 1.5).unwrap();
        let zero = RadialPolyBump::zero(1);
        let bumps = suite_bumps(1, 1.5).unwrap();
        let r = check_distributional(&zero, &Rhs::Zero, &ctx, &bumps, None).unwrap();
        assert_eq!(r.residual, 0.0);
        let outside = [RadialPolyBump::single(p1(0.9), 0.3, 1.0, 6.0).unwrap()];
        assert!(matches!(
            check_distributional(&zero, &Rhs::Zero, &ctx, &outside, Some(&Ball::unit(1))),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn torsion_pairing_1d() {
        let ctx = KernelContext::new(1, 1.5).unwrap();
        let p = BallProblem::constant(ctx.clone(), 1.0);
        let one = crate::frac_op::FnField::in_ball(Ball::unit(1), |_: &Point| 1.0);
        let r = check_distributional(
            &p.solution(),
            &Rhs::Field(&one),
            &ctx,
            &suite_bumps(1, 1.5).unwrap(),
            Some(&Ball::unit(1)),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn suite_selection() {
        let cfg = SuiteConfig::new(1, 1.5);
        assert!(run_suite(&[], &cfg).unwrap().is_empty());
        assert!(matches!(run_suite(&["nope"], &cfg), Err(Error::UnknownCheck(_))));
        let a = run_suite(&["martin_rep", "green_bounds"], &cfg).unwrap();
        let b = run_suite(&["martin_rep", "green_bounds"], &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.passed), "{a:#?}");
    }
}
